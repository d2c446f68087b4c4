"""Compile stochastic Reo connectors into interactive Markov chains."""

from .analysis import AnalysisError, Ctmc, simulate_occupancy, steady_state, throughput, to_ctmc
from .bisim import are_bisimilar, coarsest_partition, strong_bisim_minimize
from .circuit import Channel, Circuit, CircuitError, IoSpec, derive_flow, elaborate_phase
from .composer import (
    CleanupOptions,
    cleanup,
    compose_circuit,
    compose_stages,
    deploy,
    deploy_circuit,
    parallel,
    synchronize,
)
from .dsl import DslError, format_circuit, parse
from .flow import FlowOrder
from .imc import IDLE, Imc, StateLabel, hide, is_isomorphic, reachable, rename, stats, validate
from .primitives import NodeSpec, make_channel, make_classic_channel, make_io, make_node
from .serialize import load, save, to_dot

__all__ = [
    "AnalysisError", "Channel", "Circuit", "CircuitError", "CleanupOptions", "Ctmc", "DslError",
    "FlowOrder", "IDLE", "Imc", "IoSpec", "NodeSpec", "StateLabel", "are_bisimilar", "cleanup",
    "coarsest_partition", "compose_circuit", "compose_stages", "deploy", "deploy_circuit",
    "derive_flow", "elaborate_phase", "format_circuit", "hide", "is_isomorphic", "load",
    "make_channel", "make_classic_channel", "make_io", "make_node", "parallel", "parse",
    "reachable", "rename", "save", "simulate_occupancy", "stats", "steady_state",
    "strong_bisim_minimize", "synchronize", "throughput", "to_ctmc", "to_dot", "validate",
]
