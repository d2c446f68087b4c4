"""JSON model files and DOT export."""

from __future__ import annotations

import json
from pathlib import Path

from .imc import Imc, StateLabel, label_str

FORMAT_VERSION = 1


class ModelFileError(ValueError):
    pass


def canonical(m: Imc) -> Imc:
    """Reorder states by label (ties keep their relative order)."""
    order = sorted(range(m.n), key=lambda i: (m.states[i].sort_key(), i))
    index = {old: new for new, old in enumerate(order)}
    return Imc.build(
        [m.states[i] for i in order],
        ((index[s], x, index[t]) for s, x, t in m.itrans),
        ((index[s], r, index[t]) for s, r, t in m.mtrans),
        index[m.initial],
        alphabet=m.alphabet,
    )


def to_dict(m: Imc) -> dict:
    m = canonical(m)
    return {
        "format_version": FORMAT_VERSION,
        "alphabet": sorted(m.alphabet),
        "states": [
            {
                "r": sorted(l.r),
                "t": sorted(l.t),
                "e": sorted(l.e),
                "d": sorted(l.d),
                "q": l.q,
            }
            for l in m.states
        ],
        "itrans": [[s, sorted(x), t] for s, x, t in m.itrans],
        # repr keeps the shortest string that reads back to the same float
        "mtrans": [[s, repr(float(r)), t] for s, r, t in m.mtrans],
        "initial": m.initial,
    }


def from_dict(data: dict) -> Imc:
    try:
        version = data["format_version"]
        if version != FORMAT_VERSION:
            raise ModelFileError(f"unsupported format_version {version!r}")
        states = [
            StateLabel.of(st["r"], st["t"], st["e"], st["d"], st.get("q", ""))
            for st in data["states"]
        ]
        itrans = [(int(s), frozenset(x), int(t)) for s, x, t in data["itrans"]]
        mtrans = [(int(s), float(r), int(t)) for s, r, t in data["mtrans"]]
        m = Imc.build(states, itrans, mtrans, int(data["initial"]), alphabet=data["alphabet"])
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, ModelFileError):
            raise
        raise ModelFileError(f"malformed model file: {exc}") from exc
    if not 0 <= m.initial < m.n:
        raise ModelFileError(f"initial state {m.initial} out of range")
    for s, _, t in m.itrans + m.mtrans:
        if not (0 <= s < m.n and 0 <= t < m.n):
            raise ModelFileError(f"transition {s}->{t} refers to a missing state")
    return m


def dumps(m: Imc) -> str:
    return json.dumps(to_dict(m), indent=1) + "\n"


def loads(text: str) -> Imc:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelFileError(f"not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ModelFileError("model file must hold a JSON object")
    return from_dict(data)


def save(m: Imc, path: str | Path) -> None:
    Path(path).write_text(dumps(m), encoding="utf-8")


def load(path: str | Path) -> Imc:
    return loads(Path(path).read_text(encoding="utf-8"))


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(m: Imc, name: str = "imc") -> str:
    """Graphviz text: interactive edges dashed, Markovian edges solid, the
    initial state drawn with a double circle."""
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=circle];"]
    for i, lab in enumerate(m.states):
        shape = ", shape=doublecircle" if i == m.initial else ""
        lines.append(f"  s{i} [label={_quote(str(lab))}{shape}];")
    for s, x, t in m.itrans:
        lines.append(f"  s{s} -> s{t} [label={_quote(label_str(x))}, style=dashed];")
    for s, r, t in m.mtrans:
        lines.append(f"  s{s} -> s{t} [label={_quote(f'{r:g}')}, style=solid];")
    lines.append("}")
    return "\n".join(lines) + "\n"
