"""Clifford+T circuits: parsing, diagrams, matrices and relation fixtures.

The ``.zxc`` text format: the first non-comment line is ``qubits N``,
then one gate per line in application order (the first line acts first).
``#`` starts a comment.  Rotation phases are written ``p/d`` meaning
(p/d)*pi, or ``f:<float>`` for plain radians.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .diagram import Diagram, VertexKind
from .phase import Phase
from .semantics import gate_matrix

GATE_ARITY = {
    "h": 1, "t": 1, "tdg": 1, "s": 1, "sdg": 1, "z": 1, "x": 1,
    "rz": 1, "rx": 1, "cnot": 2, "cz": 2, "swap": 2,
}
_PARAMETRIC = ("rz", "rx")

_FIXED_PHASES = {
    "t": Phase.exact(1, 4),
    "tdg": Phase.exact(7, 4),
    "s": Phase.exact(1, 2),
    "sdg": Phase.exact(3, 2),
    "z": Phase.exact(1),
    "x": Phase.exact(1),
}


class ZxcSyntaxError(ValueError):
    """Malformed ``.zxc`` text; carries the 1-based line number."""

    def __init__(self, line: int, msg: str):
        super().__init__(f"line {line}: {msg}")
        self.line = line


@dataclass(frozen=True)
class Gate:
    name: str
    qubits: tuple[int, ...]
    phase: Phase | None = None

    def __post_init__(self) -> None:
        if self.name not in GATE_ARITY:
            raise ValueError(f"unknown gate {self.name!r}")
        if len(self.qubits) != GATE_ARITY[self.name]:
            raise ValueError(f"{self.name} takes {GATE_ARITY[self.name]} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.name} qubits must be distinct")
        if (self.phase is not None) != (self.name in _PARAMETRIC):
            raise ValueError(f"phase mismatch for {self.name}")


@dataclass(frozen=True)
class Circuit:
    width: int
    gates: tuple[Gate, ...]

    def __post_init__(self) -> None:
        if self.width <= 0:
            raise ValueError("width must be positive")
        for g in self.gates:
            if any(q < 0 or q >= self.width for q in g.qubits):
                raise ValueError(f"gate {g.name} addresses a qubit out of range")

    @property
    def is_clifford_t(self) -> bool:
        """True iff every parametric rotation is an exact multiple of pi/4."""
        return all(g.phase is None or g.phase.is_clifford_t for g in self.gates)


def _parse_phase_token(tok: str, line: int) -> Phase:
    if tok.startswith("f:"):
        try:
            return Phase.approx(float(tok[2:]))
        except ValueError:
            raise ZxcSyntaxError(line, f"bad float phase {tok!r}") from None
    if "/" in tok:
        num_s, den_s = tok.split("/", 1)
        try:
            num, den = int(num_s), int(den_s)
        except ValueError:
            raise ZxcSyntaxError(line, f"bad rational phase {tok!r}") from None
        if den <= 0:
            raise ZxcSyntaxError(line, "phase denominator must be positive")
        return Phase.exact(num, den)
    raise ZxcSyntaxError(line, f"bad phase {tok!r} (want p/d or f:<float>)")


def parse_circuit(text: str) -> Circuit:
    """Parse ``.zxc`` text into a circuit."""
    width = None
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.lower().split()
        if width is None:
            if toks[0] != "qubits" or len(toks) != 2:
                raise ZxcSyntaxError(lineno, "expected 'qubits N' header")
            try:
                width = int(toks[1])
            except ValueError:
                raise ZxcSyntaxError(lineno, "qubit count must be an integer") from None
            if width <= 0:
                raise ZxcSyntaxError(lineno, "qubit count must be positive")
            continue
        name = toks[0]
        if name not in GATE_ARITY:
            raise ZxcSyntaxError(lineno, f"unknown gate {name!r}")
        arity = GATE_ARITY[name]
        want = arity + (1 if name in _PARAMETRIC else 0)
        if len(toks) - 1 != want:
            raise ZxcSyntaxError(lineno, f"{name} expects {want} argument(s)")
        try:
            qubits = tuple(int(t) for t in toks[1 : 1 + arity])
        except ValueError:
            raise ZxcSyntaxError(lineno, "qubit indices must be integers") from None
        phase = _parse_phase_token(toks[1 + arity], lineno) if name in _PARAMETRIC else None
        if any(q < 0 or q >= width for q in qubits):
            raise ZxcSyntaxError(lineno, f"qubit index out of range 0..{width - 1}")
        if len(set(qubits)) != len(qubits):
            raise ZxcSyntaxError(lineno, f"{name} qubits must be distinct")
        gates.append(Gate(name, qubits, phase))
    if width is None:
        raise ZxcSyntaxError(1, "missing 'qubits N' header")
    return Circuit(width, tuple(gates))


def format_circuit(c: Circuit) -> str:
    """Render a circuit as ``.zxc`` text (inverse of :func:`parse_circuit`)."""
    lines = [f"qubits {c.width}"]
    for g in c.gates:
        parts = [g.name, *map(str, g.qubits)]
        if g.phase is not None:
            parts.append(
                f"{g.phase.numerator}/{g.phase.denominator}"
                if g.phase.is_exact
                else f"f:{g.phase.radians!r}"
            )
        lines.append(" ".join(parts))
    return "\n".join(lines) + "\n"


def load_circuit(path: str) -> Circuit:
    with open(path, encoding="utf-8") as f:
        return parse_circuit(f.read())


def circuit_to_diagram(c: Circuit) -> Diagram:
    """One wire per qubit; each gate becomes its local spider pattern.

    Phase gates become spiders on their wire, H becomes an H-box, CNOT a
    Z-X bridge (green on the control), CZ a Z-H-Z bridge, SWAP a crossing
    of the wire ends.
    """
    d = Diagram()
    ends = []
    for _ in range(c.width):
        ends.append(d.add_input())

    def put(q: int, kind: str, phase: Phase | None = None) -> int:
        v = d.add_vertex(kind, phase)
        d.add_edge(ends[q], v)
        ends[q] = v
        return v

    for g in c.gates:
        if g.name == "h":
            put(g.qubits[0], VertexKind.H)
        elif g.name in _FIXED_PHASES:
            kind = VertexKind.X if g.name == "x" else VertexKind.Z
            put(g.qubits[0], kind, _FIXED_PHASES[g.name])
        elif g.name == "rz":
            put(g.qubits[0], VertexKind.Z, g.phase)
        elif g.name == "rx":
            put(g.qubits[0], VertexKind.X, g.phase)
        elif g.name == "cnot":
            ctrl, tgt = g.qubits
            zc = put(ctrl, VertexKind.Z, Phase.zero())
            xt = put(tgt, VertexKind.X, Phase.zero())
            d.add_edge(zc, xt)
        elif g.name == "cz":
            a, b = g.qubits
            za = put(a, VertexKind.Z, Phase.zero())
            zb = put(b, VertexKind.Z, Phase.zero())
            h = d.add_vertex(VertexKind.H)
            d.add_edge(za, h)
            d.add_edge(h, zb)
        elif g.name == "swap":
            a, b = g.qubits
            ends[a], ends[b] = ends[b], ends[a]
        else:  # pragma: no cover
            raise AssertionError(g.name)

    for q in range(c.width):
        o = d.add_output()
        d.add_edge(ends[q], o)
    return d


def circuit_matrix(c: Circuit, max_width: int = 12) -> np.ndarray:
    """Ordered product of the gate unitaries (the diagram-free oracle)."""
    if c.width > max_width:
        raise ValueError(f"width {c.width} exceeds the cap of {max_width}")
    mats = [gate_matrix(g, c.width) for g in c.gates]
    return reduce(lambda acc, m: m @ acc, mats, np.eye(2**c.width, dtype=complex))


# -- the 2-qubit relation corpus ------------------------------------------------


class FixtureError(RuntimeError):
    """A relation fixture asset is missing or corrupt."""


@dataclass(frozen=True)
class RelationFixture:
    id: int
    lhs: Circuit
    rhs: Circuit


FIXTURE_COUNT = 17
#: the three composite relations: two squared circuits and an inverse pair
SQUARED_FIXTURES = (15, 16)
INVERSE_PAIR_FIXTURE = 17


def fixture_asset_names() -> list[str]:
    return [f"rel{i:02d}_{side}.zxc" for i in range(1, FIXTURE_COUNT + 1) for side in ("lhs", "rhs")]


def _read_asset(name: str) -> str:
    try:
        return (importlib.resources.files("zxq.fixtures") / name).read_text(encoding="utf-8")
    except (FileNotFoundError, ModuleNotFoundError) as e:
        raise FixtureError(f"missing fixture asset {name!r}: {e}") from e


def selinger_bian_fixtures() -> list[RelationFixture]:
    """Load the seventeen 2-qubit Clifford+T relation fixtures.

    Each fixture is a pair of ``.zxc`` assets whose circuits denote the
    same unitary up to a scalar; relations 15 and 16 square a circuit to
    the identity and 17 composes a circuit with its inverse.
    """
    fixtures = []
    for i in range(1, FIXTURE_COUNT + 1):
        sides = {}
        for side in ("lhs", "rhs"):
            name = f"rel{i:02d}_{side}.zxc"
            try:
                sides[side] = parse_circuit(_read_asset(name))
            except ZxcSyntaxError as e:
                raise FixtureError(f"corrupt fixture asset {name!r}: {e}") from e
        if sides["lhs"].width != 2 or sides["rhs"].width != 2:
            raise FixtureError(f"fixture {i} is not a 2-qubit relation")
        fixtures.append(RelationFixture(i, sides["lhs"], sides["rhs"]))
    return fixtures


def export_fixtures(directory: str) -> list[str]:
    """Copy every fixture asset into ``directory``; returns the paths."""
    import os

    os.makedirs(directory, exist_ok=True)
    written = []
    for name in fixture_asset_names():
        path = os.path.join(directory, name)
        with open(path, "w", encoding="utf-8") as f:
            f.write(_read_asset(name))
        written.append(path)
    return written


def is_clifford_t(c: Circuit) -> bool:
    """Module-level alias for :attr:`Circuit.is_clifford_t`."""
    return c.is_clifford_t
