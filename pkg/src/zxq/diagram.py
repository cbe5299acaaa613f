"""Open multigraphs of phased spiders, Hadamard boxes and ordered boundaries.

A diagram is an undirected multigraph (parallel edges and self-loops are
both meaningful and preserved) whose vertices are Z- or X-spiders carrying
a phase, degree-2 Hadamard boxes, or degree-1 boundary vertices.  Boundary
order fixes the qubit ports: input/output k is the k-th entry of the
corresponding list.  Only connectivity and those orders matter; vertex
identities are irrelevant, which is what :meth:`Diagram.iso_equal` checks.

Diagrams are value-semantic: operations return fresh diagrams or mutate an
exclusively held instance.  There is no shared global state.
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator, NamedTuple

import networkx as nx

from .phase import Phase


class VertexKind:
    """Vertex kind tags (also the on-disk names)."""

    Z = "Z"
    X = "X"
    H = "H"
    IN = "in"
    OUT = "out"


SPIDER_KINDS = frozenset((VertexKind.Z, VertexKind.X))
BOUNDARY_KINDS = frozenset((VertexKind.IN, VertexKind.OUT))
ALL_KINDS = SPIDER_KINDS | BOUNDARY_KINDS | {VertexKind.H}

#: tolerance used by iso_equal when comparing radian-valued phases
ISO_PHASE_TOL = 1e-12


class InvalidDiagramError(ValueError):
    """A structural invariant of the diagram does not hold."""


class Signature(NamedTuple):
    n_inputs: int
    n_outputs: int


def opposite(kind: str) -> str:
    """The other spider colour."""
    if kind == VertexKind.Z:
        return VertexKind.X
    if kind == VertexKind.X:
        return VertexKind.Z
    raise ValueError(f"not a spider kind: {kind!r}")


class Diagram:
    """Mutable open multigraph; see the module docstring."""

    __slots__ = ("_kinds", "_phases", "_adj", "_inputs", "_outputs", "_next_id")

    def __init__(self) -> None:
        self._kinds: dict[int, str] = {}
        self._phases: dict[int, Phase] = {}
        self._adj: dict[int, Counter] = {}
        self._inputs: list[int] = []
        self._outputs: list[int] = []
        self._next_id = 0

    # -- vertices ----------------------------------------------------------

    def add_vertex(self, kind: str, phase: Phase | None = None) -> int:
        if kind not in ALL_KINDS:
            raise InvalidDiagramError(f"unknown vertex kind {kind!r}")
        if kind in SPIDER_KINDS:
            if phase is None:
                phase = Phase.zero()
        elif phase is not None:
            raise InvalidDiagramError(f"{kind!r} vertex cannot carry a phase")
        v = self._next_id
        self._next_id += 1
        self._kinds[v] = kind
        self._adj[v] = Counter()
        if phase is not None:
            self._phases[v] = phase
        return v

    def add_input(self) -> int:
        v = self.add_vertex(VertexKind.IN)
        self._inputs.append(v)
        return v

    def add_output(self) -> int:
        v = self.add_vertex(VertexKind.OUT)
        self._outputs.append(v)
        return v

    def remove_vertex(self, v: int) -> None:
        for w in list(self._adj[v]):
            if w != v:
                del self._adj[w][v]
        del self._adj[v]
        del self._kinds[v]
        self._phases.pop(v, None)
        if v in self._inputs:
            self._inputs.remove(v)
        if v in self._outputs:
            self._outputs.remove(v)

    def kind(self, v: int) -> str:
        return self._kinds[v]

    def set_kind(self, v: int, kind: str) -> None:
        if kind not in SPIDER_KINDS or self._kinds[v] not in SPIDER_KINDS:
            raise InvalidDiagramError("set_kind only swaps spider colours")
        self._kinds[v] = kind

    def phase(self, v: int) -> Phase:
        return self._phases[v]

    def set_phase(self, v: int, phase: Phase) -> None:
        if self._kinds[v] not in SPIDER_KINDS:
            raise InvalidDiagramError("only spiders carry phases")
        self._phases[v] = phase

    def is_spider(self, v: int) -> bool:
        return self._kinds[v] in SPIDER_KINDS

    def is_boundary(self, v: int) -> bool:
        return self._kinds[v] in BOUNDARY_KINDS

    def vertices(self) -> list[int]:
        return sorted(self._kinds)

    def spiders(self) -> list[int]:
        return [v for v in self.vertices() if self._kinds[v] in SPIDER_KINDS]

    def __contains__(self, v: int) -> bool:
        return v in self._kinds

    # -- edges -------------------------------------------------------------

    def add_edge(self, u: int, v: int, count: int = 1) -> None:
        if u not in self._kinds or v not in self._kinds:
            raise InvalidDiagramError("edge endpoint does not exist")
        if count <= 0:
            raise ValueError("edge count must be positive")
        self._adj[u][v] += count
        if u != v:
            self._adj[v][u] += count

    def remove_edge(self, u: int, v: int, count: int = 1) -> None:
        if self._adj[u][v] < count:
            raise InvalidDiagramError(f"no such edge ({u}, {v}) x{count}")
        self._adj[u][v] -= count
        if self._adj[u][v] == 0:
            del self._adj[u][v]
        if u != v:
            self._adj[v][u] -= count
            if self._adj[v][u] == 0:
                del self._adj[v][u]

    def edge_mult(self, u: int, v: int) -> int:
        """Number of parallel edges between u and v (loops if u == v)."""
        return self._adj[u][v]

    def edges(self) -> Iterator[tuple[int, int, int]]:
        """Yield (u, v, multiplicity) with u <= v, sorted."""
        for u in sorted(self._adj):
            for v in sorted(self._adj[u]):
                if v >= u:
                    yield u, v, self._adj[u][v]

    def edge_instances(self) -> list[tuple[int, int]]:
        """Every parallel edge as its own (u, v) pair, u <= v."""
        out = []
        for u, v, m in self.edges():
            out.extend([(u, v)] * m)
        return out

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbours of v, excluding v itself."""
        return sorted(w for w in self._adj[v] if w != v)

    def self_loops(self, v: int) -> int:
        return self._adj[v][v]

    def degree(self, v: int) -> int:
        """Number of incident edge ends; a self-loop contributes two."""
        return sum(m for w, m in self._adj[v].items() if w != v) + 2 * self._adj[v][v]

    @property
    def n_vertices(self) -> int:
        return len(self._kinds)

    @property
    def n_edges(self) -> int:
        return sum(m for _, _, m in self.edges())

    @property
    def spider_count(self) -> int:
        return sum(1 for k in self._kinds.values() if k in SPIDER_KINDS)

    @property
    def hbox_count(self) -> int:
        return sum(1 for k in self._kinds.values() if k == VertexKind.H)

    # -- boundary ----------------------------------------------------------

    @property
    def inputs(self) -> tuple[int, ...]:
        return tuple(self._inputs)

    @property
    def outputs(self) -> tuple[int, ...]:
        return tuple(self._outputs)

    @property
    def n_inputs(self) -> int:
        return len(self._inputs)

    @property
    def n_outputs(self) -> int:
        return len(self._outputs)

    @property
    def signature(self) -> Signature:
        return Signature(len(self._inputs), len(self._outputs))

    # -- whole-diagram operations -------------------------------------------

    def copy(self) -> "Diagram":
        d = Diagram()
        d._kinds = dict(self._kinds)
        d._phases = dict(self._phases)
        d._adj = {v: Counter(c) for v, c in self._adj.items()}
        d._inputs = list(self._inputs)
        d._outputs = list(self._outputs)
        d._next_id = self._next_id
        return d

    def relabel(self, mapping: dict[int, int]) -> "Diagram":
        """Fresh diagram with vertex ids renamed by a bijection."""
        if sorted(mapping) != self.vertices() or len(set(mapping.values())) != len(mapping):
            raise ValueError("mapping must be a bijection on the vertex set")
        d = Diagram()
        d._kinds = {mapping[v]: k for v, k in self._kinds.items()}
        d._phases = {mapping[v]: p for v, p in self._phases.items()}
        d._adj = {
            mapping[v]: Counter({mapping[w]: m for w, m in c.items()})
            for v, c in self._adj.items()
        }
        d._inputs = [mapping[v] for v in self._inputs]
        d._outputs = [mapping[v] for v in self._outputs]
        d._next_id = max(mapping.values(), default=-1) + 1
        return d

    def _absorb(self, other: "Diagram") -> dict[int, int]:
        """Copy ``other`` into self with fresh ids; return the id map."""
        remap = {}
        for v in other.vertices():
            remap[v] = self.add_vertex(other._kinds[v], other._phases.get(v))
        for u, v, m in other.edges():
            self.add_edge(remap[u], remap[v], m)
        return remap

    def validate(self) -> None:
        """Raise :class:`InvalidDiagramError` unless all invariants hold."""
        for v, kind in self._kinds.items():
            if kind == VertexKind.H and self.degree(v) != 2:
                raise InvalidDiagramError(f"H-box {v} has degree {self.degree(v)}, not 2")
            if kind in BOUNDARY_KINDS and self.degree(v) != 1:
                raise InvalidDiagramError(
                    f"boundary vertex {v} has degree {self.degree(v)}, not 1"
                )
            if kind in SPIDER_KINDS and v not in self._phases:
                raise InvalidDiagramError(f"spider {v} is missing its phase")
        for v, c in self._adj.items():
            for w in c:
                if w not in self._kinds:
                    raise InvalidDiagramError(f"edge ({v}, {w}) has a dangling endpoint")
        for name, lst, kind in (
            ("input", self._inputs, VertexKind.IN),
            ("output", self._outputs, VertexKind.OUT),
        ):
            if len(set(lst)) != len(lst):
                raise InvalidDiagramError(f"duplicate {name} vertex")
            for v in lst:
                if self._kinds.get(v) != kind:
                    raise InvalidDiagramError(f"{name} list entry {v} has wrong kind")
            declared = [v for v, k in self._kinds.items() if k == kind]
            if len(declared) != len(lst):
                raise InvalidDiagramError(f"{name} vertices not all registered in port order")

    def compose(self, other: "Diagram") -> "Diagram":
        """Plug self's outputs into other's inputs, port by port.

        Both boundary vertices of each fused pair disappear and their
        neighbours are joined.  A wire cycle that closes entirely through
        fused boundaries leaves an isolated zero-phase Z-spider behind,
        which carries the cycle's scalar value of 2.
        """
        if self.n_outputs != other.n_inputs:
            raise InvalidDiagramError(
                f"compose arity mismatch: {self.n_outputs} outputs vs "
                f"{other.n_inputs} inputs"
            )
        res = self.copy()
        remap = res._absorb(other)
        pairs = [(o, remap[i]) for o, i in zip(self._outputs, other._inputs)]

        conns = res.edge_instances() + pairs
        fused = {v for pair in pairs for v in pair}

        loops = 0
        for f in sorted(fused):
            mine = [c for c in conns if f in c]
            assert len(mine) in (1, 2)
            if len(mine) == 1:  # both slots in one connection: (f, f) closes a cycle
                assert mine[0] == (f, f)
                conns.remove(mine[0])
                loops += 1
                continue
            e1, e2 = mine
            conns.remove(e1)
            conns.remove(e2)
            x = e1[0] if e1[1] == f else e1[1]
            y = e2[0] if e2[1] == f else e2[1]
            if x == f and y == f:
                loops += 1
            else:
                conns.append((x, y))

        res._adj = {v: Counter() for v in res._adj}
        for u, v in conns:
            res.add_edge(u, v)
        for f in fused:
            res.remove_vertex(f)
        for _ in range(loops):
            res.add_vertex(VertexKind.Z, Phase.zero())

        res._inputs = list(self._inputs)
        res._outputs = [remap[o] for o in other._outputs]
        return res

    def tensor(self, other: "Diagram") -> "Diagram":
        """Place other next to self; its ports are renumbered after self's."""
        res = self.copy()
        remap = res._absorb(other)
        res._inputs.extend(remap[v] for v in other._inputs)
        res._outputs.extend(remap[v] for v in other._outputs)
        return res

    __rshift__ = compose
    __matmul__ = tensor

    # -- comparison ----------------------------------------------------------

    def _to_networkx(self) -> "nx.Graph":
        g = nx.Graph()
        for v, kind in self._kinds.items():
            if kind == VertexKind.IN:
                tag: tuple = ("in", self._inputs.index(v))
            elif kind == VertexKind.OUT:
                tag = ("out", self._outputs.index(v))
            elif kind == VertexKind.H:
                tag = ("H",)
            else:
                tag = (kind, self._phases[v])
            g.add_node(v, tag=tag, wl=_wl_token(tag))
        for u, v, m in self.edges():
            g.add_edge(u, v, mult=m)
        return g

    def iso_equal(self, other: "Diagram") -> bool:
        """Isomorphic as boundary-ordered open multigraphs.

        Kinds and edge multiplicities must match exactly, exact phases
        exactly, radian phases within 1e-12 (mod 2*pi).
        """
        if self.signature != other.signature or self.n_vertices != other.n_vertices:
            return False
        return nx.is_isomorphic(
            self._to_networkx(),
            other._to_networkx(),
            node_match=_node_match,
            edge_match=lambda a, b: a["mult"] == b["mult"],
        )

    def digest(self) -> str:
        """8-hex-char structural digest, invariant under relabelling."""
        h = nx.weisfeiler_lehman_graph_hash(
            self._to_networkx(), edge_attr="mult", node_attr="wl", iterations=4
        )
        return h[:8]

    def __repr__(self) -> str:
        return (
            f"<Diagram {self.n_inputs}->{self.n_outputs}, "
            f"{self.spider_count} spiders, {self.hbox_count} H, {self.n_edges} edges>"
        )


def _wl_token(tag: tuple) -> str:
    if tag[0] in ("in", "out", "H"):
        return ":".join(str(t) for t in tag)
    kind, phase = tag
    if phase.is_exact:
        return f"{kind}:{phase.numerator}/{phase.denominator}"
    return f"{kind}:~{phase.radians:.9f}"


def _node_match(a: dict, b: dict) -> bool:
    ta, tb = a["tag"], b["tag"]
    if ta[0] != tb[0]:
        return False
    if ta[0] in ("in", "out"):
        return ta[1] == tb[1]
    if ta[0] == "H":
        return True
    pa, pb = ta[1], tb[1]
    if pa.is_exact != pb.is_exact:
        return False
    if pa.is_exact:
        return pa.frac == pb.frac
    return pa.close_to(pb, ISO_PHASE_TOL)


# -- small builders ----------------------------------------------------------


def empty_diagram() -> Diagram:
    return Diagram()


def identity_diagram(n: int) -> Diagram:
    """n bare wires."""
    d = Diagram()
    for _ in range(n):
        i = d.add_input()
        o = d.add_output()
        d.add_edge(i, o)
    return d


def spider_diagram(kind: str, phase: Phase, n_in: int, n_out: int) -> Diagram:
    """A single spider wired to n_in inputs and n_out outputs."""
    d = Diagram()
    v = d.add_vertex(kind, phase)
    for _ in range(n_in):
        d.add_edge(d.add_input(), v)
    for _ in range(n_out):
        d.add_edge(v, d.add_output())
    return d


def hadamard_diagram() -> Diagram:
    """A single H-box on a wire."""
    d = Diagram()
    h = d.add_vertex(VertexKind.H)
    d.add_edge(d.add_input(), h)
    d.add_edge(h, d.add_output())
    return d


def cap_diagram() -> Diagram:
    """The 0 -> 2 bent wire."""
    d = Diagram()
    a = d.add_output()
    b = d.add_output()
    d.add_edge(a, b)
    return d


def cup_diagram() -> Diagram:
    """The 2 -> 0 bent wire."""
    d = Diagram()
    a = d.add_input()
    b = d.add_input()
    d.add_edge(a, b)
    return d
