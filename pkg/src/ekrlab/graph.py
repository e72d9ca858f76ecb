"""Labeled simple graphs on 1..n and the two edge operators used by compression.

Rows are stored as integer bit masks: bit ``u - 1`` of ``rows[v - 1]`` is set
iff ``u`` and ``v`` are adjacent.  Graphs are immutable; operators return a new
graph together with a :class:`VertexMap` describing where every old label went.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

DEFAULT_CAP_N = 64


class GraphError(ValueError):
    """Invalid graph construction or operator argument."""


class SpecError(GraphError):
    """Malformed graph-spec string."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def order_cap() -> int:
    raw = os.environ.get("EKRLAB_CAP_N")
    if raw is None:
        return DEFAULT_CAP_N
    try:
        cap = int(raw)
    except ValueError:
        raise GraphError(f"EKRLAB_CAP_N must be an integer, got {raw!r}") from None
    if cap < 1:
        raise GraphError("EKRLAB_CAP_N must be positive")
    return cap


def bits(mask: int) -> Iterator[int]:
    """Yield labels (1-based) of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def mask_of(labels: Iterable[int]) -> int:
    m = 0
    for x in labels:
        m |= 1 << (x - 1)
    return m


@dataclass(frozen=True)
class Graph:
    order: int
    rows: tuple[int, ...]
    provenance: str | None = field(default=None, compare=False)

    def __post_init__(self):
        n = self.order
        if n < 0:
            raise GraphError("order must be non-negative")
        cap = order_cap()
        if n > cap:
            raise GraphError(f"order {n} exceeds cap {cap} (set EKRLAB_CAP_N to raise it)")
        if len(self.rows) != n:
            raise GraphError("rows length does not match order")
        full = (1 << n) - 1
        for i, row in enumerate(self.rows):
            if row & ~full:
                raise GraphError(f"row {i + 1} references labels outside 1..{n}")
            if (row >> i) & 1:
                raise GraphError(f"self-loop at {i + 1}")
            for j in bits(row):
                if not (self.rows[j - 1] >> i) & 1:
                    raise GraphError(f"asymmetric adjacency between {i + 1} and {j}")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[Sequence[int]], provenance: str | None = None) -> "Graph":
        rows = [0] * order
        for a, b in edges:
            if not (1 <= a <= order and 1 <= b <= order):
                raise GraphError(f"edge ({a},{b}) outside 1..{order}")
            if a == b:
                raise GraphError(f"self-loop at {a}")
            rows[a - 1] |= 1 << (b - 1)
            rows[b - 1] |= 1 << (a - 1)
        return cls(order, tuple(rows), provenance)

    @property
    def vertices(self) -> range:
        return range(1, self.order + 1)

    def adjacent(self, a: int, b: int) -> bool:
        self._check(a)
        self._check(b)
        return bool((self.rows[a - 1] >> (b - 1)) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in self.vertices for b in bits(self.rows[a - 1]) if a < b]

    @property
    def num_edges(self) -> int:
        return sum(bin(r).count("1") for r in self.rows) // 2

    def _check(self, v: int) -> None:
        if not isinstance(v, int) or not 1 <= v <= self.order:
            raise GraphError(f"vertex label {v!r} outside 1..{self.order}")

    def __repr__(self) -> str:
        tag = self.provenance or "graph"
        return f"Graph({tag}, n={self.order}, m={self.num_edges})"


@dataclass(frozen=True)
class EdgeRef:
    """Edge ``{v, w}``; under contraction ``w`` is absorbed into ``v``."""

    v: int
    w: int

    def __post_init__(self):
        if self.v == self.w:
            raise GraphError("edge endpoints must differ")

    @classmethod
    def parse(cls, text: str) -> "EdgeRef":
        m = re.fullmatch(r"\s*(\d+)\s*,\s*(\d+)\s*", text)
        if not m:
            raise GraphError(f"edge must look like 'v,w', got {text!r}")
        return cls(int(m.group(1)), int(m.group(2)))


def as_edge(e: EdgeRef | Sequence[int]) -> EdgeRef:
    return e if isinstance(e, EdgeRef) else EdgeRef(*e)


@dataclass(frozen=True)
class VertexMap:
    """Old label -> new label; ``None`` marks a label removed by ``down``."""

    kind: str  # "contract" or "down"
    images: tuple[int | None, ...]

    def __call__(self, x: int) -> int | None:
        if not 1 <= x <= len(self.images):
            raise GraphError(f"label {x} outside map domain 1..{len(self.images)}")
        return self.images[x - 1]

    @property
    def removed(self) -> frozenset[int]:
        return frozenset(i + 1 for i, y in enumerate(self.images) if y is None)

    @property
    def survivors(self) -> tuple[int, ...]:
        return tuple(i + 1 for i, y in enumerate(self.images) if y is not None)

    def preimage(self, y: int) -> tuple[int, ...]:
        return tuple(i + 1 for i, z in enumerate(self.images) if z == y)

    def pull_back(self, labels: Iterable[int]) -> tuple[int, ...]:
        """Old labels of a set given in new labels (``down`` maps only: injective)."""
        if self.kind != "down":
            raise GraphError("pull_back is only defined for down maps")
        inverse = {y: i + 1 for i, y in enumerate(self.images) if y is not None}
        try:
            return tuple(sorted(inverse[y] for y in labels))
        except KeyError as exc:
            raise GraphError(f"label {exc.args[0]} has no preimage") from None


# ---------------------------------------------------------------- constructors

def _positive(name: str, value: int) -> None:
    if not isinstance(value, int) or value < 1:
        raise GraphError(f"{name} must be a positive integer, got {value!r}")


def empty_graph(n: int) -> Graph:
    _positive("n", n)
    return Graph(n, (0,) * n, f"empty:{n}")


def complete_graph(t: int) -> Graph:
    _positive("t", t)
    full = (1 << t) - 1
    return Graph(t, tuple(full & ~(1 << i) for i in range(t)), f"complete:{t}")


def path_power(n: int, k: int) -> Graph:
    _positive("n", n)
    _positive("k", k)
    edges = [(a, b) for a in range(1, n + 1) for b in range(a + 1, min(n, a + k) + 1)]
    return Graph.from_edges(n, edges, f"path:{n}:{k}")


def cycle_power(n: int, k: int) -> Graph:
    _positive("n", n)
    _positive("k", k)
    edges = []
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            d = (b - a) % n
            if 1 <= min(d, n - d) <= k:
                edges.append((a, b))
    return Graph.from_edges(n, edges, f"cycle:{n}:{k}")


def _atoms(provenance: str | None) -> list[str] | None:
    if provenance is None:
        return None
    if provenance.startswith("union:"):
        return provenance[len("union:"):].split("+")
    return [provenance]


def disjoint_union(parts: Sequence[Graph]) -> Graph:
    """Place ``parts`` side by side, relabeling consecutively part by part."""
    if not parts:
        raise GraphError("disjoint_union needs at least one part")
    rows: list[int] = []
    offset = 0
    atoms: list[str] | None = []
    for g in parts:
        rows.extend(row << offset for row in g.rows)
        offset += g.order
        sub = _atoms(g.provenance)
        atoms = None if atoms is None or sub is None else atoms + sub
    prov = None if atoms is None else "union:" + "+".join(atoms)
    return Graph(offset, tuple(rows), prov)


def part_sizes(g: Graph) -> list[int]:
    """Component block sizes recorded in a union's provenance."""
    atoms = _atoms(g.provenance)
    if atoms is None:
        raise GraphError("graph has no provenance")
    return [parse_spec(a).order for a in atoms]


# ------------------------------------------------------------------ operators

def neighbors(g: Graph, v: int) -> frozenset[int]:
    g._check(v)
    return frozenset(bits(g.rows[v - 1]))


def _require_edge(g: Graph, e: EdgeRef) -> None:
    g._check(e.v)
    g._check(e.w)
    if not g.adjacent(e.v, e.w):
        raise GraphError(f"({e.v},{e.w}) is not an edge")


def contract(g: Graph, e: EdgeRef | Sequence[int]) -> tuple[Graph, VertexMap]:
    """Contract ``e``: ``w`` merges into ``v``; labels are then compacted to 1..n-1."""
    e = as_edge(e)
    _require_edge(g, e)
    v, w = e.v, e.w

    def compact(x: int) -> int:
        return x if x < w else x - 1

    images = tuple(compact(v if x == w else x) for x in g.vertices)
    rows = [0] * (g.order - 1)
    for a, b in g.edges():
        ia, ib = images[a - 1], images[b - 1]
        if ia != ib:
            rows[ia - 1] |= 1 << (ib - 1)
            rows[ib - 1] |= 1 << (ia - 1)
    return Graph(g.order - 1, tuple(rows)), VertexMap("contract", images)


def closed_neighborhood(g: Graph, e: EdgeRef | Sequence[int]) -> frozenset[int]:
    e = as_edge(e)
    return frozenset({e.v, e.w}) | neighbors(g, e.v) | neighbors(g, e.w)


def down(g: Graph, e: EdgeRef | Sequence[int]) -> tuple[Graph, VertexMap]:
    """Delete both endpoints of ``e`` and every neighbour of either."""
    e = as_edge(e)
    _require_edge(g, e)
    removed = closed_neighborhood(g, e)
    images: list[int | None] = []
    nxt = 0
    for x in g.vertices:
        if x in removed:
            images.append(None)
        else:
            nxt += 1
            images.append(nxt)
    return induced(g, [x for x in g.vertices if x not in removed]), VertexMap("down", tuple(images))


def induced(g: Graph, keep: Sequence[int]) -> Graph:
    """Subgraph induced by ``keep`` (sorted), relabeled 1..len(keep)."""
    keep = sorted(keep)
    pos = {x: i for i, x in enumerate(keep)}
    rows = []
    for x in keep:
        row = 0
        for y in bits(g.rows[x - 1]):
            if y in pos:
                row |= 1 << pos[y]
        rows.append(row)
    return Graph(len(keep), tuple(rows))


# ------------------------------------------------------------------------ DSL

_ARITY = {"empty": 1, "complete": 1, "path": 2, "cycle": 2}
_BUILD = {"empty": empty_graph, "complete": complete_graph, "path": path_power, "cycle": cycle_power}


def _parse_atom(text: str, start: int) -> Graph:
    fields = text.split(":")
    kind = fields[0]
    if kind not in _ARITY:
        raise SpecError(f"unknown graph kind {kind!r}", start)
    want = _ARITY[kind]
    if len(fields) - 1 != want:
        raise SpecError(f"{kind} takes {want} parameter(s), got {len(fields) - 1}", start)
    args = []
    pos = start + len(kind) + 1
    for f in fields[1:]:
        if not re.fullmatch(r"[0-9]+", f):
            raise SpecError(f"expected a positive integer, got {f!r}", pos)
        value = int(f)
        if value < 1:
            raise SpecError("parameter must be at least 1", pos)
        args.append(value)
        pos += len(f) + 1
    try:
        return _BUILD[kind](*args)
    except GraphError as exc:
        raise SpecError(str(exc), start) from None


def parse_spec(text: str) -> Graph:
    """Parse ``empty:<n>``, ``complete:<t>``, ``path:<n>:<k>``, ``cycle:<n>:<k>``
    or ``union:<spec>+<spec>+...`` (nested unions are flattened)."""
    if not isinstance(text, str) or not text:
        raise SpecError("empty graph spec", 0)
    if not text.startswith("union:"):
        if "+" in text:
            raise SpecError("'+' is only allowed inside union:", text.index("+"))
        return _parse_atom(text, 0)
    parts = []
    pos = len("union:")
    for chunk in text[pos:].split("+"):
        inner, offset = chunk, 0
        while inner.startswith("union:"):
            inner = inner[len("union:"):]
            offset += len("union:")
        if not inner:
            raise SpecError("empty union member", pos)
        parts.append(_parse_atom(inner, pos + offset))
        pos += len(chunk) + 1
    return disjoint_union(parts)


def render(g: Graph) -> str:
    """Canonical DSL string for a constructed graph."""
    if g.provenance is None:
        raise GraphError("graph was not built from a spec and has no canonical rendering")
    return g.provenance
