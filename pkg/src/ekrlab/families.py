"""Independent r-sets, stars and intersecting families."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

from .graph import Graph, GraphError, bits, mask_of

VertexSet = tuple[int, ...]


class FamilyError(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    """Duplicate-free, lexicographically ordered collection of sorted r-sets."""

    r: int
    sets: tuple[VertexSet, ...] = ()

    def __post_init__(self):
        if self.r < 0:
            raise FamilyError("arity must be non-negative")
        prev = None
        for s in self.sets:
            if len(s) != self.r:
                raise FamilyError(f"set {list(s)} has arity {len(s)}, expected {self.r}")
            if any(a >= b for a, b in zip(s, s[1:])):
                raise FamilyError(f"set {list(s)} is not strictly increasing")
            if prev is not None and not prev < s:
                kind = "duplicate" if prev == s else "out of lexicographic order"
                raise FamilyError(f"set {list(s)} is {kind}")
            prev = s

    @classmethod
    def of(cls, r: int, sets: Iterable[Iterable[int]]) -> "Family":
        """Canonicalize arbitrary input (sorts members, drops duplicates)."""
        return cls(r, tuple(sorted({tuple(sorted(s)) for s in sets})))

    @classmethod
    def from_masks(cls, r: int, masks: Iterable[int]) -> "Family":
        return cls.of(r, (tuple(bits(m)) for m in masks))

    def masks(self) -> list[int]:
        return [mask_of(s) for s in self.sets]

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.sets)

    def __contains__(self, s) -> bool:
        return tuple(sorted(s)) in set(self.sets)

    def common(self) -> frozenset[int]:
        """Vertices lying in every member (empty for the empty family)."""
        if not self.sets:
            return frozenset()
        out = set(self.sets[0])
        for s in self.sets[1:]:
            out &= set(s)
        return frozenset(out)

    def to_json(self) -> dict:
        return {"r": self.r, "sets": [list(s) for s in self.sets]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def family_from_json(obj) -> Family:
    """Strict parser for ``{"r": int, "sets": [[...], ...]}``."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise FamilyError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict) or set(obj) != {"r", "sets"}:
        raise FamilyError('family JSON must be an object with exactly "r" and "sets"')
    r, sets = obj["r"], obj["sets"]
    if not isinstance(r, int) or isinstance(r, bool):
        raise FamilyError('"r" must be an integer')
    if not isinstance(sets, list) or not all(isinstance(s, list) for s in sets):
        raise FamilyError('"sets" must be a list of lists')
    for s in sets:
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in s):
            raise FamilyError(f"set {s} contains a non-integer label")
    return Family(r, tuple(tuple(s) for s in sets))


def _check_labels(g: Graph, s: Sequence[int]) -> None:
    for x in s:
        if not isinstance(x, int) or not 1 <= x <= g.order:
            raise GraphError(f"label {x!r} outside 1..{g.order}")


def is_independent(g: Graph, s: Sequence[int]) -> bool:
    _check_labels(g, s)
    m = mask_of(s)
    return all(not (g.rows[x - 1] & m) for x in s)


def independent_masks(g: Graph, r: int, within: int | None = None) -> list[int]:
    """All independent r-sets as bit masks, in lexicographic order of members.

    Depth-first: each step extends with a larger label that is not adjacent to
    anything chosen so far.
    """
    n = g.order
    rows = g.rows
    allowed = ((1 << n) - 1) if within is None else within
    out: list[int] = []
    if r == 0:
        return [0]
    if r > n:
        return out

    def extend(cand: int, chosen: int, depth: int) -> None:
        while cand:
            low = cand & -cand
            x = low.bit_length() - 1
            cand ^= low
            if depth + 1 == r:
                out.append(chosen | low)
            else:
                # remaining candidates are above x already; drop neighbours of x
                nxt = cand & ~rows[x]
                if bin(nxt).count("1") >= r - depth - 1:
                    extend(nxt, chosen | low, depth + 1)

    extend(allowed, 0, 0)
    return out


def enumerate_independent(g: Graph, r: int) -> Family:
    if not isinstance(r, int) or r < 1:
        raise FamilyError("r must be a positive integer")
    return Family.from_masks(r, independent_masks(g, r))


def star(g: Graph, v: int, r: int) -> Family:
    g._check(v)
    if r < 1:
        raise FamilyError("r must be a positive integer")
    # v first, then everything not adjacent to v
    allowed = ((1 << g.order) - 1) & ~g.rows[v - 1] & ~(1 << (v - 1))
    if r == 1:
        return Family(1, ((v,),))
    inner = independent_masks(g, r - 1, within=allowed)
    return Family.from_masks(r, (m | (1 << (v - 1)) for m in inner))


class MaxStar(NamedTuple):
    size: int
    argmax: tuple[int, ...]


def star_sizes(g: Graph, r: int) -> list[int]:
    counts = [0] * g.order
    for m in independent_masks(g, r):
        for x in bits(m):
            counts[x - 1] += 1
    return counts


def max_star(g: Graph, r: int) -> MaxStar:
    if r < 1:
        raise FamilyError("r must be a positive integer")
    counts = star_sizes(g, r)
    best = max(counts, default=0)
    if best == 0:
        return MaxStar(0, ())
    return MaxStar(best, tuple(i + 1 for i, c in enumerate(counts) if c == best))


def disjoint_pair(family: Iterable[Sequence[int]]) -> tuple[VertexSet, VertexSet] | None:
    sets = [tuple(s) for s in family]
    masks = [mask_of(s) for s in sets]
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            if not masks[i] & masks[j]:
                return sets[i], sets[j]
    return None


def is_intersecting(family: Iterable[Sequence[int]]) -> bool:
    return disjoint_pair(family) is None


def is_star_family(family: Family) -> bool:
    """True iff some vertex lies in every member (vacuously true when empty)."""
    return not family.sets or bool(family.common())
