"""Exact clique search on the intersection graph of independent r-sets.

The vertices of the search graph are the independent r-sets of a host graph
(bit masks over host labels); two are adjacent iff they share a label, so
cliques are exactly intersecting families.

Branch and bound follows the usual greedy-colouring scheme: candidates are
coloured greedily in a fixed priority order (descending degree, then
lexicographic), the colour count bounds the clique size, and vertices are
expanded from the highest colour down.  Two additions keep desk-scale runs
fast on very symmetric hosts:

* orbital branching: automorphisms of the host fixing every chosen set act on
  the candidates; after exploring one member of an orbit the whole orbit is
  discarded;
* non-star search: every intersecting family either has a common vertex (so
  it lies in a star) or contains a small "core" with empty common
  intersection.  Searching only for the latter, with the largest star as the
  incumbent, decides both the EKR and the strictness question.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .graph import Graph
from .symmetry import automorphism_generators, membership_cells, permute_mask


class BudgetExceeded(RuntimeError):
    """Node budget exhausted before the search could finish."""

    def __init__(self, nodes: int):
        super().__init__(f"search node budget exhausted after {nodes} nodes")
        self.nodes = nodes


def _popcount(x: int) -> int:
    return bin(x).count("1")


@dataclass
class SearchResult:
    size: int
    clique: list[int]  # host bit masks of the chosen sets, empty if nothing beat the bound
    nodes: int
    complete: bool = True
    cliques: list[list[int]] = field(default_factory=list)


class IntersectingSearch:
    def __init__(self, g: Graph, masks: list[int], budget: int | None = None, symmetric: bool = True):
        self.g = g
        self.budget = budget
        self.symmetric = symmetric
        self.nodes = 0
        n = g.order
        star = [0] * n
        for i, m in enumerate(masks):
            for x in range(n):
                if (m >> x) & 1:
                    star[x] |= 1 << i
        raw_adj = []
        for i, m in enumerate(masks):
            a = 0
            for x in range(n):
                if (m >> x) & 1:
                    a |= star[x]
            raw_adj.append(a & ~(1 << i))
        # priority order: descending degree, then lexicographic position
        order = sorted(range(len(masks)), key=lambda i: (-_popcount(raw_adj[i]), i))
        pos = {old: new for new, old in enumerate(order)}
        self.sets = [masks[i] for i in order]
        self.index = {m: i for i, m in enumerate(self.sets)}
        self.adj = []
        for old in order:
            a, out = raw_adj[old], 0
            while a:
                low = a & -a
                out |= 1 << pos[low.bit_length() - 1]
                a ^= low
            self.adj.append(out)
        self.star = [0] * n
        for i, m in enumerate(self.sets):
            for x in range(n):
                if (m >> x) & 1:
                    self.star[x] |= 1 << i
        self.all = (1 << len(self.sets)) - 1

    # ------------------------------------------------------------ primitives

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceeded(self.nodes)

    def _colour_order(self, p: int) -> list[tuple[int, int]]:
        adj = self.adj
        out = []
        k = 0
        while p:
            k += 1
            q = p
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v]
                q ^= low
                p ^= low
                out.append((v, k))
        return out

    def _bound(self, p: int) -> int:
        adj = self.adj
        k = 0
        while p:
            k += 1
            q = p
            while q:
                low = q & -q
                q &= ~adj[low.bit_length() - 1]
                q ^= low
                p ^= low
        return k

    def _generators(self, chosen: list[int]) -> list[tuple[int, ...]]:
        if not self.symmetric:
            return []
        cells = membership_cells(self.g.order, [self.sets[i] for i in chosen])
        if len(cells) == self.g.order:
            return []
        return automorphism_generators(self.g, cells)

    def _orbits(self, p: int, gens: list[tuple[int, ...]]) -> list[int]:
        """Partition ``p`` (assumed invariant under ``gens``) into orbit masks."""
        members = []
        q = p
        while q:
            low = q & -q
            members.append(low.bit_length() - 1)
            q ^= low
        if not gens:
            return [1 << i for i in members]
        parent = {i: i for i in members}

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for i in members:
            for perm in gens:
                j = self.index[permute_mask(self.sets[i], perm)]
                a, b = find(i), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        orbits: dict[int, int] = {}
        for i in members:
            root = find(i)
            orbits[root] = orbits.get(root, 0) | (1 << i)
        return [orbits[k] for k in sorted(orbits)]

    # --------------------------------------------------------------- searches

    def max_clique(self, lower: int = 0) -> SearchResult:
        """Largest intersecting family of size > ``lower`` (plain colouring B&B)."""
        self._best, self._best_size = [], lower
        self._expand([], self.all, self._generators([]))
        return SearchResult(self._best_size if self._best else 0, self._masks(self._best), self.nodes)

    def max_nonstar(self, lower: int) -> SearchResult:
        """Largest family of size > ``lower`` whose members share no common vertex."""
        self._best, self._best_size = [], lower
        full = (1 << self.g.order) - 1
        self._core([], self.all, full, True)
        return SearchResult(self._best_size if self._best else 0, self._masks(self._best), self.nodes)

    def _masks(self, clique: list[int]) -> list[int]:
        return sorted(self.sets[i] for i in clique)

    def _core(self, chosen: list[int], p: int, common: int, sym: bool) -> None:
        self._tick()
        if len(chosen) + self._bound(p) <= self._best_size:
            return
        # a non-star extension must use a set missing part of ``common``
        w, q = 0, p
        while q:
            low = q & -q
            if self.sets[low.bit_length() - 1] & common != common:
                w |= low
            q ^= low
        if not w:
            return
        gens = self._generators(chosen) if sym else []
        for orbit in self._orbits(w, gens):
            if not p & orbit:
                continue
            v = (orbit & -orbit).bit_length() - 1
            nxt, grown = p & self.adj[v], chosen + [v]
            rest = common & self.sets[v]
            if rest:
                self._core(grown, nxt, rest, bool(gens))
            else:
                if len(grown) > self._best_size:
                    self._best, self._best_size = grown, len(grown)
                if nxt:
                    self._expand(grown, nxt, self._generators(grown) if gens else [])
            p &= ~orbit
            if len(chosen) + self._bound(p) <= self._best_size:
                return

    def _expand(self, chosen: list[int], p: int, gens: list[tuple[int, ...]]) -> None:
        self._tick()
        orbit_of = None
        if gens:
            orbit_of = {}
            for orbit in self._orbits(p, gens):
                q = orbit
                while q:
                    low = q & -q
                    orbit_of[low.bit_length() - 1] = orbit
                    q ^= low
        for v, colour in reversed(self._colour_order(p)):
            if not (p >> v) & 1:
                continue
            if len(chosen) + colour <= self._best_size:
                return
            grown, nxt = chosen + [v], p & self.adj[v]
            if nxt:
                self._expand(grown, nxt, self._generators(grown) if gens else [])
            elif len(grown) > self._best_size:
                self._best, self._best_size = grown, len(grown)
            p &= ~(orbit_of[v] if orbit_of else 1 << v)

    def enumerate_cliques(self, size: int, cap: int) -> SearchResult:
        """Every intersecting family of exactly ``size`` sets, up to ``cap`` of them."""
        found: list[list[int]] = []
        state = {"complete": True}

        def walk(chosen: list[int], p: int) -> bool:
            self._tick()
            if len(chosen) == size:
                if len(found) >= cap:
                    state["complete"] = False
                    return False
                found.append(self._masks(chosen))
                return True
            for v, colour in reversed(self._colour_order(p)):
                if not (p >> v) & 1:
                    continue
                if len(chosen) + colour < size:
                    return True
                if not walk(chosen + [v], p & self.adj[v]):
                    return False
                p &= ~(1 << v)
            return True

        if size == 0:
            found.append([])
        else:
            walk([], self.all)
        return SearchResult(size, found[0] if found else [], self.nodes, state["complete"], found)
