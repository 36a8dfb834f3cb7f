"""Automorphism groups, canonical labelling and isomorphism testing.

The search is the classic individualisation-refinement scheme:

* refine an ordered partition to the coarsest equitable one,
* individualise a vertex of the first smallest non-singleton cell,
* recurse until the partition is discrete.

Every node carries an invariant ``(number of cells, hash of the refinement
trace)``.  Leaves are ranked first by the invariant sequence on their path
and then by a certificate equivalent to the graph6 string of the relabelled
graph; the canonical form is the best leaf.  Two leaves with equal
invariants and certificates give an automorphism.  Subtrees are pruned by
orbits of the automorphisms found so far that fix the current prefix, and
by invariants that can neither reproduce the first leaf nor beat the best.

The first path yields a base, and the generators found form a strong
generating set relative to it, so the group order comes out exactly.
"""

from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graph import Graph, apply_perm, bfs_distances, graph6_encode
from .perm import Permutation, PermGroup, schreier_sims


class OrderedPartition:
    """Ordered partition of ``0..n-1`` with cells stored contiguously in ``lab``.

    ``cell_of[v]`` is the start position of the cell holding ``v`` and
    ``cell_end[s]`` the end (exclusive) of the cell starting at ``s``.
    """

    __slots__ = ("lab", "pos", "cell_of", "cell_end", "ncells")

    def __init__(self, cells: Sequence[Sequence[int]], n: int | None = None):
        lab = [v for c in cells for v in c]
        if n is None:
            n = len(lab)
        if any(len(c) == 0 for c in cells) or sorted(lab) != list(range(n)):
            raise ValueError("cells must be non-empty, disjoint and cover every vertex")
        self.lab = lab
        self.pos = [0] * n
        self.cell_of = [0] * n
        self.cell_end = [0] * n
        start = 0
        for c in cells:
            end = start + len(c)
            self.cell_end[start] = end
            for i in range(start, end):
                v = lab[i]
                self.pos[v] = i
                self.cell_of[v] = start
            start = end
        self.ncells = len(cells)

    @classmethod
    def unit(cls, n: int) -> "OrderedPartition":
        return cls([list(range(n))], n)

    def copy(self) -> "OrderedPartition":
        p = object.__new__(OrderedPartition)
        p.lab = self.lab.copy()
        p.pos = self.pos.copy()
        p.cell_of = self.cell_of.copy()
        p.cell_end = self.cell_end.copy()
        p.ncells = self.ncells
        return p

    def cell_starts(self) -> list[int]:
        out = []
        s = 0
        n = len(self.lab)
        while s < n:
            out.append(s)
            s = self.cell_end[s]
        return out

    def cells(self) -> list[list[int]]:
        return [sorted(self.lab[s : self.cell_end[s]]) for s in self.cell_starts()]

    def is_discrete(self) -> bool:
        return self.ncells == len(self.lab)

    def __repr__(self) -> str:
        return "OrderedPartition(" + " | ".join(" ".join(map(str, c)) for c in self.cells()) + ")"


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    automorphisms: int = 0
    prunes_invariant: int = 0
    prunes_automorphism: int = 0


def _refine(adj: Sequence[Sequence[int]], part: OrderedPartition, active: Sequence[int]) -> int:
    """Refine ``part`` in place to the coarsest equitable partition below it.

    ``active`` lists start positions of the cells to use as splitters.  A
    split cell is replaced by its fragments ordered by neighbour count, so
    the result is independent of vertex names.  Returns a hash of the
    splitting trace.
    """
    lab, pos, cell_of, cell_end = part.lab, part.pos, part.cell_of, part.cell_end
    n = len(lab)
    in_queue = bytearray(n)
    heap = sorted(set(active))
    for s in heap:
        in_queue[s] = 1
    code = 0
    while heap and part.ncells < n:
        s = heapq.heappop(heap)
        in_queue[s] = 0
        counts: dict[int, int] = {}
        for i in range(s, cell_end[s]):
            for u in adj[lab[i]]:
                counts[u] = counts.get(u, 0) + 1
        by_cell: dict[int, list[int]] = {}
        for u in counts:
            by_cell.setdefault(cell_of[u], []).append(u)
        for cs in sorted(by_cell):
            ce = cell_end[cs]
            if ce - cs == 1:
                continue
            touched = by_cell[cs]
            k = len(touched)
            if k == ce - cs:
                c0 = counts[touched[0]]
                if all(counts[u] == c0 for u in touched):
                    continue
            touched.sort(key=counts.__getitem__)
            tail = ce - k
            # move the touched vertices into [tail, ce) in count order
            vacated = [pos[u] for u in touched if pos[u] < tail]
            displaced = [lab[i] for i in range(tail, ce) if lab[i] not in counts]
            for p, v in zip(vacated, displaced):
                lab[p] = v
                pos[v] = p
            for i, u in enumerate(touched, start=tail):
                lab[i] = u
                pos[u] = i
            frags = []
            if tail > cs:
                frags.append((cs, tail, 0))
            i = tail
            while i < ce:
                c = counts[lab[i]]
                j = i + 1
                while j < ce and counts[lab[j]] == c:
                    j += 1
                frags.append((i, j, c))
                i = j
            for fs, fe, _ in frags:
                cell_end[fs] = fe
                if fs != cs:
                    for i in range(fs, fe):
                        cell_of[lab[i]] = fs
            part.ncells += len(frags) - 1
            code = hash((code, s, cs, tuple((fe - fs, c) for fs, fe, c in frags)))
            if in_queue[cs]:
                new = frags[1:]
            else:
                largest = max(range(len(frags)), key=lambda t: (frags[t][1] - frags[t][0], -t))
                new = [f for t, f in enumerate(frags) if t != largest]
            for fs, _, _ in new:
                if not in_queue[fs]:
                    in_queue[fs] = 1
                    heapq.heappush(heap, fs)
    return code


def _individualize(part: OrderedPartition, v: int) -> int:
    """Split ``v`` off the end of its cell; returns the new singleton's position."""
    lab, pos = part.lab, part.pos
    cs = part.cell_of[v]
    ce = part.cell_end[cs]
    last = ce - 1
    w = lab[last]
    p = pos[v]
    lab[p], lab[last] = w, v
    pos[w], pos[v] = p, last
    part.cell_end[cs] = last
    part.cell_end[last] = ce
    part.cell_of[v] = last
    part.ncells += 1
    return last


def equitable_refinement(g: Graph, p: OrderedPartition) -> OrderedPartition:
    """Coarsest equitable partition refining ``p`` (``p`` is not modified)."""
    if len(p.lab) != g.n:
        raise ValueError("partition does not match the graph")
    q = p.copy()
    _refine(g.adj, q, q.cell_starts())
    return q


def _root(g: Graph) -> tuple[OrderedPartition, tuple[int, int]]:
    part = OrderedPartition.unit(g.n)
    code = _refine(g.adj, part, [0])
    return part, (part.ncells, code)


def _target_cell(part: OrderedPartition) -> int:
    best = -1
    best_size = len(part.lab) + 1
    s = 0
    n = len(part.lab)
    cell_end = part.cell_end
    while s < n:
        e = cell_end[s]
        size = e - s
        if 1 < size < best_size:
            best, best_size = s, size
            if size == 2:
                break
        s = e
    return best


def _cmp(a: list, b: list) -> int:
    return (a > b) - (a < b)


def _common_prefix(a: list[int], b: list[int]) -> int:
    k = 0
    for x, y in zip(a, b):
        if x != y:
            break
        k += 1
    return k


@dataclass
class _Leaf:
    lab: np.ndarray
    cert: bytes
    invs: list
    prefix: list[int]


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.n = g.n
        self.adj = g.adj
        e = g.edge_array()
        self.eu = e[:, 0]
        self.ev = e[:, 1]
        self.gens: list[np.ndarray] = []
        self.stats = SearchStats()
        self.first: _Leaf | None = None
        self.best: _Leaf | None = None

    def certificate(self, part: OrderedPartition) -> bytes:
        # maximising the sorted positions of the 1-bits minimises the graph6 string
        new = np.array(part.pos, dtype=np.int64)
        a = new[self.eu]
        b = new[self.ev]
        hi = np.maximum(a, b)
        lo = np.minimum(a, b)
        code = np.sort(hi * (hi - 1) // 2 + lo)
        return code.astype(">i8").tobytes()

    def run(self) -> None:
        part, inv = _root(self.g)
        old = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old, 3 * self.n + 1000))
        try:
            self.visit(part, [inv], [])
        finally:
            sys.setrecursionlimit(old)

    def _add_automorphism(self, lab_from: np.ndarray, lab_to: np.ndarray) -> None:
        gamma = np.empty(self.n, dtype=np.int32)
        gamma[lab_from] = lab_to
        a = gamma[self.eu]
        b = gamma[self.ev]
        ea = np.sort(np.minimum(a, b) * self.n + np.maximum(a, b))
        eb = np.sort(self.eu * self.n + self.ev)
        if not np.array_equal(ea, eb):
            raise AssertionError("leaf certificates matched but mapping is not an automorphism")
        gamma.flags.writeable = False
        self.gens.append(gamma)
        self.stats.automorphisms += 1

    def _orbit_roots(self, cell: list[int], prefix: list[int]) -> dict[int, int]:
        parent = {v: v for v in cell}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pre = np.array(prefix, dtype=np.int64)
        for a in self.gens:
            if len(pre) and not np.array_equal(a[pre], pre):
                continue
            for v in cell:
                rv, rw = find(v), find(int(a[v]))
                if rv != rw:
                    parent[max(rv, rw)] = min(rv, rw)
        return {v: find(v) for v in cell}

    def visit(self, part: OrderedPartition, invs: list, prefix: list[int]) -> int:
        depth = len(prefix)
        self.stats.nodes += 1
        if part.ncells == self.n:
            return self.leaf(part, invs, prefix)
        cs = _target_cell(part)
        cell = sorted(part.lab[cs : part.cell_end[cs]])
        explored: list[int] = []
        roots: dict[int, int] | None = None
        roots_gens = -1
        for v in cell:
            if explored:
                if roots_gens != len(self.gens):
                    roots = self._orbit_roots(cell, prefix)
                    roots_gens = len(self.gens)
                rv = roots[v]
                if any(roots[w] == rv for w in explored):
                    self.stats.prunes_automorphism += 1
                    continue
            explored.append(v)
            child = part.copy()
            s = _individualize(child, v)
            code = _refine(self.adj, child, [s])
            path = invs + [(child.ncells, hash((cs, code)))]
            if self.first is not None:
                d = len(path)
                eq_first = path == self.first.invs[:d]
                if not eq_first and _cmp(path, self.best.invs[:d]) > 0:
                    self.stats.prunes_invariant += 1
                    continue
            ret = self.visit(child, path, prefix + [v])
            if ret < depth:
                return ret
        return depth - 1

    def leaf(self, part: OrderedPartition, invs: list, prefix: list[int]) -> int:
        depth = len(prefix)
        self.stats.leaves += 1
        lab = np.array(part.lab, dtype=np.int32)
        cert = self.certificate(part)
        leaf = _Leaf(lab, cert, invs, prefix)
        if self.first is None:
            self.first = self.best = leaf
            return depth - 1
        if invs == self.first.invs and cert == self.first.cert:
            self._add_automorphism(self.first.lab, lab)
            return _common_prefix(prefix, self.first.prefix)
        c = _cmp(invs, self.best.invs)
        if c == 0 and cert == self.best.cert:
            self._add_automorphism(self.best.lab, lab)
            return _common_prefix(prefix, self.best.prefix)
        if c < 0 or (c == 0 and cert > self.best.cert):
            self.best = leaf
        return depth - 1

    def group(self) -> PermGroup:
        base = self.first.prefix
        order = 1
        for i, b in enumerate(base):
            pre = np.array(base[:i], dtype=np.int64)
            gens = [a for a in self.gens if not len(pre) or np.array_equal(a[pre], pre)]
            orbit = {b}
            frontier = [b]
            while frontier:
                x = frontier.pop()
                for a in gens:
                    y = int(a[x])
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)
            order *= len(orbit)
        perms = [Permutation._wrap(a) for a in self.gens]
        return schreier_sims(perms, degree=self.n, base=base, order=order)

    def canonical_labeling(self) -> Permutation:
        lab = self.best.lab
        pos = np.empty(self.n, dtype=np.int32)
        pos[lab] = np.arange(self.n, dtype=np.int32)
        return Permutation._wrap(pos)


@dataclass(frozen=True)
class SearchResult:
    group: PermGroup
    stats: SearchStats
    labeling: Permutation
    canonical_graph6: str


@lru_cache(maxsize=512)
def search(g: Graph) -> SearchResult:
    """Run the full search once; results are cached per graph."""
    s = _Search(g)
    s.run()
    labeling = s.canonical_labeling()
    canon = graph6_encode(apply_perm(g, labeling))
    return SearchResult(s.group(), s.stats, labeling, canon)


def automorphism_group(g: Graph) -> tuple[PermGroup, SearchStats]:
    r = search(g)
    return r.group, r.stats


def canonical_form(g: Graph) -> tuple[Permutation, str]:
    r = search(g)
    return r.labeling, r.canonical_graph6


def _quick_invariant(g: Graph) -> tuple:
    return (g.n, g.num_edges, tuple(sorted(g.degrees())), _root(g)[1])


def are_isomorphic(a: Graph, b: Graph) -> bool:
    if _quick_invariant(a) != _quick_invariant(b):
        return False
    return canonical_form(a)[1] == canonical_form(b)[1]


def find_isomorphism(a: Graph, b: Graph) -> Permutation | None:
    """A permutation ``phi`` with ``apply_perm(a, phi) == b``, or ``None``."""
    if not are_isomorphic(a, b):
        return None
    la, _ = canonical_form(a)
    lb, _ = canonical_form(b)
    return la * lb.inverse()


def vertex_invariant(g: Graph, v: int) -> tuple:
    """Isomorphism invariant of the rooted graph ``(g, v)``.

    For a vertex-transitive graph it does not depend on ``v``, which makes it
    a cheap pre-filter for isomorphism against vertex-transitive candidates.
    """
    part, root_inv = _root(g)
    s = _individualize(part, v)
    code = _refine(g.adj, part, [s])
    dist = bfs_distances(g, v)
    layers = tuple(np.bincount([d for d in dist if d >= 0]).tolist())
    return (g.n, g.num_edges, root_inv, part.ncells, code, layers)
