"""Graph families and exceptional graphs, with their named automorphisms.

Praeger-Xu digraphs ``vec C(r, s)`` have as vertices the ``(s-1)``-arcs of the
lexicographic product of a directed ``r``-cycle with two isolated vertices.
Such an arc is stored as ``(x; i_0, ..., i_{s-1})``, meaning the walk
``(x, i_0) -> (x+1, i_1) -> ... -> (x+s-1, i_{s-1})``, and gets index
``x * 2**s + int(i_0 i_1 ... i_{s-1}, base 2)``.  For ``s = 1`` that is the
familiar ``(x, i) -> 2x + i``.

Split graphs put ``v_+`` at index ``2v`` and ``v_-`` at ``2v + 1``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .graph import (
    Digraph,
    Graph,
    bipartite_double_cover,
    from_arcs,
    from_edges,
    is_digraph_automorphism,
)
from .perm import PermGroup, Permutation, schreier_sims


# -- Praeger-Xu graphs ---------------------------------------------------------


def _check_px(r: int, s: int) -> None:
    if r < 3 or not 1 <= s <= r - 1:
        raise ValueError(f"Praeger-Xu parameters need r >= 3 and 1 <= s <= r-1, got r={r}, s={s}")


def _px_label(x: int, bits: int, s: int) -> str:
    return f"{x};" + format(bits, f"0{s}b")


@dataclass
class PXBundle:
    """``vec C(r, s)`` together with ``tau_i``, ``rho``, ``sigma`` and the groups they generate."""

    r: int
    s: int
    digraph: Digraph
    graph: Graph
    tau: tuple[Permutation, ...]
    rho: Permutation
    sigma: Permutation
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.r * 2**self.s

    @cached_property
    def K(self) -> PermGroup:
        return schreier_sims(self.tau, degree=self.n, order=2**self.r)

    @cached_property
    def Hplus(self) -> PermGroup:
        return schreier_sims((*self.tau, self.rho), degree=self.n, order=self.r * 2**self.r)

    @cached_property
    def H(self) -> PermGroup:
        return schreier_sims((*self.tau, self.rho, self.sigma), degree=self.n, order=self.r * 2 ** (self.r + 1))

    def block(self, x: int) -> list[int]:
        """The ``K``-orbit ``Delta_x``: all arcs starting at first coordinate ``x``."""
        w = 2**self.s
        x %= self.r
        return list(range(x * w, (x + 1) * w))


def vec_px(r: int, s: int) -> PXBundle:
    _check_px(r, s)
    return _vec_px(r, s)


@lru_cache(maxsize=64)
def _vec_px(r: int, s: int) -> PXBundle:
    w = 2**s
    n = r * w
    mask = w - 1
    idx = np.arange(n)
    x = idx // w
    bits = idx % w

    arcs = []
    for v in range(n):
        nx = (x[v] + 1) % r
        shifted = (bits[v] << 1) & mask
        arcs.append((v, nx * w + shifted))
        arcs.append((v, nx * w + shifted + 1))
    labels = [_px_label(int(x[v]), int(bits[v]), s) for v in range(n)]
    d = from_arcs(n, arcs, labels)
    g = from_edges(n, arcs, labels)

    tau = []
    for i in range(r):
        # flip bit j (counted from the most significant end) wherever x + j == i
        j = (i - x) % r
        flip = np.where(j < s, 1 << (s - 1 - np.minimum(j, s - 1)), 0)
        tau.append(Permutation(x * w + (bits ^ flip)))
    rho = Permutation(((x + 1) % r) * w + bits)
    rev = np.array([int(format(b, f"0{s}b")[::-1], 2) for b in range(w)])
    sigma = Permutation(((-x - s + 1) % r) * w + rev[bits])
    return PXBundle(r, s, d, g, tuple(tau), rho, sigma)


def px(r: int, s: int) -> Graph:
    return vec_px(r, s).graph


def px_fpr_tau(r: int, s: int):
    """The closed form ``(r - s) / r`` for the fixed-point ratio of ``tau_0``."""
    from fractions import Fraction

    _check_px(r, s)
    return Fraction(r - s, r)


# -- split and merge -----------------------------------------------------------


def split_orientation(d: Digraph) -> Graph:
    """Split every vertex of an in/out-valence-2 digraph into ``v_+``, ``v_-``."""
    ins = d.in_neighbors()
    for v in range(d.n):
        if len(d.out[v]) != 2 or len(ins[v]) != 2:
            raise ValueError(f"vertex {v} does not have in- and out-valence 2")
    edges = [(2 * v, 2 * v + 1) for v in range(d.n)]
    edges += [(2 * u, 2 * v + 1) for u, v in d.arcs()]
    base = d.labels or tuple(str(v) for v in range(d.n))
    labels = [f"{base[v // 2]}{'+-'[v % 2]}" for v in range(2 * d.n)]
    return from_edges(2 * d.n, edges, labels)


def split_px(r: int, s: int) -> Graph:
    return split_orientation(vec_px(r, s).digraph)


def split_perm(d: Digraph, g: Permutation) -> Permutation:
    """The permutation of the split graph induced by an automorphism ``g`` of the
    underlying graph of ``d`` that either preserves or reverses every arc.

    Orientation-preserving ``g`` sends ``v_+`` to ``g(v)_+``; reversing ``g``
    must swap the two copies.
    """
    a = g.array.astype(np.int64)
    if is_digraph_automorphism(d, g):
        swap = 0
    elif all(d.has_arc(int(a[v]), int(a[u])) for u, v in d.arcs()):
        swap = 1
    else:
        raise ValueError("permutation neither preserves nor reverses the orientation")
    out = np.empty(2 * d.n, dtype=np.int64)
    out[0::2] = 2 * a + swap
    out[1::2] = 2 * a + 1 - swap
    return Permutation(out)


def split_group(d: Digraph, G: PermGroup) -> PermGroup:
    return schreier_sims([split_perm(d, g) for g in G.generators], degree=2 * d.n, order=G.order)


@dataclass(frozen=True)
class Matching:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(tuple(sorted(p)) for p in self.pairs)))

    def partner(self) -> dict[int, int]:
        out = {}
        for u, v in self.pairs:
            out[u] = v
            out[v] = u
        return out


def merge_matching(g: Graph, m: Matching) -> Graph:
    """Contract every edge of the perfect matching ``m``.

    Pairs become vertices in the order of ``m.pairs``; two pairs are adjacent
    when an edge of ``g`` joins them.  Two such edges between the same pairs
    are reported rather than collapsed.
    """
    block = [-1] * g.n
    for k, (u, v) in enumerate(m.pairs):
        if not g.has_edge(u, v):
            raise ValueError(f"matching pair {(u, v)} is not an edge")
        for w in (u, v):
            if block[w] != -1:
                raise ValueError(f"vertex {w} lies in two matching pairs")
            block[w] = k
    missing = [w for w in range(g.n) if block[w] == -1]
    if missing:
        raise ValueError(f"matching is not perfect, e.g. vertex {missing[0]} is unmatched")
    seen: dict[tuple[int, int], tuple[int, int]] = {}
    for u, v in g.edges():
        a, b = block[u], block[v]
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            raise ValueError(f"edges {seen[key]} and {(u, v)} join the same pair of matching edges")
        seen[key] = (u, v)
    labels = None
    if g.labels:
        labels = [f"{g.labels[u]}|{g.labels[v]}" for u, v in m.pairs]
    h = from_edges(len(m.pairs), seen.keys(), labels)
    if any(d != 4 for d in h.degrees()):
        raise ValueError("contraction is not 4-valent")
    return h


def derive_merge_matching(g: Graph, G: PermGroup) -> Matching:
    """The ``G``-invariant perfect matching of a cubic graph on which ``G`` is
    vertex- but not arc-transitive: ``w`` is matched with the neighbour that
    forms a singleton orbit of ``G_w`` on the neighbourhood of ``w``.
    """
    if any(d != 3 for d in g.degrees()):
        raise ValueError("graph is not 3-valent")
    partner = [-1] * g.n
    gens = [a.array for a in G.generators]
    for w0 in range(g.n):
        if partner[w0] != -1:
            continue
        stab = G.point_stabilizer(w0)
        nb = g.neighbors(w0)
        sizes = {u: len(set(stab.orbit_of(u)) & set(nb)) for u in nb}
        singles = [u for u in nb if sizes[u] == 1]
        if sorted(sizes.values()) != [1, 2, 2]:
            if all(c == 3 for c in sizes.values()):
                raise ValueError(f"stabiliser of {w0} is transitive on its neighbours (arc-transitive action)")
            raise ValueError(f"stabiliser of {w0} has orbit sizes {sorted(sizes.values())} on its neighbours")
        # transport (w0, partner) along the G-orbit of w0
        stack = [(w0, singles[0])]
        partner[w0] = singles[0]
        while stack:
            w, p = stack.pop()
            for a in gens:
                w2, p2 = int(a[w]), int(a[p])
                if partner[w2] == -1:
                    partner[w2] = p2
                    stack.append((w2, p2))
                elif partner[w2] != p2:
                    raise ValueError("group does not preserve a perfect matching")
    for w in range(g.n):
        if partner[partner[w]] != w:
            raise ValueError("derived pairs are not a matching")
    return Matching(tuple((w, partner[w]) for w in range(g.n) if w < partner[w]))


# -- the DW family -------------------------------------------------------------


def _check_dw(m: int) -> None:
    if m < 3:
        raise ValueError(f"dw needs m >= 3, got {m}")


def dw_orientation(m: int) -> Digraph:
    """Arcs ``(x, i) -> (x+1, j)`` for ``i != j`` on ``Z_m x Z_3``; vertex ``(x, i)`` is ``3x + i``."""
    _check_dw(m)
    arcs = [(3 * x + i, 3 * ((x + 1) % m) + j) for x in range(m) for i in range(3) for j in range(3) if i != j]
    return from_arcs(3 * m, arcs, [f"{x},{i}" for x in range(m) for i in range(3)])


def dw(m: int) -> tuple[Graph, Permutation]:
    """DW_m and its automorphism fixing every ``(x, 0)`` and swapping ``(x, 1)``, ``(x, 2)``."""
    d = dw_orientation(m)
    g = from_edges(d.n, d.arcs(), d.labels)
    images = [3 * x + (0, 2, 1)[i] for x in range(m) for i in range(3)]
    return g, Permutation(images)


def sdw(m: int) -> Graph:
    return split_orientation(dw_orientation(m))


# -- standard graphs -----------------------------------------------------------


def complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("both sides must be non-empty")
    return from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def complete_bipartite_minus_matching(n: int) -> Graph:
    if n < 2:
        raise ValueError("need n >= 2")
    return from_edges(2 * n, [(i, n + j) for i in range(n) for j in range(n) if i != j])


def kneser(n: int, k: int) -> Graph:
    if k < 1 or n < 2 * k:
        raise ValueError(f"kneser needs 1 <= k and n >= 2k, got n={n}, k={k}")
    subsets = list(itertools.combinations(range(n), k))
    sets = [frozenset(a) for a in subsets]
    edges = [(i, j) for i, j in itertools.combinations(range(len(sets)), 2) if not sets[i] & sets[j]]
    labels = ["{" + ",".join(map(str, a)) + "}" for a in subsets]
    return from_edges(len(sets), edges, labels)


def prism(n: int) -> Graph:
    """``Cay(Z_n x Z_2, {(0,1), (1,0), (-1,0)})``; vertex ``(x, i)`` is ``x + n*i``."""
    if n < 3:
        raise ValueError("prism needs n >= 3")
    edges = [(x, n + x) for x in range(n)]
    edges += [(i * n + x, i * n + (x + 1) % n) for i in range(2) for x in range(n)]
    return from_edges(2 * n, edges, [f"{x},{i}" for i in range(2) for x in range(n)])


def moebius(n: int) -> Graph:
    """``Cay(Z_2n, {1, -1, n})``."""
    if n < 2:
        raise ValueError("moebius needs n >= 2")
    N = 2 * n
    return from_edges(N, [(x, (x + 1) % N) for x in range(N)] + [(x, x + n) for x in range(n)])


def hypercube(d: int) -> Graph:
    if d < 1:
        raise ValueError("hypercube needs d >= 1")
    N = 2**d
    edges = [(v, v ^ (1 << b)) for v in range(N) for b in range(d) if v < v ^ (1 << b)]
    return from_edges(N, edges, [format(v, f"0{d}b") for v in range(N)])


def circulant(n: int, conn: Sequence[int]) -> Graph:
    """Circulant on ``Z_n``; the connection set is closed under negation."""
    if n < 2:
        raise ValueError("circulant needs n >= 2")
    S = {c % n for c in conn}
    if not S or 0 in S:
        raise ValueError("connection set must be non-empty and avoid 0 mod n")
    S |= {(-c) % n for c in S}
    return from_edges(n, [(x, (x + c) % n) for x in range(n) for c in S])


def generalized_petersen(n: int, k: int) -> Graph:
    if n < 3 or not 1 <= k < n / 2:
        raise ValueError(f"generalized Petersen needs n >= 3 and 1 <= k < n/2, got n={n}, k={k}")
    edges = [(i, (i + 1) % n) for i in range(n)]
    edges += [(i, n + i) for i in range(n)]
    edges += [(n + i, n + (i + k) % n) for i in range(n)]
    return from_edges(2 * n, edges, [f"o{i}" for i in range(n)] + [f"i{i}" for i in range(n)])


def _projective_points(q: int) -> list[tuple[int, int, int]]:
    """Normalised non-zero vectors of ``F_q^3`` (first non-zero coordinate 1), ``q`` prime."""
    return [v for v in itertools.product(range(q), repeat=3) if any(v) and next(c for c in v if c) == 1]


def projective_incidence(q: int, incident: bool = True) -> Graph:
    """Points-versus-lines graph of ``PG(2, q)``; points come first.

    With ``incident`` the edges are the flags, otherwise the anti-flags.
    """
    pts = _projective_points(q)
    n = len(pts)
    edges = [
        (i, n + j)
        for i, p in enumerate(pts)
        for j, l in enumerate(pts)
        if ((p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0) == incident
    ]
    labels = ["p" + "".join(map(str, p)) for p in pts] + ["L" + "".join(map(str, l)) for l in pts]
    return from_edges(2 * n, edges, labels)


SPORADIC_IDS = tuple(f"psi{i}" for i in range(1, 7)) + tuple(f"lambda{i}" for i in range(1, 7))


def sporadic(name: str) -> Graph:
    key = name.lower().replace("ψ", "psi").replace("λ", "lambda")
    if key not in SPORADIC_IDS:
        raise ValueError(f"unknown sporadic graph {name!r}; expected one of {', '.join(SPORADIC_IDS)}")
    return _sporadic(key)


@lru_cache(maxsize=None)
def _sporadic(key: str) -> Graph:
    builders = {
        "psi1": lambda: complete(5),
        "psi2": lambda: complete_bipartite_minus_matching(5),
        "psi3": lambda: projective_incidence(2, incident=False),
        "psi4": lambda: projective_incidence(3),
        "psi5": lambda: kneser(7, 3),
        "psi6": lambda: bipartite_double_cover(kneser(7, 3)),
        "lambda1": lambda: complete(4),
        "lambda2": lambda: complete_bipartite(3, 3),
        "lambda3": lambda: hypercube(3),
        "lambda4": lambda: kneser(5, 2),
        "lambda5": lambda: projective_incidence(2),
        "lambda6": lambda: bipartite_double_cover(kneser(5, 2)),
    }
    return builders[key]()


# -- family-spec grammar -------------------------------------------------------


class SpecError(ValueError):
    """Malformed family specification; ``token`` is the offending piece."""

    def __init__(self, msg: str, token: str):
        super().__init__(msg)
        self.token = token


_ARITY = {
    "px": (2, 2),
    "vpx": (2, 2),
    "spx": (2, 2),
    "dw": (1, 1),
    "sdw": (1, 1),
    "kneser": (2, 2),
    "prism": (1, 1),
    "moebius": (1, 1),
    "cube": (1, 1),
    "complete": (1, 1),
    "gp": (2, 2),
    "circ": (2, None),
}

FAMILY_NAMES = tuple(_ARITY) + ("sporadic",)

_RANGE = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")


def _parse_values(token: str, spec: str) -> list[int]:
    m = _RANGE.match(token.strip())
    if not m:
        raise SpecError(f"bad integer or range {token!r} in {spec!r}", token)
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise SpecError(f"empty range {token!r} in {spec!r}", token)
    return list(range(lo, hi + 1))


@dataclass(frozen=True)
class FamilyMember:
    """One concrete graph named by a family spec, e.g. ``px:5,2``."""

    family: str
    params: tuple

    @property
    def name(self) -> str:
        return f"{self.family}:{','.join(map(str, self.params))}"

    def build(self) -> Graph | Digraph:
        f, p = self.family, self.params
        if f == "px":
            return px(*p)
        if f == "vpx":
            return vec_px(*p).digraph
        if f == "spx":
            return split_px(*p)
        if f == "dw":
            return dw(*p)[0]
        if f == "sdw":
            return sdw(*p)
        if f == "sporadic":
            return sporadic(p[0])
        if f == "kneser":
            return kneser(*p)
        if f == "prism":
            return prism(*p)
        if f == "moebius":
            return moebius(*p)
        if f == "cube":
            return hypercube(*p)
        if f == "complete":
            return complete(*p)
        if f == "gp":
            return generalized_petersen(*p)
        if f == "circ":
            return circulant(p[0], p[1:])
        raise SpecError(f"unknown family {f!r}", f)


def parse_family_spec(spec: str, skip_invalid: bool = False) -> list[FamilyMember]:
    """Expand a spec such as ``px:3..5,1..2`` or ``sporadic:psi3`` into members.

    Integer positions accept ``a..b`` ranges; the expansion is the Cartesian
    product in order.  Out-of-range parameter combinations produced by a range
    are dropped when ``skip_invalid`` is set, otherwise they raise.
    """
    if ":" not in spec:
        raise SpecError(f"family spec {spec!r} lacks ':'", spec)
    fam, _, rest = spec.partition(":")
    fam = fam.strip().lower()
    if fam == "sporadic":
        names = SPORADIC_IDS if rest.strip().lower() in ("all", "*") else [t.strip().lower() for t in rest.split(",")]
        out = []
        for t in names:
            if t not in SPORADIC_IDS:
                raise SpecError(f"unknown sporadic graph {t!r}", t)
            out.append(FamilyMember("sporadic", (t,)))
        return out
    if fam not in _ARITY:
        raise SpecError(f"unknown family {fam!r}", fam)
    tokens = [t for t in rest.split(",")]
    lo, hi = _ARITY[fam]
    if len(tokens) < lo or (hi is not None and len(tokens) > hi):
        raise SpecError(f"family {fam!r} takes {lo if lo == hi else f'at least {lo}'} parameters, got {len(tokens)}", spec)
    values = [_parse_values(t, spec) for t in tokens]
    out = []
    for combo in itertools.product(*values):
        member = FamilyMember(fam, tuple(combo))
        if not _valid(member):
            if skip_invalid:
                continue
            raise SpecError(f"invalid parameters in {member.name!r}", member.name)
        out.append(member)
    return out


def _valid(m: FamilyMember) -> bool:
    f, p = m.family, m.params
    if f in ("px", "vpx", "spx"):
        return p[0] >= 3 and 1 <= p[1] <= p[0] - 1
    if f in ("dw", "sdw"):
        return p[0] >= 3
    if f == "kneser":
        return p[1] >= 1 and p[0] >= 2 * p[1]
    if f == "prism":
        return p[0] >= 3
    if f == "moebius":
        return p[0] >= 2
    if f in ("cube", "complete"):
        return p[0] >= 1
    if f == "gp":
        return p[0] >= 3 and 1 <= p[1] < p[0] / 2
    if f == "circ":
        n = p[0]
        return n >= 2 and all(c % n for c in p[1:])
    return True
