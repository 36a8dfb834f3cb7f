"""Transitivity, fixicity and the classification verdicts.

Fixicity is the largest number of vertices fixed by a non-identity
automorphism.  It suffices to scan elements of prime order: if ``h`` is not
the identity and has order ``m``, pick a prime ``p`` dividing ``m``; then
``h^(m/p)`` has order ``p`` and fixes every point that ``h`` fixes.  The
full scan is available with ``full=True`` for auditing.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterator

import numpy as np

from .autsearch import are_isomorphic, automorphism_group, vertex_invariant
from .families import (
    SPORADIC_IDS,
    circulant,
    complete_bipartite,
    dw,
    px,
    split_px,
    sporadic,
)
from .graph import Digraph, Graph, from_arcs, from_edges, is_automorphism, is_connected
from .perm import (
    DEFAULT_CAP,
    Capped,
    Permutation,
    PermGroup,
    prime_divisors,
    prime_order_mask,
)

THIRD = Fraction(1, 3)


# -- transitivity ----------------------------------------------------------------


def _count_orbits(m: int, images: list[np.ndarray]) -> int:
    """Number of orbits on ``0..m-1`` of the group generated by index maps."""
    parent = list(range(m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    count = m
    for img in images:
        for x, y in enumerate(img.tolist()):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
                count -= 1
    return count


def _induced(codes: np.ndarray, image_codes: np.ndarray) -> np.ndarray:
    idx = np.searchsorted(codes, image_codes)
    if np.any(idx >= len(codes)) or np.any(codes[np.minimum(idx, len(codes) - 1)] != image_codes):
        raise ValueError("permutation does not preserve the structure")
    return idx


def _arc_codes(g: Graph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    u = np.repeat(np.arange(g.n, dtype=np.int64), [len(a) for a in g.adj])
    v = np.fromiter((w for a in g.adj for w in a), dtype=np.int64, count=len(u))
    return u, v, u * g.n + v


@dataclass(frozen=True)
class TransitivityProfile:
    vertex_t: bool
    edge_t: bool
    arc_t: bool
    two_arc_t: bool

    @property
    def half_arc_t(self) -> bool:
        return self.vertex_t and self.edge_t and not self.arc_t

    def to_json(self) -> dict:
        return {
            "vertex": self.vertex_t,
            "edge": self.edge_t,
            "arc": self.arc_t,
            "two_arc": self.two_arc_t,
            "half_arc": self.half_arc_t,
        }


def _local_two_transitive(g: Graph, G: PermGroup, v: int) -> bool:
    """Is ``G_v`` 2-transitive on the neighbourhood of ``v``?"""
    nb = list(g.neighbors(v))
    if len(nb) < 2:
        return True
    stab = G.point_stabilizer(v)
    pairs = [(a, b) for a in nb for b in nb if a != b]
    index = {p: i for i, p in enumerate(pairs)}
    images = []
    for s in stab.generators:
        arr = s.array
        images.append(np.array([index[(int(arr[a]), int(arr[b]))] for a, b in pairs]))
    return _count_orbits(len(pairs), images) == 1


def transitivity_profile(g: Graph, G: PermGroup) -> TransitivityProfile:
    gens = [s for s in G.generators if not s.is_identity()]
    for s in gens:
        if s.degree != g.n or not is_automorphism(g, s):
            raise ValueError("group generator is not an automorphism of the graph")
    arrays = [s.array.astype(np.int64) for s in gens]
    n = g.n
    vertex_t = G.is_transitive()

    u, v, codes = _arc_codes(g)  # already sorted: u major, v minor
    keep = u < v
    ecodes = codes[keep]
    edge_imgs = []
    arc_imgs = []
    for a in arrays:
        au, av = a[u], a[v]
        arc_imgs.append(_induced(codes, au * n + av))
        eu, ev = a[u[keep]], a[v[keep]]
        edge_imgs.append(_induced(ecodes, np.minimum(eu, ev) * n + np.maximum(eu, ev)))
    edge_t = _count_orbits(len(ecodes), edge_imgs) <= 1
    arc_t = vertex_t and _count_orbits(len(codes), arc_imgs) <= 1

    two_arc_t = False
    if arc_t:
        ts = [(x, y, z) for x in range(n) for y in g.adj[x] for z in g.adj[y] if z != x]
        if ts:
            t = np.array(ts, dtype=np.int64)
            tcodes = (t[:, 0] * n + t[:, 1]) * n + t[:, 2]
            imgs = [_induced(tcodes, (a[t[:, 0]] * n + a[t[:, 1]]) * n + a[t[:, 2]]) for a in arrays]
            two_arc_t = _count_orbits(len(tcodes), imgs) <= 1
        else:
            two_arc_t = True
        local = _local_two_transitive(g, G, 0)
        if local != two_arc_t:
            raise AssertionError("2-arc orbit count disagrees with the local 2-transitivity test")
    return TransitivityProfile(vertex_t, edge_t, arc_t, two_arc_t)


def orientation_digraph(g: Graph, G: PermGroup) -> Digraph:
    """The orbit of ``G`` on arcs containing the least arc, as a digraph."""
    prof = transitivity_profile(g, G)
    if not prof.half_arc_t:
        raise ValueError("group is not half-arc-transitive on the graph")
    u, v, codes = _arc_codes(g)
    n = g.n
    arrays = [s.array.astype(np.int64) for s in G.generators]
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for a in arrays:
            j = int(np.searchsorted(codes, a[u[i]] * n + a[v[i]]))
            if j not in seen:
                seen.add(j)
                frontier.append(j)
    chosen = sorted(seen)
    return from_arcs(n, [(int(u[i]), int(v[i])) for i in chosen], g.labels)


# -- fixicity --------------------------------------------------------------------


@dataclass
class FixicityReport:
    graph: str
    n: int
    group_order: int
    fixicity: int
    fpr_max: Fraction
    witness: Permutation | None
    capped: bool
    scanned: int
    mode: str = "prime"

    def to_json(self) -> dict:
        return {
            "graph": self.graph,
            "n": self.n,
            "aut_order": self.group_order,
            "fixicity": self.fixicity,
            "fpr_max": str(self.fpr_max),
            "witness": self.witness.to_json() if self.witness is not None else None,
            "capped": self.capped,
            "scanned": self.scanned,
            "mode": self.mode,
        }


def _scan_blocks(G: PermGroup, cap: int) -> Iterator[np.ndarray]:
    """Element blocks of ``G`` truncated to ``cap`` elements; raises Capped when cut."""
    count = 0
    for block in G.element_blocks():
        if count + len(block) > cap:
            yield block[: cap - count]
            raise Capped(cap, G.order)
        count += len(block)
        yield block


def fixicity(g: Graph, G: PermGroup | None = None, cap: int = DEFAULT_CAP, full: bool = False, name: str = "") -> FixicityReport:
    if G is None:
        G = automorphism_group(g)[0]
    n = g.n
    ident = np.arange(n)
    primes = prime_divisors(G.order)
    best, witness, scanned, capped = 0, None, 0, False
    try:
        for block in _scan_blocks(G, cap):
            scanned += len(block)
            if full:
                mask = ~np.all(block == ident, axis=1)
            else:
                mask = prime_order_mask(block, primes)
            if not mask.any():
                continue
            counts = np.where(mask, np.count_nonzero(block == ident, axis=1), -1)
            k = int(np.argmax(counts))
            if counts[k] > best or witness is None:
                best, witness = int(counts[k]), Permutation._wrap(block[k].copy())
    except Capped:
        capped = True
    return FixicityReport(name, n, G.order, best, Fraction(best, n), witness, capped, scanned, "full" if full else "prime")


# -- normal quotients ------------------------------------------------------------


def normal_quotient(g: Graph, N: PermGroup) -> tuple[Graph, list[int]]:
    """Graph on the ``N``-orbits (ordered by least vertex) and the vertex-to-block map."""
    for s in N.generators:
        if not is_automorphism(g, s):
            raise ValueError("generator is not an automorphism of the graph")
    blocks = N.orbits()
    block_of = [0] * g.n
    for k, b in enumerate(blocks):
        for v in b:
            block_of[v] = k
    edges = {(min(block_of[a], block_of[b]), max(block_of[a], block_of[b])) for a, b in g.edges() if block_of[a] != block_of[b]}
    labels = ["{" + ",".join(g.label(v) for v in b) + "}" for b in blocks] if g.labels else None
    return from_edges(len(blocks), sorted(edges), labels), block_of


def quotient_fpr_check(g: Graph, N: PermGroup, G: PermGroup, x: Permutation, check_normal: bool = True) -> tuple[Fraction, Fraction]:
    """``(fpr of x on vertices, fpr of the induced permutation on N-orbits)``."""
    if check_normal and not N.is_normal_in(G):
        raise ValueError("N is not normal in G")
    if x not in G:
        raise ValueError("x is not in G")
    _, block_of = normal_quotient(g, N)
    nblocks = max(block_of) + 1
    rep = [-1] * nblocks
    for v, b in enumerate(block_of):
        if rep[b] == -1:
            rep[b] = v
    xa = x.array
    fixed_blocks = sum(1 for b in range(nblocks) if block_of[int(xa[rep[b]])] == b)
    return x.fpr(), Fraction(fixed_blocks, nblocks)


def quofix_spot_checks(g: Graph, G: PermGroup, rng: random.Random, trials: int = 3) -> list[tuple[Fraction, Fraction]]:
    """Random instances of the quotient inequality: ``N`` is the normal closure
    of a random element of ``G`` and ``x`` another random element."""
    out = []
    for _ in range(trials):
        N = G.normal_closure([G.random_element(rng)])
        x = G.random_element(rng)
        out.append(quotient_fpr_check(g, N, G, x, check_normal=False))
    return out


# -- classification ----------------------------------------------------------------


def _px_candidates(n: int) -> Iterator[tuple[int, int]]:
    s = 1
    while 3 * 2**s <= n:
        r, rem = divmod(n, 2**s)
        if rem == 0 and r >= 3 and s <= r - 1:
            yield r, s
        s += 1


@lru_cache(maxsize=None)
def _candidate(name: str) -> Graph:
    fam, _, params = name.partition(":")
    if fam == "sporadic":
        return sporadic(params)
    p = tuple(int(t) for t in params.split(","))
    if fam == "px":
        return px(*p)
    if fam == "spx":
        return split_px(*p)
    if fam == "dw":
        return dw(*p)[0]
    raise ValueError(name)


@lru_cache(maxsize=None)
def _candidate_invariant(name: str) -> tuple:
    return vertex_invariant(_candidate(name), 0)


def _candidate_names(g: Graph) -> Iterator[str]:
    n = g.n
    val = g.valency()
    for sid in SPORADIC_IDS:
        c = sporadic(sid)
        if c.n == n and c.num_edges == g.num_edges:
            yield f"sporadic:{sid}"
    if val == 4:
        for r, s in sorted(_px_candidates(n)):
            yield f"px:{r},{s}"
    if val == 3 and n % 2 == 0:
        for r, s in sorted(_px_candidates(n // 2)):
            yield f"spx:{r},{s}"
    if val == 4 and n % 3 == 0 and n >= 9:
        yield f"dw:{n // 3}"


def classify_family(g: Graph) -> str | None:
    """First family member isomorphic to ``g``, trying sporadic, px, spx, dw in turn."""
    inv = None
    for name in _candidate_names(g):
        if inv is None:
            inv = vertex_invariant(g, 0)
        # candidates are vertex-transitive, so vertex 0 may stand for any vertex
        if _candidate_invariant(name) != inv:
            continue
        if are_isomorphic(g, _candidate(name)):
            return name
    return None


def _allowed(classified: str | None, theorem: int) -> bool:
    if classified is None:
        return False
    fam, _, params = classified.partition(":")
    if fam == "sporadic":
        return params.startswith("psi" if theorem == 1 else "lambda")
    if fam == ("px" if theorem == 1 else "spx"):
        r, s = map(int, params.split(","))
        return 1 <= s and 3 * s < 2 * r
    return False


@dataclass
class TheoremVerdict:
    theorem: int
    applicable: bool
    exceeds_third: bool = False
    classified_as: str | None = None
    conforms: bool = True
    arc_transitive: bool | None = None
    report: FixicityReport | None = None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "theorem": self.theorem,
            "applicable": self.applicable,
            "exceeds_third": self.exceeds_third,
            "classified_as": self.classified_as,
            "conforms": self.conforms,
            "arc_transitive": self.arc_transitive,
            "reason": self.reason,
        }


def _verdict(g: Graph, theorem: int, cap: int) -> TheoremVerdict:
    k = 4 if theorem == 1 else 3
    if g.valency() != k:
        return TheoremVerdict(theorem, False, reason=f"not {k}-valent")
    if not is_connected(g):
        return TheoremVerdict(theorem, False, reason="not connected")
    G = automorphism_group(g)[0]
    prof = transitivity_profile(g, G)
    if not prof.vertex_t or (theorem == 1 and not prof.edge_t):
        return TheoremVerdict(theorem, False, reason="automorphism group not transitive enough")
    rep = fixicity(g, G, cap)
    exceeds = 3 * rep.fixicity > g.n
    classified = classify_family(g)
    if not exceeds:
        conforms = True
    else:
        conforms = _allowed(classified, theorem)
        if theorem == 1:
            conforms = conforms and prof.arc_t
    return TheoremVerdict(theorem, True, exceeds, classified, conforms, prof.arc_t, rep)


def thm1_verdict(g: Graph, cap: int = DEFAULT_CAP) -> TheoremVerdict:
    """4-valent graphs with vertex- and edge-transitive automorphism group."""
    return _verdict(g, 1, cap)


def thm2_verdict(g: Graph, cap: int = DEFAULT_CAP) -> TheoremVerdict:
    """3-valent vertex-transitive graphs."""
    return _verdict(g, 2, cap)


# -- geometry and stabiliser bounds ---------------------------------------------


@dataclass
class GeometryVerdict:
    valency: int
    qualifying: int
    witness: Permutation | None
    exception: str | None
    conforms: bool
    capped: bool
    scanned: int

    def to_json(self) -> dict:
        return {
            "valency": self.valency,
            "qualifying": self.qualifying,
            "witness": self.witness.to_json() if self.witness is not None else None,
            "exception": self.exception,
            "conforms": self.conforms,
            "capped": self.capped,
            "scanned": self.scanned,
        }


def geometry_verdict(g: Graph, cap: int = DEFAULT_CAP) -> GeometryVerdict:
    """Look for automorphisms with fpr above 1/3 that fix no arc.

    Such elements may only exist when ``g`` is some ``C(r, 1)`` (valency 4)
    or ``K_{3,3}`` (valency 3).  Every non-identity element is examined:
    a power of an element can fix more points, including both ends of an
    edge, so restricting to prime order would miss candidates.
    """
    k = g.valency()
    if k not in (3, 4):
        raise ValueError("graph must be 3- or 4-valent")
    if not is_connected(g):
        raise ValueError("graph must be connected")
    G = automorphism_group(g)[0]
    if not transitivity_profile(g, G).arc_t:
        raise ValueError("automorphism group is not arc-transitive")
    n = g.n
    ident = np.arange(n)
    e = g.edge_array()
    qualifying, witness, scanned, capped = 0, None, 0, False
    try:
        for block in _scan_blocks(G, cap):
            scanned += len(block)
            fixed = block == ident
            counts = fixed.sum(axis=1)
            cand = (3 * counts > n) & (counts < n)
            if not cand.any():
                continue
            fixes_arc = np.any(fixed[:, e[:, 0]] & fixed[:, e[:, 1]], axis=1)
            hits = np.flatnonzero(cand & ~fixes_arc)
            if len(hits) and witness is None:
                witness = Permutation._wrap(block[hits[0]].copy())
            qualifying += len(hits)
    except Capped:
        capped = True
    exception = None
    if qualifying:
        if k == 4:
            if n % 2 == 0 and n // 2 >= 3 and are_isomorphic(g, px(n // 2, 1)):
                exception = f"px:{n // 2},1"
        elif are_isomorphic(g, complete_bipartite(3, 3)):
            exception = "K3,3"
    conforms = qualifying == 0 or exception is not None
    return GeometryVerdict(k, qualifying, witness, exception, conforms, capped, scanned)


@dataclass
class StabilizerBound:
    applicable: bool
    stabilizer_order: int | None
    bound: int | None
    ok: bool

    def to_json(self) -> dict:
        return {"applicable": self.applicable, "stabilizer_order": self.stabilizer_order, "bound": self.bound, "ok": self.ok}


def stabilizer_bound_check(g: Graph) -> StabilizerBound:
    """Vertex stabilisers are at most 48 (cubic arc-transitive) or 11664
    (4-valent 2-arc-transitive)."""
    k = g.valency()
    if k not in (3, 4) or not is_connected(g):
        return StabilizerBound(False, None, None, True)
    G = automorphism_group(g)[0]
    prof = transitivity_profile(g, G)
    if not prof.vertex_t:
        return StabilizerBound(False, None, None, True)
    stab = G.order // g.n
    if k == 3 and prof.arc_t:
        return StabilizerBound(True, stab, 48, stab <= 48)
    if k == 4 and prof.two_arc_t:
        return StabilizerBound(True, stab, 11664, stab <= 11664)
    return StabilizerBound(False, stab, None, True)


# -- per-graph analysis -------------------------------------------------------------


SCHEMA = "fixicity-report/1"


@dataclass
class Analysis:
    name: str
    graph: Graph
    aut_order: int
    profile: TransitivityProfile
    report: FixicityReport
    classified_as: str | None
    thm1: TheoremVerdict
    thm2: TheoremVerdict
    geometry: GeometryVerdict | None
    stabilizer: StabilizerBound
    quofix: list = field(default_factory=list)

    @property
    def conforms(self) -> bool:
        ok = self.thm1.conforms and self.thm2.conforms and self.stabilizer.ok
        ok = ok and (self.geometry is None or self.geometry.conforms)
        return ok and all(a <= b for a, b in self.quofix)

    @property
    def capped(self) -> bool:
        return self.report.capped or (self.geometry is not None and self.geometry.capped)

    def to_json(self) -> dict:
        from .graph import graph6_encode

        return {
            "schema": SCHEMA,
            "graph": self.name,
            "graph6": graph6_encode(self.graph),
            "n": self.graph.n,
            "valency": self.graph.valency(),
            "aut_order": self.aut_order,
            "profile": self.profile.to_json(),
            "fixicity": self.report.fixicity,
            "fpr_max": str(self.report.fpr_max),
            "exceeds_third": 3 * self.report.fixicity > self.graph.n,
            "witness": self.report.witness.to_json() if self.report.witness is not None else None,
            "classified_as": self.classified_as,
            "thm1": self.thm1.to_json(),
            "thm2": self.thm2.to_json(),
            "geometry": self.geometry.to_json() if self.geometry is not None else None,
            "stabilizer_bound": self.stabilizer.to_json(),
            "quofix": [[str(a), str(b)] for a, b in self.quofix],
            "conforms": self.conforms,
            "capped": self.capped,
        }


def analyze(g: Graph, name: str = "", cap: int = DEFAULT_CAP, quofix_trials: int = 0, seed: int = 0) -> Analysis:
    G = automorphism_group(g)[0]
    prof = transitivity_profile(g, G)
    rep = fixicity(g, G, cap, name=name)
    t1 = thm1_verdict(g, cap)
    t2 = thm2_verdict(g, cap)
    classified = t1.classified_as if t1.applicable else t2.classified_as if t2.applicable else None
    geo = None
    if g.valency() in (3, 4) and is_connected(g) and prof.arc_t:
        geo = geometry_verdict(g, cap)
    quo = quofix_spot_checks(g, G, random.Random(seed), quofix_trials) if quofix_trials else []
    return Analysis(name, g, G.order, prof, rep, classified, t1, t2, geo, stabilizer_bound_check(g), quo)
