"""Simple graphs and digraphs on ``0..n-1`` with graph6/digraph6 I/O."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .perm import Permutation


class FormatError(ValueError):
    """Malformed graph6/digraph6 input."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.  ``adj[v]`` is the sorted neighbour tuple of ``v``."""

    n: int
    adj: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a graph needs at least one vertex")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match n")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValueError("label table length does not match n")

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def edge_array(self) -> np.ndarray:
        e = self.edges()
        return np.array(e, dtype=np.int64).reshape(-1, 2)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def valency(self) -> int | None:
        """Common degree if the graph is regular, else ``None``."""
        d = {len(a) for a in self.adj}
        return d.pop() if len(d) == 1 else None

    def to_json(self) -> dict:
        out = {"n": self.n, "edges": [list(e) for e in self.edges()]}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    def with_labels(self, labels: Sequence[str] | None) -> "Graph":
        return Graph(self.n, self.adj, tuple(labels) if labels is not None else None)


@dataclass(frozen=True)
class Digraph:
    """Loopless digraph.  ``out[v]`` is the sorted out-neighbour tuple of ``v``."""

    n: int
    out: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("a digraph needs at least one vertex")
        if len(self.out) != self.n:
            raise ValueError("adjacency length does not match n")

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.num_arcs})"

    @property
    def num_arcs(self) -> int:
        return sum(len(a) for a in self.out)

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out[u]]

    def in_neighbors(self) -> tuple[tuple[int, ...], ...]:
        ins: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.arcs():
            ins[v].append(u)
        return tuple(tuple(sorted(x)) for x in ins)

    def has_arc(self, u: int, v: int) -> bool:
        return v in self.out[u]


def from_edges(n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Graph:
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for e in edges:
        u, v = e
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {tuple(e)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        nbrs[u].add(v)
        nbrs[v].add(u)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), tuple(labels) if labels is not None else None)


def from_arcs(n: int, arcs: Iterable[Sequence[int]], labels: Sequence[str] | None = None) -> Digraph:
    outs: list[set[int]] = [set() for _ in range(n)]
    for a in arcs:
        u, v = a
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"arc {tuple(a)} has an endpoint outside 0..{n - 1}")
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        outs[u].add(v)
    return Digraph(n, tuple(tuple(sorted(s)) for s in outs), tuple(labels) if labels is not None else None)


# -- basic properties ----------------------------------------------------------


def degree(g: Graph, v: int) -> int:
    return g.degree(v)


def is_k_regular(g: Graph, k: int) -> bool:
    return all(len(a) == k for a in g.adj)


def bfs_distances(g: Graph, source: int) -> list[int]:
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    return min(bfs_distances(g, 0)) >= 0


def components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = [s]
        seen[s] = True
        for u in comp:
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
        comps.append(sorted(comp))
    return comps


def bipartition(g: Graph) -> list[int] | None:
    """A proper 2-colouring, or ``None`` if the graph is not bipartite."""
    colour = [-1] * g.n
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return None
    return colour


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def arcs(g: Graph) -> list[tuple[int, int]]:
    return [(u, v) for u in range(g.n) for v in g.adj[u]]


def two_arcs(g: Graph) -> list[tuple[int, int, int]]:
    return [(u, v, w) for u in range(g.n) for v in g.adj[u] for w in g.adj[v] if w != u]


def twin_vertices(g: Graph) -> set[frozenset[int]]:
    """Pairs of distinct vertices with identical neighbourhoods."""
    groups: dict[tuple[int, ...], list[int]] = {}
    for v in range(g.n):
        groups.setdefault(g.adj[v], []).append(v)
    pairs = set()
    for vs in groups.values():
        for i, u in enumerate(vs):
            for w in vs[i + 1 :]:
                pairs.add(frozenset((u, w)))
    return pairs


def bipartite_double_cover(g: Graph) -> Graph:
    """Vertices ``(v, i)`` at index ``i*n + v``; ``(v,0) ~ (w,1)`` iff ``v ~ w``."""
    n = g.n
    edges = [(u, n + w) for u in range(n) for w in g.adj[u]]
    labels = [f"({g.label(v)},{i})" for i in (0, 1) for v in range(n)]
    return from_edges(2 * n, edges, labels)


def complement(g: Graph) -> Graph:
    edges = [(u, v) for u in range(g.n) for v in range(u + 1, g.n) if v not in g.adj[u]]
    return from_edges(g.n, edges, g.labels)


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    index = {v: i for i, v in enumerate(vertices)}
    edges = [(index[u], index[w]) for u in vertices for w in g.adj[u] if w in index and u < w]
    labels = [g.label(v) for v in vertices]
    return from_edges(len(vertices), edges, labels)


# -- permutations acting on graphs -----------------------------------------------


def _check_perm(n: int, p: Permutation) -> None:
    if p.degree != n:
        raise ValueError(f"permutation degree {p.degree} does not match {n} vertices")


def apply_perm(g: Graph, p: Permutation) -> Graph:
    """Relabel: vertex ``v`` becomes ``p(v)``."""
    _check_perm(g.n, p)
    a = p.array
    edges = [(int(a[u]), int(a[v])) for u, v in g.edges()]
    labels = None
    if g.labels is not None:
        lab = [""] * g.n
        for v in range(g.n):
            lab[a[v]] = g.labels[v]
        labels = lab
    return from_edges(g.n, edges, labels)


def is_automorphism(g: Graph, p: Permutation) -> bool:
    _check_perm(g.n, p)
    a = p.array
    adj = g.adj
    for u in range(g.n):
        au = int(a[u])
        if len(adj[au]) != len(adj[u]):
            return False
        target = adj[au]
        for v in adj[u]:
            if int(a[v]) not in target:
                return False
    return True


def is_digraph_automorphism(d: Digraph, p: Permutation) -> bool:
    _check_perm(d.n, p)
    a = p.array
    for u in range(d.n):
        target = d.out[int(a[u])]
        if len(target) != len(d.out[u]):
            return False
        for v in d.out[u]:
            if int(a[v]) not in target:
                return False
    return True


def apply_perm_digraph(d: Digraph, p: Permutation) -> Digraph:
    _check_perm(d.n, p)
    a = p.array
    return from_arcs(d.n, [(int(a[u]), int(a[v])) for u, v in d.arcs()])


# -- digraphs ----------------------------------------------------------------------


def underlying_graph(d: Digraph) -> Graph:
    return from_edges(d.n, d.arcs(), d.labels)


def reverse(d: Digraph) -> Digraph:
    return from_arcs(d.n, [(v, u) for u, v in d.arcs()], d.labels)


def is_orientation(d: Digraph) -> bool:
    return not any(d.has_arc(v, u) for u, v in d.arcs())


# -- graph6 / digraph6 ---------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative order")
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("order too large for graph6")


def _decode_n(s: str) -> tuple[int, int]:
    """Return ``(n, header_length)``."""
    if not s:
        raise FormatError("empty string")
    vals = [ord(c) - 63 for c in s[:8]]
    if vals[0] < 0 or vals[0] > 63:
        raise FormatError(f"invalid character {s[0]!r} in size header")
    if vals[0] < 63:
        return vals[0], 1
    if len(vals) >= 2 and vals[1] == 63:
        if len(vals) < 8 or any(not 0 <= v <= 63 for v in vals[2:8]):
            raise FormatError("malformed 8-byte size header")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        return n, 8
    if len(vals) < 4 or any(not 0 <= v <= 63 for v in vals[1:4]):
        raise FormatError("malformed 4-byte size header")
    n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
    return n, 4


def _pack(bits: np.ndarray) -> str:
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    groups = bits.reshape(-1, 6)
    vals = groups @ np.array([32, 16, 8, 4, 2, 1], dtype=np.int64)
    return (vals + 63).astype(np.uint8).tobytes().decode("ascii")


def _unpack(payload: str, nbits: int) -> np.ndarray:
    need = (nbits + 5) // 6
    if len(payload) < need:
        raise FormatError(f"truncated payload: {len(payload)} of {need} characters")
    if len(payload) > need:
        raise FormatError(f"trailing garbage after {need} payload characters")
    raw = np.frombuffer(payload.encode("latin-1"), dtype=np.uint8).astype(np.int64) - 63
    if raw.size and (raw.min() < 0 or raw.max() > 63):
        raise FormatError("payload character outside the printable range")
    bits = ((raw[:, None] >> np.arange(5, -1, -1)) & 1).reshape(-1)
    if bits[nbits:].any():
        raise FormatError("non-zero padding bits")
    return bits[:nbits].astype(np.uint8)


def _strip(s: str, header: str) -> str:
    s = s.strip()
    if s.startswith(header):
        s = s[len(header) :]
    return s


def _upper_index(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row/column indices of the graph6 bit order: columns ``j``, then rows ``i < j``."""
    iu, ju = np.triu_indices(n, k=1)
    order = np.lexsort((iu, ju))
    return iu[order], ju[order]


def graph6_encode(g: Graph) -> str:
    n = g.n
    mat = np.zeros((n, n), dtype=np.uint8)
    e = g.edge_array()
    if len(e):
        mat[e[:, 0], e[:, 1]] = 1
        mat[e[:, 1], e[:, 0]] = 1
    iu, ju = _upper_index(n)
    return _encode_n(n) + _pack(mat[iu, ju])


def graph6_decode(s: str) -> Graph:
    s = _strip(s, ">>graph6<<")
    if s.startswith("&") or s.startswith(":"):
        raise FormatError("not a graph6 string")
    n, h = _decode_n(s)
    if n == 0:
        raise FormatError("graph6 string describes the empty graph")
    iu, ju = _upper_index(n)
    bits = _unpack(s[h:], len(iu))
    on = bits.astype(bool)
    return from_edges(n, zip(iu[on].tolist(), ju[on].tolist()))


def digraph6_encode(d: Digraph) -> str:
    n = d.n
    mat = np.zeros((n, n), dtype=np.uint8)
    a = d.arcs()
    if a:
        arr = np.array(a)
        mat[arr[:, 0], arr[:, 1]] = 1
    return "&" + _encode_n(n) + _pack(mat.reshape(-1))


def digraph6_decode(s: str) -> Digraph:
    s = _strip(s, ">>digraph6<<")
    if not s.startswith("&"):
        raise FormatError("digraph6 strings start with '&'")
    s = s[1:]
    n, h = _decode_n(s)
    if n == 0:
        raise FormatError("digraph6 string describes the empty digraph")
    bits = _unpack(s[h:], n * n).reshape(n, n)
    if np.diag(bits).any():
        raise FormatError("loops are not supported")
    us, vs = np.nonzero(bits)
    return from_arcs(n, zip(us.tolist(), vs.tolist()))


def read_graph6_lines(lines: Iterable[str]) -> list[tuple[int, Graph]]:
    """Parse a census-style file: one graph6 per line, ``#`` comments skipped."""
    out = []
    for lineno, line in enumerate(lines, start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            out.append((lineno, graph6_decode(text)))
        except FormatError as exc:
            raise FormatError(f"line {lineno}: {exc}") from exc
    return out
