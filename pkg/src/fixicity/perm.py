"""Permutations and permutation groups.

Permutations act on the right: ``i ** g`` is written ``g(i)`` here and the
product ``p * q`` applies ``p`` first and then ``q``.  Groups are stored as a
base and strong generating set built by the deterministic Schreier-Sims
algorithm, with explicit transversals at every level of the stabiliser chain.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

import numpy as np

DEFAULT_CAP = 10**6

_DTYPE = np.int32


class Capped(Exception):
    """Raised when an enumeration is stopped after ``cap`` elements."""

    def __init__(self, cap: int, order: int):
        super().__init__(f"enumeration capped at {cap} of {order} elements")
        self.cap = cap
        self.order = order


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _is_identity(a: np.ndarray) -> bool:
    return bool(np.array_equal(a, np.arange(len(a), dtype=a.dtype)))


def _inverse(a: np.ndarray) -> np.ndarray:
    inv = np.empty_like(a)
    inv[a] = np.arange(len(a), dtype=a.dtype)
    return inv


class Permutation:
    """A bijection of ``{0, ..., degree - 1}`` stored as an image array."""

    __slots__ = ("_a", "_key")

    def __init__(self, images: Sequence[int] | np.ndarray):
        a = np.array(images, dtype=_DTYPE).reshape(-1)
        n = len(a)
        if n == 0:
            raise ValueError("permutation must have positive degree")
        if a.min() < 0 or a.max() >= n or np.bincount(a, minlength=n).max() != 1:
            raise ValueError("images do not form a bijection")
        self._a = _frozen(a)
        self._key = None

    @classmethod
    def _wrap(cls, a: np.ndarray) -> "Permutation":
        p = object.__new__(cls)
        p._a = a if not a.flags.writeable else _frozen(a)
        p._key = None
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._wrap(np.arange(degree, dtype=_DTYPE))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        a = np.arange(degree, dtype=_DTYPE)
        seen = set()
        for cyc in cycles:
            for i, x in enumerate(cyc):
                if x in seen or not 0 <= x < degree:
                    raise ValueError(f"bad cycle entry {x}")
                seen.add(x)
                a[x] = cyc[(i + 1) % len(cyc)]
        return cls._wrap(a)

    @classmethod
    def from_mapping(cls, degree: int, mapping: dict[int, int]) -> "Permutation":
        a = np.arange(degree, dtype=_DTYPE)
        for k, v in mapping.items():
            a[k] = v
        return cls(a)

    @property
    def degree(self) -> int:
        return len(self._a)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a)

    @property
    def array(self) -> np.ndarray:
        """Read-only image array."""
        return self._a

    def __call__(self, i: int) -> int:
        return int(self._a[i])

    def __len__(self) -> int:
        return len(self._a)

    def _bytes(self) -> bytes:
        if self._key is None:
            self._key = self._a.tobytes()
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return self.degree == other.degree and self._bytes() == other._bytes()

    def __hash__(self) -> int:
        return hash(self._bytes())

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __pow__(self, k: int) -> "Permutation":
        if k < 0:
            return self.inverse() ** (-k)
        result = np.arange(self.degree, dtype=_DTYPE)
        base = self._a
        while k:
            if k & 1:
                result = base[result]
            base = base[base]
            k >>= 1
        return Permutation._wrap(result)

    def inverse(self) -> "Permutation":
        return Permutation._wrap(_inverse(self._a))

    def conjugate(self, y: "Permutation") -> "Permutation":
        """Return ``y^-1 * self * y``."""
        _check_degrees(self, y)
        yi = _inverse(y._a)
        return Permutation._wrap(y._a[self._a[yi]])

    def commutator(self, other: "Permutation") -> "Permutation":
        """``[self, other] = self^-1 other^-1 self other``."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return _is_identity(self._a)

    def fixed_points(self) -> frozenset[int]:
        return frozenset(np.flatnonzero(self._a == np.arange(self.degree)).tolist())

    def num_fixed(self) -> int:
        return int(np.count_nonzero(self._a == np.arange(self.degree)))

    def fpr(self) -> Fraction:
        return Fraction(self.num_fixed(), self.degree)

    def support(self) -> list[int]:
        return np.flatnonzero(self._a != np.arange(self.degree)).tolist()

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point."""
        seen = np.zeros(self.degree, dtype=bool)
        out = []
        a = self._a
        for i in range(self.degree):
            if seen[i] or a[i] == i:
                continue
            cyc = [i]
            seen[i] = True
            j = int(a[i])
            while j != i:
                seen[j] = True
                cyc.append(j)
                j = int(a[j])
            out.append(tuple(cyc))
        return out

    def order(self) -> int:
        return math.lcm(1, *(len(c) for c in self.cycles()))

    def to_json(self) -> list[int]:
        return [int(x) for x in self._a]

    def __repr__(self) -> str:
        cyc = self.cycles()
        body = "".join("(" + " ".join(map(str, c)) + ")" for c in cyc) or "()"
        return f"Permutation<{self.degree}>{body}"


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply ``p`` then ``q``: ``result(i) = q(p(i))``."""
    _check_degrees(p, q)
    return Permutation._wrap(q._a[p._a])


def fixed_points(p: Permutation) -> frozenset[int]:
    return p.fixed_points()


def fpr(p: Permutation) -> Fraction:
    return p.fpr()


def fpr_on(p: Permutation, points: Iterable[int]) -> Fraction:
    """Fixed-point ratio of ``p`` restricted to an invariant set of points."""
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    a = p.array
    fixed = sum(1 for x in pts if a[x] == x)
    return Fraction(fixed, len(pts))


def prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def block_power(block: np.ndarray, k: int) -> np.ndarray:
    """Row-wise ``k``-th power of a 2-D array of permutations."""
    result = np.broadcast_to(np.arange(block.shape[1], dtype=block.dtype), block.shape).copy()
    base = block
    while k:
        if k & 1:
            result = np.take_along_axis(base, result, axis=1)
        k >>= 1
        if k:
            base = np.take_along_axis(base, base, axis=1)
    return result


def prime_order_mask(block: np.ndarray, primes: Sequence[int]) -> np.ndarray:
    """Boolean mask of the rows of ``block`` whose order is prime."""
    ident = np.arange(block.shape[1], dtype=block.dtype)
    nontrivial = ~np.all(block == ident, axis=1)
    mask = np.zeros(len(block), dtype=bool)
    for p in primes:
        mask |= np.all(block_power(block, p) == ident, axis=1)
    return mask & nontrivial


def _power(a: np.ndarray, k: int) -> np.ndarray:
    result = np.arange(len(a), dtype=a.dtype)
    while k:
        if k & 1:
            result = a[result]
        a = a[a]
        k >>= 1
    return result


@dataclass
class _Level:
    point: int
    gens: list  # strong generators fixing the earlier base points (arrays)
    degree: int
    orbit: list[int] = field(default_factory=list)
    reps: dict = field(default_factory=dict)  # point -> array u with u[point_of_level] = point
    inv_reps: dict = field(default_factory=dict)

    def extend(self, new_gens: list) -> None:
        """Grow the orbit after appending ``new_gens`` to ``gens``."""
        reps, inv_reps, orbit = self.reps, self.inv_reps, self.orbit
        if not orbit:
            ident = np.arange(self.degree, dtype=_DTYPE)
            reps[self.point] = ident
            inv_reps[self.point] = ident
            orbit.append(self.point)
            old = 0
        else:
            old = len(orbit)
        # old points only need the new generators; fresh points need all of them
        i = 0
        while i < len(orbit):
            beta = orbit[i]
            u = reps[beta]
            for s in new_gens if i < old else self.gens:
                img = int(s[beta])
                if img not in reps:
                    r = s[u]
                    reps[img] = r
                    inv_reps[img] = _inverse(r)
                    orbit.append(img)
            i += 1


class PermGroup:
    """A permutation group given by a base and strong generating set.

    Build instances with :func:`schreier_sims`.  All attributes are treated
    as immutable once construction finishes.
    """

    def __init__(self, degree: int, generators: tuple[Permutation, ...], levels: list[_Level]):
        self.degree = degree
        self.generators = generators
        self._levels = levels
        self.base = tuple(lv.point for lv in levels)
        seen = set()
        strong = []
        for lv in levels:
            for s in lv.gens:
                key = s.tobytes()
                if key not in seen:
                    seen.add(key)
                    strong.append(Permutation._wrap(s))
        self.strong_generators = tuple(strong)
        self.order = math.prod(len(lv.orbit) for lv in levels)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order}, base={list(self.base)})"

    def __len__(self) -> int:
        return self.order

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "generators": [g.to_json() for g in self.generators],
            "order": self.order,
        }

    # -- membership -------------------------------------------------------

    def _sift(self, a: np.ndarray, start: int = 0) -> tuple[np.ndarray, int]:
        for i in range(start, len(self._levels)):
            lv = self._levels[i]
            x = int(a[lv.point])
            inv = lv.inv_reps.get(x)
            if inv is None:
                return a, i
            a = inv[a]
        return a, len(self._levels)

    def __contains__(self, p: Permutation) -> bool:
        if not isinstance(p, Permutation):
            return False
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        residue, level = self._sift(p.array)
        return level == len(self._levels) and _is_identity(residue)

    def contains(self, p: Permutation) -> bool:
        return p in self

    def is_trivial(self) -> bool:
        return self.order == 1

    # -- orbits and stabilisers -------------------------------------------

    def orbit_of(self, point: int) -> list[int]:
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        gens = [g.array for g in self.generators]
        seen = {point}
        orbit = [point]
        for x in orbit:
            for g in gens:
                y = int(g[x])
                if y not in seen:
                    seen.add(y)
                    orbit.append(y)
        return orbit

    def orbits(self) -> list[list[int]]:
        """All orbits, each sorted, listed by least element."""
        parent = list(range(self.degree))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for g in self.generators:
            for x, y in enumerate(g.array.tolist()):
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        groups: dict[int, list[int]] = {}
        for x in range(self.degree):
            groups.setdefault(find(x), []).append(x)
        return [groups[k] for k in sorted(groups)]

    def is_transitive(self) -> bool:
        return len(self.orbit_of(0)) == self.degree

    def with_base_prefix(self, prefix: Sequence[int]) -> "PermGroup":
        """The same group with a stabiliser chain whose base starts with ``prefix``."""
        prefix = list(prefix)
        if list(self.base[: len(prefix)]) == prefix:
            return self
        return schreier_sims(
            self.strong_generators or self.generators,
            degree=self.degree,
            base=prefix + [b for b in self.base if b not in prefix],
            order=self.order,
            keep_base_points=True,
        )

    def point_stabilizer(self, point: int) -> "PermGroup":
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} out of range")
        chain = self.with_base_prefix([point])
        return chain._tail(1)

    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = list(points)
        for p in points:
            if not 0 <= p < self.degree:
                raise ValueError(f"point {p} out of range")
        chain = self.with_base_prefix(points)
        return chain._tail(len(points))

    def _tail(self, k: int) -> "PermGroup":
        levels = self._levels[k:]
        gens = []
        seen = set()
        for lv in levels:
            for s in lv.gens:
                b = s.tobytes()
                if b not in seen:
                    seen.add(b)
                    gens.append(Permutation._wrap(s))
        levels = [lv for lv in levels if len(lv.orbit) > 1 or lv.gens]
        return PermGroup(self.degree, tuple(gens), levels)

    # -- element enumeration ----------------------------------------------

    def element_blocks(self) -> Iterator[np.ndarray]:
        """All elements as 2-D arrays (one row per element), in enumeration order.

        Each block holds the elements sharing everything but the deepest
        transversal choice, so scans can be vectorised over rows.
        """
        levels = [lv for lv in self._levels if len(lv.orbit) > 1]
        n = self.degree
        ident = np.arange(n, dtype=_DTYPE)
        if not levels:
            yield ident[None, :]
            return
        last = levels[-1]
        last_reps = np.stack([last.reps[x] for x in sorted(last.orbit)])

        def rec(i: int, suffix: np.ndarray) -> Iterator[np.ndarray]:
            if i == len(levels) - 1:
                yield suffix[last_reps]
                return
            lv = levels[i]
            for x in sorted(lv.orbit):
                yield from rec(i + 1, suffix[lv.reps[x]])

        yield from rec(0, ident)

    def _iter_arrays(self) -> Iterator[np.ndarray]:
        for block in self.element_blocks():
            yield from block

    def elements(self, cap: int = DEFAULT_CAP) -> Iterator[Permutation]:
        """Deterministic enumeration; raises :class:`Capped` after ``cap`` elements."""
        if cap < 1:
            raise ValueError("cap must be positive")
        for count, a in enumerate(self._iter_arrays()):
            if count >= cap:
                raise Capped(cap, self.order)
            yield Permutation._wrap(a)

    def prime_order_elements(self, cap: int = DEFAULT_CAP) -> Iterator[Permutation]:
        """Elements of prime order; ``cap`` bounds the number of elements examined."""
        for a in self._prime_order_arrays(cap):
            yield Permutation._wrap(a)

    def _prime_order_arrays(self, cap: int) -> Iterator[np.ndarray]:
        if cap < 1:
            raise ValueError("cap must be positive")
        primes = prime_divisors(self.order)
        ident = np.arange(self.degree, dtype=_DTYPE)
        for count, a in enumerate(self._iter_arrays()):
            if count >= cap:
                raise Capped(cap, self.order)
            if np.array_equal(a, ident):
                continue
            for p in primes:
                if np.array_equal(_power(a, p), ident):
                    yield a
                    break

    def random_element(self, rng: random.Random) -> Permutation:
        a = np.arange(self.degree, dtype=_DTYPE)
        for lv in self._levels:
            x = lv.orbit[rng.randrange(len(lv.orbit))]
            a = a[lv.reps[x]]
        return Permutation._wrap(a)

    # -- subgroups and conjugation ----------------------------------------

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        """True iff ``self`` is a normal subgroup of ``other``.

        Checked on generators: each generator of ``self`` lies in ``other`` and
        each conjugate of a generator of ``self`` by a generator of ``other``
        sifts into ``self``.
        """
        if not self.is_subgroup_of(other):
            return False
        return all(y.conjugate(g) in self for y in self.generators for g in other.generators)

    def normal_closure(self, elements: Iterable[Permutation]) -> "PermGroup":
        """Smallest normal subgroup of ``self`` containing ``elements``."""
        gens = [e for e in elements if not e.is_identity()]
        for e in gens:
            if e not in self:
                raise ValueError("element is not in the group")
        n = self.degree
        closure = schreier_sims(gens, degree=n)
        changed = True
        while changed:
            changed = False
            for y in list(closure.generators):
                for g in self.generators:
                    c = y.conjugate(g)
                    if c not in closure:
                        gens.append(c)
                        closure = schreier_sims(gens, degree=n)
                        changed = True
        return closure

    def conjugacy_class(self, x: Permutation) -> "ConjClass":
        if x not in self:
            raise ValueError("element is not in the group")
        members = conjugacy_orbit(x, self.generators)
        return ConjClass(representative=x, size=len(members), ambient_order=self.order, members=tuple(members))

    def centralizer_elements(self, g: Permutation, cap: int = DEFAULT_CAP) -> list[Permutation]:
        ga = g.array
        out = []
        for a in self._capped_arrays(cap):
            if np.array_equal(ga[a], a[ga]):
                out.append(Permutation._wrap(a))
        return out

    def _capped_arrays(self, cap: int) -> Iterator[np.ndarray]:
        for count, a in enumerate(self._iter_arrays()):
            if count >= cap:
                raise Capped(cap, self.order)
            yield a


def conjugacy_orbit(x: Permutation, gens: Sequence[Permutation]) -> list[Permutation]:
    """The orbit of ``x`` under conjugation by the group generated by ``gens``."""
    pairs = [(g.array, _inverse(g.array)) for g in gens]
    seen = {x._bytes()}
    out = [x]
    for c in out:
        ca = c.array
        for ga, gi in pairs:
            y = ga[ca[gi]]
            key = y.tobytes()
            if key not in seen:
                seen.add(key)
                out.append(Permutation._wrap(y))
    return out


@dataclass(frozen=True)
class ConjClass:
    representative: Permutation
    size: int
    ambient_order: int
    members: tuple[Permutation, ...] = field(default=(), repr=False, compare=False)

    @property
    def centralizer_order(self) -> int:
        return self.ambient_order // self.size


def schreier_sims(
    gens: Iterable[Permutation],
    degree: int | None = None,
    base: Sequence[int] = (),
    order: int | None = None,
    keep_base_points: bool = False,
) -> PermGroup:
    """Deterministic Schreier-Sims.

    ``base`` is an optional prefix for the base.  When ``order`` is known the
    construction stops as soon as the chain accounts for that many elements.
    ``keep_base_points`` keeps base points even when their level is trivial,
    which :meth:`PermGroup.with_base_prefix` relies on.
    """
    gens = list(gens)
    if degree is None:
        if not gens:
            raise ValueError("degree required for an empty generating set")
        degree = gens[0].degree
    for g in gens:
        if g.degree != degree:
            raise ValueError(f"degree mismatch: {g.degree} vs {degree}")

    strong: list[np.ndarray] = []
    seen = set()
    for g in gens:
        a = g.array
        if _is_identity(a) or a.tobytes() in seen:
            continue
        seen.add(a.tobytes())
        strong.append(a)

    base_pts = list(dict.fromkeys(base))
    for b in base_pts:
        if not 0 <= b < degree:
            raise ValueError(f"base point {b} out of range")
    if not strong:
        levels = [_Level(point=b, gens=[], degree=degree) for b in base_pts] if keep_base_points else []
        for lv in levels:
            lv.orbit.append(lv.point)
            ident = np.arange(degree, dtype=_DTYPE)
            lv.reps[lv.point] = ident
            lv.inv_reps[lv.point] = ident
        return PermGroup(degree, tuple(gens), levels)

    def fixes_prefix(a, k):
        return all(a[b] == b for b in base_pts[:k])

    if not base_pts:
        base_pts.append(min(int(np.flatnonzero(a != np.arange(degree))[0]) for a in strong))
    for a in strong:
        if fixes_prefix(a, len(base_pts)):
            base_pts.append(int(np.flatnonzero(a != np.arange(degree))[0]))

    levels: list[_Level] = []
    for i, b in enumerate(base_pts):
        lv = _Level(point=b, gens=[a for a in strong if fixes_prefix(a, i)], degree=degree)
        lv.extend(lv.gens)
        levels.append(lv)

    group = PermGroup.__new__(PermGroup)
    group.degree = degree
    group._levels = levels

    def chain_order():
        return math.prod(len(lv.orbit) for lv in levels)

    tested = [set() for _ in levels]
    i = len(levels) - 1
    while i >= 0:
        if order is not None and chain_order() == order:
            break
        lv = levels[i]
        restart = False
        for beta in list(lv.orbit):
            u = lv.reps[beta]
            for si, s in enumerate(lv.gens):
                key = (beta, si)
                if key in tested[i]:
                    continue
                tested[i].add(key)
                img = int(s[beta])
                h = lv.inv_reps[img][s[u]]
                if _is_identity(h):
                    continue
                residue, j = group._sift(h, i + 1)
                if j == len(levels) and _is_identity(residue):
                    continue
                if j == len(levels):
                    pt = int(np.flatnonzero(residue != np.arange(degree))[0])
                    new = _Level(point=pt, gens=[], degree=degree)
                    levels.append(new)
                    tested.append(set())
                for lvl in range(i + 1, j + 1):
                    levels[lvl].gens.append(residue)
                    levels[lvl].extend([residue])
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1

    if not keep_base_points:
        levels = [lv for lv in levels if len(lv.orbit) > 1]
    result = PermGroup(degree, tuple(gens), levels)
    if order is not None and result.order != order:
        raise ValueError(f"generators produce a group of order {result.order}, expected {order}")
    return result


def membership(group: PermGroup, p: Permutation) -> bool:
    return p in group


def orbits(group: PermGroup) -> list[list[int]]:
    return group.orbits()


def orbit_of(group: PermGroup, point: int) -> set[int]:
    return set(group.orbit_of(point))


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    return group.point_stabilizer(point)


def conjugacy_class(group: PermGroup, x: Permutation) -> ConjClass:
    return group.conjugacy_class(x)


def closure_elements(gens: Sequence[Permutation], limit: int = 10**5) -> set[Permutation]:
    """Every element of ``<gens>`` by breadth-first closure (brute force)."""
    if not gens:
        raise ValueError("need at least one generator")
    ident = Permutation.identity(gens[0].degree)
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > limit:
                        raise Capped(limit, -1)
        frontier = nxt
    return seen


# -- fixed-point-ratio identities ---------------------------------------------


def suborbit_fpr_identity(X: PermGroup, Y: PermGroup, x: Permutation, omega: int) -> tuple[Fraction, Fraction]:
    """Both sides of ``fpr_{omega^Y}(x) = |x^Y ∩ X_omega| / |x^Y|``.

    The left side counts fixed points of ``x`` on the ``Y``-orbit of
    ``omega``; the right side counts the ``Y``-conjugates of ``x`` that fix
    ``omega``.
    """
    if not Y.is_normal_in(X):
        raise ValueError("Y is not a normal subgroup of X")
    if x not in X or x(omega) != omega:
        raise ValueError("x is not in the stabiliser X_omega")
    lhs = fpr_on(x, Y.orbit_of(omega))
    cls = conjugacy_orbit(x, Y.generators)
    fixing = sum(1 for c in cls if c(omega) == omega)
    rhs = Fraction(fixing, len(cls))
    return lhs, rhs


@dataclass(frozen=True)
class Lemma1Verdict:
    hypothesis: bool
    conclusion: bool | None  # None when the hypothesis fails
    fixed_on_orbit: int
    orbit_size: int
    centralizer_orbit_size: int
    index: int  # |X : C_X(g)|

    @property
    def fpr_orbit(self) -> Fraction:
        return Fraction(self.fixed_on_orbit, self.orbit_size)


def lemma1_check(G: PermGroup, X: PermGroup, g: Permutation, omega: int, cap: int = DEFAULT_CAP) -> Lemma1Verdict:
    """Test ``[g, X]_omega = 1`` and, if it holds, ``Fix_{omega^X}(g) = omega^{C_X(g)}``.

    Also checks ``fpr_{omega^X}(g) = 1/|X : C_X(g)|``.  Raises :class:`Capped`
    if ``X`` has more than ``cap`` elements.
    """
    if not X.is_normal_in(G):
        raise ValueError("X is not a normal subgroup of G")
    if g not in G or g(omega) != omega:
        raise ValueError("g is not in the stabiliser G_omega")
    if X.order > cap:
        raise Capped(cap, X.order)
    ga = g.array
    gi = _inverse(ga)
    hypothesis = True
    centralizer = []
    for xa in X._iter_arrays():
        # [g, x] = g^-1 x^-1 g x
        xi = _inverse(xa)
        comm = xa[ga[xi[gi]]]
        if _is_identity(comm):
            centralizer.append(xa)
        elif comm[omega] == omega:
            hypothesis = False
    orbit = X.orbit_of(omega)
    fixed = {w for w in orbit if ga[w] == w}
    c_orbit = {int(c[omega]) for c in centralizer}
    index = X.order // len(centralizer)
    conclusion = None
    if hypothesis:
        conclusion = fixed == c_orbit and Fraction(len(fixed), len(orbit)) == Fraction(1, index)
    return Lemma1Verdict(
        hypothesis=hypothesis,
        conclusion=conclusion,
        fixed_on_orbit=len(fixed),
        orbit_size=len(orbit),
        centralizer_orbit_size=len(c_orbit),
        index=index,
    )
