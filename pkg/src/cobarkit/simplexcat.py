"""Monotone maps between finite ordinals and their combinatorics.

A `SimplexMap` stores its full value sequence, so composition is pointwise
and the epi/mono and endpoint/interval factorizations are simple scans.
The empty ordinal (dom == -1) is only ever produced or consumed by `star`;
all other operations reject it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations


@dataclass(frozen=True)
class SimplexMap:
    """A weakly monotone map [dom] -> [cod], given by its tuple of values."""

    dom: int
    cod: int
    values: tuple

    def __post_init__(self):
        if self.dom < -1:
            raise ValueError("domain must be an ordinal [n], n >= -1")
        if len(self.values) != self.dom + 1:
            raise ValueError("value tuple does not match the domain")
        last = 0
        for v in self.values:
            if v < last or v > self.cod:
                raise ValueError(f"values {self.values} not monotone into [{self.cod}]")
            last = v

    def __call__(self, x):
        return self.values[x]

    def __repr__(self):
        return f"[{self.dom}]->[{self.cod}]{list(self.values)}"

    @property
    def is_identity(self):
        return self.dom == self.cod and self.values == tuple(range(self.dom + 1))

    @property
    def is_injective(self):
        return all(a < b for a, b in zip(self.values, self.values[1:]))

    @property
    def is_surjective(self):
        return set(self.values) == set(range(self.cod + 1))

    @property
    def is_active(self):
        # endpoint preserving; the empty map is the unit and counts as active
        if self.dom == -1:
            return self.cod == -1
        return self.values[0] == 0 and self.values[-1] == self.cod

    @property
    def is_inert(self):
        return self.is_injective and (
            self.dom == -1 or self.values[-1] - self.values[0] == self.dom
        )

    def degenerate_at(self, i):
        """True if the map factors through the degeneracy collapsing i, i+1."""
        return 0 <= i < self.dom and self.values[i] == self.values[i + 1]

    def degeneracy_word(self):
        """Increasing repeat positions; the epi collapses exactly these steps."""
        if not self.is_surjective:
            raise ValueError("degeneracy word of a non-surjective map")
        return [i for i in range(self.dom) if self.values[i] == self.values[i + 1]]


def identity(n):
    return SimplexMap(n, n, tuple(range(n + 1)))


EMPTY = SimplexMap(-1, -1, ())


def face(i, n):
    """delta_i : [n-1] -> [n], injective, skipping i."""
    if not 0 <= i <= n:
        raise ValueError("face index out of range")
    return SimplexMap(n - 1, n, tuple(x if x < i else x + 1 for x in range(n)))


def degeneracy(i, n):
    """sigma_i : [n+1] -> [n], surjective, repeating i."""
    if not 0 <= i <= n:
        raise ValueError("degeneracy index out of range")
    return SimplexMap(n + 1, n, tuple(x if x <= i else x - 1 for x in range(n + 2)))


def constant(n, value, cod):
    return SimplexMap(n, cod, tuple(value for _ in range(n + 1)))


def compose(f: SimplexMap, g: SimplexMap) -> SimplexMap:
    """f o g (g first)."""
    if g.cod != f.dom:
        raise ValueError(f"cannot compose: cod {g.cod} != dom {f.dom}")
    return SimplexMap(g.dom, f.cod, tuple(f.values[v] for v in g.values))


def compose_word(*maps):
    """Compose left to right: compose_word(f, g, h) applies f first."""
    maps = list(maps)
    out = maps[0]
    for m in maps[1:]:
        out = compose(m, out)
    return out


def epi_mono_factor(f: SimplexMap):
    """f = mono o epi with epi surjective and mono injective; unique."""
    if f.dom == -1:
        return EMPTY, SimplexMap(-1, f.cod, ())
    image = sorted(set(f.values))
    pos = {v: i for i, v in enumerate(image)}
    epi = SimplexMap(f.dom, len(image) - 1, tuple(pos[v] for v in f.values))
    mono = SimplexMap(len(image) - 1, f.cod, tuple(image))
    return epi, mono


def active_inert_factor(f: SimplexMap):
    """f = inert o active with active endpoint-preserving; unique."""
    if f.dom == -1:
        raise ValueError("empty ordinal only supported by star")
    lo, hi = f.values[0], f.values[-1]
    active = SimplexMap(f.dom, hi - lo, tuple(v - lo for v in f.values))
    inert = SimplexMap(hi - lo, f.cod, tuple(range(lo, hi + 1)))
    return active, inert


def star(f: SimplexMap, g: SimplexMap) -> SimplexMap:
    """Ordinal sum on maps: [n]*[n'] = [n+n'+1]; unit is the empty ordinal."""
    return SimplexMap(
        f.dom + g.dom + 1,
        f.cod + g.cod + 1,
        f.values + tuple(v + f.cod + 1 for v in g.values),
    )


def star_prime(f: SimplexMap, g: SimplexMap) -> SimplexMap:
    """Endpoint-glued sum on active maps: [n]*'[n'] = [n+n']; unit is [0]."""
    if not (f.is_active and g.is_active):
        raise ValueError("star_prime is only defined on active maps")
    if f.dom == -1 or g.dom == -1:
        raise ValueError("star_prime does not take the empty ordinal")
    return SimplexMap(
        f.dom + g.dom,
        f.cod + g.cod,
        f.values + tuple(v + f.cod for v in g.values[1:]),
    )


def s_can(n, m):
    """The canonical degeneracy [n]*[m] -> [n]*'[m] gluing the join point."""
    return degeneracy(n, n + m)


def interval_dual(f: SimplexMap) -> SimplexMap:
    """Contravariant duality of active maps: [n]->[m] becomes [m-1]->[n-1].

    Maps out of an ordinal into [1] are thresholds, ordered with the
    constant-zero map smallest; precomposition with f transports them,
    exchanging inner faces with degeneracies.  `interval_dual_inverse` is
    the functor in the opposite direction; the two compose to identities.
    """
    if not f.is_active:
        raise ValueError("interval dual of a non-active map")
    if f.dom < 1 or f.cod < 1:
        raise ValueError("interval dual needs dom, cod >= 1")
    n, m = f.dom, f.cod
    vals = tuple(
        max(x for x in range(n + 1) if f.values[x] <= t) for t in range(m)
    )
    return SimplexMap(m - 1, n - 1, vals)


def interval_dual_inverse(g: SimplexMap) -> SimplexMap:
    """The other direction: an arbitrary [a]->[b] becomes active [b+1]->[a+1]."""
    a, b = g.dom, g.cod
    vals = []
    for x in range(b + 2):
        hits = [t for t in range(a + 1) if g.values[t] >= x]
        vals.append(min(hits) if hits else a + 1)
    return SimplexMap(b + 1, a + 1, tuple(vals))


@dataclass(frozen=True)
class Shuffle:
    """A jointly injective pair of epis sigma: [p+q]->[p], tau: [p+q]->[q]."""

    p: int
    q: int
    sigma: SimplexMap
    tau: SimplexMap
    sign: int


def _epi_contracting(intervals, n, cod):
    """The epi [n] -> [cod] contracting exactly the intervals in the set."""
    vals = []
    drop = 0
    for x in range(n + 1):
        if x in intervals:
            drop += 1
        vals.append(x - drop)
    return SimplexMap(n, cod, tuple(vals))


@lru_cache(maxsize=None)
def shuffles(p, q):
    """All (p,q)-shuffles, ordered lexicographically in the set of intervals
    contracted by sigma; the sign is the parity of the block permutation."""
    if p < 0 or q < 0:
        raise ValueError("shuffle parameters must be >= 0")
    n = p + q
    out = []
    for J in combinations(range(1, n + 1), q):  # intervals contracted by sigma
        Jset = set(J)
        I = [x for x in range(1, n + 1) if x not in Jset]
        sigma = _epi_contracting(Jset, n, p)
        tau = _epi_contracting(set(I), n, q)
        inv = sum(1 for a in I for b in J if a > b)
        out.append(Shuffle(p, q, sigma, tau, -1 if inv % 2 else 1))
    return tuple(out)


def shuffle_sign_from_degeneracies(b, n):
    """Sign of the shuffle attached to descending degeneracy positions b.

    b = (b_0 > ... > b_{k-1}) in {0..n-1}: tau = s_{b_0} then s_{b_1} ...,
    contracting the intervals {b_i + 1}; sigma contracts the complement.
    """
    k = len(b)
    return -1 if sum(b[i] - (k - 1 - i) for i in range(k)) % 2 else 1


def front_face(i, n):
    """[i] -> [n] onto {0..i}."""
    return SimplexMap(i, n, tuple(range(i + 1)))


def back_face(j, n):
    """[j] -> [n] onto {n-j..n}."""
    return SimplexMap(j, n, tuple(range(n - j, n + 1)))


def step_map(j, n):
    """[n] -> [1] sending 0..j to 0 and j+1..n to 1."""
    if not 0 <= j < n:
        raise ValueError("step position out of range")
    return SimplexMap(n, 1, tuple(0 if x <= j else 1 for x in range(n + 1)))


@dataclass(frozen=True)
class FinSetMap:
    """An arbitrary function {0..dom} -> {0..cod}."""

    dom: int
    cod: int
    values: tuple

    def __post_init__(self):
        if len(self.values) != self.dom + 1:
            raise ValueError("value tuple does not match the domain")
        if any(not 0 <= v <= self.cod for v in self.values):
            raise ValueError("value out of range")

    def __call__(self, x):
        return self.values[x]


def finset_compose(f: FinSetMap, g: FinSetMap) -> FinSetMap:
    if g.cod != f.dom:
        raise ValueError("cannot compose")
    return FinSetMap(g.dom, f.cod, tuple(f.values[v] for v in g.values))


def all_monotone_maps(n, m):
    """All monotone maps [n] -> [m]."""
    out = []
    for vals in combinations(range(m + n + 1), n + 1):
        out.append(SimplexMap(n, m, tuple(v - i for i, v in enumerate(vals))))
    return out


def all_epis(n, m):
    """All surjections [n] ->> [m]."""
    if m > n or m < 0:
        return []
    out = []
    for J in combinations(range(1, n + 1), n - m):
        out.append(_epi_contracting(set(J), n, m))
    return out


def all_monos(m, n):
    """All injections [m] -> [n]."""
    if m > n:
        return []
    return [
        SimplexMap(m, n, vals) for vals in combinations(range(n + 1), m + 1)
    ]
