"""Finite, dimension-truncated simplicial sets in canonical-form presentation.

A simplex is a pair (surjection, nondegenerate cell); every face computation
renormalizes into that form, which is unique by the classical EZ-lemma
argument.  Operations past the truncation dimension raise TruncationError
rather than silently clipping, because the loop constructions downstream
shift dimensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product as iproduct

from . import simplexcat as sc
from .simplexcat import SimplexMap, compose


class TruncationError(Exception):
    pass


@dataclass(frozen=True)
class Simplex:
    """A level-n simplex in canonical form: epi [n]->>[m] plus nondeg cell."""

    deg: SimplexMap
    cell: str

    @property
    def level(self):
        return self.deg.dom

    @property
    def cell_dim(self):
        return self.deg.cod

    @property
    def is_nondegenerate(self):
        return self.deg.is_identity

    def __repr__(self):
        if self.deg.is_identity:
            return self.cell
        word = "".join(f"s{i}" for i in reversed(self.deg.degeneracy_word()))
        return f"{word} {self.cell}"


class SSetPresentation:
    """Cells per dimension with face data, checked up to the truncation."""

    def __init__(self, truncation_dim, cells, faces, check=True):
        self.truncation_dim = truncation_dim
        self.cells = {n: list(cells.get(n, [])) for n in range(truncation_dim + 1)}
        for n, names in self.cells.items():
            if len(set(names)) != len(names):
                raise ValueError(f"duplicate cell names in dimension {n}")
        self.faces = dict(faces)
        if check:
            self._check()

    def _check(self):
        for n in range(1, self.truncation_dim + 1):
            for c in self.cells[n]:
                fl = self.faces[(n, c)]
                if len(fl) != n + 1:
                    raise ValueError(f"cell {c} of dim {n} needs {n + 1} faces")
                for s in fl:
                    if s.level != n - 1:
                        raise ValueError(f"face of {c} has wrong level")
                    if s.cell not in self.cells[s.cell_dim]:
                        raise ValueError(f"face of {c} uses unknown cell {s.cell}")
        # simplicial identities d_i d_j = d_{j-1} d_i (i < j), via apply
        for n in range(2, self.truncation_dim + 1):
            for c in self.cells[n]:
                top = Simplex(sc.identity(n), c)
                for j in range(1, n + 1):
                    for i in range(j):
                        left = self.apply(self.apply(top, sc.face(j, n)), sc.face(i, n - 1))
                        right = self.apply(self.apply(top, sc.face(i, n)), sc.face(j - 1, n - 1))
                        if left != right:
                            raise ValueError(
                                f"simplicial identity fails on {c}: d{i} d{j}"
                            )

    # -- simplicial action ------------------------------------------------

    def apply(self, s: Simplex, f: SimplexMap) -> Simplex:
        """The contravariant action: the level-f.dom simplex s . f."""
        if f.cod != s.level:
            raise ValueError("map does not compose with the simplex level")
        if f.dom > self.truncation_dim:
            raise TruncationError(f"level {f.dom} beyond truncation")
        return self._act_cell(s.cell_dim, s.cell, compose(s.deg, f))

    def _act_cell(self, dim, cell, g: SimplexMap) -> Simplex:
        if g.is_surjective:
            return Simplex(g, cell)
        missing = max(v for v in range(dim + 1) if v not in set(g.values))
        fs = self.faces[(dim, cell)][missing]
        g2 = SimplexMap(g.dom, dim - 1, tuple(v if v < missing else v - 1 for v in g.values))
        return self._act_cell(fs.cell_dim, fs.cell, compose(fs.deg, g2))

    def face_of(self, s: Simplex, i):
        return self.apply(s, sc.face(i, s.level))

    def degeneracy_of(self, s: Simplex, i):
        return self.apply(s, sc.degeneracy(i, s.level))

    # -- enumeration ------------------------------------------------------

    def simplices(self, n):
        """All level-n simplices (degenerate ones included)."""
        if n > self.truncation_dim:
            raise TruncationError(f"level {n} beyond truncation")
        out = []
        for m in range(n + 1):
            for eta in sc.all_epis(n, m):
                for c in self.cells[m]:
                    out.append(Simplex(eta, c))
        return out

    def n_cells(self, n):
        return [Simplex(sc.identity(n), c) for c in self.cells.get(n, [])]

    def size_vector(self):
        return [len(self.cells[n]) for n in range(self.truncation_dim + 1)]


# -- generic explicit simplicial sets ------------------------------------


class ExplicitSSet:
    """A finite simplicial set given by raw level sets and structure maps."""

    def __init__(self, truncation_dim, levels, face_fn, deg_fn):
        self.truncation_dim = truncation_dim
        self.levels = levels  # list of lists, index = level
        self.face_fn = face_fn  # (n, i, x) -> element of level n-1
        self.deg_fn = deg_fn  # (n, i, x) -> element of level n+1

    def canonical(self, n, x):
        """(epi, level, nondeg element) canonical form of x at level n."""
        for i in range(n):
            if self.deg_fn(n - 1, i, self.face_fn(n, i, x)) == x:
                eta, m, y = self.canonical(n - 1, self.face_fn(n, i, x))
                return compose(eta, sc.degeneracy(i, n - 1)), m, y
        return sc.identity(n), n, x

    def to_presentation(self, names=None):
        names = names or {}
        gen = {}
        used = set()
        for n, level in enumerate(self.levels):
            for x in level:
                if self.canonical(n, x)[0].is_identity:
                    label = names.get((n, x), str(x))
                    while (n, label) in used:
                        label = f"{label}#{len(gen)}"
                    used.add((n, label))
                    gen[(n, x)] = label
        cells = {}
        for (n, x), label in gen.items():
            cells.setdefault(n, []).append(label)
        faces = {}
        for (n, x), label in gen.items():
            if n == 0:
                continue
            fl = []
            for i in range(n + 1):
                eta, m, y = self.canonical(n - 1, self.face_fn(n, i, x))
                fl.append(Simplex(eta, gen[(m, y)]))
            faces[(n, label)] = fl
        return SSetPresentation(self.truncation_dim, cells, faces)


def explicit_from_presentation(X: SSetPresentation):
    levels = [X.simplices(n) for n in range(X.truncation_dim + 1)]
    return ExplicitSSet(
        X.truncation_dim,
        levels,
        lambda n, i, s: X.face_of(s, i),
        lambda n, i, s: X.degeneracy_of(s, i),
    )


# -- standard spaces ------------------------------------------------------


def standard_simplex(n, dim=None):
    """The n-simplex, truncated at `dim` (default n)."""
    dim = n if dim is None else dim
    cells = {}
    faces = {}
    for k in range(min(n, dim) + 1):
        cells[k] = ["".join(map(str, c)) for c in combinations(range(n + 1), k + 1)]
        if k:
            for c in combinations(range(n + 1), k + 1):
                name = "".join(map(str, c))
                fl = []
                for i in range(k + 1):
                    sub = c[:i] + c[i + 1 :]
                    fl.append(Simplex(sc.identity(k - 1), "".join(map(str, sub))))
                faces[(k, name)] = fl
    return SSetPresentation(dim, cells, faces)


def boundary_simplex(n, dim=None):
    dim = (n - 1) if dim is None else dim
    X = standard_simplex(n, dim=max(dim, 0))
    cells = {k: list(v) for k, v in X.cells.items() if k <= dim}
    top = "".join(map(str, range(n + 1)))
    if n <= dim and top in cells.get(n, []):
        cells[n].remove(top)
    faces = {k: v for k, v in X.faces.items() if k[0] <= dim and k[1] != top}
    return SSetPresentation(dim, cells, faces)


def sphere(n, dim=None):
    """The n-simplex with collapsed boundary: one cell in dims 0 and n."""
    dim = (n + 2) if dim is None else dim
    if n == 0:
        # two points
        return SSetPresentation(dim, {0: ["p", "q"]}, {})
    cells = {0: ["pt"], n: ["top"]}
    faces = {}
    if n == 1:
        faces[(1, "top")] = [Simplex(sc.identity(0), "pt"), Simplex(sc.identity(0), "pt")]
    else:
        collapsed = Simplex(sc.constant(n - 1, 0, 0), "pt")
        faces[(n, "top")] = [collapsed] * (n + 1)
    return SSetPresentation(dim, cells, faces)


def circle(dim=4):
    return sphere(1, dim=dim)


def point(dim=4):
    return SSetPresentation(dim, {0: ["pt"]}, {})


def standard(name, dim=None):
    """Parse standard space names: delta<n>, boundary<n>, sphere<n>, s1, point."""
    name = name.strip().lower()
    if name in ("pt", "point", "delta0"):
        return point(dim or 4)
    if name == "s1":
        return circle(dim or 4)
    for prefix, fn in (("delta", standard_simplex), ("boundary", boundary_simplex), ("sphere", sphere)):
        if name.startswith(prefix) and name[len(prefix) :].isdigit():
            return fn(int(name[len(prefix) :]), dim=dim)
    raise ValueError(f"unknown standard space {name!r}")


# -- products --------------------------------------------------------------


def _joint_canonical(X, Y, s: Simplex, t: Simplex):
    """Factor a pair into (common epi, jointly nondegenerate pair)."""
    eta = sc.identity(s.level)
    while True:
        common = [
            i
            for i in range(s.level)
            if s.deg.degenerate_at(i) and t.deg.degenerate_at(i)
        ]
        if not common:
            return eta, s, t
        i = common[0]
        n = s.level
        sig = sc.degeneracy(i, n - 1)
        eta = compose(eta, sig)
        # strip sigma_i from both coordinates
        fi = sc.face(i, n)
        s = X.apply(s, fi)
        t = Y.apply(t, fi)


def pair_name(s: Simplex, t: Simplex):
    return f"({s!r}|{t!r})"


def product(X: SSetPresentation, Y: SSetPresentation, dim=None):
    """Levelwise product; cells are jointly nondegenerate simplex pairs."""
    if dim is None:
        if X.truncation_dim != Y.truncation_dim:
            raise ValueError("truncation mismatch (pass dim= to override)")
        dim = X.truncation_dim
    if dim > min(X.truncation_dim, Y.truncation_dim):
        raise TruncationError("requested dimension beyond a factor's truncation")
    cells = {}
    pairs = {}
    for n in range(dim + 1):
        cells[n] = []
        for s in X.simplices(n):
            for t in Y.simplices(n):
                if not any(
                    s.deg.degenerate_at(i) and t.deg.degenerate_at(i) for i in range(n)
                ):
                    name = pair_name(s, t)
                    cells[n].append(name)
                    pairs[(n, name)] = (s, t)
    faces = {}
    for n in range(1, dim + 1):
        for name in cells[n]:
            s, t = pairs[(n, name)]
            fl = []
            for i in range(n + 1):
                fi = sc.face(i, n)
                eta, s2, t2 = _joint_canonical(X, Y, X.apply(s, fi), Y.apply(t, fi))
                fl.append(Simplex(eta, pair_name(s2, t2)))
            faces[(n, name)] = fl
    small = sum(len(v) for v in cells.values()) <= 1500
    P = SSetPresentation(dim, cells, faces, check=small)
    P.pair_of = dict(pairs)
    return P


# -- decalage --------------------------------------------------------------


class BiSSetSlice:
    """The family (n, m) -> X_{n+m+1} with both simplicial structures."""

    def __init__(self, base: SSetPresentation):
        self.base = base

    def level(self, n, m):
        if n + m + 1 > self.base.truncation_dim:
            raise TruncationError("decalage level beyond truncation")
        return self.base.simplices(n + m + 1)

    def face_h(self, n, m, i, s):  # first-variable face
        return self.base.apply(s, sc.face(i, n + m + 1))

    def face_v(self, n, m, i, s):  # second-variable face
        return self.base.apply(s, sc.face(n + 1 + i, n + m + 1))

    def deg_v(self, n, m, i, s):
        return self.base.apply(s, sc.degeneracy(n + 1 + i, n + m))

    def extra_degeneracy(self, n, m, s):
        """The contracting degeneracy of the slice at n (the join collapse)."""
        return self.base.apply(s, sc.degeneracy(n, n + m + 1))

    def slice(self, n) -> ExplicitSSet:
        mmax = self.base.truncation_dim - n - 1
        levels = [self.level(n, m) for m in range(mmax + 1)]
        return ExplicitSSet(
            mmax,
            levels,
            lambda m, i, s: self.face_v(n, m, i, s),
            lambda m, i, s: self.deg_v(n, m + 1, i, s),
        )


def total_dec(X: SSetPresentation) -> BiSSetSlice:
    return BiSSetSlice(X)


# -- bisimplicial sets and the codiagonal ----------------------------------


class BiSSet:
    """Protocol: finite bisimplicial set with explicit levels and actions."""

    def level(self, p, q):
        raise NotImplementedError

    def act(self, p, q, f: SimplexMap, g: SimplexMap, x):
        """The action of (f, g): [f.dom],[g.dom] <- [p],[q] wait: x at (p, q),
        f: [p'] -> [p], g: [q'] -> [q]; returns element at (p', q')."""
        raise NotImplementedError


class ProductBiSSet(BiSSet):
    def __init__(self, X: SSetPresentation, Y: SSetPresentation):
        self.X, self.Y = X, Y

    def level(self, p, q):
        return list(iproduct(self.X.simplices(p), self.Y.simplices(q)))

    def act(self, p, q, f, g, x):
        s, t = x
        return (self.X.apply(s, f), self.Y.apply(t, g))


class Pr2BiSSet(BiSSet):
    """Constant in the first variable."""

    def __init__(self, Y: SSetPresentation):
        self.Y = Y

    def level(self, p, q):
        return list(self.Y.simplices(q))

    def act(self, p, q, f, g, x):
        return self.Y.apply(x, g)


class DecBiSSet(BiSSet):
    """(p, q) -> X_{p+q+1}, both structures from the join reindexing."""

    def __init__(self, X: SSetPresentation):
        self.X = X

    def level(self, p, q):
        return self.X.simplices(p + q + 1)

    def act(self, p, q, f, g, x):
        return self.X.apply(x, sc.star(f, g))


def artin_mazur_total(B: BiSSet, dim) -> ExplicitSSet:
    """The total simplicial set: level n is the zig-zag limit of B_{i, n-i}."""
    levels = []
    for n in range(dim + 1):
        tuples = [(y,) for y in B.level(n, 0)]
        for i in range(n - 1, -1, -1):
            nxt = []
            j = n - i
            for part in tuples:
                prev = part[-1]  # lives at (i+1, j-1)
                lhs = B.act(i + 1, j - 1, sc.face(i + 1, i + 1), sc.identity(j - 1), prev)
                for y in B.level(i, j):
                    if B.act(i, j, sc.identity(i), sc.face(0, j), y) == lhs:
                        nxt.append(part + (y,))
            tuples = nxt
        levels.append([tuple(t) for t in tuples])

    def act_tuple(n, f, y):
        # y indexed by the second coordinate: y[k] sits at (n-k, k)
        m = f.dom
        out = []
        for ip in range(m, -1, -1):
            jp = m - ip
            b = f.values[ip]
            g1 = SimplexMap(ip, b, tuple(f.values[: ip + 1]))
            g2 = SimplexMap(jp, n - b, tuple(v - b for v in f.values[ip:]))
            out.append(B.act(b, n - b, g1, g2, y[n - b]))
        return tuple(out)

    def face_fn(n, i, y):
        return act_tuple(n, sc.face(i, n), y)

    def deg_fn(n, i, y):
        return act_tuple(n, sc.degeneracy(i, n), y)

    return ExplicitSSet(dim, levels, face_fn, deg_fn)


# -- nerves ----------------------------------------------------------------


class Monoid:
    """A finite monoid by multiplication table."""

    def __init__(self, elements, unit, table):
        self.elements = list(elements)
        self.unit = unit
        self.table = dict(table)
        for a in self.elements:
            for b in self.elements:
                if (a, b) not in self.table:
                    raise ValueError("incomplete multiplication table")
        for a in self.elements:
            if self.table[(a, self.unit)] != a or self.table[(self.unit, a)] != a:
                raise ValueError("unit law fails")
        for a in self.elements:
            for b in self.elements:
                for c in self.elements:
                    if self.table[(self.table[(a, b)], c)] != self.table[(a, self.table[(b, c)])]:
                        raise ValueError("non-associative table")

    def mul(self, a, b):
        return self.table[(a, b)]

    @classmethod
    def cyclic(cls, k):
        els = list(range(k))
        table = {(a, b): (a + b) % k for a in els for b in els}
        return cls(els, 0, table)

    @classmethod
    def trivial(cls):
        return cls([0], 0, {(0, 0): 0})


def nerve_explicit(M: Monoid, dim) -> ExplicitSSet:
    levels = [list(iproduct(*[M.elements] * n)) for n in range(dim + 1)]

    def face_fn(n, i, x):
        if i == 0:
            return x[1:]
        if i == n:
            return x[:-1]
        return x[: i - 1] + (M.mul(x[i - 1], x[i]),) + x[i + 1 :]

    def deg_fn(n, i, x):
        return x[:i] + (M.unit,) + x[i:]

    return ExplicitSSet(dim, levels, face_fn, deg_fn)


def nerve(M: Monoid, dim) -> SSetPresentation:
    return nerve_explicit(M, dim).to_presentation()


# -- JSON schema -----------------------------------------------------------


def sset_to_json(X: SSetPresentation):
    data = {"dim": X.truncation_dim, "cells": {}, "faces": {}}
    for n, names in X.cells.items():
        data["cells"][str(n)] = list(names)
    for (n, c), fl in X.faces.items():
        data["faces"][c] = [
            {"deg": s.deg.degeneracy_word(), "cell": s.cell} for s in fl
        ]
    return data


def sset_from_json(data) -> SSetPresentation:
    dim = int(data["dim"])
    cells = {int(k): list(v) for k, v in data.get("cells", {}).items()}
    dim_of = {c: n for n, names in cells.items() for c in names}
    faces = {}
    for cname, fl in data.get("faces", {}).items():
        n = dim_of[cname]
        out = []
        for entry in fl:
            cdim = dim_of[entry["cell"]]
            eta = sc.identity(cdim)
            level = cdim
            for i in sorted(entry.get("deg", [])):
                eta = compose(eta, sc.degeneracy(i, level))
                level += 1
            out.append(Simplex(eta, entry["cell"]))
        faces[(n, cname)] = out
    return SSetPresentation(dim, cells, faces)
