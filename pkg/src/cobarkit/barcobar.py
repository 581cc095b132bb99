"""Dg-(co)algebras, tensor-word algebras, bar and cobar, and their A-infinity
packaging.

Tensor algebras are materialized lazily per (chain degree, word length);
generators of degree zero are allowed but then a length bound is mandatory,
and every reduction-based equality stays sound (window ideals are contained
in the true ideal).
"""

from __future__ import annotations

from itertools import product as iproduct

from . import intlinalg as la
from . import simplexcat as sc
from .chain import ChainComplex, zmat
from .sset import SSetPresentation


# -- dg (co)algebras ---------------------------------------------------------


class DgAlgebra:
    """Chain complex with multiplication matrices m_{i,j}: C_i (x) C_j -> C_{i+j}."""

    def __init__(self, complex_: ChainComplex, mult, unit_vector, augmentation=None, check=True, checkmax=None):
        self.complex = complex_
        self.mult = dict(mult)
        self.unit = list(unit_vector)
        self.augmentation = list(augmentation) if augmentation is not None else None
        if check:
            self.check(checkmax)

    def rank(self, n):
        return self.complex.rank(n)

    def m(self, i, j):
        if (i, j) in self.mult:
            return self.mult[(i, j)]
        return zmat(self.rank(i + j), self.rank(i) * self.rank(j))

    def product_vec(self, i, vi, j, vj):
        out = [0] * self.rank(i + j)
        m = self.m(i, j)
        nj = self.rank(j)
        for a, ca in enumerate(vi):
            if ca:
                for b, cb in enumerate(vj):
                    if cb:
                        col = a * nj + b
                        for r in range(self.rank(i + j)):
                            if m[r][col]:
                                out[r] += ca * cb * m[r][col]
        return out

    def check(self, checkmax=None):
        top = self.complex.top_degree if checkmax is None else checkmax
        # unit laws
        for n in self.complex.degrees():
            if n > top:
                continue
            for a in range(self.rank(n)):
                v = [int(t == a) for t in range(self.rank(n))]
                left = self.product_vec(0, self.unit, n, v)
                right = self.product_vec(n, v, 0, self.unit)
                if left != v or right != v:
                    raise ValueError(f"unit law fails in degree {n}")
        # associativity and Leibniz
        for i in self.complex.degrees():
            for j in self.complex.degrees():
                if i + j > top:
                    continue
                for a in range(self.rank(i)):
                    va = [int(t == a) for t in range(self.rank(i))]
                    for b in range(self.rank(j)):
                        vb = [int(t == b) for t in range(self.rank(j))]
                        ab = self.product_vec(i, va, j, vb)
                        for k in self.complex.degrees():
                            if i + j + k > top:
                                continue
                            for c in range(self.rank(k)):
                                vc = [int(t == c) for t in range(self.rank(k))]
                                lhs = self.product_vec(i + j, ab, k, vc)
                                rhs = self.product_vec(i, va, j + k, self.product_vec(j, vb, k, vc))
                                if lhs != rhs:
                                    raise ValueError("associativity fails")
                        dab = la.mat_vec(self.complex.diff(i + j), ab) if i + j >= 1 else []
                        da = la.mat_vec(self.complex.diff(i), va) if i >= 1 else [0] * 0
                        db = la.mat_vec(self.complex.diff(j), vb) if j >= 1 else [0] * 0
                        t1 = self.product_vec(i - 1, da, j, vb) if i >= 1 else [0] * self.rank(i + j - 1)
                        t2 = self.product_vec(i, va, j - 1, db) if j >= 1 else [0] * self.rank(i + j - 1)
                        sgn = -1 if i % 2 else 1
                        rhs = [x + sgn * y for x, y in zip(t1, t2)]
                        if i + j >= 1 and dab != rhs:
                            raise ValueError(f"Leibniz fails in degrees ({i},{j})")
        # augmentation must kill boundaries from degree 1
        if self.augmentation is not None and self.rank(1):
            d1 = self.complex.diff(1)
            for c in range(self.rank(1)):
                s = sum(self.augmentation[r] * d1[r][c] for r in range(self.rank(0)))
                if s:
                    raise ValueError("augmentation is not a chain map")


class DgCoalgebra:
    """Chain complex with comultiplication matrices C_{i+j} -> C_i (x) C_j."""

    def __init__(self, complex_: ChainComplex, comult, counit, coaug_vector=None, check=True, checkmax=None):
        self.complex = complex_
        self.comult = dict(comult)
        self.counit = list(counit)
        self.coaug = list(coaug_vector) if coaug_vector is not None else None
        if check:
            self.check(checkmax)

    def rank(self, n):
        return self.complex.rank(n)

    def beta(self, i, j):
        if (i, j) in self.comult:
            return self.comult[(i, j)]
        return zmat(self.rank(i) * self.rank(j), self.rank(i + j))

    def comult_vec(self, i, j, n, v):
        out = [0] * (self.rank(i) * self.rank(j))
        b = self.beta(i, j)
        for c, cc in enumerate(v):
            if cc:
                for r in range(len(out)):
                    if b[r][c]:
                        out[r] += cc * b[r][c]
        return out

    @property
    def is_connected(self):
        return self.rank(0) == 1 and all(v == 1 for v in self.counit)

    def check(self, checkmax=None):
        top = self.complex.top_degree if checkmax is None else checkmax
        for n in self.complex.degrees():
            if n > top:
                continue
            for a in range(self.rank(n)):
                v = [int(t == a) for t in range(self.rank(n))]
                # counit laws: (eps (x) 1) Delta = id = (1 (x) eps) Delta
                left = self.comult_vec(0, n, n, v)
                ln = [0] * self.rank(n)
                for r0 in range(self.rank(0)):
                    for r1 in range(self.rank(n)):
                        ln[r1] += self.counit[r0] * left[r0 * self.rank(n) + r1]
                right = self.comult_vec(n, 0, n, v)
                rn = [0] * self.rank(n)
                for r1 in range(self.rank(n)):
                    for r0 in range(self.rank(0)):
                        rn[r1] += right[r1 * self.rank(0) + r0] * self.counit[r0]
                if ln != v or rn != v:
                    raise ValueError(f"counit law fails in degree {n}")
                # coassociativity: (Delta (x) 1) Delta = (1 (x) Delta) Delta
                for i in range(n + 1):
                    for j in range(n + 1 - i):
                        k = n - i - j
                        lhs = {}
                        step = self.comult_vec(i + j, k, n, v)
                        for r, coeff in enumerate(step):
                            if coeff:
                                rij, rk = divmod(r, self.rank(k))
                                inner = self.comult_vec(
                                    i, j, i + j, [int(t == rij) for t in range(self.rank(i + j))]
                                )
                                for r2, c2 in enumerate(inner):
                                    if c2:
                                        ri, rj = divmod(r2, self.rank(j))
                                        key = (ri, rj, rk)
                                        lhs[key] = lhs.get(key, 0) + coeff * c2
                        rhs = {}
                        step = self.comult_vec(i, j + k, n, v)
                        for r, coeff in enumerate(step):
                            if coeff:
                                ri, rjk = divmod(r, self.rank(j + k))
                                inner = self.comult_vec(
                                    j, k, j + k, [int(t == rjk) for t in range(self.rank(j + k))]
                                )
                                for r2, c2 in enumerate(inner):
                                    if c2:
                                        rj, rk = divmod(r2, self.rank(k))
                                        key = (ri, rj, rk)
                                        rhs[key] = rhs.get(key, 0) + coeff * c2
                        lhs = {k2: v2 for k2, v2 in lhs.items() if v2}
                        rhs = {k2: v2 for k2, v2 in rhs.items() if v2}
                        if lhs != rhs:
                            raise ValueError(f"coassociativity fails in degree {n}")
                # co-Leibniz: Delta d = (d (x) 1 + 1 (x) d) Delta
                if n >= 1:
                    dv = la.mat_vec(self.complex.diff(n), v)
                    for i in range(n):
                        j = n - 1 - i
                        lhs = self.comult_vec(i, j, n - 1, dv)
                        acc = [0] * (self.rank(i) * self.rank(j))
                        if self.rank(i + 1):
                            step = self.comult_vec(i + 1, j, n, v)
                            dmat = self.complex.diff(i + 1)
                            for r, coeff in enumerate(step):
                                if coeff:
                                    ri, rj = divmod(r, self.rank(j))
                                    for r2 in range(self.rank(i)):
                                        if dmat[r2][ri]:
                                            acc[r2 * self.rank(j) + rj] += coeff * dmat[r2][ri]
                        if self.rank(j + 1):
                            step = self.comult_vec(i, j + 1, n, v)
                            dmat = self.complex.diff(j + 1)
                            sgn = -1 if i % 2 else 1
                            for r, coeff in enumerate(step):
                                if coeff:
                                    ri, rj = divmod(r, self.rank(j + 1))
                                    for r2 in range(self.rank(j)):
                                        if dmat[r2][rj]:
                                            acc[ri * self.rank(j) + r2] += sgn * coeff * dmat[r2][rj]
                        if lhs != acc:
                            raise ValueError(f"co-Leibniz fails in degree {n}")


def chains_coalgebra(X: SSetPresentation, dim=None, check=True) -> DgCoalgebra:
    """Normalized chains with the front/back-face comultiplication."""
    from .doldkan import gamma

    G = gamma(X, dim)
    comult = {}
    for n in G.degrees():
        for i in range(n + 1):
            j = n - i
            if not (G.rank(i) and G.rank(j)):
                continue
            mat = zmat(G.rank(i) * G.rank(j), G.rank(n))
            for c, s in enumerate(G.basis[n]):
                front = X.apply(s, sc.front_face(i, n))
                back = X.apply(s, sc.back_face(j, n))
                if front.is_nondegenerate and back.is_nondegenerate:
                    r = G.basis[i].index(front) * G.rank(j) + G.basis[j].index(back)
                    mat[r][c] = 1
            comult[(i, j)] = mat
    counit = [1] * G.rank(0)
    coaug = [1] + [0] * (G.rank(0) - 1) if G.rank(0) else None
    return DgCoalgebra(G, comult, counit, coaug, check=check)


def connected_cover_coalgebra(C: DgCoalgebra) -> DgCoalgebra:
    """Replace degree 0 by the unit; differentials into degree 0 are cut."""
    from .chain import connected_cover

    cx = connected_cover(C.complex.__class__(C.complex.basis, C.complex.d, check=False))
    comult = {}
    for (i, j), mat in C.comult.items():
        if i == 0 or j == 0:
            continue
        comult[(i, j)] = mat
    for n in cx.degrees():
        if n >= 1 and cx.rank(n):
            m0 = zmat(1 * cx.rank(n), cx.rank(n))
            for c in range(cx.rank(n)):
                m0[c][c] = 1
            comult[(0, n)] = m0
            comult[(n, 0)] = [list(r) for r in m0]
    m00 = [[1]]
    comult[(0, 0)] = m00
    return DgCoalgebra(cx, comult, [1], [1], check=False)


# -- graded word algebras ----------------------------------------------------


class WordAlgebra:
    """The tensor algebra on graded generators, truncated by degree/length."""

    def __init__(self, gens, degmax, lenmax=None):
        self.gens = list(gens)  # (label, degree >= 0)
        self.degmax = degmax
        if lenmax is None and any(d == 0 for _, d in self.gens):
            raise ValueError("degree-0 generators need an explicit length bound")
        self.lenmax = lenmax if lenmax is not None else degmax + 1
        self._basis = {}

    def gen_degree(self, g):
        return self.gens[g][1]

    def word_degree(self, w):
        return sum(self.gens[g][1] for g in w)

    def basis(self, q):
        if q not in self._basis:
            out = []
            def rec(prefix, deg):
                if len(prefix) > self.lenmax:
                    return
                if deg == q:
                    out.append(tuple(prefix))
                if deg >= q and not any(d == 0 for _, d in self.gens):
                    return
                if len(prefix) == self.lenmax:
                    return
                for g, (_, d) in enumerate(self.gens):
                    if deg + d <= q:
                        prefix.append(g)
                        rec(prefix, deg + d)
                        prefix.pop()
            # depth-first over words; degree-0 gens bounded by lenmax
            rec([], 0)
            # deduplicate (rec may revisit when deg stays equal)
            seen = set()
            uniq = []
            for w in out:
                if w not in seen:
                    seen.add(w)
                    uniq.append(w)
            self._basis[q] = uniq
        return self._basis[q]

    def index(self, q):
        return {w: k for k, w in enumerate(self.basis(q))}


class Derivation:
    """Degree -1 derivation on a WordAlgebra from its values on generators.

    `gen_values[g]` is a dict word -> coeff of the image of generator g
    (total degree deg(g) - 1).  Extension uses the graded Leibniz rule.
    """

    def __init__(self, algebra: WordAlgebra, gen_values):
        self.A = algebra
        self.gen_values = gen_values

    def apply_word(self, w):
        out = {}
        for t, g in enumerate(w):
            sign = -1 if sum(self.A.gen_degree(u) for u in w[:t]) % 2 else 1
            for piece, coeff in self.gen_values[g].items():
                new = w[:t] + piece + w[t + 1 :]
                if len(new) <= self.A.lenmax and self.A.word_degree(new) <= self.A.degmax:
                    out[new] = out.get(new, 0) + sign * coeff
        return {k: v for k, v in out.items() if v}

    def matrix(self, q):
        src = self.A.basis(q)
        tgt = self.A.index(q - 1)
        mat = zmat(len(self.A.basis(q - 1)), len(src))
        for c, w in enumerate(src):
            for w2, coeff in self.apply_word(w).items():
                if w2 in tgt:
                    mat[tgt[w2]][c] += coeff
        return mat


def derivation_extend(algebra: WordAlgebra, gen_values) -> Derivation:
    return Derivation(algebra, gen_values)


# -- Eilenberg-MacLane bar ----------------------------------------------------


class BarCoalgebra:
    """T(s Abar) with the lifted differential and deconcatenation coproduct."""

    def __init__(self, A: DgAlgebra, degmax):
        if A.augmentation is None:
            raise ValueError("bar input needs an augmentation")
        self.A = A
        self.degmax = degmax
        # generators: a basis of the augmentation kernel in degree 0, and the
        # full bases in positive degrees; generator degree = degree + 1
        aug = A.augmentation
        ker0 = la.kernel_basis([aug], ncols=A.rank(0)) if A.rank(0) else []
        self.gen_info = []  # (degree in A, vector in A_degree)
        for v in ker0:
            self.gen_info.append((0, v))
        for n in A.complex.degrees():
            if n >= 1:
                for a in range(A.rank(n)):
                    self.gen_info.append((n, [int(t == a) for t in range(A.rank(n))]))
        self.words = WordAlgebra(
            [(f"g{k}", d + 1) for k, (d, _) in enumerate(self.gen_info)], degmax
        )
        self._proj = {}  # degree -> matrix A_n -> kernel coordinates (degree 0)
        self.d = Derivation(self.words, self._gen_values())
        self.complex = self._complex()

    def _abar_coords(self, n, vec):
        """Coordinates of vec in the chosen generator basis of Abar_n."""
        gens = [k for k, (d, _) in enumerate(self.gen_info) if d == n]
        if not gens:
            return {}
        if n == 0:
            cols = [self.gen_info[k][1] for k in gens]
            M = [[cols[j][i] for j in range(len(cols))] for i in range(self.A.rank(0))]
            x = la.solve(M, vec)
            if x is None:
                raise ValueError("vector not inside the augmentation kernel")
            return {gens[j]: x[j] for j in range(len(gens)) if x[j]}
        return {gens[a]: vec[a] for a in range(len(vec)) if vec[a]}

    def _gen_values(self):
        vals = {}
        for k, (n, v) in enumerate(self.gen_info):
            acc = {}
            # d1: minus the suspended boundary
            if n >= 1:
                dv = la.mat_vec(self.A.complex.diff(n), v)
                if n - 1 == 0:
                    # boundaries of the kernel part stay inside the kernel
                    pass
                for g2, coeff in self._abar_coords(n - 1, dv).items():
                    acc[(g2,)] = acc.get((g2,), 0) - coeff
            vals[k] = acc
        # d2 needs pairs, handled separately in apply; fold into a derivation
        # on generators is impossible (it lowers word length), so the bar
        # differential is implemented as d1-derivation plus the fold below.
        return vals

    def _fold_terms(self, w):
        """The multiplication fold: adjacent pairs merged, with bar signs."""
        out = {}
        for t in range(len(w) - 1):
            g1, g2 = w[t], w[t + 1]
            n1, v1 = self.gen_info[g1]
            n2, v2 = self.gen_info[g2]
            prefix_deg = sum(self.words.gen_degree(u) for u in w[:t])
            sign = -1 if prefix_deg % 2 else 1
            inner = -1 if (n1 + 1) % 2 else 1  # (-1)^{deg s a}
            prod = self.A.product_vec(n1, v1, n2, v2)
            if n1 + n2 == 0:
                # degree-0 product may leave the kernel; subtract aug part
                aug = self.A.augmentation
                s = sum(aug[r] * prod[r] for r in range(len(prod)))
                unit = self.A.unit
                prod = [p - s * u for p, u in zip(prod, unit)]
            for g3, coeff in self._abar_coords(n1 + n2, prod).items():
                new = w[:t] + (g3,) + w[t + 2 :]
                out[new] = out.get(new, 0) + sign * inner * coeff
        return {k: v for k, v in out.items() if v}

    def boundary_word(self, w):
        out = dict(self.d.apply_word(w))
        for w2, c in self._fold_terms(w).items():
            out[w2] = out.get(w2, 0) + c
        return {k: v for k, v in out.items() if v}

    def boundary_matrix(self, q):
        src = self.words.basis(q)
        tgt = self.words.index(q - 1)
        mat = zmat(len(self.words.basis(q - 1)), len(src))
        for c, w in enumerate(src):
            for w2, coeff in self.boundary_word(w).items():
                mat[tgt[w2]][c] += coeff
        return mat

    def _complex(self) -> ChainComplex:
        basis = {q: self.words.basis(q) for q in range(self.degmax + 1)}
        d = {q: self.boundary_matrix(q) for q in range(1, self.degmax + 1)}
        return ChainComplex({q: b for q, b in basis.items() if b}, d)

    def deconcat(self, i, j, w):
        """The (i, j)-component of the coproduct of a basis word."""
        out = {}
        for cut in range(len(w) + 1):
            left, right = w[:cut], w[cut:]
            if self.words.word_degree(left) == i and self.words.word_degree(right) == j:
                out[(left, right)] = out.get((left, right), 0) + 1
        return out

    def coalgebra(self, checkmax=None) -> DgCoalgebra:
        cx = self.complex
        comult = {}
        for n in cx.degrees():
            for i in range(n + 1):
                j = n - i
                if not (cx.rank(i) and cx.rank(j)):
                    continue
                idx_i = self.words.index(i)
                idx_j = self.words.index(j)
                mat = zmat(cx.rank(i) * cx.rank(j), cx.rank(n))
                for c, w in enumerate(self.words.basis(n)):
                    for (lw, rw), coeff in self.deconcat(i, j, w).items():
                        mat[idx_i[lw] * cx.rank(j) + idx_j[rw]][c] += coeff
                comult[(i, j)] = mat
        counit = [1] * cx.rank(0)
        return DgCoalgebra(cx, comult, counit, counit, check=checkmax is not None, checkmax=checkmax)


def em_bar(A: DgAlgebra, degmax) -> BarCoalgebra:
    return BarCoalgebra(A, degmax)


# -- Adams cobar ---------------------------------------------------------------


class CobarAlgebra:
    """T(s^{-1} Cbar) for a connected coalgebra, with d = d1 + d2."""

    def __init__(self, C: DgCoalgebra, degmax, lenmax=None):
        if not C.is_connected:
            raise ValueError("cobar input must be connected (apply the cover first)")
        if C.rank(1) and any(any(row) for row in C.complex.diff(1)):
            raise ValueError("differential into degree 0 must vanish on the cover")
        self.C = C
        self.degmax = degmax
        self.gen_info = []  # (degree in C >= 1, index)
        for n in C.complex.degrees():
            if n >= 1:
                for a in range(C.rank(n)):
                    self.gen_info.append((n, a))
        gens = [(f"g{k}", n - 1) for k, (n, _) in enumerate(self.gen_info)]
        self.words = WordAlgebra(gens, degmax, lenmax)
        self.gen_index = {}
        for k, (n, a) in enumerate(self.gen_info):
            self.gen_index[(n, a)] = k
        self.d = Derivation(self.words, self._gen_values())
        self.complex = self._complex()

    def _gen_values(self):
        vals = {}
        for k, (n, a) in enumerate(self.gen_info):
            acc = {}
            v = [int(t == a) for t in range(self.C.rank(n))]
            if n >= 2:
                dv = la.mat_vec(self.C.complex.diff(n), v)
                for r, coeff in enumerate(dv):
                    if coeff:
                        acc[(self.gen_index[(n - 1, r)],)] = -coeff
            for i in range(1, n):
                j = n - i
                step = self.C.comult_vec(i, j, n, v)
                sgn = -1 if i % 2 else 1
                for r, coeff in enumerate(step):
                    if coeff:
                        ri, rj = divmod(r, self.C.rank(j))
                        key = (self.gen_index[(i, ri)], self.gen_index[(j, rj)])
                        acc[key] = acc.get(key, 0) + sgn * coeff
            vals[k] = {kk: vv for kk, vv in acc.items() if vv}
        return vals

    def boundary_matrix(self, q):
        return self.d.matrix(q)

    def _complex(self) -> ChainComplex:
        basis = {q: self.words.basis(q) for q in range(self.degmax + 1)}
        d = {q: self.boundary_matrix(q) for q in range(1, self.degmax + 1)}
        return ChainComplex({q: b for q, b in basis.items() if b}, d)

    def homology_range(self, nmax):
        return [self.complex.homology(n) for n in range(nmax + 1)]


def adams_cobar(C: DgCoalgebra, degmax, lenmax=None) -> CobarAlgebra:
    return CobarAlgebra(C, degmax, lenmax)


# -- A-infinity structures -----------------------------------------------------


class AInfStructure:
    """Component maps m_r (degree r-2) on a graded object, stored per arity
    and input multidegree: ms[r][(d_1, ..., d_r)] is a matrix into degree
    sum(d_i) + r - 2 (lexicographic tensor bases)."""

    def __init__(self, ranks, ms):
        self.ranks = dict(ranks)  # degree -> rank
        self.ms = {r: dict(tbl) for r, tbl in ms.items()}

    def rank(self, n):
        return self.ranks.get(n, 0)

    def m_apply(self, degs, vec):
        """Apply m_r to a vector in the tensor basis of the given degrees."""
        r = len(degs)
        tbl = self.ms.get(r, {})
        out_deg = sum(degs) + r - 2
        out = [0] * self.rank(out_deg)
        mat = tbl.get(tuple(degs))
        if mat is None:
            return out
        for c, coeff in enumerate(vec):
            if coeff:
                for row in range(len(out)):
                    if mat[row][c]:
                        out[row] += coeff * mat[row][c]
        return out


def ainf_from_dg(X) -> AInfStructure:
    """m_1 = -d, m_2 = (co)multiplication transposed appropriately, rest 0."""
    if isinstance(X, DgAlgebra):
        cx = X.complex
        ranks = {n: cx.rank(n) for n in cx.degrees()}
        m1 = {}
        for n in cx.degrees():
            if n >= 1 and cx.rank(n - 1):
                m1[(n,)] = [[-v for v in row] for row in cx.diff(n)]
        m2 = {}
        for (i, j), mat in X.mult.items():
            m2[(i, j)] = mat
        return AInfStructure(ranks, {1: m1, 2: m2})
    if isinstance(X, DgCoalgebra):
        # dualize, placing the dual of degree n at degree -n so that the
        # transposed structure is an honest algebra-convention family
        cx = X.complex
        ranks = {-n: cx.rank(n) for n in cx.degrees()}
        m1 = {}
        for n in cx.degrees():
            if n >= 1 and cx.rank(n - 1):
                dmat = cx.diff(n)
                # dual of d_n: maps degree -(n-1) to degree -n
                m1[(-(n - 1),)] = [
                    [-dmat[c][r] for c in range(cx.rank(n - 1))]
                    for r in range(cx.rank(n))
                ]
        m2 = {}
        for (i, j), mat in X.comult.items():
            if mat and mat[0]:
                m2[(-i, -j)] = [
                    [mat[c][r] for c in range(len(mat))]
                    for r in range(len(mat[0]))
                ]
        return AInfStructure(ranks, {1: m1, 2: m2})
    raise TypeError("expected a dg-algebra or dg-coalgebra")


def _tensor_bases(ranks, degs):
    dims = [ranks.get(d, 0) for d in degs]
    total = 1
    for d in dims:
        total *= d
    return dims, total


def stasheff_defect(m: AInfStructure, degs):
    """The matrix of sum (-1)^{r+st} m_{r+1+t}(1^r (x) m_s (x) 1^t) on the
    tensor slot of the given input degrees; zero iff the identity holds."""
    n = len(degs)
    dims, total = _tensor_bases(m.ranks, degs)
    out_deg = sum(degs) + n - 3  # composite of two structure maps
    out = zmat(m.rank(out_deg), total)
    if total == 0:
        return out
    for s in range(1, n + 1):
        for r in range(n - s + 1):
            t = n - s - r
            inner_degs = degs[r : r + s]
            inner_out = sum(inner_degs) + s - 2
            koszul = (s - 2) * sum(degs[:r])
            sign = -1 if (r + s * t + koszul) % 2 else 1
            # iterate over the full tensor basis
            for col in range(total):
                idx = []
                c = col
                for d in reversed(dims):
                    idx.append(c % d)
                    c //= d
                idx.reverse()
                inner_dims = dims[r : r + s]
                inner_col = 0
                for d, k in zip(inner_dims, idx[r : r + s]):
                    inner_col = inner_col * d + k
                vec = [0] * _tensor_bases(m.ranks, inner_degs)[1]
                vec[inner_col] = 1
                img = m.m_apply(inner_degs, vec)
                new_degs = list(degs[:r]) + [inner_out] + list(degs[r + s :])
                new_dims = [m.ranks.get(d, 0) for d in new_degs]
                for row, coeff in enumerate(img):
                    if coeff:
                        new_idx = idx[:r] + [row] + idx[r + s :]
                        outer_col = 0
                        for d, k in zip(new_dims, new_idx):
                            outer_col = outer_col * d + k
                        vec2 = [0] * _tensor_bases(m.ranks, new_degs)[1]
                        vec2[outer_col] = 1
                        img2 = m.m_apply(new_degs, vec2)
                        for row2, coeff2 in enumerate(img2):
                            if coeff2:
                                out[row2][col] += sign * coeff * coeff2
    return out


def stasheff_check(m: AInfStructure, nmax, degmax=None) -> bool:
    degs_avail = sorted(d for d, r in m.ranks.items() if r)
    degmax = max(degs_avail, default=0) if degmax is None else degmax
    from itertools import product as ip

    for n in range(1, nmax + 1):
        for degs in ip([d for d in degs_avail if d <= degmax], repeat=n):
            if sum(degs) + n - 2 > degmax + nmax:
                continue
            defect = stasheff_defect(m, degs)
            if any(any(row) for row in defect):
                return False
    return True


class AInfMorphism:
    """Shifted components ahat_r: (sX)^{(x)r} -> sY of degree 0.

    Stored per arity and *shifted* input degrees: comps[r][(e_1,...,e_r)] is
    a matrix into shifted degree sum(e_i); shifted degree = degree + shift
    with shift +1 for the algebra convention, -1 for the coalgebra one.
    """

    def __init__(self, src_ranks, tgt_ranks, comps):
        self.src = dict(src_ranks)  # shifted degree -> rank
        self.tgt = dict(tgt_ranks)
        self.comps = {r: dict(tbl) for r, tbl in comps.items()}

    def comp(self, degs):
        r = len(degs)
        return self.comps.get(r, {}).get(tuple(degs))

    @classmethod
    def identity(cls, ranks):
        comps = {1: {}}
        for e, r in ranks.items():
            if r:
                comps[1][(e,)] = la.identity(r)
        return cls(ranks, ranks, comps)

    def compose(self, other):
        """self o other, all components, target arity bounded by available."""
        from itertools import product as ip

        max_ar = max(
            (a * b for a in self.comps for b in other.comps), default=0
        )
        comps = {}
        for n in range(1, max_ar + 1):
            tbl = {}
            # partitions of n into r blocks, self_r after other-blocks
            def partitions(n, maxpart):
                if n == 0:
                    yield ()
                    return
                for first in range(1, min(n, maxpart) + 1):
                    for rest in partitions(n - first, maxpart):
                        yield (first,) + rest

            for degs, _ in _iter_deg_tuples(other.src, n):
                total_cols = 1
                for e in degs:
                    total_cols *= other.src.get(e, 0)
                if total_cols == 0:
                    continue
                acc = None
                for part in partitions(n, n):
                    r = len(part)
                    if r not in self.comps:
                        continue
                    # split degs along part, apply other to blocks, self outside
                    mats = []
                    pos = 0
                    block_out_degs = []
                    ok = True
                    for size in part:
                        block = degs[pos : pos + size]
                        pos += size
                        mat = other.comp(block)
                        if mat is None:
                            ok = False
                            break
                        mats.append((block, mat))
                        block_out_degs.append(sum(block))
                    if not ok:
                        continue
                    outer = self.comp(tuple(block_out_degs))
                    if outer is None:
                        continue
                    kron = _kron([m for _, m in mats])
                    piece = la.mat_mul(outer, kron, cols=total_cols)
                    acc = piece if acc is None else [
                        [a + b for a, b in zip(ra, rb)] for ra, rb in zip(acc, piece)
                    ]
                if acc is not None and any(any(row) for row in acc):
                    tbl[tuple(degs)] = acc
            if tbl:
                comps[n] = tbl
        return AInfMorphism(other.src, self.tgt, comps)


def _iter_deg_tuples(ranks, n):
    from itertools import product as ip

    degs_avail = sorted(d for d, r in ranks.items() if r)
    for degs in ip(degs_avail, repeat=n):
        yield degs, None


def _kron(mats):
    """Kronecker product of matrices (lexicographic tensor bases)."""
    out = [[1]]
    for m in mats:
        rows = len(m)
        cols = len(m[0]) if m else 0
        new = []
        for ra in out:
            for r2 in range(rows):
                new.append([a * m[r2][c2] for a in ra for c2 in range(cols)])
        out = new
    return out


def ainf_invert(alpha: AInfMorphism, nmax) -> AInfMorphism:
    """Inverse up to arity nmax, by the triangular solve on components."""
    inv1 = {}
    for (e,), mat in alpha.comps.get(1, {}).items():
        if not mat:
            continue
        n = len(mat)
        if n != (len(mat[0]) if mat else 0):
            raise ValueError("arity-1 component is not square")
        inv = _int_inverse(mat)
        if inv is None:
            raise ValueError("arity-1 component is not invertible over Z")
        inv1[(e,)] = inv
    beta = AInfMorphism(alpha.tgt, alpha.src, {1: inv1})
    for n in range(2, nmax + 1):
        comp = beta.compose(alpha)
        corr = {}
        for degs, mat in comp.comps.get(n, {}).items():
            if not any(any(row) for row in mat):
                continue
            # beta_n gets -(defect) conjugated by the arity-1 inverses
            kron = _kron([inv1[(e,)] for e in degs])
            corr[degs] = [[-v for v in row] for row in la.mat_mul(mat, kron)]
        if corr:
            beta.comps.setdefault(n, {})
            for degs, mat in corr.items():
                beta.comps[n][degs] = mat
    return beta


def _int_inverse(mat):
    n = len(mat)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = la.solve(mat, e)
        if x is None:
            return None
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


# -- the cobar quotient presentation ------------------------------------------


class QuotientAlgebra:
    """T(generators)/(two-sided homogeneous ideal) with Hermite normal forms.

    Generators carry nonnegative degrees; the ideal is generated by listed
    homogeneous elements (dict word -> coeff).  Reductions use the window
    (degmax, lenmax); window ideals are contained in the true ideal so every
    positive equality is sound.
    """

    def __init__(self, gens, ideal_gens, degmax, lenmax=None):
        self.words = WordAlgebra(gens, degmax, lenmax)
        self.ideal_gens = list(ideal_gens)  # (degree, dict word->coeff)
        self._nf = {}

    def _lattice(self, q):
        if q not in self._nf:
            idx = self.words.index(q)
            nf = la.LatticeNF(len(self.words.basis(q)))
            for (degg, terms) in self.ideal_gens:
                if degg > q:
                    continue
                # all u * g * v staying inside the window
                for lq in range(q - degg + 1):
                    rq = q - degg - lq
                    for u in self.words.basis(lq):
                        for v in self.words.basis(rq):
                            vec = [0] * len(idx)
                            good = False
                            for w, coeff in terms.items():
                                word = u + w + v
                                if word in idx:
                                    vec[idx[word]] += coeff
                                    good = True
                            if good and any(vec):
                                nf.add(vec)
            self._nf[q] = nf
        return self._nf[q]

    def normal_form(self, q, vec):
        return self._lattice(q).reduce(vec)

    def nf_word(self, q, terms):
        idx = self.words.index(q)
        vec = [0] * len(idx)
        for w, c in terms.items():
            vec[idx[w]] += c
        return self.normal_form(q, vec)

    def equal(self, q, t1, t2):
        v = self.nf_word(q, {**{w: c for w, c in t1.items()},})
        w = self.nf_word(q, t2)
        return v == w

    def contains(self, q, terms):
        return not any(self.nf_word(q, terms))

    def quotient_homology(self, d_gen_values, n):
        """H_n of the quotient dg-algebra, the differential given on
        generators (extended as a derivation)."""
        D = Derivation(self.words, d_gen_values)
        idx_n = self.words.index(n)
        rank_n = len(self.words.basis(n))
        # kernel of (d mod I_{n-1}) intersected with ambient, modulo I_n + im d
        dn = D.matrix(n)
        moduli_basis = self._lattice(n - 1).basis() if n >= 1 else []
        # rows: ambient of degree n-1 (constraints modulo the ideal lattice)
        if rank_n == 0:
            return None
        if n >= 1 and self.words.basis(n - 1):
            aug = [list(row) for row in dn]
            # solutions of d x in I_{n-1}: kernel of [d | ideal-basis] projected
            nI = len(moduli_basis)
            rows = len(aug)
            wide = [aug[i] + [moduli_basis[k][i] for k in range(nI)] for i in range(rows)]
            kerw = la.kernel_basis(wide, ncols=rank_n + nI)
            cycles = []
            seen = la.LatticeNF(rank_n)
            for v in kerw:
                w = v[:rank_n]
                if any(w) and not seen.contains(w):
                    seen.add(w)
                    cycles.append(w)
        else:
            cycles = la.identity(rank_n)
        bound = []
        if self.words.basis(n + 1):
            dn1 = D.matrix(n + 1)
            for j in range(len(self.words.basis(n + 1))):
                bound.append([dn1[i][j] for i in range(rank_n)])
        bound += self._lattice(n).basis()
        from .chain import AbGroup

        rank, torsion = la.quotient_invariants(cycles, [b for b in bound if any(b)] )
        return AbGroup(rank, tuple(torsion))


# -- the cobar quotient of the decalage columns --------------------------------


class DecCobarData:
    """Column-one generators and column-two relations of the decalage of a
    connected coalgebra B, with the split-row bookkeeping.

    Generators at degree m: ("s", x) for x in B_{m+2} and ("b", x) for x in
    B_{m+1}.  The ideal generator attached to a column-two element combines
    the column differential with the sign-twisted comultiplication split
    over the four row-tensor blocks.
    """

    def __init__(self, B: DgCoalgebra, degmax, lenmax=None):
        self.B = B
        self.degmax = degmax
        cx = B.complex
        gens = []
        self.gen_label = {}
        for m in range(degmax + 1):
            for x in range(cx.rank(m + 2)):
                self.gen_label[("s", m, x)] = len(gens)
                gens.append(((("s", m, x)), m))
            for x in range(cx.rank(m + 1)):
                self.gen_label[("b", m, x)] = len(gens)
                gens.append(((("b", m, x)), m))
        self.gens = gens
        ideal = []
        for n in range(degmax + 1):
            # column-two basis at row n: ("s", x in B_{n+3}), ("b", x in B_{n+2})
            for x in range(cx.rank(n + 3)):
                terms = self._m11_s(n, x)
                if terms:
                    ideal.append((n, terms))
            for x in range(cx.rank(n + 2)):
                terms = self._m11_b(n, x)
                terms2 = dict(terms)
                key = (self.gen_label[("s", n, x)],)
                terms2[key] = terms2.get(key, 0) + 1  # column differential part
                ideal.append((n, {k: v for k, v in terms2.items() if v}))
        self.quotient = QuotientAlgebra(gens, ideal, degmax, lenmax)
        self.d_gen_values = self._differential()

    def _vec(self, deg, idx):
        return [int(t == idx) for t in range(self.B.rank(deg))]

    def _m11_s(self, n, x):
        """Comultiplication of an ("s", x)-relation generator, x in B_{n+3}."""
        B = self.B
        out = {}
        v = self._vec(n + 3, x)
        for i in range(n + 1):
            j = n - i
            # (s_i (x) b_j): beta_{i+2, j+1}
            step = B.comult_vec(i + 2, j + 1, n + 3, v)
            for r, coeff in enumerate(step):
                if coeff:
                    ri, rj = divmod(r, B.rank(j + 1))
                    key = (self.gen_label[("s", i, ri)], self.gen_label[("b", j, rj)])
                    out[key] = out.get(key, 0) + coeff
            # (b_i (x) s_j): (-1)^{j+1} beta_{i+1, j+2}
            step = B.comult_vec(i + 1, j + 2, n + 3, v)
            sgn = -1 if (j + 1) % 2 else 1
            for r, coeff in enumerate(step):
                if coeff:
                    ri, rj = divmod(r, B.rank(j + 2))
                    key = (self.gen_label[("b", i, ri)], self.gen_label[("s", j, rj)])
                    out[key] = out.get(key, 0) + sgn * coeff
        return {k: v for k, v in out.items() if v}

    def _m11_b(self, n, x):
        """Comultiplication of a ("b", x)-relation generator, x in B_{n+2}."""
        B = self.B
        out = {}
        v = self._vec(n + 2, x)
        for i in range(n + 1):
            j = n - i
            step = B.comult_vec(i + 1, j + 1, n + 2, v)
            sgn = -1 if j % 2 else 1
            for r, coeff in enumerate(step):
                if coeff:
                    ri, rj = divmod(r, B.rank(j + 1))
                    key = (self.gen_label[("b", i, ri)], self.gen_label[("b", j, rj)])
                    out[key] = out.get(key, 0) + sgn * coeff
        return {k: v for k, v in out.items() if v}

    def _differential(self):
        """Row differential on generators: d("s",x) = ("s", dx);
        d("b",x) = (-1)^m ("s", x) + ("b", dx)."""
        cx = self.B.complex
        vals = {}
        for key, g in self.gen_label.items():
            tag, m, x = key
            acc = {}
            if m >= 1:
                deg = m + 2 if tag == "s" else m + 1
                dmat = cx.diff(deg)
                for r in range(cx.rank(deg - 1)):
                    if dmat[r][x]:
                        acc[(self.gen_label[(tag, m - 1, r)],)] = dmat[r][x]
            if tag == "b":
                sgn = -1 if m % 2 else 1
                k2 = (self.gen_label[("s", m - 1, x)],) if m >= 1 else None
                if m >= 1:
                    acc[k2] = acc.get(k2, 0) + sgn
            vals[g] = {k: v for k, v in acc.items() if v}
        return vals


def cobar_dec_iso(B: DgCoalgebra, degmax, lenmax=None):
    """Build both sides and the mutually inverse algebra maps; verify.

    Returns a report dict with the checks: phi respects the differential,
    phi kills the ideal, phi o psi is the identity, psi o phi is the
    identity modulo the ideal, and psi is a chain map modulo the ideal.
    """
    data = DecCobarData(B, degmax, lenmax)
    P = connected_cover_coalgebra(B)
    cob = adams_cobar(P, degmax, lenmax)
    Q = data.quotient

    # phi on quotient generators, as words of the cobar algebra
    def phi_gen(g):
        tag, m, x = data.gens[g][0]
        if tag == "b":
            sgn = -1 if m % 2 else 1
            return {(cob.gen_index[(m + 1, x)],): sgn}
        # d2 of the suspended generator of degree m+2
        out = {}
        v = [int(t == x) for t in range(B.rank(m + 2))]
        n = m + 2
        for i in range(1, n):
            j = n - i
            step = B.comult_vec(i, j, n, v)
            sgn = -1 if i % 2 else 1
            for r, coeff in enumerate(step):
                if coeff:
                    ri, rj = divmod(r, B.rank(j))
                    key = (cob.gen_index[(i, ri)], cob.gen_index[(j, rj)])
                    out[key] = out.get(key, 0) + sgn * coeff
        return out

    def phi_word(w, coeff=1):
        acc = {(): coeff}
        for g in w:
            img = phi_gen(g)
            new = {}
            for wa, ca in acc.items():
                for wb, cb in img.items():
                    ww = wa + wb
                    if len(ww) <= cob.words.lenmax and cob.words.word_degree(ww) <= degmax:
                        new[ww] = new.get(ww, 0) + ca * cb
            acc = new
        return {k: v for k, v in acc.items() if v}

    def psi_gen(k):
        n_plus_1, x = cob.gen_info[k]
        m = n_plus_1 - 1
        sgn = -1 if m % 2 else 1
        return {(data.gen_label[("b", m, x)],): sgn}

    def psi_word(w, coeff=1):
        acc = {(): coeff}
        for g in w:
            img = psi_gen(g)
            new = {}
            for wa, ca in acc.items():
                for wb, cb in img.items():
                    ww = wa + wb
                    if len(ww) <= Q.words.lenmax and Q.words.word_degree(ww) <= degmax:
                        new[ww] = new.get(ww, 0) + ca * cb
            acc = new
        return acc

    report = {}
    # phi kills the ideal generators
    ok = True
    for (degg, terms) in data.quotient.ideal_gens:
        acc = {}
        for w, c in terms.items():
            for w2, c2 in phi_word(w, c).items():
                acc[w2] = acc.get(w2, 0) + c2
        if any(acc.values()):
            ok = False
    report["phi kills ideal"] = ok

    # phi is a chain map (exactly, in the free target)
    ok = True
    DQ = Derivation(Q.words, data.d_gen_values)
    for g in range(len(data.gens)):
        m = data.gens[g][1]
        if m > degmax or m < 1:
            continue
        lhs = {}
        for w2, c2 in DQ.apply_word((g,)).items():
            for w3, c3 in phi_word(w2, c2).items():
                lhs[w3] = lhs.get(w3, 0) + c3
        rhs = {}
        for w2, c2 in phi_word((g,)).items():
            for w3, c3 in cob.d.apply_word(w2).items():
                rhs[w3] = rhs.get(w3, 0) + c2 * c3
        diff = {k: lhs.get(k, 0) - rhs.get(k, 0) for k in set(lhs) | set(rhs)}
        if any(diff.values()):
            ok = False
    report["phi chain map"] = ok

    # phi o psi = identity on cobar generators
    ok = True
    for k in range(len(cob.gen_info)):
        n_, _ = cob.gen_info[k]
        if n_ - 1 > degmax:
            continue
        acc = {}
        for w, c in psi_gen(k).items():
            for w2, c2 in phi_word(w, c).items():
                acc[w2] = acc.get(w2, 0) + c2
        expect = {(k,): 1}
        if {kk: vv for kk, vv in acc.items() if vv} != expect:
            ok = False
    report["phi psi = id"] = ok

    # psi o phi = identity modulo the ideal, on quotient generators
    ok = True
    for g in range(len(data.gens)):
        m = data.gens[g][1]
        if m > degmax:
            continue
        acc = {}
        for w, c in phi_word((g,)).items():
            for w2, c2 in psi_word(w, c).items():
                acc[w2] = acc.get(w2, 0) + c2
        acc[(g,)] = acc.get((g,), 0) - 1
        acc = {k: v for k, v in acc.items() if v}
        if acc and not Q.contains(m, acc):
            ok = False
    report["psi phi = id mod ideal"] = ok
    return data, cob, report


def cobar_h0(B: DgCoalgebra, degmax, lenmax=None) -> QuotientAlgebra:
    """The column-one word quotient of the decalage of a coalgebra.

    This is the degreewise-finite presentation whose normal forms back the
    comparison tests; `DecCobarData` keeps the generator bookkeeping.
    """
    return DecCobarData(B, degmax, lenmax).quotient
