"""Chain complexes and bicomplexes of finitely generated free abelian groups.

Matrices are dense lists of rows over Python ints; homology is exact via
Smith normal form.  Bicomplexes use commuting differentials; the total
complex inserts the sign (-1)^i on the vertical one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import intlinalg as la


@dataclass(frozen=True)
class AbGroup:
    rank: int
    torsion: tuple

    def __post_init__(self):
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError("torsion coefficients must form a divisibility chain")

    def __repr__(self):
        parts = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def is_zero(self):
        return self.rank == 0 and not self.torsion


def zmat(m, n):
    return [[0] * n for _ in range(m)]


class ChainComplex:
    """Nonnegatively graded complex: labeled bases and differential matrices.

    `basis[n]` is the list of labels in degree n; `d[n]` maps degree n to
    degree n-1 (rows indexed by basis[n-1], columns by basis[n]).
    """

    def __init__(self, basis, d, check=True):
        self.basis = {n: list(b) for n, b in basis.items() if b}
        self.d = {}
        for n, mat in d.items():
            if self.rank(n) and self.rank(n - 1):
                self.d[n] = [list(row) for row in mat]
        if check:
            self.check()

    def check(self):
        for n, mat in self.d.items():
            if len(mat) != self.rank(n - 1) or any(len(r) != self.rank(n) for r in mat):
                raise ValueError(f"differential in degree {n} has wrong shape")
        for n in self.d:
            if n + 1 in self.d:
                sq = la.mat_mul(self.d[n], self.d[n + 1])
                if any(any(row) for row in sq):
                    raise ValueError(f"d^2 != 0 between degrees {n + 1} and {n - 1}")

    def rank(self, n):
        return len(self.basis.get(n, []))

    def degrees(self):
        return sorted(self.basis)

    @property
    def top_degree(self):
        return max(self.basis) if self.basis else -1

    def diff(self, n):
        if n in self.d:
            return self.d[n]
        return zmat(self.rank(n - 1), self.rank(n))

    def homology(self, n) -> AbGroup:
        """H_n = ker d_n / im d_{n+1}, exactly."""
        rn = self.rank(n)
        if rn == 0:
            return AbGroup(0, ())
        ker = la.kernel_basis(self.diff(n), ncols=rn)
        if self.rank(n + 1) == 0:
            return AbGroup(len(ker), ())
        dn1 = self.diff(n + 1)
        img = [[dn1[i][j] for i in range(rn)] for j in range(self.rank(n + 1))]
        rank, torsion = la.quotient_invariants(ker, img)
        return AbGroup(rank, tuple(torsion))

    def homology_range(self, nmax):
        return [self.homology(n) for n in range(nmax + 1)]

    def shift(self, k=1):
        """Raise degrees by k (k may be negative; negative degrees dropped)."""
        basis = {n + k: b for n, b in self.basis.items() if n + k >= 0}
        d = {n + k: m for n, m in self.d.items() if n + k >= 1 and n + k - 1 >= 0 and self.rank(n - 1)}
        return ChainComplex(basis, d, check=False)

    def truncate_ge1(self):
        basis = {n: b for n, b in self.basis.items() if n >= 1}
        d = {n: m for n, m in self.d.items() if n >= 2}
        return ChainComplex(basis, d, check=False)

    def index(self, n, label):
        return self.basis[n].index(label)


def point_complex(label="pt"):
    return ChainComplex({0: [label]}, {})


def single(degree, label="x"):
    return ChainComplex({degree: [label]}, {})


class BiComplex:
    """Bigraded free abelian groups with commuting d_l (i-drop), d_r (j-drop)."""

    def __init__(self, basis, d_l, d_r, check=True):
        self.basis = {ij: list(b) for ij, b in basis.items() if b}
        self.d_l = {ij: m for ij, m in d_l.items() if self._nz(ij, (ij[0] - 1, ij[1]))}
        self.d_r = {ij: m for ij, m in d_r.items() if self._nz(ij, (ij[0], ij[1] - 1))}
        if check:
            self.check()

    def _nz(self, src, dst):
        return src in self.basis and dst in self.basis

    def rank(self, ij):
        return len(self.basis.get(ij, []))

    def dl(self, ij):
        if ij in self.d_l:
            return self.d_l[ij]
        return zmat(self.rank((ij[0] - 1, ij[1])), self.rank(ij))

    def dr(self, ij):
        if ij in self.d_r:
            return self.d_r[ij]
        return zmat(self.rank((ij[0], ij[1] - 1)), self.rank(ij))

    def check(self):
        for (i, j) in self.basis:
            a = la.mat_mul(self.dl((i - 1, j)), self.dl((i, j)))
            if any(any(r) for r in a):
                raise ValueError(f"d_l^2 != 0 at {(i, j)}")
            b = la.mat_mul(self.dr((i, j - 1)), self.dr((i, j)))
            if any(any(r) for r in b):
                raise ValueError(f"d_r^2 != 0 at {(i, j)}")
            lhs = la.mat_mul(self.dl((i, j - 1)), self.dr((i, j)))
            rhs = la.mat_mul(self.dr((i - 1, j)), self.dl((i, j)))
            if lhs != rhs:
                raise ValueError(f"d_l d_r != d_r d_l at {(i, j)}")


def tot(B: BiComplex) -> ChainComplex:
    """Total complex with differential d_l + (-1)^i d_r."""
    basis = {}
    pos = {}
    for (i, j), labels in sorted(B.basis.items()):
        n = i + j
        for k, lab in enumerate(labels):
            basis.setdefault(n, []).append(((i, j), lab))
            pos[((i, j), k)] = (n, len(basis[n]) - 1)
    d = {}
    for n in sorted(basis):
        if n - 1 not in basis:
            continue
        mat = zmat(len(basis[n - 1]), len(basis[n]))
        for (i, j), labels in B.basis.items():
            if i + j != n:
                continue
            dl = B.dl((i, j))
            for col in range(len(labels)):
                _, c = pos[((i, j), col)]
                if B.rank((i - 1, j)):
                    for row in range(B.rank((i - 1, j))):
                        if dl[row][col]:
                            _, r = pos[((i - 1, j), row)]
                            mat[r][c] += dl[row][col]
                if B.rank((i, j - 1)):
                    dr = B.dr((i, j))
                    sign = -1 if i % 2 else 1
                    for row in range(B.rank((i, j - 1))):
                        if dr[row][col]:
                            _, r = pos[((i, j - 1), row)]
                            mat[r][c] += sign * dr[row][col]
        d[n] = mat
    return ChainComplex(basis, d)


def exterior_bicomplex(C: ChainComplex, D: ChainComplex) -> BiComplex:
    """(i, j) -> C_i (x) D_j with d_l = d (x) 1 and d_r = 1 (x) d (no signs)."""
    basis = {}
    for i in C.degrees():
        for j in D.degrees():
            basis[(i, j)] = [(a, b) for a in C.basis[i] for b in D.basis[j]]
    d_l, d_r = {}, {}
    for (i, j), labels in basis.items():
        if (i - 1, j) in basis:
            dc = C.diff(i)
            mat = zmat(len(basis[(i - 1, j)]), len(labels))
            nd = D.rank(j)
            for a in range(C.rank(i)):
                for a2 in range(C.rank(i - 1)):
                    if dc[a2][a]:
                        for b in range(nd):
                            mat[a2 * nd + b][a * nd + b] = dc[a2][a]
            d_l[(i, j)] = mat
        if (i, j - 1) in basis:
            dd = D.diff(j)
            mat = zmat(len(basis[(i, j - 1)]), len(labels))
            nd, nd2 = D.rank(j), D.rank(j - 1)
            for a in range(C.rank(i)):
                for b in range(nd):
                    for b2 in range(nd2):
                        if dd[b2][b]:
                            mat[a * nd2 + b2][a * nd + b] = dd[b2][b]
            d_r[(i, j)] = mat
    return BiComplex(basis, d_l, d_r, check=False)


def tensor(C: ChainComplex, D: ChainComplex) -> ChainComplex:
    """Tensor product of complexes with the Koszul sign on the differential."""
    return tot(exterior_bicomplex(C, D))


def hom_complex(C: ChainComplex, D: ChainComplex, degmax) -> ChainComplex:
    """Degree-n part: graded maps C -> D of degree n; df = d f - (-1)^n f d."""
    basis = {}
    for n in range(degmax + 1):
        labels = []
        for i in C.degrees():
            if i + n in D.basis:
                labels += [(i, a, b) for a in C.basis[i] for b in D.basis[i + n]]
        if labels:
            basis[n] = labels
    d = {}
    for n in range(1, degmax + 1):
        if n not in basis or n - 1 not in basis:
            continue
        rows = {lab: r for r, lab in enumerate(basis[n - 1])}
        mat = zmat(len(basis[n - 1]), len(basis[n]))
        for c, (i, a, b) in enumerate(basis[n]):
            ai = C.basis[i].index(a)
            bi = D.basis[i + n].index(b)
            # d o f
            dD = D.diff(i + n)
            for b2 in range(D.rank(i + n - 1)):
                if dD[b2][bi]:
                    lab = (i, a, D.basis[i + n - 1][b2])
                    if lab in rows:
                        mat[rows[lab]][c] += dD[b2][bi]
            # - (-1)^n f o d
            sign = -1 if n % 2 == 0 else 1
            dC = C.diff(i + 1)
            for a2 in range(C.rank(i + 1)):
                if dC[ai][a2]:
                    lab = (i + 1, C.basis[i + 1][a2], b)
                    if lab in rows:
                        mat[rows[lab]][c] += sign * dC[ai][a2]
        d[n] = mat
    return ChainComplex(basis, d)


def connected_cover(C: ChainComplex, unit_label="1") -> ChainComplex:
    """Replace degree 0 by a single unit generator, zero the differential to it."""
    basis = {n: b for n, b in C.basis.items() if n >= 1}
    basis[0] = [unit_label]
    d = {n: m for n, m in C.d.items() if n >= 2}
    if C.rank(1):
        d[1] = zmat(1, C.rank(1))
    return ChainComplex(basis, d, check=False)


def dec_upper_star(A: ChainComplex, degmax=None) -> BiComplex:
    """(i, j) -> A_{i+j+1} (+) A_{i+j} with the triangular differentials.

    d_r(a, b) = (b, 0) and d_l(a, b) = (da + (-1)^i b, db); commuting, the
    total-complex sign is added by `tot`.
    """
    top = A.top_degree if degmax is None else degmax
    basis = {}
    for i in range(top + 1):
        for j in range(top + 1 - i):
            labels = [("s", x) for x in A.basis.get(i + j + 1, [])] + [
                ("b", x) for x in A.basis.get(i + j, [])
            ]
            if labels:
                basis[(i, j)] = labels
    d_l, d_r = {}, {}
    for (i, j), labels in basis.items():
        n = i + j
        if (i, j - 1) in basis:
            tgt = basis[(i, j - 1)]
            mat = zmat(len(tgt), len(labels))
            for c, (tag, x) in enumerate(labels):
                if tag == "b":
                    mat[tgt.index(("s", x))][c] = 1
            d_r[(i, j)] = mat
        if (i - 1, j) in basis:
            tgt = basis[(i - 1, j)]
            mat = zmat(len(tgt), len(labels))
            dA1 = A.diff(n + 1)
            dA0 = A.diff(n)
            sgn = -1 if i % 2 else 1
            for c, (tag, x) in enumerate(labels):
                if tag == "s":
                    xi = A.basis[n + 1].index(x)
                    for r2, y in enumerate(A.basis.get(n, [])):
                        if dA1[r2][xi]:
                            mat[tgt.index(("s", y))][c] += dA1[r2][xi]
                else:
                    xi = A.basis[n].index(x)
                    mat[tgt.index(("s", x))][c] += sgn
                    for r2, y in enumerate(A.basis.get(n - 1, [])):
                        if dA0[r2][xi]:
                            mat[tgt.index(("b", y))][c] += dA0[r2][xi]
            d_l[(i, j)] = mat
    return BiComplex(basis, d_l, d_r)


def dec_question(A: ChainComplex, imax, degmax) -> BiComplex:
    """Row i: maps out of the chains of the i-simplex, good-truncated at 0.

    Row 0 is A itself and every row is quasi-isomorphic to A (the tested
    content).  Degree q >= 1 of row i is spanned by (cell S, target basis
    element); degree 0 is the lattice of chain maps, with a computed basis.
    Columns carry the mapping differential, rows the alternating coface
    precompositions.
    """
    from itertools import combinations

    subsets = {
        i: {m: list(combinations(range(i + 1), m + 1)) for m in range(i + 1)}
        for i in range(imax + 1)
    }

    def hom_labels(i, q):
        out = []
        for m in range(i + 1):
            for Sidx in range(len(subsets[i][m])):
                out += [(m, Sidx, x) for x in A.basis.get(m + q, [])]
        return out

    def simplex_boundary(i, m, Sidx):
        """d[S] = sum (-1)^t [S minus t-th element] inside the i-simplex chains."""
        S = subsets[i][m][Sidx]
        out = []
        for t in range(m + 1):
            sub = S[:t] + S[t + 1 :]
            out.append(((m - 1, subsets[i][m - 1].index(sub)), -1 if t % 2 else 1))
        return out

    def mapping_diff(i, q):
        """HOM_q -> HOM_{q-1} on unrestricted labels: d f - (-1)^q f d."""
        src, tgt = hom_labels(i, q), hom_labels(i, q - 1)
        rows = {lab: r for r, lab in enumerate(tgt)}
        mat = zmat(len(tgt), len(src))
        for c, (m, Sidx, x) in enumerate(src):
            xi = A.basis[m + q].index(x)
            dA = A.diff(m + q)
            for r2, y in enumerate(A.basis.get(m + q - 1, [])):
                if dA[r2][xi]:
                    mat[rows[(m, Sidx, y)]][c] += dA[r2][xi]
            sign = -1 if q % 2 == 0 else 1
            if m + 1 <= i:
                for Tidx in range(len(subsets[i][m + 1])):
                    for (pos, coeff) in simplex_boundary(i, m + 1, Tidx):
                        if pos == (m, Sidx):
                            mat[rows[(m + 1, Tidx, x)]][c] += sign * coeff
        return mat

    def coface_precomp(i, a, q):
        """Precompose with delta_a: row i labels -> row i-1 labels."""
        src, tgt = hom_labels(i, q), hom_labels(i - 1, q)
        rows = {lab: r for r, lab in enumerate(tgt)}
        mat = zmat(len(tgt), len(src))
        for c, (m, Sidx, x) in enumerate(src):
            S = subsets[i][m][Sidx]
            if a in S:
                continue
            newS = tuple(v if v < a else v - 1 for v in S)
            mat[rows[(m, subsets[i - 1][m].index(newS), x)]][c] = 1
        return mat

    # chain-map lattices (degree 0 of the good truncation)
    cm_basis = {}
    for i in range(imax + 1):
        n0 = len(hom_labels(i, 0))
        cm_basis[i] = la.kernel_basis(mapping_diff(i, 0), ncols=n0)

    basis, d_l, d_r = {}, {}, {}
    for i in range(imax + 1):
        for q in range(degmax + 1):
            if q == 0:
                labels = [("cm", i, t) for t in range(len(cm_basis[i]))]
            else:
                labels = hom_labels(i, q)
            if labels:
                basis[(i, q)] = labels
    for i in range(imax + 1):
        for q in range(1, degmax + 1):
            if (i, q) not in basis or (i, q - 1) not in basis:
                continue
            M = mapping_diff(i, q)
            if q == 1:
                K = [list(col) for col in zip(*cm_basis[i])] if cm_basis[i] else []
                out = []
                for col in range(len(basis[(i, q)])):
                    v = [M[r][col] for r in range(len(M))]
                    x = la.solve(K, v) if K else []
                    if x is None:
                        raise ValueError("boundary not a chain map; impossible")
                    out.append(x)
                d_r[(i, q)] = [list(row) for row in zip(*out)] if out and out[0] else zmat(
                    len(cm_basis[i]), len(basis[(i, q)])
                )
            else:
                d_r[(i, q)] = M
    for i in range(1, imax + 1):
        for q in range(degmax + 1):
            if (i, q) not in basis or (i - 1, q) not in basis:
                continue
            n_src = len(hom_labels(i, q))
            n_tgt = len(hom_labels(i - 1, q))
            M = zmat(n_tgt, n_src)
            for a in range(i + 1):
                P = coface_precomp(i, a, q)
                s = -1 if a % 2 else 1
                for r in range(n_tgt):
                    for c in range(n_src):
                        if P[r][c]:
                            M[r][c] += s * P[r][c]
            if q == 0:
                # conjugate into the chain-map bases on both sides
                K_t = [list(col) for col in zip(*cm_basis[i - 1])] if cm_basis[i - 1] else []
                out = []
                for v in cm_basis[i]:
                    w = la.mat_vec(M, v)
                    x = la.solve(K_t, w) if K_t else []
                    if x is None:
                        raise ValueError("coface image of a chain map must be a chain map")
                    out.append(x)
                d_l[(i, q)] = [list(row) for row in zip(*out)] if out and out[0] else zmat(
                    len(cm_basis[i - 1]), len(cm_basis[i])
                )
            else:
                d_l[(i, q)] = M
    return BiComplex(basis, d_l, d_r)


def hom_boundary_matrix(C: ChainComplex, D: ChainComplex, n):
    """The mapping differential out of degree n, including n = 0.

    Rows are indexed by the degree-(n-1) graded-map labels (i, a, b) with
    b in D_{i+n-1}; for n = 0 these land in negative degrees, which the
    truncated `hom_complex` cannot carry.
    """
    src = []
    for i in C.degrees():
        if i + n in D.basis:
            src += [(i, a, b) for a in C.basis[i] for b in D.basis[i + n]]
    tgt = []
    for i in C.degrees():
        if i + n - 1 in D.basis:
            tgt += [(i, a, b) for a in C.basis[i] for b in D.basis[i + n - 1]]
    rows = {lab: r for r, lab in enumerate(tgt)}
    mat = zmat(len(tgt), len(src))
    sign = -1 if n % 2 == 0 else 1
    for c, (i, a, b) in enumerate(src):
        ai = C.basis[i].index(a)
        bi = D.basis[i + n].index(b)
        dD = D.diff(i + n)
        for b2 in range(D.rank(i + n - 1)):
            if dD[b2][bi]:
                lab = (i, a, D.basis[i + n - 1][b2])
                if lab in rows:
                    mat[rows[lab]][c] += dD[b2][bi]
        dC = C.diff(i + 1)
        for a2 in range(C.rank(i + 1)):
            if dC[ai][a2]:
                lab = (i + 1, C.basis[i + 1][a2], b)
                if lab in rows:
                    mat[rows[lab]][c] += sign * dC[ai][a2]
    return mat, src, tgt
