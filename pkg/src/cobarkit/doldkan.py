"""The Dold-Kan correspondence, computed on integer lattices.

Normalized chains quotient each level by the degenerate submodule; the
inverse functor realizes a complex C at level n as the lattice of chain
maps from the chains of the n-simplex into C.  Both round trips are
produced as explicit integer matrices so tests can verify unimodularity.
"""

from __future__ import annotations

from itertools import combinations

from . import intlinalg as la
from . import simplexcat as sc
from .chain import ChainComplex, zmat
from .simplexcat import SimplexMap


class SimplicialAbGroup:
    """Levelwise free abelian groups with elementary structure matrices."""

    def __init__(self, levels, face_mats, deg_mats, check=True):
        self.levels = {n: list(b) for n, b in levels.items()}
        self.top = max(self.levels) if self.levels else -1
        self.face_mats = dict(face_mats)  # (n, i): A_n -> A_{n-1}
        self.deg_mats = dict(deg_mats)  # (n, i): A_n -> A_{n+1}
        if check:
            self.check()

    def rank(self, n):
        return len(self.levels.get(n, []))

    def face(self, n, i):
        return self.face_mats[(n, i)]

    def deg(self, n, i):
        return self.deg_mats[(n, i)]

    def act(self, f: SimplexMap):
        """Matrix of the operator A(f): A_{f.cod} -> A_{f.dom}."""
        if f.is_identity:
            return la.identity(self.rank(f.dom))
        if not f.is_surjective:
            miss = max(v for v in range(f.cod + 1) if v not in set(f.values))
            f2 = SimplexMap(f.dom, f.cod - 1, tuple(v if v < miss else v - 1 for v in f.values))
            return la.mat_mul(self.act(f2), self.face(f.cod, miss))
        i = next(i for i in range(f.dom) if f.values[i] == f.values[i + 1])
        f2 = SimplexMap(f.dom - 1, f.cod, f.values[:i] + f.values[i + 1 :])
        return la.mat_mul(self.deg(f.dom - 1, i), self.act(f2))

    def check(self):
        for n in range(2, self.top + 1):
            for j in range(1, n + 1):
                for i in range(j):
                    lhs = la.mat_mul(self.face(n - 1, i), self.face(n, j))
                    rhs = la.mat_mul(self.face(n - 1, j - 1), self.face(n, i))
                    if lhs != rhs:
                        raise ValueError(f"face identity fails at level {n}: d{i} d{j}")
        for n in range(self.top):
            for i in range(n + 1):
                for j in range(i, n + 1):
                    if n + 2 <= self.top:
                        lhs = la.mat_mul(self.deg(n + 1, j + 1), self.deg(n, i))
                        rhs = la.mat_mul(self.deg(n + 1, i), self.deg(n, j))
                        if lhs != rhs:
                            raise ValueError(f"degeneracy identity fails at level {n}")
        for n in range(self.top):
            for i in range(n + 2):
                for j in range(n + 1):
                    ds = la.mat_mul(self.face(n + 1, i), self.deg(n, j))
                    if i == j or i == j + 1:
                        expect = la.identity(self.rank(n))
                    elif i < j:
                        expect = la.mat_mul(self.deg(n - 1, j - 1), self.face(n, i))
                    else:
                        expect = la.mat_mul(self.deg(n - 1, j), self.face(n, i - 1))
                    if ds != expect:
                        raise ValueError(f"mixed identity fails at level {n}: d{i} s{j}")


def linearize(X, dim=None) -> SimplicialAbGroup:
    """Free abelian group levelwise on all simplices of X."""
    dim = X.truncation_dim if dim is None else dim
    levels = {n: X.simplices(n) for n in range(dim + 1)}
    index = {n: {s: k for k, s in enumerate(lev)} for n, lev in levels.items()}
    face_mats, deg_mats = {}, {}
    for n in range(dim + 1):
        for i in range(n + 1):
            if n >= 1:
                m = zmat(len(levels[n - 1]), len(levels[n]))
                for c, s in enumerate(levels[n]):
                    m[index[n - 1][X.face_of(s, i)]][c] = 1
                face_mats[(n, i)] = m
            if n + 1 <= dim:
                m = zmat(len(levels[n + 1]), len(levels[n]))
                for c, s in enumerate(levels[n]):
                    m[index[n + 1][X.degeneracy_of(s, i)]][c] = 1
                deg_mats[(n, i)] = m
    return SimplicialAbGroup(levels, face_mats, deg_mats, check=False)


class NormalizedChains:
    """Quotient-by-degenerates chain complex plus the projection/section data."""

    def __init__(self, complex_, proj, sect):
        self.complex = complex_
        self.proj = proj  # degree -> matrix A_n -> quotient
        self.sect = sect  # degree -> matrix quotient -> A_n


def normalized_chains(A: SimplicialAbGroup, labels_from=None) -> NormalizedChains:
    """Quotient each level by the degenerate submodule; d = alternating faces."""
    basis, proj, sect, d = {}, {}, {}, {}
    for n in range(A.top + 1):
        rn = A.rank(n)
        gens = []
        if n >= 1:
            for i in range(n):
                s = A.deg(n - 1, i)
                gens += [[s[r][c] for r in range(rn)] for c in range(A.rank(n - 1))]
        aligned = _aligned_complement(gens, rn)
        if aligned is not None:
            keep = aligned
            basis[n] = [A.levels[n][k] for k in keep]
            proj[n] = [[1 if c == k else 0 for c in range(rn)] for k in keep]
            sect[n] = [[1 if keep[r2] == r else 0 for r2 in range(len(keep))] for r in range(rn)]
        else:
            P, S_ = _quotient_transforms(gens, rn)
            basis[n] = [f"q{n}_{k}" for k in range(len(P))]
            proj[n], sect[n] = P, S_
    for n in range(1, A.top + 1):
        if not basis.get(n) or not basis.get(n - 1):
            continue
        alt = zmat(A.rank(n - 1), A.rank(n))
        for i in range(n + 1):
            f = A.face(n, i)
            s = -1 if i % 2 else 1
            for r in range(A.rank(n - 1)):
                for c in range(A.rank(n)):
                    if f[r][c]:
                        alt[r][c] += s * f[r][c]
        d[n] = la.mat_mul(proj[n - 1], la.mat_mul(alt, sect[n]))
    cx = ChainComplex({n: b for n, b in basis.items() if b}, d)
    return NormalizedChains(cx, proj, sect)


def _aligned_complement(gens, rn):
    """If the degenerate span is spanned by standard basis vectors, return
    the complementary index set; else None."""
    hit = set()
    for g in gens:
        nz = [i for i, v in enumerate(g) if v]
        if len(nz) == 0:
            continue
        if len(nz) == 1 and abs(g[nz[0]]) == 1:
            hit.add(nz[0])
        else:
            return None
    return [i for i in range(rn) if i not in hit]


def _quotient_transforms(gens, rn):
    """Projection/section matrices for Z^rn / span(gens) (assumed pure)."""
    if not gens:
        return la.identity(rn), la.identity(rn)
    M = [[g[i] for g in gens] for i in range(rn)]
    U, S, V = la.smith_normal_form(M)
    r = sum(1 for i in range(min(rn, len(gens))) if S[i][i])
    for i in range(r):
        if S[i][i] != 1:
            raise ValueError("degenerate submodule is not a direct summand")
    # quotient coordinates = last rn - r rows of U; section = columns of U^-1
    proj = [U[i] for i in range(r, rn)]
    inv = _unimodular_inverse(U)
    sect = [[inv[i][j] for j in range(r, rn)] for i in range(rn)]
    return proj, sect


def _unimodular_inverse(U):
    n = len(U)
    cols = []
    for j in range(n):
        e = [int(i == j) for i in range(n)]
        x = la.solve(U, e)
        if x is None:
            raise ValueError("matrix is not unimodular")
        cols.append(x)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def gamma(X_or_A, dim=None) -> ChainComplex:
    """Normalized chains of a simplicial set or simplicial abelian group."""
    if isinstance(X_or_A, SimplicialAbGroup):
        return normalized_chains(X_or_A).complex
    return normalized_chains(linearize(X_or_A, dim)).complex


# -- the chains of standard simplices and their symmetry --------------------


def delta_circ(n) -> ChainComplex:
    """Chains of the n-simplex: basis in degree m = (m+1)-subsets of {0..n}."""
    basis = {m: list(combinations(range(n + 1), m + 1)) for m in range(n + 1)}
    d = {}
    for m in range(1, n + 1):
        mat = zmat(len(basis[m - 1]), len(basis[m]))
        row = {S: r for r, S in enumerate(basis[m - 1])}
        for c, S in enumerate(basis[m]):
            for t in range(m + 1):
                sub = S[:t] + S[t + 1 :]
                mat[row[sub]][c] += -1 if t % 2 else 1
        d[m] = mat
    return ChainComplex(basis, d)


def sort_sign(seq):
    """(sorted tuple, parity sign) of a sequence without repeats, else 0 sign."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(len(seq) - 1 - i):
            if seq[j] > seq[j + 1]:
                seq[j], seq[j + 1] = seq[j + 1], seq[j]
                sign = -sign
            elif seq[j] == seq[j + 1]:
                return tuple(seq), 0
    return tuple(seq), sign


def finset_action(alpha: sc.FinSetMap, n) -> dict:
    """Degreewise matrices of the induced chain map on simplex chains.

    [S] goes to sign * [alpha(S)] when alpha is injective on S, with the
    parity of the sorting permutation, and to 0 on collisions.
    """
    if alpha.dom != n:
        raise ValueError("map does not start at [n]")
    src, tgt = delta_circ(n), delta_circ(alpha.cod)
    out = {}
    for m in src.degrees():
        mat = zmat(tgt.rank(m) if m in tgt.basis else 0, src.rank(m))
        for c, S in enumerate(src.basis[m]):
            image, sign = sort_sign(alpha.values[v] for v in S)
            if sign and m in tgt.basis:
                mat[tgt.basis[m].index(image)][c] = sign
        out[m] = mat
    return out


def monotone_action(f: SimplexMap, n):
    return finset_action(sc.FinSetMap(f.dom, f.cod, f.values), n)


def key_lemma_ranks(n):
    """Ranks of the joint kernel of the codegeneracy maps on simplex chains."""
    src = delta_circ(n)
    ranks = []
    for m in src.degrees():
        stacked = []
        for i in range(n):
            mats = monotone_action(sc.degeneracy(i, n - 1), n)
            stacked += mats[m]
        if not stacked:
            ranks.append(src.rank(m))
        else:
            ranks.append(len(la.kernel_basis(stacked, ncols=src.rank(m))))
    return ranks


# -- the inverse functor -----------------------------------------------------


class DoldKanN:
    """N(C): level n = lattice of chain maps from simplex chains into C."""

    def __init__(self, C: ChainComplex, top):
        self.C = C
        self.top = top
        self.labels = {}  # n -> list of (m, S, x) unknown labels
        self.kernels = {}  # n -> list of kernel vectors
        for n in range(top + 1):
            labs = []
            for m in range(n + 1):
                for S in combinations(range(n + 1), m + 1):
                    labs += [(m, S, x) for x in C.basis.get(m, [])]
            self.labels[n] = labs
            self.kernels[n] = la.kernel_basis(self._constraint(n), ncols=len(labs))

    def _constraint(self, n):
        labs = self.labels[n]
        col = {lab: c for c, lab in enumerate(labs)}
        rows = []
        for m in range(1, n + 1):
            for S in combinations(range(n + 1), m + 1):
                for y in self.C.basis.get(m - 1, []):
                    row = [0] * len(labs)
                    yi = self.C.basis[m - 1].index(y)
                    dC = self.C.diff(m)
                    for x in self.C.basis.get(m, []):
                        xi = self.C.basis[m].index(x)
                        if dC[yi][xi]:
                            row[col[(m, S, x)]] += dC[yi][xi]
                    for t in range(m + 1):
                        sub = S[:t] + S[t + 1 :]
                        if (m - 1, sub, y) in col:
                            row[col[(m - 1, sub, y)]] -= -1 if t % 2 else 1
                    if any(row):
                        rows.append(row)
        return rows

    def rank(self, n):
        return len(self.kernels[n])

    def act(self, f: SimplexMap):
        """Matrix of N(C)(f): level f.cod -> level f.dom (precomposition)."""
        src_k = self.kernels[f.cod]
        tgt_k = self.kernels[f.dom]
        tgt_labs = self.labels[f.dom]
        tgt_mat = [list(col) for col in zip(*tgt_k)] if tgt_k else []
        out_cols = []
        for v in src_k:
            w = [0] * len(tgt_labs)
            col = {lab: c for c, lab in enumerate(self.labels[f.cod])}
            for c2, (m, S, x) in enumerate(tgt_labs):
                image, sign = sort_sign(f.values[s] for s in S)
                if sign:
                    lab = (len(image) - 1, image, x)
                    if lab in col:
                        w[c2] = sign * v[col[lab]]
            x = la.solve(tgt_mat, w) if tgt_mat else []
            if x is None:
                raise ValueError("precomposition left the chain-map lattice")
            out_cols.append(x)
        if not out_cols:
            return zmat(len(tgt_k), len(src_k))
        return [list(r) for r in zip(*out_cols)]

    def simplicial_ab_group(self) -> SimplicialAbGroup:
        levels = {n: [f"g{n}_{k}" for k in range(self.rank(n))] for n in range(self.top + 1)}
        face_mats, deg_mats = {}, {}
        for n in range(self.top + 1):
            for i in range(n + 1):
                if n >= 1:
                    face_mats[(n, i)] = self.act(sc.face(i, n))
                if n + 1 <= self.top:
                    deg_mats[(n, i)] = self.act(sc.degeneracy(i, n))
        return SimplicialAbGroup(levels, face_mats, deg_mats, check=False)


def dold_kan_N(C: ChainComplex, top) -> SimplicialAbGroup:
    return DoldKanN(C, top).simplicial_ab_group()


# -- round trips --------------------------------------------------------------


def eval_iso_gamma_N(C: ChainComplex, top):
    """Matrices of evaluation-at-top-cell: Gamma(N(C))_n -> C_n, n <= top."""
    NK = DoldKanN(C, top)
    A = NK.simplicial_ab_group()
    nc = normalized_chains(A)
    out = {}
    for n in range(top + 1):
        labs = NK.labels[n]
        col = {lab: c for c, lab in enumerate(labs)}
        topcell = tuple(range(n + 1))
        rows = []
        for x in C.basis.get(n, []):
            row = []
            for v in NK.kernels[n]:
                row.append(v[col[(n, topcell, x)]])
            rows.append(row)
        # conjugate through the section of the quotient
        sect = nc.sect.get(n)
        if sect is None or not rows:
            out[n] = rows
        else:
            out[n] = la.mat_mul(rows, sect)
    return NK, A, nc, out


def unit_iso_N_gamma(A: SimplicialAbGroup):
    """Matrices of the adjunction unit A_n -> N(Gamma A)_n."""
    nc = normalized_chains(A)
    NK = DoldKanN(nc.complex, A.top)
    out = {}
    for n in range(A.top + 1):
        labs = NK.labels[n]
        cols = []
        K = [list(c) for c in zip(*NK.kernels[n])] if NK.kernels[n] else []
        for a in range(A.rank(n)):
            w = [0] * len(labs)
            for c2, (m, S, x) in enumerate(labs):
                # value on S = class of the action along the face with image S
                incl = SimplexMap(m, n, S)
                mat = A.act(incl)
                vec = [mat[r][a] for r in range(A.rank(m))]
                pm = nc.proj.get(m)
                if pm is None:
                    continue
                cls = la.mat_vec(pm, vec)
                xi = nc.complex.basis.get(m, []).index(x) if m in nc.complex.basis else None
                if xi is not None:
                    w[c2] = cls[xi]
            x = la.solve(K, w) if K else []
            if x is None:
                raise ValueError("unit does not land in the chain-map lattice")
            cols.append(x)
        out[n] = [list(r) for r in zip(*cols)] if cols and cols[0] else zmat(NK.rank(n), A.rank(n))
    return NK, nc, out


def is_unimodular(M):
    if not M:
        return True
    if len(M) != len(M[0]):
        return False
    diag = la.smith_diagonal(M)
    return len(diag) == len(M) and all(d == 1 for d in diag)


def n_morphism_matrices(src: DoldKanN, tgt: DoldKanN, f_mats):
    """Level matrices of the inverse-functor image of a chain map.

    `f_mats[m]` is the matrix C_m -> D_m of a chain map between the two
    underlying complexes; the result postcomposes chain-map lattices."""
    out = {}
    for n in range(min(src.top, tgt.top) + 1):
        tgt_labs = tgt.labels[n]
        K = [list(col) for col in zip(*tgt.kernels[n])] if tgt.kernels[n] else []
        cols = []
        src_col = {lab: c for c, lab in enumerate(src.labels[n])}
        for v in src.kernels[n]:
            w = [0] * len(tgt_labs)
            for c2, (m, S, x) in enumerate(tgt_labs):
                xi = tgt.C.basis[m].index(x)
                fm = f_mats.get(m)
                if fm is None:
                    continue
                for a, lab_x in enumerate(src.C.basis.get(m, [])):
                    if fm[xi][a]:
                        lab = (m, S, lab_x)
                        if lab in src_col:
                            w[c2] += fm[xi][a] * v[src_col[lab]]
            x = la.solve(K, w) if K else []
            if x is None:
                raise ValueError("image is not a chain-map lattice element")
            cols.append(x)
        out[n] = [list(r) for r in zip(*cols)] if cols and cols[0] else zmat(
            tgt.rank(n), src.rank(n)
        )
    return out
