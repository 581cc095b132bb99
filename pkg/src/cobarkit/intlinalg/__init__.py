"""Exact integer linear algebra: Smith form, kernels, lattices.

The two hot kernels (`smith_diagonal`, `smith_with_transforms`) exist twice:
a compiled Cython version over guarded int64 and a pure-Python version over
unbounded ints.  The compiled one is selected at import when available and
each call falls back to the pure backend on overflow, so results are always
exact.  `benchmarks/bench_snf.py` compares the two.
"""

from math import gcd

from . import _snf_py
from ._snf_py import KernelOverflow

try:
    from . import _snf_cy as _fast
    HAVE_COMPILED = True
except ImportError:
    _fast = None
    HAVE_COMPILED = False

BACKEND = "cython" if HAVE_COMPILED else "python"


def _twin(name, *args):
    if _fast is not None:
        try:
            return getattr(_fast, name)(*args)
        except KernelOverflow:
            pass
    return getattr(_snf_py, name)(*args)


def smith_diagonal(mat):
    """Nonzero Smith invariants d_1 | d_2 | ... of a dense integer matrix."""
    if not mat or not mat[0]:
        return []
    return _twin("smith_diagonal", mat)


def smith_normal_form(mat):
    """(U, S, V) with U*M*V = S diagonal, U and V unimodular."""
    return _twin("smith_with_transforms", mat)


def zeros(m, n):
    return [[0] * n for _ in range(m)]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(A, B, cols=None):
    m, k = len(A), len(A[0]) if A else 0
    n = (len(B[0]) if B else 0) if cols is None else cols
    C = [[0] * n for _ in range(m)]
    for i in range(m):
        Ai = A[i]
        Ci = C[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    if Bt[j]:
                        Ci[j] += a * Bt[j]
    return C


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v) if a and x) for row in A]


def transpose(A):
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def rank(mat):
    return len(smith_diagonal(mat))


def kernel_basis(mat, ncols=None):
    """Basis (list of vectors) of the integer kernel of `mat`."""
    if not mat:
        return identity(ncols) if ncols else []
    n = len(mat[0])
    if n == 0:
        return []
    if all(all(v == 0 for v in row) for row in mat):
        return [[int(i == j) for i in range(n)] for j in range(n)]
    U, S, V = smith_normal_form(mat)
    r = sum(1 for i in range(min(len(S), n)) if S[i][i])
    return [[V[i][j] for i in range(n)] for j in range(r, n)]


def solve(mat, target):
    """Some integer solution x of mat @ x = target, or None."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    if m == 0:
        return [0] * n
    U, S, V = smith_normal_form(mat)
    c = mat_vec(U, target)
    y = [0] * n
    for i in range(m):
        d = S[i][i] if i < n else 0
        if d:
            if c[i] % d:
                return None
            y[i] = c[i] // d
        elif c[i]:
            return None
    return mat_vec(V, y)


def group_invariants(diag, ambient_rank):
    """(free rank, torsion list) of Z^ambient / <diagonal lattice>."""
    torsion = sorted(d for d in diag if d > 1)
    return ambient_rank - len(diag), torsion


class LatticeNF:
    """Canonical residues modulo the column span of integer vectors.

    Built by Hermite-style column reduction; `reduce` maps a vector to the
    canonical representative of its class mod the lattice (zero iff member).
    """

    def __init__(self, ambient_dim, generators=()):
        self.n = ambient_dim
        self.pivots = {}  # pivot row -> reduced column (list)
        for g in generators:
            self.add(list(g))

    def add(self, vec):
        v = self.reduce(vec)
        while any(v):
            r = next(i for i, x in enumerate(v) if x)
            if r in self.pivots:
                w = self.pivots[r]
                a, b = w[r], v[r]
                # replace pivot by gcd combination
                g, x, y = _xgcd(a, b)
                new = [x * w[i] + y * v[i] for i in range(self.n)]
                qv, qw = b // g, a // g
                v = [qw * v[i] - qv * w[i] for i in range(self.n)]
                self.pivots[r] = new
            else:
                if v[r] < 0:
                    v = [-x for x in v]
                self.pivots[r] = v
                v = [0] * self.n
        self._renormalize()

    def _renormalize(self):
        for r in sorted(self.pivots, reverse=True):
            col = self.pivots[r]
            for r2, col2 in self.pivots.items():
                if r2 < r and col2[r]:
                    q = col2[r] // col[r]
                    if q:
                        for i in range(self.n):
                            col2[i] -= q * col[i]

    def reduce(self, vec):
        v = list(vec)
        for r in sorted(self.pivots):
            if v[r]:
                q = v[r] // self.pivots[r][r]
                if q:
                    col = self.pivots[r]
                    for i in range(self.n):
                        v[i] -= q * col[i]
        return v

    def contains(self, vec):
        return not any(self.reduce(vec))

    def basis(self):
        return [list(self.pivots[r]) for r in sorted(self.pivots)]


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def kernel_mod(mat, moduli):
    """Integer x with (mat @ x)_i = 0 mod moduli_i (modulus 0 = exact zero).

    Returns a basis of the solution lattice in the column space.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    aug = [list(row) for row in mat]
    extra = []
    for i, md in enumerate(moduli):
        if md:
            col = [0] * m
            col[i] = md
            extra.append(col)
    for j, col in enumerate(extra):
        for i in range(m):
            aug[i].append(col[i])
    basis = kernel_basis(aug, ncols=n + len(extra))
    seen = LatticeNF(n)
    out = []
    for v in basis:
        w = v[:n]
        if any(w) and not seen.contains(w):
            seen.add(w)
            out.append(w)
    return out


def quotient_invariants(big_basis, small_gens):
    """(rank, torsion) of L1/L2 for lattices small ⊆ big, given by vectors."""
    if not big_basis:
        return 0, []
    n = len(big_basis[0])
    B = [[big_basis[j][i] for j in range(len(big_basis))] for i in range(n)]
    coords = []
    for g in small_gens:
        x = solve(B, list(g))
        if x is None:
            raise ValueError("generator not inside the bigger lattice")
        coords.append(x)
    k = len(big_basis)
    if not coords:
        return k, []
    M = [[coords[j][i] for j in range(len(coords))] for i in range(k)]
    diag = smith_diagonal(M)
    return group_invariants(diag, k)
