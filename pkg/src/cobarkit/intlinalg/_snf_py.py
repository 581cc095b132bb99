"""Pure-Python exact integer matrix kernels.

Everything here works over arbitrary-precision Python ints.  The module is
the reference backend; `_snf_cy` implements the same two hot entry points
(`smith_diagonal`, `smith_with_transforms`) over C int64 with an overflow
guard, and the package falls back to this module whenever the compiled
kernel is unavailable or overflows.
"""

from math import gcd


class KernelOverflow(Exception):
    """Raised by the compiled backend when int64 arithmetic would overflow."""


def _sparse_from_dense(mat):
    rows = {}
    for i, row in enumerate(mat):
        r = {j: v for j, v in enumerate(row) if v}
        if r:
            rows[i] = r
    return rows


def smith_diagonal(mat, nrows=None, ncols=None):
    """Nonzero diagonal invariants of an integer matrix, divisibility-chained.

    `mat` is a dense list of rows.  Only the diagonal of the Smith form is
    computed (no transforms); elimination is done sparsely with a
    smallest-pivot heuristic to control coefficient growth and fill-in.
    """
    rows = _sparse_from_dense(mat)
    cols = {}
    for i, r in enumerate(mat):
        for j, v in enumerate(r):
            if v:
                cols.setdefault(j, set()).add(i)

    def discard(i, j):
        s = cols.get(j)
        if s is not None:
            s.discard(i)
            if not s:
                del cols[j]

    def set_entry(i, j, v):
        row = rows.setdefault(i, {})
        if v:
            if j not in row:
                cols.setdefault(j, set()).add(i)
            row[j] = v
        elif j in row:
            del row[j]
            discard(i, j)
            if not row:
                del rows[i]

    diagonal = []
    while rows:
        # pivot: smallest |value|, ties by sparser row
        pi = pj = None
        pv = None
        for i, row in rows.items():
            for j, v in row.items():
                a = abs(v)
                if pv is None or a < pv or (a == pv and len(row) < len(rows[pi])):
                    pi, pj, pv = i, j, a
            if pv == 1:
                break
        while True:
            # clear the pivot column by row operations; remainders swap the
            # pivot immediately, so values cascade down to the local gcd
            again = False
            piv = rows[pi][pj]
            for i in list(cols.get(pj, ())):
                if i == pi:
                    continue
                v = rows[i][pj]
                q = v // piv
                if q:
                    prow = rows[pi]
                    for j2, pvj in list(prow.items()):
                        set_entry(i, j2, rows.get(i, {}).get(j2, 0) - q * pvj)
                r = rows.get(i, {}).get(pj, 0)
                if r:
                    pi = i
                    again = True
                    break
            if again:
                continue
            # clear the pivot row by column operations; once the column is
            # empty these touch no other row
            piv = rows[pi][pj]
            again = False
            for j in list(rows[pi]):
                if j == pj:
                    continue
                v = rows[pi][j]
                q = v // piv
                if q:
                    set_entry(pi, j, v - q * piv)
                r = rows.get(pi, {}).get(j, 0)
                if r:
                    pj = j
                    again = True
                    break
            if not again:
                break
        piv = rows[pi][pj]
        diagonal.append(abs(piv))
        for j in list(rows[pi]):
            discard(pi, j)
        del rows[pi]
        for i in list(cols.get(pj, ())):
            set_entry(i, pj, 0)
    return _divisibility_chain(diagonal)


def _divisibility_chain(diag):
    d = [abs(x) for x in diag if x]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            a, b = d[i], d[j]
            g = gcd(a, b)
            if g != a:
                d[i], d[j] = g, a * b // g
    d.sort()
    return d


def smith_with_transforms(mat):
    """Diagonalization with unimodular transforms: U*M*V == S diagonal.

    S is diagonal and nonnegative but the divisibility chain is *not*
    enforced (that extra pass amplifies transform entries badly); callers
    needing invariant factors use `smith_diagonal`.
    """
    m = len(mat)
    n = len(mat[0]) if m else 0
    S = [list(row) for row in mat]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, k, q):  # row i -= q * row k
        Si, Sk = S[i], S[k]
        Ui, Uk = U[i], U[k]
        for j in range(n):
            Si[j] -= q * Sk[j]
        for j in range(m):
            Ui[j] -= q * Uk[j]

    def col_op(j, k, q):  # col j -= q * col k
        for i in range(m):
            S[i][j] -= q * S[i][k]
        for i in range(n):
            V[i][j] -= q * V[i][k]

    def swap_rows(i, k):
        S[i], S[k] = S[k], S[i]
        U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for row in S:
            row[j], row[k] = row[k], row[j]
        for row in V:
            row[j], row[k] = row[k], row[j]

    t = 0
    limit = min(m, n)
    while t < limit:
        # smallest pivot in S[t:, t:]; remainders swap into pivot position
        # immediately (gcd cascade), which keeps all entries small
        pi = pj = -1
        pv = 0
        for i in range(t, m):
            for j in range(t, n):
                v = abs(S[i][j])
                if v and (pv == 0 or v < pv):
                    pi, pj, pv = i, j, v
        if pv == 0:
            break
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            done = True
            # clear row t first: once it is (p, 0, ..., 0), clearing the
            # column below is fill-free and cannot grow any other entry
            for j in range(t + 1, n):
                if S[t][j]:
                    col_op(j, t, S[t][j] // S[t][t])
                    if S[t][j]:
                        swap_cols(t, j)
                        done = False
                        break
            if not done:
                continue
            for i in range(t + 1, m):
                if S[i][t]:
                    row_op(i, t, S[i][t] // S[t][t])
                    if S[i][t]:
                        swap_rows(t, i)
                        done = False
                        break
            if done:
                break
        t += 1

    for i in range(t):
        if S[i][i] < 0:
            for j in range(n):
                V[j][i] = -V[j][i]
            S[i][i] = -S[i][i]
    return U, S, V
