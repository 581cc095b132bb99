# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled int64 twin of `_snf_py`.

Same algorithms as the pure-Python backend, but over C int64 with an
explicit overflow guard: every update is computed in 128-bit arithmetic
and `KernelOverflow` is raised as soon as a value leaves the int64 range,
at which point the caller re-runs the pure backend on the original input.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Free

from ._snf_py import KernelOverflow, _divisibility_chain

ctypedef long long i64
ctypedef long double ld

cdef extern from *:
    ctypedef long long i128 "__int128"

cdef i64 I64_MAX = (<i64>1 << 62)  # conservative bound


cdef inline i64 _chk(i128 v) except? -9223372036854775807:
    if v > I64_MAX or v < -I64_MAX:
        raise KernelOverflow()
    return <i64>v


cdef inline i64 _floordiv(i64 a, i64 b):
    cdef i64 q = a // b  # C truncation under cdivision
    if (a % b != 0) and ((a < 0) != (b < 0)):
        q -= 1
    return q


cdef class _Dense:
    cdef i64* a
    cdef Py_ssize_t m, n

    def __cinit__(self, mat, Py_ssize_t m, Py_ssize_t n):
        cdef Py_ssize_t i, j
        self.m = m
        self.n = n
        self.a = <i64*>PyMem_Malloc(m * n * sizeof(i64))
        if self.a == NULL:
            raise MemoryError()
        for i in range(m):
            row = mat[i]
            for j in range(n):
                v = row[j]
                if v > I64_MAX or v < -I64_MAX:
                    PyMem_Free(self.a)
                    self.a = NULL
                    raise KernelOverflow()
                self.a[i * n + j] = <i64>v

    def __dealloc__(self):
        if self.a != NULL:
            PyMem_Free(self.a)


def smith_diagonal(mat, nrows=None, ncols=None):
    cdef Py_ssize_t m = len(mat)
    cdef Py_ssize_t n = len(mat[0]) if m else 0
    if m == 0 or n == 0:
        return []
    cdef _Dense d = _Dense(mat, m, n)
    cdef i64* a = d.a
    cdef Py_ssize_t t = 0, i, j, pi, pj, lim = m if m < n else n
    cdef i64 pv, v, q, piv
    cdef i128 acc
    cdef bint remainder
    diag = []
    while t < lim:
        # global pivot re-selection on every pass (see _snf_py)
        pi = -1
        pj = -1
        pv = 0
        for i in range(t, m):
            for j in range(t, n):
                v = a[i * n + j]
                if v < 0:
                    v = -v
                if v != 0 and (pv == 0 or v < pv):
                    pi = i
                    pj = j
                    pv = v
        if pv == 0:
            break
        if pi != t:
            for j in range(n):
                v = a[t * n + j]
                a[t * n + j] = a[pi * n + j]
                a[pi * n + j] = v
        if pj != t:
            for i in range(m):
                v = a[i * n + t]
                a[i * n + t] = a[i * n + pj]
                a[i * n + pj] = v
        piv = a[t * n + t]
        remainder = 0
        for i in range(t + 1, m):
            v = a[i * n + t]
            if v != 0:
                q = _floordiv(v, piv)
                if q != 0:
                    for j in range(t, n):
                        acc = <i128>a[i * n + j] - <i128>q * <i128>a[t * n + j]
                        a[i * n + j] = _chk(acc)
                if a[i * n + t] != 0:
                    remainder = 1
        for j in range(t + 1, n):
            v = a[t * n + j]
            if v != 0:
                q = _floordiv(v, piv)
                if q != 0:
                    for i in range(t, m):
                        acc = <i128>a[i * n + j] - <i128>q * <i128>a[i * n + t]
                        a[i * n + j] = _chk(acc)
                if a[t * n + j] != 0:
                    remainder = 1
        if remainder:
            continue
        diag.append(-piv if piv < 0 else piv)
        t += 1
    return _divisibility_chain(diag)


def smith_with_transforms(mat):
    # Dense int64 version with transforms; overflow falls back to Python.
    cdef Py_ssize_t m = len(mat)
    cdef Py_ssize_t n = len(mat[0]) if m else 0
    cdef Py_ssize_t i, j, k, t, pi, pj
    cdef i64 pv, v, q
    cdef i128 acc
    if m == 0 or n == 0:
        U = [[int(i == j) for j in range(m)] for i in range(m)]
        V = [[int(i == j) for j in range(n)] for i in range(n)]
        return U, [list(r) for r in mat], V
    cdef _Dense ds = _Dense(mat, m, n)
    cdef _Dense du = _Dense([[1 if i == j else 0 for j in range(m)] for i in range(m)], m, m)
    cdef _Dense dv = _Dense([[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)
    cdef i64* S = ds.a
    cdef i64* U_ = du.a
    cdef i64* V_ = dv.a

    def _row_op(Py_ssize_t i, Py_ssize_t k, i64 q):
        cdef Py_ssize_t j
        cdef i128 a2
        for j in range(n):
            a2 = <i128>S[i * n + j] - <i128>q * <i128>S[k * n + j]
            S[i * n + j] = _chk(a2)
        for j in range(m):
            a2 = <i128>U_[i * m + j] - <i128>q * <i128>U_[k * m + j]
            U_[i * m + j] = _chk(a2)

    def _col_op(Py_ssize_t j, Py_ssize_t k, i64 q):
        cdef Py_ssize_t i2
        cdef i128 a2
        for i2 in range(m):
            a2 = <i128>S[i2 * n + j] - <i128>q * <i128>S[i2 * n + k]
            S[i2 * n + j] = _chk(a2)
        for i2 in range(n):
            a2 = <i128>V_[i2 * n + j] - <i128>q * <i128>V_[i2 * n + k]
            V_[i2 * n + j] = _chk(a2)

    def _swap_rows(Py_ssize_t i, Py_ssize_t k):
        cdef Py_ssize_t j
        cdef i64 v2
        for j in range(n):
            v2 = S[i * n + j]; S[i * n + j] = S[k * n + j]; S[k * n + j] = v2
        for j in range(m):
            v2 = U_[i * m + j]; U_[i * m + j] = U_[k * m + j]; U_[k * m + j] = v2

    def _swap_cols(Py_ssize_t j, Py_ssize_t k):
        cdef Py_ssize_t i2
        cdef i64 v2
        for i2 in range(m):
            v2 = S[i2 * n + j]; S[i2 * n + j] = S[i2 * n + k]; S[i2 * n + k] = v2
        for i2 in range(n):
            v2 = V_[i2 * n + j]; V_[i2 * n + j] = V_[i2 * n + k]; V_[i2 * n + k] = v2

    t = 0
    lim = m if m < n else n
    while t < lim:
        # global pivot re-selection on every pass (see _snf_py)
        pi = -1; pj = -1; pv = 0
        for i in range(t, m):
            for j in range(t, n):
                v = S[i * n + j]
                if v < 0:
                    v = -v
                if v != 0 and (pv == 0 or v < pv):
                    pi = i; pj = j; pv = v
        if pv == 0:
            break
        if pi != t:
            _swap_rows(t, pi)
        if pj != t:
            _swap_cols(t, pj)
        while True:
            done = 1
            # clear row t first (fill-free column clearing; see _snf_py)
            for j in range(t + 1, n):
                if S[t * n + j] != 0:
                    q = _floordiv(S[t * n + j], S[t * n + t])
                    if q != 0:
                        _col_op(j, t, q)
                    if S[t * n + j] != 0:
                        _swap_cols(t, j)
                        done = 0
                        break
            if not done:
                continue
            for i in range(t + 1, m):
                if S[i * n + t] != 0:
                    q = _floordiv(S[i * n + t], S[t * n + t])
                    if q != 0:
                        _row_op(i, t, q)
                    if S[i * n + t] != 0:
                        _swap_rows(t, i)
                        done = 0
                        break
            if done:
                break
        t += 1

    for i in range(t):
        if S[i * n + i] < 0:
            for j in range(n):
                V_[j * n + i] = -V_[j * n + i]
            S[i * n + i] = -S[i * n + i]

    Uo = [[U_[i * m + j] for j in range(m)] for i in range(m)]
    So = [[S[i * n + j] for j in range(n)] for i in range(m)]
    Vo = [[V_[i * n + j] for j in range(n)] for i in range(n)]
    return Uo, So, Vo
