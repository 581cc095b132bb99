"""Seeded generators of small exact test objects.

Complexes are sums of elementary two-term pieces, so the differential
squares to zero by construction; algebras are square-zero extensions plus a
unit, which are associative for any multiplication values on the ideal.
"""

from __future__ import annotations

from .chain import ChainComplex, zmat
from .barcobar import DgAlgebra, DgCoalgebra, AInfStructure


def random_complex(rng, maxdeg=3, maxrank=3) -> ChainComplex:
    basis = {}
    pairs = []
    for _ in range(rng.randint(1, maxdeg + maxrank)):
        n = rng.randint(0, maxdeg)
        two_term = n >= 1 and rng.random() < 0.6
        basis.setdefault(n, [])
        if len(basis[n]) >= maxrank:
            continue
        basis[n].append(f"x{n}_{len(basis[n])}")
        if two_term:
            basis.setdefault(n - 1, [])
            if len(basis[n - 1]) < maxrank + 2:
                basis[n - 1].append(f"x{n - 1}_{len(basis[n - 1])}")
                pairs.append((n, len(basis[n]) - 1, len(basis[n - 1]) - 1, rng.choice([1, -1, 2, 3])))
    d = {}
    for (n, i, j, v) in pairs:
        mat = d.setdefault(n, zmat(len(basis.get(n - 1, [])), len(basis[n])))
        while len(mat) < len(basis[n - 1]):
            mat.append([0] * len(basis[n]))
        for row in mat:
            while len(row) < len(basis[n]):
                row.append(0)
        mat[j][i] = v
    # pad all matrices to final sizes
    for n, mat in d.items():
        rows, cols = len(basis.get(n - 1, [])), len(basis[n])
        while len(mat) < rows:
            mat.append([0] * cols)
        for row in mat:
            while len(row) < cols:
                row.append(0)
    return ChainComplex({n: b for n, b in basis.items() if b}, d)


def random_dg_algebra(rng, maxdeg=3, maxrank=2) -> DgAlgebra:
    """Unit in degree 0 plus a square-zero ideal on a random complex."""
    M = random_complex(rng, maxdeg=maxdeg, maxrank=maxrank)
    basis = {0: ["1"]}
    for n, labs in M.basis.items():
        basis.setdefault(n, [])
        basis[n] += [f"m{lab}" for lab in labs]
    d = {}
    for n, mat in M.d.items():
        rows = len(basis.get(n - 1, []))
        cols = len(basis[n])
        out = zmat(rows, cols)
        roff = 1 if n - 1 == 0 else 0
        coff = 1 if n == 0 else 0
        for i, row in enumerate(mat):
            for j, v in enumerate(row):
                out[i + roff][j + coff] = v
        d[n] = out
    cx = ChainComplex(basis, d)
    mult = {}
    for i in cx.degrees():
        for j in cx.degrees():
            if i + j > cx.top_degree:
                continue
            ri, rj, rk = cx.rank(i), cx.rank(j), cx.rank(i + j)
            mat = zmat(rk, ri * rj)
            for a in range(ri):
                for b in range(rj):
                    if i == 0 and a == 0:
                        if j == i + j:
                            mat[b][a * rj + b] = 1
                    elif j == 0 and b == 0:
                        if i == i + j:
                            mat[a][a * rj + b] = 1
                    # ideal times ideal = 0
            mult[(i, j)] = mat
    unit = [1] + [0] * (cx.rank(0) - 1)
    aug = [1] + [0] * (cx.rank(0) - 1)
    return DgAlgebra(cx, mult, unit, aug, check=True, checkmax=3)


def random_two_stage_coalgebra(rng, lowdeg=None) -> DgCoalgebra:
    """Unit in degree 0, primitive generators in two adjacent degrees."""
    n = lowdeg if lowdeg is not None else rng.randint(1, 2)
    r1, r2 = rng.randint(1, 2), rng.randint(1, 2)
    basis = {0: ["1"], n: [f"a{j}" for j in range(r1)], n + 1: [f"b{j}" for j in range(r2)]}
    d = {}
    if n >= 1:
        mat = zmat(r1, r2)
        for i in range(r1):
            for j in range(r2):
                mat[i][j] = rng.randint(-2, 2)
        d[n + 1] = mat
    if n == 1:
        pass  # differential into degree 0 stays zero to keep the cover exact
    cx = ChainComplex(basis, d)
    comult = {}
    for m in cx.degrees():
        rm = cx.rank(m)
        left = zmat(cx.rank(0) * rm, rm)
        for a in range(rm):
            left[a][a] = 1
        comult[(0, m)] = left
        right = zmat(rm * cx.rank(0), rm)
        for a in range(rm):
            right[a * 1][a] = 1
        comult[(m, 0)] = right
    counit = [1]
    return DgCoalgebra(cx, comult, counit, [1])


def mutate_one_sign(m: AInfStructure, rng):
    """Flip the sign of one structurally active arity-2 entry, or None."""
    entries = []
    for degs, mat in m.ms.get(2, {}).items():
        for r, row in enumerate(mat):
            for c, v in enumerate(row):
                if v:
                    entries.append((degs, r, c))
    if not entries:
        return None
    degs, r, c = rng.choice(entries)
    ms = {k: {dd: [list(row) for row in mm] for dd, mm in tbl.items()} for k, tbl in m.ms.items()}
    ms[2][degs][r][c] = -ms[2][degs][r][c]
    return AInfStructure(dict(m.ranks), ms)
