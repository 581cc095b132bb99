import random

import pytest

from cobarkit import intlinalg as la
from cobarkit import sset
from cobarkit.chain import (
    AbGroup,
    BiComplex,
    ChainComplex,
    connected_cover,
    dec_question,
    dec_upper_star,
    hom_complex,
    point_complex,
    single,
    tensor,
    tot,
    exterior_bicomplex,
)
from cobarkit.doldkan import gamma
from cobarkit.random_objects import random_complex


def test_d_squared_checked():
    with pytest.raises(ValueError):
        ChainComplex({0: ["a"], 1: ["b"], 2: ["c"]}, {1: [[1]], 2: [[1]]})


def test_homology_examples():
    assert repr(point_complex().homology(0)) == "Z"
    S2 = gamma(sset.sphere(2, dim=4))
    assert [repr(S2.homology(n)) for n in range(3)] == ["Z", "0", "Z"]
    C = ChainComplex({0: ["a"], 1: ["b"]}, {1: [[2]]})
    assert repr(C.homology(0)) == "Z/2"
    assert repr(C.homology(1)) == "0"


def test_tot_of_square():
    # the nondegenerate two-term piece of the interval chains, squared
    D1 = ChainComplex({1: ["e"], 0: ["v"]}, {1: [[1]]})
    B = exterior_bicomplex(D1, D1)
    T = tot(B)
    assert [T.rank(n) for n in range(3)] == [1, 2, 1]


def test_tensor_unit_and_kunneth_ranks():
    C = gamma(sset.sphere(2, dim=4))
    assert [tensor(C, point_complex()).rank(n) for n in range(3)] == [
        C.rank(n) for n in range(3)
    ]
    one = single(1)
    two = tensor(one, one)
    assert two.rank(2) == 1 and two.rank(1) == 0
    # Kunneth ranks for torsion-free factors
    S1 = gamma(sset.circle(3))
    T2 = tensor(S1, S1)
    ranks = [T2.homology(n).rank for n in range(3)]
    assert ranks == [1, 2, 1]


def test_tensor_associator_strict():
    A = gamma(sset.circle(2))
    left = tensor(tensor(A, A), A)
    right = tensor(A, tensor(A, A))
    for n in left.degrees():
        assert left.rank(n) == right.rank(n)
        if n >= 1:
            # canonical bases agree up to the label nesting, matrices equal
            assert left.diff(n) == right.diff(n)


def test_hom_complex():
    D = gamma(sset.circle(3))
    H = hom_complex(point_complex(), D, 3)
    assert [H.rank(n) for n in range(3)] == [D.rank(n) for n in range(3)]
    for n in range(1, 3):
        assert H.diff(n) == D.diff(n)
    # 0-cycles are chain maps: the kernel of the full mapping boundary
    from cobarkit.chain import hom_boundary_matrix

    C = ChainComplex({0: ["a"], 1: ["b"]}, {1: [[2]]})
    mat, src, tgt = hom_boundary_matrix(C, C, 0)
    cycles = la.kernel_basis(mat, ncols=len(src))
    for v in cycles:
        fmap = {lab: c for lab, c in zip(src, v)}
        # chain-map condition: d(f b) = f(d b) i.e. 2 f_b = 2 f_a
        assert 2 * fmap.get((1, "b", "b"), 0) == 2 * fmap.get((0, "a", "a"), 0)
    assert len(cycles) == 1


def test_homotopy_convention():
    # a degree-1 element h with boundary g - f exhibits the homotopy rule
    C = ChainComplex({0: ["a"], 1: ["b"]}, {1: [[3]]})
    H = hom_complex(C, C, 2)
    d1 = H.diff(1)
    # boundary of a degree-1 generator equals d h + h d componentwise
    lab1 = H.basis[1]
    lab0 = H.basis[0]
    col = lab1.index((0, "a", "b"))
    image = {lab0[r]: d1[r][col] for r in range(len(lab0)) if d1[r][col]}
    assert image == {(0, "a", "a"): 3, (1, "b", "b"): 3}


def test_shift_truncate_cover():
    C = ChainComplex({0: ["a"], 1: ["b"]}, {})
    assert C.shift(1).rank(1) == 1 and C.shift(1).rank(2) == 1
    assert C.shift(1).shift(-1).rank(0) == 1
    assert C.truncate_ge1().rank(0) == 0 and C.truncate_ge1().rank(1) == 1
    S1 = gamma(sset.circle(3))
    P = connected_cover(S1)
    assert P.rank(0) == 1 and P.rank(1) == S1.rank(1)


def test_dec_upper_star():
    Z = point_complex()
    B = dec_upper_star(Z)
    assert set(B.basis) == {(0, 0)}
    rng = random.Random(2)
    for _ in range(6):
        A = random_complex(rng, maxdeg=3, maxrank=2)
        B = dec_upper_star(A)  # constructor checks the commuting rules
        for i in range(2):
            j = 0
            if (i, j) in B.basis:
                expect = A.rank(i + 1) + A.rank(i)
                assert B.rank((i, j)) == expect
        T = tot(B)  # d^2 = 0 via the constructor
        # the counit to A is a quasi-isomorphism degreewise
        for n in range(4):
            assert repr(T.homology(n)) == repr(A.homology(n))


def test_dec_question():
    Z = point_complex()
    B = dec_question(Z, 2, 2)
    for i in range(3):
        assert B.rank((i, 0)) == 1
        for q in range(1, 3):
            assert B.rank((i, q)) == 0
    rng = random.Random(4)
    for _ in range(3):
        A = random_complex(rng, maxdeg=2, maxrank=2)
        if not A.basis:
            continue
        B = dec_question(A, 2, 3)
        # row 0 is A itself
        for q in range(3):
            assert B.rank((0, q)) == A.rank(q)
        # row-wise homology equals the homology of A
        for i in range(3):
            basis = {q: B.basis.get((i, q), []) for q in range(4)}
            d = {q: B.dr((i, q)) for q in range(1, 4) if (i, q) in B.basis}
            row = ChainComplex({q: b for q, b in basis.items() if b}, d)
            for q in range(3):
                assert repr(row.homology(q)) == repr(A.homology(q))
