import json
import random

import pytest

from cobarkit import simplexcat as sc
from cobarkit import sset
from cobarkit.sset import (
    DecBiSSet,
    Monoid,
    Pr2BiSSet,
    Simplex,
    TruncationError,
    artin_mazur_total,
    nerve,
    product,
    sset_from_json,
    sset_to_json,
    total_dec,
)


def test_standard_cells():
    S2 = sset.sphere(2, dim=4)
    assert S2.size_vector() == [1, 0, 1, 0, 0]
    D2 = sset.standard_simplex(2)
    assert D2.size_vector() == [3, 3, 1]
    B2 = sset.boundary_simplex(2)
    assert B2.size_vector() == [3, 3]


def test_apply_trivial_and_composite():
    S1 = sset.circle(3)
    e = S1.n_cells(1)[0]
    assert S1.apply(e, sc.identity(1)) == e
    up = S1.apply(e, sc.degeneracy(0, 1))
    back = S1.apply(up, sc.face(0, 2))
    assert back == e
    D2 = sset.standard_simplex(2)
    top = D2.n_cells(2)[0]
    # evaluate the composite [0] -> [2] hitting the last vertex
    vert = D2.apply(top, sc.SimplexMap(0, 2, (2,)))
    assert vert.cell == "2"


def test_apply_functorial():
    D2 = sset.standard_simplex(2, dim=4)
    rng = random.Random(0)
    for n in range(4):
        simplices = D2.simplices(n)
        for b in range(4):
            for f in sc.all_monotone_maps(b, n)[:6]:
                for a in range(3):
                    for g in sc.all_monotone_maps(a, b)[:4]:
                        for s in simplices[:5]:
                            lhs = D2.apply(D2.apply(s, f), g)
                            rhs = D2.apply(s, sc.compose(f, g))
                            assert lhs == rhs


def test_truncation_fails_loudly():
    S1 = sset.circle(2)
    with pytest.raises(TruncationError):
        S1.simplices(3)


def test_canonical_form_idempotent():
    S2 = sset.sphere(2, dim=5)
    for n in range(5):
        for s in S2.simplices(n):
            epi, mono = sc.epi_mono_factor(s.deg)
            assert epi == s.deg and mono.is_identity


def test_product_counts_and_symmetry():
    D1 = sset.standard_simplex(1, dim=2)
    P = product(D1, D1)
    assert len(P.cells[2]) == 2
    Y = sset.circle(2)
    Q = product(sset.point(2), Y)
    assert Q.size_vector() == Y.size_vector()
    # per-level product of all simplices
    for n in range(3):
        left = len(product(D1, Y, dim=2).simplices(n))
        assert left == len(D1.simplices(n)) * len(Y.simplices(n))
    # symmetry on cell counts
    A, B = sset.circle(2), sset.standard_simplex(1, dim=2)
    assert product(A, B).size_vector() == product(B, A).size_vector()


def test_product_simplicial_identities_checked():
    D2 = sset.standard_simplex(2, dim=3)
    D1 = sset.standard_simplex(1, dim=3)
    P = product(D2, D1)  # small enough that the constructor checks
    assert P.size_vector()[0] == 6


def test_total_dec_slices():
    S1 = sset.circle(4)
    dec = total_dec(S1)
    assert len(dec.level(0, 1)) == len(S1.simplices(2)) == 3
    pt = sset.point(3)
    decp = total_dec(pt)
    for n in range(2):
        for m in range(2):
            assert len(decp.level(n, m)) == 1
    # slice colimit: the extra degeneracy contracts the slice onto X_n
    sl = dec.slice(0)
    pres = sl.to_presentation()
    from cobarkit.doldkan import gamma

    H = [repr(gamma(pres).homology(k)) for k in range(2)]
    assert H[0] == "Z" and H[1] == "0"


def test_nerve():
    M = Monoid.trivial()
    N = nerve(M, 3)
    assert N.size_vector() == [1, 0, 0, 0]
    Z2 = Monoid.cyclic(2)
    N2 = nerve(Z2, 3)
    assert len(N2.simplices(2)) == 4
    assert N2.size_vector()[2] == 1
    # the middle face multiplies adjacent entries
    from cobarkit.sset import nerve_explicit

    ex = nerve_explicit(Z2, 3)
    assert ex.face_fn(2, 1, (1, 1)) == (0,)


def test_artin_mazur_pr2_and_counit():
    Y = sset.circle(3)
    tot = artin_mazur_total(Pr2BiSSet(Y), 3)
    for n in range(4):
        assert len(tot.levels[n]) == len(Y.simplices(n))
    X = sset.circle(4)
    tot2 = artin_mazur_total(DecBiSSet(X), 3)
    # evaluation to the identity: last face of the leading component
    def ev(n, y):
        return X.apply(y[0], sc.face(n + 1, n + 1))

    # natural with respect to every face in low degrees
    for n in (1, 2):
        for y in tot2.levels[n]:
            for i in range(n + 1):
                lhs = ev(n - 1, tot2.face_fn(n, i, y))
                rhs = X.apply(ev(n, y), sc.face(i, n))
                assert lhs == rhs
    # surjective on 0-simplices (sections exist through the degeneracy)
    imgs = {ev(0, y) for y in tot2.levels[0]}
    assert imgs == set(X.simplices(0))


def test_artin_mazur_of_constant_nerve():
    from cobarkit.loopgroup import SimplicialMonoid, classifying_space

    G = SimplicialMonoid.constant(Monoid.cyclic(2), 3)
    W = classifying_space(G, 2)
    assert [len(W.levels[n]) for n in range(3)] == [1, 2, 4]


def test_json_round_trip():
    for X in (sset.circle(3), sset.sphere(2, dim=4), sset.standard_simplex(2)):
        data = sset_to_json(X)
        again = sset_from_json(json.loads(json.dumps(data)))
        assert again.size_vector() == X.size_vector()
        for n in range(1, min(2, X.truncation_dim) + 1):
            for c in X.cells[n]:
                assert X.faces[(n, c)] == again.faces[(n, c)]
