from itertools import combinations

import pytest

from cobarkit import simplexcat as sc
from cobarkit.simplexcat import (
    SimplexMap,
    compose,
    epi_mono_factor,
    active_inert_factor,
    star,
    star_prime,
    interval_dual,
    shuffles,
    shuffle_sign_from_degeneracies,
)


def test_compose_examples():
    # s_1 after delta_1 is the identity
    assert compose(sc.degeneracy(1, 1), sc.face(1, 2)).is_identity
    assert compose(sc.face(0, 2), sc.face(0, 1)).values == (2,)
    f = SimplexMap(2, 3, (0, 2, 2))
    assert compose(sc.identity(3), f) == f
    with pytest.raises(ValueError):
        compose(sc.face(0, 2), sc.face(0, 3))


def test_simplicial_identities_exhaustive():
    for n in range(1, 6):
        for j in range(n + 1):
            for i in range(j):
                lhs = compose(sc.face(j, n + 1), sc.face(i, n))
                rhs = compose(sc.face(i, n + 1), sc.face(j - 1, n))
                assert lhs == rhs
    for n in range(5):
        for i in range(n + 1):
            for j in range(i, n + 1):
                lhs = compose(sc.degeneracy(j, n), sc.degeneracy(i, n + 1))
                rhs = compose(sc.degeneracy(i, n), sc.degeneracy(j + 1, n + 1))
                assert lhs == rhs
    for n in range(1, 5):
        for i in range(n + 2):
            for j in range(n + 1):
                ds = compose(sc.degeneracy(j, n), sc.face(i, n + 1))
                if i in (j, j + 1):
                    assert ds.is_identity
                elif i < j:
                    assert ds == compose(sc.face(i, n), sc.degeneracy(j - 1, n - 1))
                else:
                    assert ds == compose(sc.face(i - 1, n), sc.degeneracy(j, n - 1))


def test_epi_mono_factorization():
    f = SimplexMap(2, 2, (0, 0, 2))
    epi, mono = epi_mono_factor(f)
    assert epi.values == (0, 0, 1) and mono.values == (0, 2)
    inj = SimplexMap(1, 3, (1, 3))
    assert epi_mono_factor(inj) == (sc.identity(1), inj)
    surj = SimplexMap(2, 1, (0, 1, 1))
    assert epi_mono_factor(surj) == (surj, sc.identity(1))


def test_factorizations_unique_and_recompose():
    for n in range(4):
        for m in range(4):
            for f in sc.all_monotone_maps(n, m):
                epi, mono = epi_mono_factor(f)
                assert epi.is_surjective and mono.is_injective
                assert compose(mono, epi) == f
                act, inert = active_inert_factor(f)
                assert act.is_active and inert.is_inert
                assert compose(inert, act) == f


def test_active_inert_examples():
    f = SimplexMap(1, 3, (1, 2))
    act, inert = active_inert_factor(f)
    assert act.is_identity and inert.values == (1, 2)
    g = SimplexMap(0, 2, (1,))
    act, inert = active_inert_factor(g)
    assert act == sc.identity(0) and inert.values == (1,)


def test_star_and_star_prime():
    assert star(sc.identity(0), sc.identity(0)) == sc.identity(1)
    s0 = sc.degeneracy(0, 0)
    joined = star(s0, s0)
    assert joined.dom == 3 and joined.values == (0, 0, 1, 1)
    # objects: [1] glued with [1] along endpoints is [2]
    assert star_prime(sc.identity(1), sc.identity(1)) == sc.identity(2)
    with pytest.raises(ValueError):
        star_prime(sc.face(0, 1), sc.identity(1))  # not active


def test_star_associative():
    maps = [f for n in range(3) for m in range(3) for f in sc.all_monotone_maps(n, m)]
    for f in maps[:10]:
        for g in maps[:10]:
            for h in maps[:5]:
                assert star(star(f, g), h) == star(f, star(g, h))


def test_star_functorial_on_composable_pairs():
    # (f o g) * (h o k) == (f * h) o (g * k), over small composable pairs
    for a in range(3):
        for b in range(3):
            for c in range(3):
                for f in sc.all_monotone_maps(b, c)[:4]:
                    for g in sc.all_monotone_maps(a, b)[:4]:
                        for h in sc.all_monotone_maps(1, 2)[:3]:
                            for k in sc.all_monotone_maps(0, 1)[:2]:
                                lhs = star(compose(f, g), compose(h, k))
                                rhs = compose(star(f, h), star(g, k))
                                assert lhs == rhs


def test_shuffles_counts_and_signs():
    from math import comb

    assert len(shuffles(1, 1)) == 2
    assert len(shuffles(0, 3)) == 1 and shuffles(0, 3)[0].sign == 1
    assert [sh.sign for sh in shuffles(2, 1)] == [1, -1, 1]
    for p in range(4):
        for q in range(4):
            assert len(shuffles(p, q)) == comb(p + q, p)


def test_shuffles_exhaustive_joint_injectivity():
    for p in range(4):
        for q in range(0, 7 - p):
            found = {(sh.sigma, sh.tau) for sh in shuffles(p, q)}
            brute = set()
            for sigma in sc.all_epis(p + q, p):
                for tau in sc.all_epis(p + q, q):
                    if not any(
                        sigma.degenerate_at(i) and tau.degenerate_at(i)
                        for i in range(p + q)
                    ):
                        brute.add((sigma, tau))
            assert found == brute


def test_descending_position_sign_formula():
    for n in range(1, 7):
        for k in range(n + 1):
            for b in combinations(range(n), k):
                bdesc = tuple(sorted(b, reverse=True))
                I = {x + 1 for x in bdesc}
                J = set(range(1, n + 1)) - I
                inv = sum(1 for a in I for c in J if a > c)
                assert shuffle_sign_from_degeneracies(bdesc, n) == (
                    -1 if inv % 2 else 1
                )


def test_interval_dual():
    from cobarkit.simplexcat import interval_dual_inverse

    d1 = SimplexMap(1, 2, (0, 2))  # the active face skipping 1
    assert interval_dual(d1) == sc.degeneracy(0, 0)
    for n in range(1, 5):
        assert interval_dual(sc.identity(n)) == sc.identity(n - 1)
    # involution through the inverse functor, both ways
    for n in range(1, 4):
        for m in range(1, 4):
            for f in sc.all_monotone_maps(n, m):
                if f.is_active:
                    assert interval_dual_inverse(interval_dual(f)) == f
    for a in range(3):
        for b in range(3):
            for g in sc.all_monotone_maps(a, b):
                assert interval_dual(interval_dual_inverse(g)) == g


def test_interval_dual_exchanges_faces_and_degeneracies():
    from cobarkit.simplexcat import interval_dual_inverse

    # inner faces become degeneracies with the index dropped by one, and
    # the inverse functor sends those degeneracies back
    for n in range(2, 5):
        for i in range(1, n):
            assert interval_dual(sc.face(i, n)) == sc.degeneracy(i - 1, n - 2)
            assert interval_dual_inverse(sc.degeneracy(i - 1, n - 2)) == sc.face(i, n)


def test_degenerate_at_and_word():
    f = SimplexMap(3, 1, (0, 0, 1, 1))
    assert f.degeneracy_word() == [0, 2]
    assert f.degenerate_at(0) and f.degenerate_at(2) and not f.degenerate_at(1)
