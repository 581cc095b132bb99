"""The acceptance gate: one test per criterion, exact arithmetic throughout.

Each test prints a single pass line with its runtime; the stated budgets are
asserted as hard bounds.  Run with `pytest tests/test_acceptance.py -v -s`.
"""

import random
import time

import pytest

from cobarkit import intlinalg as la
from cobarkit import sset


def _report(name, t0, budget):
    dt = time.time() - t0
    print(f"PASS {name} ({dt:.1f}s, budget {budget}s)")
    assert dt < budget


def test_criterion_01_splitting_shuffle_identity():
    """The splitting after the shuffle sum is the identity, p, q <= 4."""
    from cobarkit.awez import ez_aw_identity_range

    t0 = time.time()
    for p in range(1, 5):
        for q in range(1, 5):
            n = p + q
            X = sset.standard_simplex(p, dim=n)
            Y = sset.standard_simplex(q, dim=n)
            assert ez_aw_identity_range(X, Y, n), (p, q)
    _report("criterion 1: splitting o shuffle = id for p,q <= 4", t0, 10)


def test_criterion_02_contraction_homotopy():
    """dH + Hd equals the splitting-shuffle composite minus the identity."""
    from cobarkit.awez import shih_homotopy_checks

    t0 = time.time()
    for p in range(1, 5):
        for q in range(1, 6 - p):
            n = p + q + 1
            X = sset.standard_simplex(p, dim=n)
            Y = sset.standard_simplex(q, dim=n)
            assert all(shih_homotopy_checks(X, Y, n)), (p, q)
    _report("criterion 2: contraction homotopy identity for p+q <= 5", t0, 30)


def test_criterion_03_dold_kan_round_trips():
    """Both round trips are natural isomorphisms on 50 random objects."""
    from cobarkit.doldkan import (
        eval_iso_gamma_N,
        is_unimodular,
        linearize,
        unit_iso_N_gamma,
        dold_kan_N,
    )
    from cobarkit.random_objects import random_complex

    t0 = time.time()
    rng = random.Random(2024)
    for _ in range(25):
        C = random_complex(rng, maxdeg=4, maxrank=4)
        NK, A, nc, mats = eval_iso_gamma_N(C, 4)
        for n in range(5):
            assert C.rank(n) == nc.complex.rank(n)
            assert is_unimodular(mats[n])
    for t in range(25):
        C = random_complex(rng, maxdeg=3, maxrank=3)
        A = dold_kan_N(C, 4)
        NK, nc, mats = unit_iso_N_gamma(A)
        for n in range(5):
            assert is_unimodular(mats[n])
    _report("criterion 3: round trips on 50 random objects", t0, 30)


def test_criterion_04_d_squared_constructor_invariant():
    """Every complex the suite builds verifies d^2 = 0 on construction."""
    from cobarkit.barcobar import (
        adams_cobar,
        chains_coalgebra,
        connected_cover_coalgebra,
        em_bar,
    )
    from cobarkit.chain import ChainComplex, dec_upper_star, hom_complex, tot
    from cobarkit.random_objects import random_complex, random_dg_algebra

    t0 = time.time()
    rng = random.Random(7)
    with pytest.raises(ValueError):
        ChainComplex({0: ["a"], 1: ["b"], 2: ["c"]}, {1: [[1]], 2: [[1]]})
    for _ in range(5):
        A = random_complex(rng)
        tot(dec_upper_star(A))
        hom_complex(A, A, 3)
    for _ in range(3):
        em_bar(random_dg_algebra(rng), 3).complex.check()
    C = connected_cover_coalgebra(chains_coalgebra(sset.sphere(2, dim=5)))
    adams_cobar(C, 4).complex.check()
    _report("criterion 4: d^2 = 0 checked on every constructed complex", t0, 60)


def test_criterion_05_loop_homology_adams():
    """The algebraic loop homology of the 2-sphere is Z in each degree."""
    from cobarkit.barcobar import adams_cobar, chains_coalgebra, connected_cover_coalgebra

    t0 = time.time()
    C = connected_cover_coalgebra(chains_coalgebra(sset.sphere(2, dim=7)))
    cb = adams_cobar(C, 5)
    for k in range(6):
        assert repr(cb.complex.homology(k)) == "Z", k
    _report("criterion 5: algebraic loop homology of the 2-sphere", t0, 5)


def test_criterion_06_loop_homology_kan():
    """The word-model loop homology agrees with the algebraic one."""
    from cobarkit.loopgroup import kan_loop_group, loop_homology_stable

    t0 = time.time()
    G = kan_loop_group(sset.sphere(2, dim=6), 3)
    vals = loop_homology_stable(G, 2, fuel=4)
    assert vals == ["Z", "Z", "Z"]
    _report("criterion 6: word-model loop homology of the 2-sphere", t0, 120)


def test_criterion_07_decalage_isomorphism():
    """The column quotient is isomorphic to the algebraic cobar."""
    from cobarkit.barcobar import chains_coalgebra, cobar_dec_iso
    from cobarkit.random_objects import random_two_stage_coalgebra

    t0 = time.time()
    for X in (sset.circle(5), sset.sphere(2, dim=6)):
        rep = cobar_dec_iso(chains_coalgebra(X), 3, lenmax=5)[2]
        assert all(rep.values()), rep
    rng = random.Random(11)
    rep = cobar_dec_iso(random_two_stage_coalgebra(rng), 3, lenmax=5)[2]
    assert all(rep.values()), rep
    _report("criterion 7: decalage-cobar isomorphism up to degree 3", t0, 60)


def test_criterion_08_classifying_space_comparison():
    """Classifying-space homology equals diagonal-nerve homology, n <= 4."""
    from cobarkit.doldkan import gamma
    from cobarkit.loopgroup import SimplicialMonoid, classifying_space
    from cobarkit.sset import Monoid, nerve

    t0 = time.time()
    expected = {2: ["Z", "Z/2", "0", "Z/2", "0"], 3: ["Z", "Z/3", "0", "Z/3", "0"]}
    for k in (2, 3):
        M = Monoid.cyclic(k)
        W = classifying_space(SimplicialMonoid.constant(M, 6), 5)
        HW = [repr(gamma(W.to_presentation()).homology(n)) for n in range(5)]
        HN = [repr(gamma(nerve(M, 5)).homology(n)) for n in range(5)]
        assert HW == HN == expected[k]
    _report("criterion 8: classifying space vs diagonal nerve, n <= 4", t0, 60)


def test_criterion_09_fundamental_monoid_circle():
    """The circle's edge monoid is free on one generator; completion Z."""
    from cobarkit.loopgroup import fundamental_monoid, group_completion_phi

    t0 = time.time()
    S1 = sset.circle(4)
    P = fundamental_monoid(S1)
    units = {r[0][0] for r in P.relations if len(r[0]) == 1 and r[1] == ()}
    gens = [g for g in P.generators if g not in units]
    assert len(gens) == 1
    for lhs, rhs in P.relations:
        l2 = tuple(g for g in lhs if g not in units)
        r2 = tuple(g for g in rhs if g not in units)
        assert l2 == r2
    # completion: the generator has infinite order (free exponent count)
    a = gens[0]
    assert not P.equal((a,), ())
    assert not P.equal((a, a), (a,))
    _report("criterion 9: circle edge monoid free on one generator", t0, 1)


def test_criterion_10_stasheff_suite():
    """Induced arity families pass; one flipped sign per run fails."""
    from cobarkit.barcobar import ainf_from_dg, stasheff_check, chains_coalgebra
    from cobarkit.random_objects import mutate_one_sign, random_dg_algebra

    t0 = time.time()
    rng = random.Random(99)
    passed = mutated = 0
    for t in range(50):
        if t % 3 == 2:
            X = rng.choice(
                [sset.circle(3), sset.sphere(2, dim=4), sset.standard_simplex(2, dim=3)]
            )
            m = ainf_from_dg(chains_coalgebra(X))
        else:
            m = ainf_from_dg(random_dg_algebra(rng))
        assert stasheff_check(m, 5)
        passed += 1
        bad = mutate_one_sign(m, rng)
        if bad is not None:
            assert not stasheff_check(bad, 3)
            mutated += 1
    assert passed == 50 and mutated >= 40
    _report("criterion 10: arity identities on 50 random structures", t0, 30)


def test_criterion_11_tree_operator_identities():
    """Counit-expansion cancellation (k <= 2), projected comparison (k <= 1),
    and the two shuffle-word forms (n <= 5)."""
    from cobarkit.awez import q_element, q_element_via_bits
    from cobarkit.szczarba import cancellation_check, compare_shih_szczarba

    t0 = time.time()
    for k in (0, 1, 2):
        assert cancellation_check(k)
    for k in (0, 1):
        assert all(compare_shih_szczarba(k).values())
    for n in range(6):
        assert q_element(n) == q_element_via_bits(n)
    _report("criterion 11: tree-operator identities", t0, 60)


def test_criterion_12_comparison_morphism():
    """The comparison map is a chain map in degrees <= 3 on the circle and
    the 2-sphere and induces the isomorphism on H_0, H_1 for the sphere."""
    from cobarkit.barcobar import Derivation
    from cobarkit.szczarba import SzczarbaMorphism

    t0 = time.time()
    m1 = SzczarbaMorphism(sset.circle(5), 3, lenmax=5)
    assert m1.chain_map_ok(3)
    m2 = SzczarbaMorphism(sset.sphere(2, dim=6), 4, lenmax=6)
    assert m2.chain_map_ok(3)
    Q = m2.data.quotient
    dvals = m2.data.d_gen_values
    assert repr(Q.quotient_homology(dvals, 0)) == repr(m2.cobar.complex.homology(0)) == "Z"
    assert repr(Q.quotient_homology(dvals, 1)) == repr(m2.cobar.complex.homology(1)) == "Z"
    # the image of the degree-1 generator generates the quotient H_1
    img = m2.gen_image(0)
    idx = Q.words.index(1)
    vec = [0] * len(idx)
    for w, c in img.items():
        vec[idx[w]] += c
    D = Derivation(Q.words, dvals)
    dn = D.matrix(1)
    moduli = Q._lattice(0).basis()
    wide = [dn[i] + [moduli[k][i] for k in range(len(moduli))] for i in range(len(dn))]
    kerw = la.kernel_basis(wide, ncols=len(vec) + len(moduli))
    cycles = []
    seen = la.LatticeNF(len(vec))
    for v in kerw:
        w = v[: len(vec)]
        if any(w) and not seen.contains(w):
            seen.add(w)
            cycles.append(w)
    bound = Q._lattice(1).basis()
    if Q.words.basis(2):
        d2 = D.matrix(2)
        bound = bound + [
            [d2[i][j] for i in range(len(vec))] for j in range(len(Q.words.basis(2)))
        ]
    rank, torsion = la.quotient_invariants(cycles, [b for b in bound if any(b)] + [vec])
    assert rank == 0 and not torsion
    _report("criterion 12: comparison morphism chain map and H iso", t0, 120)
