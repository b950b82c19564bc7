"""Grading constructors, verification, structure queries, and duality."""

import random

import pytest

from gradedmat.cyclotomic import CycNumber, root_of_unity
from gradedmat.groups import FiniteAbelianGroup
from gradedmat.gradings import (GradedAlgebra, GradedMap, centralizer, character_action,
                                elementary_grading, epsilon_grading, extract_cocycle,
                                graded_homomorphism_check, homogeneous_matrix_units,
                                identity_component_ideals, induced_tensor_grading,
                                is_elementary, is_graded_subspace, is_invariant_subspace,
                                support_is_subgroup, verify_grading)
from gradedmat.matrices import Matrix

Z2 = FiniteAbelianGroup((2,))
E0 = Z2.element((0,))
A0 = Z2.element((1,))


def test_elementary_degrees_match_tuple_rule():
    alg = elementary_grading(Z2, (E0, A0))
    assert alg.degree_of(Matrix.unit(2, 0, 1)) == A0
    assert alg.degree_of(Matrix.unit(2, 1, 0)) == A0
    assert alg.degree_of(Matrix.unit(2, 0, 0)) == E0
    assert alg.degree_of(Matrix.unit(2, 1, 1)) == E0


def test_constant_tuple_gives_trivial_grading():
    alg = elementary_grading(Z2, (E0, E0, E0))
    assert set(alg.components) == {E0}
    assert len(alg.components[E0]) == 9


def test_elementary_z3_cycle_component():
    G = FiniteAbelianGroup((3,))
    tau = tuple(G.element((i,)) for i in range(3))
    alg = elementary_grading(G, tau)
    one = G.element((1,))
    got = {m.nonzero_positions()[0] for m in alg.components[one]}
    assert got == {(0, 1), (1, 2), (2, 0)}


def test_epsilon_2_matches_clock_and_shift():
    alg = epsilon_grading(2)
    G = alg.group
    x_a = alg.components[G.element((1, 0))][0]
    x_b = alg.components[G.element((0, 1))][0]
    minus = CycNumber.rational(-1)
    assert x_a == Matrix.diagonal([minus, CycNumber.one()])
    assert x_b == Matrix([[CycNumber.zero(), CycNumber.one()],
                          [CycNumber.one(), CycNumber.zero()]])
    # X_a X_b X_a^{-1} = -X_b
    assert x_a * x_b * x_a.inverse() == x_b.scale(minus)


def test_epsilon_1_trivial():
    alg = epsilon_grading(1)
    assert alg.n == 1
    assert len(alg.components) == 1
    assert verify_grading(alg).passed


def test_epsilon_3_relations_and_independence():
    alg = epsilon_grading(3)
    G = alg.group
    x_a = alg.components[G.element((1, 0))][0]
    x_b = alg.components[G.element((0, 1))][0]
    eps = root_of_unity(3, 1)
    assert x_a ** 3 == Matrix.identity(3)
    assert x_b ** 3 == Matrix.identity(3)
    assert x_a * x_b * x_a.inverse() == x_b.scale(eps)
    assert len(alg.components) == 9
    assert all(len(mats) == 1 for mats in alg.components.values())
    assert verify_grading(alg).passed


def test_epsilon_rejects_nonpositive_size():
    with pytest.raises(ValueError):
        epsilon_grading(0)


def test_tensor_with_trivial_left_factor_keeps_right_grading():
    G = epsilon_grading(2).group
    left = elementary_grading(G, (G.identity(),))
    right = epsilon_grading(2)
    prod = induced_tensor_grading(left, right)
    assert prod.n == 2
    assert set(prod.components) == set(right.components)
    for g, mats in right.components.items():
        assert prod.components[g] == mats


def test_tensor_elementary_with_epsilon_verifies():
    right = epsilon_grading(2)
    G = right.group
    left = elementary_grading(G, (G.identity(), G.element((1, 0))))
    prod = induced_tensor_grading(left, right)
    assert prod.n == 4
    assert verify_grading(prod).passed


def test_tensor_degree_formula_agrees_with_products():
    right = epsilon_grading(2)
    G = right.group
    g1 = G.element((1, 1))
    left = elementary_grading(G, (G.identity(), g1))
    prod = induced_tensor_grading(left, right)
    b = G.element((0, 1))
    x_b = right.components[b][0]
    expected = g1.inverse() * b  # deg(E_12 (x) X_b) with tuple (e, g1)
    assert prod.degree_of(Matrix.unit(2, 0, 1).kron(x_b)) == expected


def test_tensor_group_mismatch_rejected():
    left = elementary_grading(Z2, (E0, A0))
    right = epsilon_grading(2)
    with pytest.raises(ValueError):
        induced_tensor_grading(left, right)


def test_tensor_restriction_reproduces_factors():
    right = epsilon_grading(2)
    G = right.group
    tau = (G.identity(), G.element((1, 0)))
    left = elementary_grading(G, tau)
    prod = induced_tensor_grading(left, right)
    I2 = Matrix.identity(2)
    for i in range(2):
        for j in range(2):
            if i != j:
                assert prod.degree_of(Matrix.unit(2, i, j).kron(I2)) \
                    == tau[i].inverse() * tau[j]
    for h, mats in right.components.items():
        assert prod.degree_of(I2.kron(mats[0])) == h


def test_verify_flags_mislabeled_components():
    alg = elementary_grading(Z2, (E0, A0))
    swapped = GradedAlgebra(Z2, 2, {E0: alg.components[A0], A0: alg.components[E0]})
    report = verify_grading(swapped)
    assert not report.passed
    witnesses = {(g, h) for g, h, _ in report.closure_failures}
    assert (E0, E0) in witnesses  # E_12 * E_21 lands in the wrong component


def test_support_examples():
    trivial = elementary_grading(Z2, (E0, E0))
    assert trivial.support() == (E0,)
    eps = epsilon_grading(2)
    assert set(eps.support()) == set(eps.group.elements())
    assert elementary_grading(Z2, (E0, A0)).support() == (E0, A0)


def test_degree_of_signals():
    alg = elementary_grading(Z2, (E0, A0))
    assert alg.degree_of(Matrix.identity(2)) == E0
    assert alg.degree_of(Matrix.unit(2, 0, 0) + Matrix.unit(2, 0, 1)) is None
    with pytest.raises(ValueError):
        alg.degree_of(Matrix.zeros(2))


def test_fine_predicates():
    for n in (2, 3):
        eps = epsilon_grading(n)
        assert eps.is_fine()
        assert support_is_subgroup(eps)
    assert not elementary_grading(Z2, (E0, A0)).is_fine()
    G1 = FiniteAbelianGroup((1,))
    assert elementary_grading(G1, (G1.identity(),)).is_fine()


def test_epsilon_cocycle_matches_frozen_pattern():
    # alpha((i,j),(k,l)) = eps^(-jk), from multiplying all basis pairs directly
    for n in (2, 3, 4):
        alg = epsilon_grading(n)
        G = alg.group
        co = extract_cocycle(alg)
        eps = root_of_unity(n, 1)
        for t in G.elements():
            for s in G.elements():
                i, j = t.exponents
                k, l = s.exponents
                assert co(t, s) == eps ** (-j * k)
    alg2 = epsilon_grading(2)
    co2 = extract_cocycle(alg2)
    assert co2.first_identity_violation() is None


def test_cocycle_identity_normalization():
    alg = epsilon_grading(2)
    co = extract_cocycle(alg)
    e = alg.group.identity()
    for t in alg.group.elements():
        assert co(e, t) == CycNumber.one()
        assert co(t, e) == CycNumber.one()


def test_cocycle_requires_fine_grading():
    with pytest.raises(ValueError):
        extract_cocycle(elementary_grading(Z2, (E0, A0)))


def test_centralizer_of_identity_is_full_algebra():
    alg = elementary_grading(Z2, (E0, A0))
    basis = centralizer(alg, [Matrix.identity(2)])
    assert len(basis) == 4


def test_centralizer_of_epsilon_basis_is_scalars():
    alg = epsilon_grading(2)
    mats = [mats[0] for mats in alg.components.values()]
    basis = centralizer(alg, mats)
    assert len(basis) == 1
    assert basis[0].scale(basis[0].entries[0][0].inverse()) == Matrix.identity(2)


def test_centralizer_of_tensor_factor():
    right = epsilon_grading(2)
    G = right.group
    left = elementary_grading(G, (G.identity(), G.element((1, 0))))
    prod = induced_tensor_grading(left, right)
    I2 = Matrix.identity(2)
    embedded = [I2.kron(mats[0]) for mats in right.components.values()]
    basis = centralizer(prod, embedded)
    assert len(basis) == 4
    for m in basis:
        # every element is a 2x2 block pattern c (x) I
        for i in range(2):
            for j in range(2):
                block = [[m.entries[2 * i + r][2 * j + c] for c in range(2)]
                         for r in range(2)]
                assert block[0][1].is_zero() and block[1][0].is_zero()
                assert block[0][0] == block[1][1]


def test_identity_component_ideals():
    alg = elementary_grading(Z2, (E0, A0))
    ideals = identity_component_ideals(alg)
    assert [(i.degree, i.indices) for i in ideals] == [(E0, (0,)), (A0, (1,))]
    single = identity_component_ideals(elementary_grading(Z2, (E0, E0)))
    assert len(single) == 1 and single[0].block_dimension == 2
    paired = identity_component_ideals(elementary_grading(Z2, (E0, A0, E0, A0)))
    assert [(i.degree, i.indices) for i in paired] == [(E0, (0, 2)), (A0, (1, 3))]


def test_character_action_trivial_character_is_identity():
    alg = elementary_grading(Z2, (E0, A0))
    chi = next(c for c in Z2.characters()
               if all(c(g) == CycNumber.one() for g in Z2.elements()))
    m = Matrix.unit(2, 0, 1) + Matrix.unit(2, 1, 1)
    assert character_action(chi, alg, m) == m


def test_sign_character_action_is_diagonal_conjugation():
    alg = elementary_grading(Z2, (E0, A0))
    chi = next(c for c in Z2.characters() if c(A0) != CycNumber.one())
    d = Matrix.diagonal([CycNumber.one(), CycNumber.rational(-1)])
    d_inv = d.inverse()
    for i in range(2):
        for j in range(2):
            unit = Matrix.unit(2, i, j)
            assert character_action(chi, alg, unit) == d * unit * d_inv


def test_character_action_is_multiplicative():
    alg = elementary_grading(Z2, (E0, A0, E0))
    rng = random.Random(5)
    chars = Z2.characters()
    for _ in range(20):
        chi = rng.choice(chars)
        x = Matrix([[CycNumber.rational(rng.randint(-3, 3)) for _ in range(3)]
                    for _ in range(3)])
        y = Matrix([[CycNumber.rational(rng.randint(-3, 3)) for _ in range(3)]
                    for _ in range(3)])
        lhs = character_action(chi, alg, x * y)
        rhs = character_action(chi, alg, x) * character_action(chi, alg, y)
        assert lhs == rhs


def test_graded_and_invariant_agree_on_examples():
    alg = elementary_grading(Z2, (E0, A0))
    chars = Z2.characters()
    line = [Matrix.unit(2, 0, 1)]
    assert is_graded_subspace(alg, line)
    assert is_invariant_subspace(alg, line, chars)
    mixed = [Matrix.unit(2, 0, 0) + Matrix.unit(2, 0, 1)]
    assert not is_graded_subspace(alg, mixed)
    assert not is_invariant_subspace(alg, mixed, chars)
    plane = [Matrix.unit(2, 0, 0), Matrix.unit(2, 0, 1)]
    assert is_graded_subspace(alg, plane)
    assert is_invariant_subspace(alg, plane, chars)


def test_identity_map_passes_homomorphism_check():
    alg = elementary_grading(Z2, (E0, A0))
    pairs = tuple((m, m) for mats in alg.components.values() for m in mats)
    report = graded_homomorphism_check(GradedMap(alg, alg, pairs))
    assert report.passed and report.injective


def test_degree_shifting_map_fails_degree_preservation():
    alg = elementary_grading(Z2, (E0, A0))
    relabeled = GradedAlgebra(Z2, 2, {E0: alg.components[A0], A0: alg.components[E0]})
    pairs = tuple((m, m) for mats in alg.components.values() for m in mats)
    report = graded_homomorphism_check(GradedMap(alg, relabeled, pairs))
    assert not report.passed
    assert report.degree_failures


def test_homogeneous_matrix_units_certify_elementary():
    G = FiniteAbelianGroup((2, 2))
    tau = (G.identity(), G.element((0, 1)), G.element((1, 0)))
    alg = elementary_grading(G, tau)
    units = homogeneous_matrix_units(dict(alg.components), Matrix.identity(3))
    assert units.size == 3
    # all matrix-unit relations hold
    for i in range(3):
        for j in range(3):
            for k in range(3):
                for l in range(3):
                    product = units.units[(i, j)] * units.units[(k, l)]
                    expected = units.units[(i, l)] if j == k else Matrix.zeros(3)
                    assert product == expected


def test_is_elementary_distinguishes_species():
    assert is_elementary(elementary_grading(Z2, (E0, A0)))
    assert not is_elementary(epsilon_grading(2))
    assert not is_elementary(epsilon_grading(3))
    G1 = FiniteAbelianGroup((1,))
    assert is_elementary(elementary_grading(G1, (G1.identity(),)))


def test_graded_algebra_validates_input():
    with pytest.raises(ValueError):
        GradedAlgebra(Z2, 2, {})
    with pytest.raises(ValueError):
        GradedAlgebra(Z2, 2, {E0: [Matrix.identity(3)]})
