"""Symmetric-group machinery: permutations, tableaux, irrep matrices."""

import itertools
import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from snspec.symgroup import (
    ClusterSeparationError,
    Permutation,
    Tableau,
    all_permutations,
    class_operator_spectrum,
    conjugacy_classes,
    conjugate,
    irrep_dimension,
    irrep_matrices,
    irrep_matrix,
    kostka_number,
    kostka_row,
    module_sequences,
    partitions,
    permutation_module,
    regular_representation,
    semistandard_tableaux,
    standard_tableaux,
    tableau_from_contents,
)


@st.composite
def partition_shapes(draw, max_n=7):
    n = draw(st.integers(min_value=1, max_value=max_n))
    shapes = partitions(n)
    return shapes[draw(st.integers(min_value=0, max_value=len(shapes) - 1))]


@st.composite
def random_permutations(draw, max_n=6):
    n = draw(st.integers(min_value=1, max_value=max_n))
    images = draw(st.permutations(list(range(1, n + 1))))
    return Permutation(tuple(images))


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


def test_product_applies_left_factor_first():
    p = Permutation((2, 1, 3))
    q = Permutation((1, 3, 2))
    # (p*q)(1) = q(p(1)) = q(2) = 3
    assert (p * q).images == (3, 1, 2)


def test_inverse_and_identity():
    p = Permutation((3, 1, 4, 2))
    assert (p * p.inverse()).images == (1, 2, 3, 4)
    assert (p.inverse() * p).images == (1, 2, 3, 4)
    assert Permutation.identity(4).images == (1, 2, 3, 4)


def test_sign_and_cycle_type():
    assert Permutation((2, 1, 3)).sign == -1
    assert Permutation((2, 3, 1)).sign == 1
    assert Permutation((2, 3, 1, 5, 4)).cycle_type() == (3, 2)
    assert Permutation.from_cycles(4, (1, 2), (3, 4)).images == (2, 1, 4, 3)


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((1, 1, 3))


@given(random_permutations())
def test_adjacent_factors_reconstruct(p):
    q = Permutation.identity(p.n)
    for k in p.adjacent_factors():
        q = q * Permutation.transposition(p.n, k, k + 1)
    assert q == p


@given(random_permutations(max_n=5), random_permutations(max_n=5))
def test_sign_is_multiplicative(p, q):
    if p.n == q.n:
        assert (p * q).sign == p.sign * q.sign


# ---------------------------------------------------------------------------
# partitions and conjugacy classes
# ---------------------------------------------------------------------------


def test_partition_order_is_canonical():
    assert partitions(4) == ((4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1))


def test_conjugacy_classes_s5():
    classes = conjugacy_classes(5)
    assert len(classes) == 7
    assert sum(size for _, size in classes) == 120
    sizes = dict(classes)
    assert sizes[(2, 1, 1, 1)] == 10  # transpositions
    assert sizes[(5,)] == 24


@given(st.integers(min_value=1, max_value=7))
def test_class_sizes_sum_to_group_order(n):
    assert sum(size for _, size in conjugacy_classes(n)) == math.factorial(n)


@given(partition_shapes())
def test_conjugate_is_involution(shape):
    assert conjugate(conjugate(shape)) == shape
    assert irrep_dimension(conjugate(shape)) == irrep_dimension(shape)


@given(st.integers(min_value=1, max_value=6))
def test_dimension_squares_sum_to_group_order(n):
    assert sum(irrep_dimension(s) ** 2 for s in partitions(n)) == math.factorial(n)


def test_known_dimensions():
    assert [irrep_dimension(s) for s in partitions(4)] == [1, 3, 2, 3, 1]
    assert irrep_dimension((3, 2)) == 5
    assert irrep_dimension((2, 2, 1)) == 5


# ---------------------------------------------------------------------------
# tableaux
# ---------------------------------------------------------------------------


def test_standard_tableaux_last_letter_order():
    listed = [t.rows for t in standard_tableaux((2, 1, 1))]
    assert listed == [
        ((1, 2), (3,), (4,)),
        ((1, 3), (2,), (4,)),
        ((1, 4), (2,), (3,)),
    ]


def test_standard_tableaux_of_row_and_column():
    assert len(standard_tableaux((5,))) == 1
    assert len(standard_tableaux((1, 1, 1))) == 1


@given(partition_shapes())
def test_standard_tableaux_count_matches_dimension(shape):
    tabs = standard_tableaux(shape)
    assert len(tabs) == irrep_dimension(shape)
    assert all(t.is_standard() for t in tabs)
    assert len(set(tabs)) == len(tabs)


def test_semistandard_enumeration():
    # two symbols with multiplicities (2, 2)
    tabs = semistandard_tableaux((2, 2), (2, 2))
    assert [t.rows for t in tabs] == [((1, 1), (2, 2))]
    assert semistandard_tableaux((2, 2), (2, 1, 1)) != ()
    assert semistandard_tableaux((1, 1, 1), (2, 1)) == ()


def test_kostka_rows_for_four_particles():
    assert kostka_row((2, 1, 1)) == {
        (4,): 1,
        (3, 1): 2,
        (2, 2): 1,
        (2, 1, 1): 1,
        (1, 1, 1, 1): 0,
    }
    assert kostka_row((2, 2)) == {
        (4,): 1,
        (3, 1): 1,
        (2, 2): 1,
        (2, 1, 1): 0,
        (1, 1, 1, 1): 0,
    }
    assert kostka_row((1, 1, 1, 1)) == {
        (4,): 1,
        (3, 1): 3,
        (2, 2): 2,
        (2, 1, 1): 3,
        (1, 1, 1, 1): 1,
    }


@given(partition_shapes(max_n=6))
def test_kostka_row_reproduces_module_dimension(shape):
    n = sum(shape)
    total = sum(kostka_number(mu, shape) * irrep_dimension(mu) for mu in partitions(n))
    assert total == len(module_sequences(shape))


@given(partition_shapes(max_n=6))
def test_kostka_triangularity(shape):
    # the module contains its own shape exactly once and nothing lower
    row = kostka_row(shape)
    assert row[shape] == 1
    ordered = partitions(sum(shape))
    below = ordered.index(shape)
    assert all(row[mu] == 0 for mu in ordered[below + 1 :])


# ---------------------------------------------------------------------------
# irrep matrices
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("shape", [(2, 1), (3, 1), (2, 2), (2, 1, 1), (3, 2)])
def test_generators_are_orthogonal_involutions(shape):
    m = irrep_matrices(shape)
    for gen in m.generators:
        assert np.allclose(gen @ gen, np.eye(m.dim), atol=1e-12)
        assert np.allclose(gen, gen.T, atol=1e-12)


@pytest.mark.parametrize("shape", [(3, 1), (2, 2), (2, 1, 1)])
def test_braid_relations(shape):
    gens = irrep_matrices(shape).generators
    for a, b in itertools.combinations(range(len(gens)), 2):
        if b - a == 1:
            lhs = gens[a] @ gens[b] @ gens[a]
            rhs = gens[b] @ gens[a] @ gens[b]
        else:
            lhs = gens[a] @ gens[b]
            rhs = gens[b] @ gens[a]
        assert np.allclose(lhs, rhs, atol=1e-12)


def test_homomorphism_over_all_s4_pairs():
    shapes = partitions(4)
    perms = all_permutations(4)
    mats = {shape: {p: irrep_matrix(shape, p) for p in perms} for shape in shapes}
    for shape in shapes:
        for p, q in itertools.product(perms, perms):
            assert np.allclose(
                mats[shape][p] @ mats[shape][q], mats[shape][p * q], atol=1e-12
            )


def test_one_dimensional_irreps():
    for p in all_permutations(4):
        assert irrep_matrix((4,), p)[0, 0] == pytest.approx(1.0)
        assert irrep_matrix((1, 1, 1, 1), p)[0, 0] == pytest.approx(p.sign)


def test_character_of_transposition():
    # trace over (1 2) equals d * (number of 2-row minus 2-column pairings);
    # frozen values for the five shapes of S_4
    expected = {(4,): 1.0, (3, 1): 1.0, (2, 2): 0.0, (2, 1, 1): -1.0, (1, 1, 1, 1): -1.0}
    swap = Permutation.transposition(4, 1, 2)
    for shape, value in expected.items():
        assert np.trace(irrep_matrix(shape, swap)) == pytest.approx(value, abs=1e-12)


# ---------------------------------------------------------------------------
# permutation modules
# ---------------------------------------------------------------------------


def test_module_action_places_symbol_from_preimage_slot():
    rep = permutation_module((1, 1, 1))
    seqs = module_sequences((1, 1, 1))
    p = Permutation((2, 3, 1))
    mat = rep(p)
    src = seqs.index((1, 2, 3))
    # image sequence has entries n[p(i)]: (n2, n3, n1) = (2, 3, 1)
    dst = seqs.index((2, 3, 1))
    assert mat[dst, src] == 1.0


@given(random_permutations(max_n=4), random_permutations(max_n=4))
def test_module_homomorphism(p, q):
    if p.n != q.n:
        return
    rep = permutation_module((1,) * p.n)
    assert np.array_equal(rep(p) @ rep(q), rep(p * q))


# ---------------------------------------------------------------------------
# class operators
# ---------------------------------------------------------------------------


def test_regular_representation_of_s3_splits_one_one_two_two():
    spec = class_operator_spectrum(regular_representation(3), 3)
    counts = Counter(lv.tableau.shape for lv in spec.vectors)
    assert counts == {(3,): 1, (1, 1, 1): 1, (2, 1): 4}
    # eigenvalue patterns are the content sums of each labeling tableau
    for lv in spec.vectors:
        assert lv.eigenvalues[-1] == pytest.approx(
            sum(lv.tableau.content(k) for k in range(1, 4)), abs=1e-9
        )


def test_class_spectrum_on_irrep_returns_tableau_basis():
    spec = class_operator_spectrum(lambda p: irrep_matrix((2, 1, 1), p), 4)
    tabs = standard_tableaux((2, 1, 1))
    assert len(spec.vectors) == 3
    for lv in spec.vectors:
        expected = np.zeros(3)
        expected[tabs.index(lv.tableau)] = 1.0
        assert np.allclose(lv.vector, expected, atol=1e-9)


def test_class_spectrum_vectors_are_orthonormal():
    spec = class_operator_spectrum(regular_representation(4), 4)
    basis = np.column_stack([lv.vector for lv in spec.vectors])
    assert basis.shape == (24, 24)
    assert np.allclose(basis.T @ basis, np.eye(24), atol=1e-9)
    counts = Counter(lv.tableau.shape for lv in spec.vectors)
    # each irrep appears with multiplicity equal to its dimension
    for shape in partitions(4):
        d = irrep_dimension(shape)
        assert counts[shape] == d * d


def test_defining_module_of_s4_contains_trivial_and_standard():
    rep = permutation_module((3, 1))
    spec = class_operator_spectrum(rep, 4)
    counts = Counter(lv.tableau.shape for lv in spec.vectors)
    assert counts == {(4,): 1, (3, 1): 3}


def test_cluster_failure_reports_chain_level():
    # consecutive gaps below tolerance but total spread above it
    rng = np.random.default_rng(5)
    base = np.diag([0.0, 0.8e-9, 1.6e-9])
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    from snspec.symgroup import simultaneous_eigenbasis

    with pytest.raises(ClusterSeparationError) as info:
        simultaneous_eigenbasis([q @ base @ q.T], tol=1e-9)
    assert info.value.level == 1


def test_tableau_from_contents_roundtrip():
    for shape in partitions(5):
        for t in standard_tableaux(shape):
            deltas = [t.content(k) for k in range(2, 6)]
            assert tableau_from_contents(deltas) == t
    with pytest.raises(ValueError):
        tableau_from_contents([5])


@settings(deadline=None)
@given(partition_shapes(max_n=5))
def test_tableau_contents_determine_tableau_uniquely(shape):
    seen = set()
    for t in standard_tableaux(shape):
        key = tuple(t.content(k) for k in range(2, sum(shape) + 1))
        assert key not in seen
        seen.add(key)
