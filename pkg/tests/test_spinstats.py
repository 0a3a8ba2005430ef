"""Spin-space decomposition and exchange-statistics state counting."""

import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from snspec.spinstats import decompose_spin_space, physical_state_count
from snspec.symgroup import (
    Permutation,
    all_permutations,
    conjugacy_classes,
    irrep_dimension,
    irrep_matrix,
    partitions,
)


def test_four_spin_half_particles():
    dec = decompose_spin_space(4, 2)
    by_shape = {s.shape: s for s in dec.sectors}
    assert by_shape[(4,)].multiplicity == 5 and by_shape[(4,)].spin == 2.0
    assert by_shape[(3, 1)].multiplicity == 3 and by_shape[(3, 1)].spin == 1.0
    assert by_shape[(2, 2)].multiplicity == 1 and by_shape[(2, 2)].spin == 0.0
    assert (2, 1, 1) not in by_shape and (1, 1, 1, 1) not in by_shape
    assert dec.total_dimension() == 16


def test_two_component_multiplicity_is_spin_degeneracy():
    for n in range(2, 6):
        for sector in decompose_spin_space(n, 2).sectors:
            assert sector.multiplicity == int(2 * sector.spin + 1)


@given(st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=4))
def test_decomposition_exhausts_tensor_space(n, j):
    assert decompose_spin_space(n, j).total_dimension() == j**n


def test_character_formula_crosscheck():
    # multiplicity of each shape in the 3-fold 3-component space, computed
    # independently from characters: a permutation with c cycles has trace 3^c
    n, j = 3, 3
    dec = decompose_spin_space(n, j)
    for shape in partitions(n):
        acc = 0
        for cycle_type, size in conjugacy_classes(n):
            # any permutation of the class has the same character
            offset = 1
            images = []
            for length in cycle_type:
                cyc = list(range(offset, offset + length))
                images.extend(cyc[1:] + cyc[:1])
                offset += length
            p = Permutation(tuple(images))
            chi = irrep_matrix(shape, p).trace()
            acc += size * chi * j ** len(cycle_type)
        mult = round(acc / math.factorial(n))
        assert dec.multiplicity(shape) == mult


def test_physical_state_counts_for_spin_half_fermions():
    assert physical_state_count((2, 1, 1), "fermion", 2) == 9
    assert physical_state_count((1, 1, 1, 1), "fermion", 2) == 5
    assert physical_state_count((2, 2), "fermion", 2) == 2
    assert physical_state_count((4,), "fermion", 2) == 0
    assert physical_state_count((3, 1), "fermion", 2) == 0


def test_physical_state_counts_for_spinless_particles():
    for n in (2, 3, 4):
        for shape in partitions(n):
            boson = physical_state_count(shape, "boson", 1)
            fermion = physical_state_count(shape, "fermion", 1)
            assert boson == (1 if shape == (n,) else 0)
            assert fermion == (1 if shape == (1,) * n else 0)


def test_physical_state_count_rejects_unknown_statistics():
    with pytest.raises(ValueError):
        physical_state_count((2, 1), "anyon", 2)


@given(st.integers(min_value=2, max_value=5), st.integers(min_value=1, max_value=3))
def test_fermion_counts_add_up_to_antisymmetric_dimension(n, j):
    # distributing n fermions over j internal components with a single
    # spatial orbital per shape cell reproduces each sector's weight through
    # the conjugate-shape pairing; the simplest global invariant is that the
    # fully symmetric spatial shape pairs with the fully antisymmetric spin
    # shape, which exists only when j >= n
    count = physical_state_count((n,), "fermion", j)
    assert count == (math.comb(j, n) if j >= n else 0) * 1
