"""Trap spectra, compositions, level enumeration, and the group catalog."""

import math
from collections import Counter

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from snspec import quadrature
from snspec.spectra import (
    Composition,
    IrrepLabel,
    SingleParticleSpectrum,
    bose_fermi_partner,
    composition_degeneracy,
    enumerate_levels,
    harmonic_shell_degeneracy,
    minimal_group_catalog,
    orthogonal_irrep_dimension,
    parity_class_count,
)
from snspec.symgroup import irrep_dimension, partitions


# ---------------------------------------------------------------------------
# single-particle spectra
# ---------------------------------------------------------------------------


def test_harmonic_levels_and_parity():
    s = SingleParticleSpectrum.harmonic()
    assert [s.energy(n) for n in range(4)] == [0.5, 1.5, 2.5, 3.5]
    assert [s.parity(n) for n in range(4)] == [1, -1, 1, -1]
    assert s.symmetric and s.has_wavefunctions and s.size is None


def test_square_well_levels():
    s = SingleParticleSpectrum.square_well()
    assert [s.energy(n) for n in range(4)] == [1.0, 4.0, 9.0, 16.0]
    assert s.parity(2) == 1 and s.parity(3) == -1
    assert s.domain == (0.0, math.pi)


def test_harmonic_orbitals_are_orthonormal():
    s = SingleParticleSpectrum.harmonic()
    x, w = quadrature.gauss_hermite(60)
    # integrate phi_m phi_n against dq: fold exp(-q^2) into the weight
    overlaps = np.zeros((5, 5))
    for m in range(5):
        for n in range(5):
            fm = s.wavefunction(m, x) * np.exp(x**2 / 2)
            fn = s.wavefunction(n, x) * np.exp(x**2 / 2)
            overlaps[m, n] = np.sum(w * fm * fn)
    assert np.allclose(overlaps, np.eye(5), atol=1e-12)


def test_square_well_orbitals_are_orthonormal():
    s = SingleParticleSpectrum.square_well()
    x, w = quadrature.gauss_legendre_panels(0.0, math.pi, 8, 20)
    for m in range(4):
        for n in range(4):
            val = np.sum(w * s.wavefunction(m, x) * s.wavefunction(n, x))
            assert val == pytest.approx(1.0 if m == n else 0.0, abs=1e-12)


def test_harmonic_derivative_matches_finite_difference():
    s = SingleParticleSpectrum.harmonic()
    q = np.linspace(-2.5, 2.5, 11)
    eps = 1e-6
    for n in (0, 1, 4):
        numeric = (s.wavefunction(n, q + eps) - s.wavefunction(n, q - eps)) / (2 * eps)
        assert np.allclose(s.wavefunction_derivative(n, q), numeric, atol=1e-7)


def test_table_trap_from_file(tmp_path):
    path = tmp_path / "levels.dat"
    path.write_text("# test spectrum\n0 0.1 +1\n1 0.7 -1  # first excited\n2 1.9 +1\n")
    s = SingleParticleSpectrum.from_file(path)
    assert s.kind == "table" and s.size == 3
    assert s.energy(1) == 0.7 and s.parity(1) == -1
    assert s.symmetric
    assert not s.has_wavefunctions
    with pytest.raises(ValueError):
        s.energy(3)
    with pytest.raises(ValueError):
        s.wavefunction(0, np.zeros(1))


def test_table_trap_without_parity_column(tmp_path):
    path = tmp_path / "levels.dat"
    path.write_text("0 0.0\n1 1.0\n2 2.5\n")
    s = SingleParticleSpectrum.from_file(path)
    assert not s.symmetric
    assert s.parity(0) is None


@pytest.mark.parametrize(
    "text, message",
    [
        ("0 0.0 +1\n1 1.0\n", "every line"),
        ("0 0.0\n2 1.0\n", "exactly once"),
        ("0 0.0\n1 0.0\n", "tied or decreasing"),
        ("0 1.0\n1 0.5\n", "tied or decreasing"),
        ("0 0.0 up\n", "parity"),
        ("", "no levels"),
        ("0 0.0 +1 9\n", "expected"),
    ],
)
def test_table_trap_rejects_malformed_files(tmp_path, text, message):
    path = tmp_path / "bad.dat"
    path.write_text(text)
    with pytest.raises(ValueError, match=message):
        SingleParticleSpectrum.from_file(path)


# ---------------------------------------------------------------------------
# compositions
# ---------------------------------------------------------------------------


def test_composition_basics():
    c = Composition.from_sequence((2, 0, 0, 1))
    assert c.occupations == ((0, 2), (1, 1), (2, 1))
    assert c.shape == (2, 1, 1)
    assert c.sorted_sequence() == (0, 0, 1, 2)
    assert c.label() == "0^2 1 2"
    assert composition_degeneracy(c) == 12


def test_composition_energy_and_parity():
    s = SingleParticleSpectrum.harmonic()
    c = Composition.from_sequence((0, 1, 1, 2))
    assert c.energy(s) == pytest.approx(6.0)
    assert c.parity(s) == 1  # two odd particles
    assert Composition.from_sequence((0, 1)).parity(s) == -1


@given(st.lists(st.integers(min_value=0, max_value=6), min_size=1, max_size=6))
def test_degeneracy_counts_distinct_orderings(seq):
    import itertools

    c = Composition.from_sequence(seq)
    brute = len(set(itertools.permutations(seq)))
    assert composition_degeneracy(c) == brute


def test_known_composition_degeneracies():
    assert composition_degeneracy(Composition.from_sequence((0, 1, 1, 2, 4))) == 60
    assert composition_degeneracy(Composition.from_sequence((0, 0, 1, 1, 2))) == 30


def test_bose_fermi_partner_examples():
    c = Composition.from_sequence((0, 1, 1, 2, 4))
    assert bose_fermi_partner(c).sorted_sequence() == (0, 2, 3, 5, 8)
    ground = Composition.from_sequence((0, 0, 0, 0))
    assert bose_fermi_partner(ground).sorted_sequence() == (0, 1, 2, 3)


@given(st.lists(st.integers(min_value=0, max_value=5), min_size=1, max_size=6))
def test_bose_fermi_partner_is_strictly_increasing(seq):
    partner = bose_fermi_partner(Composition.from_sequence(seq))
    out = partner.sorted_sequence()
    assert all(a < b for a, b in zip(out, out[1:]))
    assert partner.shape == (1,) * len(seq)


def test_harmonic_partner_shifts_energy_by_pair_count():
    s = SingleParticleSpectrum.harmonic()
    for seq in [(0, 0, 0), (0, 1, 1), (2, 2, 3)]:
        c = Composition.from_sequence(seq)
        n = len(seq)
        assert bose_fermi_partner(c).energy(s) == pytest.approx(c.energy(s) + n * (n - 1) / 2)


# ---------------------------------------------------------------------------
# level enumeration
# ---------------------------------------------------------------------------


def test_enumerate_levels_rejects_low_cutoff():
    s = SingleParticleSpectrum.harmonic()
    with pytest.raises(ValueError, match="below"):
        enumerate_levels(s, 3, 1.0)


def test_harmonic_four_particles_through_fourth_shell():
    s = SingleParticleSpectrum.harmonic()
    levels = enumerate_levels(s, 4, 6.0)
    assert [lv.energy for lv in levels] == [2.0, 3.0, 4.0, 5.0, 6.0]
    comps = [c for lv in levels for c in lv.compositions]
    assert [c.label() for c in comps] == [
        "0^4",
        "0^3 1",
        "0^3 2",
        "0^2 1^2",
        "0^3 3",
        "0^2 1 2",
        "0 1^3",
        "0^3 4",
        "0^2 1 3",
        "0^2 2^2",
        "0 1^2 2",
        "1^4",
    ]
    assert sum(c.degeneracy() for c in comps) == 70
    # shell sizes match the degeneracy family
    assert [lv.degeneracy for lv in levels] == [harmonic_shell_degeneracy(4, x) for x in range(5)]
    # permutation-symmetry content tallies
    content = Counter()
    for lv in levels:
        for label, mult in lv.irrep_content:
            content[label.shape] += mult
    assert content == {(4,): 12, (3, 1): 13, (2, 2): 5, (2, 1, 1): 3}
    assert (1, 1, 1, 1) not in content


def test_level_content_accounts_for_degeneracy():
    s = SingleParticleSpectrum.square_well()
    for lv in enumerate_levels(s, 3, 30.0):
        total = sum(irrep_dimension(label.shape) * mult for label, mult in lv.irrep_content)
        assert total == lv.degeneracy


def test_levels_carry_parity_decorations():
    s = SingleParticleSpectrum.harmonic()
    levels = enumerate_levels(s, 2, 3.5)
    # first excited level: composition (0 1), odd parity
    assert levels[1].irrep_content == (
        (IrrepLabel((2,), "-"), 1),
        (IrrepLabel((1, 1), "-"), 1),
    )


def test_flags_minimal_emergent_accidental():
    harm = enumerate_levels(SingleParticleSpectrum.harmonic(), 4, 6.0)
    assert [lv.flag for lv in harm] == [
        "minimal",
        "minimal",
        "emergent_harmonic",
        "emergent_harmonic",
        "emergent_harmonic",
    ]
    well = enumerate_levels(SingleParticleSpectrum.square_well(), 2, 50.0)
    tied = [lv for lv in well if lv.energy == pytest.approx(50.0)]
    assert len(tied) == 1 and tied[0].flag == "accidental"
    assert [c.label() for c in tied[0].compositions] == ["0 6", "4^2"]


def test_asymmetric_table_levels_have_no_parity(tmp_path):
    path = tmp_path / "asym.dat"
    path.write_text("0 0.0\n1 1.1\n2 2.3\n")
    s = SingleParticleSpectrum.from_file(path)
    for lv in enumerate_levels(s, 2, 3.0):
        assert all(label.parity == "none" for label, _ in lv.irrep_content)


# ---------------------------------------------------------------------------
# degeneracy families
# ---------------------------------------------------------------------------


def test_harmonic_shell_degeneracy_values():
    assert [harmonic_shell_degeneracy(2, x) for x in range(5)] == [1, 2, 3, 4, 5]
    assert [harmonic_shell_degeneracy(3, x) for x in range(5)] == [1, 3, 6, 10, 15]
    assert [harmonic_shell_degeneracy(4, x) for x in range(5)] == [1, 4, 10, 20, 35]


@given(st.integers(min_value=1, max_value=6), st.integers(min_value=0, max_value=8))
def test_shell_degeneracy_counts_sequences(n, x):
    import itertools

    brute = sum(1 for seq in itertools.product(range(x + 1), repeat=n) if sum(seq) == x)
    assert harmonic_shell_degeneracy(n, x) == brute


def test_orthogonal_family_dimensions():
    assert [orthogonal_irrep_dimension(2, k) for k in range(5)] == [1, 2, 2, 2, 2]
    assert [orthogonal_irrep_dimension(3, k) for k in range(5)] == [1, 3, 5, 7, 9]
    assert [orthogonal_irrep_dimension(4, k) for k in range(5)] == [1, 4, 9, 16, 25]
    assert orthogonal_irrep_dimension(5, 2) == 14
    with pytest.raises(ValueError):
        orthogonal_irrep_dimension(1, 0)


def test_parity_class_counts_for_four_particles():
    expected = {(4,): 2, (3, 1): 4, (2, 2): 3, (2, 1, 1): 6, (1, 1, 1, 1): 5}
    for shape, count in expected.items():
        assert parity_class_count(shape) == count


# ---------------------------------------------------------------------------
# the catalog
# ---------------------------------------------------------------------------

KINEMATIC_EXPECTED = {
    (2, "asymmetric"): ((1, 1), (2, 1)),
    (2, "symmetric"): ((1, 2), (2, 3)),
    (3, "asymmetric"): ((1, 1), (3, 1), (6, 1)),
    (3, "symmetric"): ((1, 2), (3, 4), (6, 4)),
    (4, "asymmetric"): ((1, 1), (4, 1), (6, 1), (12, 1), (24, 1)),
    (4, "symmetric"): ((1, 2), (4, 4), (6, 3), (12, 6), (24, 5)),
}

KINEMATIC_INTERACTING = {
    2: {"asymmetric": ((1, 2),), "symmetric": ((1, 4),), "harmonic": ((1, 4),)},
    3: {"asymmetric": ((1, 2), (2, 1)), "symmetric": ((1, 4), (2, 2)), "harmonic": ((1, 8), (2, 4))},
    4: {
        "asymmetric": ((1, 2), (2, 1), (3, 2)),
        "symmetric": ((1, 4), (2, 2), (3, 4)),
        "harmonic": ((1, 8), (2, 4), (3, 8)),
    },
}

CONFIGURATION_EXPECTED = {
    (2, "asymmetric"): ((1, 2),),
    (2, "symmetric"): ((1, 4), (2, 1)),
    (3, "asymmetric"): ((1, 2), (2, 1)),
    (3, "symmetric"): ((1, 4), (2, 2), (3, 4)),
    (4, "asymmetric"): ((1, 2), (2, 1), (3, 2)),
    (4, "symmetric"): ((1, 4), (2, 2), (3, 4), (4, 4), (6, 4), (8, 2)),
}


@pytest.mark.parametrize("n,kind", sorted(KINEMATIC_EXPECTED))
def test_catalog_kinematic_rows(n, kind):
    cat = minimal_group_catalog(n, kind)
    assert cat.row("kinematic", False).dims == KINEMATIC_EXPECTED[(n, kind)]
    assert cat.row("kinematic", True).dims == KINEMATIC_INTERACTING[n][kind]


@pytest.mark.parametrize("n,kind", sorted(CONFIGURATION_EXPECTED))
def test_catalog_configuration_rows(n, kind):
    cat = minimal_group_catalog(n, kind)
    assert cat.row("configuration", False).dims == CONFIGURATION_EXPECTED[(n, kind)]
    # interacting rows repeat the kinematic dims cell for cell
    assert cat.row("configuration", True).dims == KINEMATIC_INTERACTING[n][kind]


@pytest.mark.parametrize("n", [2, 3, 4])
def test_catalog_harmonic_families(n):
    cat = minimal_group_catalog(n, "harmonic")
    kin = cat.row("kinematic", False)
    conf = cat.row("configuration", False)
    assert kin.family_values == tuple(harmonic_shell_degeneracy(n, x) for x in range(8))
    assert conf.family_values == tuple(orthogonal_irrep_dimension(n, k) for k in range(8))
    assert kin.dims is None and conf.dims is None


@pytest.mark.parametrize(
    "n,kind,order",
    [
        (2, "asymmetric", 2),
        (2, "symmetric", 8),
        (3, "asymmetric", 6),
        (3, "symmetric", 48),
        (4, "asymmetric", 24),
        (4, "symmetric", 384),
    ],
)
def test_noninteracting_configuration_dims_square_sum_to_group_order(n, kind, order):
    row = minimal_group_catalog(n, kind).row("configuration", False)
    assert sum(d * d * count for d, count in row.dims) == order


@pytest.mark.parametrize(
    "n,kind,order",
    [
        (2, "symmetric", 4),
        (2, "harmonic", 4),
        (3, "symmetric", 12),
        (3, "harmonic", 24),
        (4, "symmetric", 48),
        (4, "harmonic", 96),
    ],
)
def test_interacting_configuration_dims_square_sum_to_group_order(n, kind, order):
    row = minimal_group_catalog(n, kind).row("configuration", True)
    assert sum(d * d * count for d, count in row.dims) == order


def test_catalog_rejects_out_of_range():
    with pytest.raises(ValueError):
        minimal_group_catalog(5, "harmonic")
    with pytest.raises(ValueError):
        minimal_group_catalog(1, "harmonic")
    with pytest.raises(ValueError):
        minimal_group_catalog(3, "cubic")
