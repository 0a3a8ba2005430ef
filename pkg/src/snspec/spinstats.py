"""Spin degrees of freedom and exchange statistics.

The N-fold tensor power of a J-component spin space decomposes into
permutation irreps; the multiplicity of a shape equals the number of
semistandard fillings with entries at most J.  A spatial level of given
permutation symmetry is physical only when the matching spin sector
(same shape for bosons, conjugate shape for fermions) actually occurs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .symgroup import Shape, conjugate, irrep_dimension, kostka_number, partitions


@dataclass(frozen=True)
class SpinSector:
    """One permutation-symmetry component of the spin space."""

    shape: Shape
    multiplicity: int
    spin: float | None = None  # total spin, only meaningful for two components


@dataclass(frozen=True)
class SpinDecomposition:
    n_particles: int
    components: int
    sectors: tuple[SpinSector, ...]

    def multiplicity(self, shape: Shape) -> int:
        for sector in self.sectors:
            if sector.shape == shape:
                return sector.multiplicity
        return 0

    def total_dimension(self) -> int:
        return sum(s.multiplicity * irrep_dimension(s.shape) for s in self.sectors)


def _tensor_multiplicity(shape: Shape, components: int) -> int:
    """Semistandard fillings of ``shape`` with entries 1..components."""
    n = sum(shape)
    if len(shape) > components:
        return 0
    total = 0
    for weight in itertools.product(range(n + 1), repeat=components):
        if sum(weight) == n:
            total += kostka_number(shape, weight)
    return total


def decompose_spin_space(n_particles: int, components: int) -> SpinDecomposition:
    """Permutation-symmetry content of ``components``-state spins for
    ``n_particles`` particles.  With two components each contributing shape
    carries a single total spin (rows difference over two)."""
    if n_particles < 1:
        raise ValueError("need at least one particle")
    if components < 1:
        raise ValueError("need at least one spin component")
    sectors = []
    for shape in partitions(n_particles):
        mult = _tensor_multiplicity(shape, components)
        if mult == 0:
            continue
        spin = None
        if components == 2:
            rows = shape + (0,) * (2 - len(shape))
            spin = (rows[0] - rows[1]) / 2.0
        sectors.append(SpinSector(shape, mult, spin))
    return SpinDecomposition(n_particles, components, tuple(sectors))


def physical_state_count(spatial_shape: Shape, statistics: str, components: int) -> int:
    """Dimension of the spin space attached to one spatial level of the given
    permutation symmetry: bosons need the same spin shape, fermions the
    conjugate one, and the count is multiplicity times irrep dimension."""
    if statistics not in ("boson", "fermion"):
        raise ValueError(f"statistics must be 'boson' or 'fermion', got {statistics!r}")
    target = tuple(spatial_shape) if statistics == "boson" else conjugate(spatial_shape)
    mult = _tensor_multiplicity(target, components)
    return mult * irrep_dimension(target)
