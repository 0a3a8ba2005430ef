"""Single-particle traps, many-body compositions, and degeneracy catalogs.

Units: the harmonic trap uses oscillator units (energies in hbar*omega,
levels at n + 1/2); the hard-wall well has width pi in units with
hbar^2/(2m) = 1, so its levels sit at (n+1)^2.  Tabulated traps carry
whatever units the table was written in.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cache
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from . import quadrature
from .symgroup import Shape, irrep_dimension, kostka_row, partitions

WELL_WIDTH = math.pi


# ---------------------------------------------------------------------------
# single-particle spectra
# ---------------------------------------------------------------------------


class SingleParticleSpectrum:
    """Energy levels (and, when available, parities and orbitals) of one
    particle in a trap.

    ``kind`` is one of ``harmonic``, ``square_well``, ``table``.  Level
    indices count from 0.  Tabulated spectra have no orbitals; operations
    needing wavefunctions reject them.
    """

    def __init__(
        self,
        kind: str,
        *,
        energies: tuple[float, ...] | None = None,
        parities: tuple[int, ...] | None = None,
        units: str = "",
    ):
        if kind not in ("harmonic", "square_well", "table"):
            raise ValueError(f"unknown trap kind {kind!r}")
        if kind == "table":
            if not energies:
                raise ValueError("tabulated trap needs at least one level")
            diffs = [b - a for a, b in zip(energies, energies[1:])]
            if any(d <= 0 for d in diffs):
                raise ValueError("tabulated energies must be strictly increasing")
            if parities is not None:
                if len(parities) != len(energies):
                    raise ValueError("parity column must cover every level or none")
                if any(p not in (-1, 1) for p in parities):
                    raise ValueError("parities must be +1 or -1")
        self.kind = kind
        self._energies = energies
        self._parities = parities
        self.units = units or {"harmonic": "hbar*omega", "square_well": "hbar^2/(2m)", "table": "table units"}[kind]

    @classmethod
    def harmonic(cls) -> "SingleParticleSpectrum":
        return cls("harmonic")

    @classmethod
    def square_well(cls) -> "SingleParticleSpectrum":
        return cls("square_well")

    @classmethod
    def from_table(
        cls, energies: Sequence[float], parities: Sequence[int] | None = None, units: str = ""
    ) -> "SingleParticleSpectrum":
        return cls(
            "table",
            energies=tuple(float(e) for e in energies),
            parities=None if parities is None else tuple(int(p) for p in parities),
            units=units,
        )

    @classmethod
    def from_file(cls, path: str | Path) -> "SingleParticleSpectrum":
        """Parse a level table: one ``n energy [parity]`` line per state.

        Lines starting with ``#`` (and inline ``#`` tails) are comments.
        Level indices must be exactly 0..M each once; energies strictly
        increasing; the parity column is all-or-nothing with entries
        +1/-1 (or bare +/-).
        """
        rows: list[tuple[int, float, int | None]] = []
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) not in (2, 3):
                raise ValueError(f"{path}:{lineno}: expected 'n energy [parity]', got {raw!r}")
            try:
                n = int(fields[0])
                energy = float(fields[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            parity: int | None = None
            if len(fields) == 3:
                token = fields[2]
                if token in ("+", "+1", "1"):
                    parity = 1
                elif token in ("-", "-1"):
                    parity = -1
                else:
                    raise ValueError(f"{path}:{lineno}: parity must be +1 or -1, got {token!r}")
            rows.append((n, energy, parity))
        if not rows:
            raise ValueError(f"{path}: no levels found")
        rows.sort()
        indices = [r[0] for r in rows]
        if indices != list(range(len(rows))):
            raise ValueError(f"{path}: level indices must be 0..{len(rows) - 1} each exactly once")
        parity_count = sum(r[2] is not None for r in rows)
        if parity_count not in (0, len(rows)):
            raise ValueError(f"{path}: parity column must be present on every line or absent")
        energies = tuple(r[1] for r in rows)
        for a, b in zip(energies, energies[1:]):
            if b <= a:
                raise ValueError(f"{path}: tied or decreasing energies ({a} then {b}) are not allowed")
        parities = tuple(r[2] for r in rows) if parity_count else None
        return cls.from_table(energies, parities)

    # -- level data --------------------------------------------------------

    @property
    def size(self) -> int | None:
        """Number of tabulated levels, or None for unbounded spectra."""
        return len(self._energies) if self.kind == "table" else None

    def _check_level(self, n: int):
        if n < 0:
            raise ValueError(f"level index must be >= 0, got {n}")
        if self.size is not None and n >= self.size:
            raise ValueError(f"level {n} outside table with {self.size} levels")

    def energy(self, n: int) -> float:
        self._check_level(n)
        if self.kind == "harmonic":
            return n + 0.5
        if self.kind == "square_well":
            return float((n + 1) ** 2)
        return self._energies[n]

    @property
    def symmetric(self) -> bool:
        """Whether every level carries a definite parity."""
        return self.kind in ("harmonic", "square_well") or self._parities is not None

    def parity(self, n: int) -> int | None:
        self._check_level(n)
        if self.kind in ("harmonic", "square_well"):
            return -1 if n % 2 else 1
        return None if self._parities is None else self._parities[n]

    # -- orbitals ----------------------------------------------------------

    @property
    def has_wavefunctions(self) -> bool:
        return self.kind in ("harmonic", "square_well")

    @property
    def domain(self) -> tuple[float, float] | None:
        """Support of the orbitals; None means the whole real line."""
        if self.kind == "square_well":
            return (0.0, WELL_WIDTH)
        return None

    def wavefunction(self, n: int, q: np.ndarray) -> np.ndarray:
        self._check_level(n)
        q = np.asarray(q, dtype=float)
        if self.kind == "harmonic":
            parts = quadrature.hermite_parts(n, q.ravel())
            return (parts[n] * np.exp(-q.ravel() ** 2 / 2.0)).reshape(q.shape)
        if self.kind == "square_well":
            inside = (q >= 0.0) & (q <= WELL_WIDTH)
            return np.where(inside, math.sqrt(2.0 / WELL_WIDTH) * np.sin((n + 1) * q), 0.0)
        raise ValueError("tabulated trap has no orbital evaluator")

    def wavefunction_derivative(self, n: int, q: np.ndarray) -> np.ndarray:
        self._check_level(n)
        q = np.asarray(q, dtype=float)
        if self.kind == "harmonic":
            flat = q.ravel()
            h = quadrature.hermite_parts(n, flat)
            dh = quadrature.hermite_part_derivatives(n, flat)
            return ((dh[n] - flat * h[n]) * np.exp(-(flat**2) / 2.0)).reshape(q.shape)
        if self.kind == "square_well":
            inside = (q >= 0.0) & (q <= WELL_WIDTH)
            return np.where(inside, math.sqrt(2.0 / WELL_WIDTH) * (n + 1) * np.cos((n + 1) * q), 0.0)
        raise ValueError("tabulated trap has no orbital evaluator")


# ---------------------------------------------------------------------------
# compositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Composition:
    """Occupancies of single-particle levels: sorted (level, multiplicity)."""

    occupations: tuple[tuple[int, int], ...]

    def __post_init__(self):
        levels = [lvl for lvl, _ in self.occupations]
        if levels != sorted(set(levels)):
            raise ValueError(f"occupations must list distinct levels in order: {self.occupations}")
        if any(lvl < 0 or mult < 1 for lvl, mult in self.occupations):
            raise ValueError(f"invalid occupation entry in {self.occupations}")

    @classmethod
    def from_sequence(cls, seq: Iterable[int]) -> "Composition":
        counts = Counter(int(n) for n in seq)
        return cls(tuple(sorted(counts.items())))

    @property
    def n_particles(self) -> int:
        return sum(mult for _, mult in self.occupations)

    @property
    def shape(self) -> Shape:
        """Occupancy multiplicities as a partition (largest first)."""
        return tuple(sorted((mult for _, mult in self.occupations), reverse=True))

    @property
    def levels(self) -> tuple[int, ...]:
        return tuple(lvl for lvl, _ in self.occupations)

    def sorted_sequence(self) -> tuple[int, ...]:
        out: list[int] = []
        for lvl, mult in self.occupations:
            out.extend([lvl] * mult)
        return tuple(out)

    def energy(self, s: SingleParticleSpectrum) -> float:
        return float(sum(mult * s.energy(lvl) for lvl, mult in self.occupations))

    def parity(self, s: SingleParticleSpectrum) -> int | None:
        if not s.symmetric:
            return None
        sign = 1
        for lvl, mult in self.occupations:
            if mult % 2 and s.parity(lvl) == -1:
                sign = -sign
        return sign

    def degeneracy(self) -> int:
        count = math.factorial(self.n_particles)
        for _, mult in self.occupations:
            count //= math.factorial(mult)
        return count

    def label(self) -> str:
        """Compact occupancy label like ``0^2 1 3``."""
        chunks = []
        for lvl, mult in self.occupations:
            chunks.append(f"{lvl}^{mult}" if mult > 1 else str(lvl))
        return " ".join(chunks)


def composition_degeneracy(c: Composition) -> int:
    """Number of distinct orderings: N! over the product of occupancy factorials."""
    return c.degeneracy()


def bose_fermi_partner(c: Composition) -> Composition:
    """The distinct-level composition obtained by adding 0, 1, ..., N-1 to the
    sorted occupancy sequence; pairs each bosonic state with a fermionic one."""
    seq = c.sorted_sequence()
    return Composition.from_sequence(n + i for i, n in enumerate(seq))


# ---------------------------------------------------------------------------
# energy levels
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IrrepLabel:
    """Permutation-symmetry label with optional parity decoration and
    center-of-mass excitation quantum number."""

    shape: Shape
    parity: str = "none"
    cm_excitation: int | None = None

    def __post_init__(self):
        if self.parity not in ("none", "+", "-"):
            raise ValueError(f"parity must be 'none', '+' or '-', got {self.parity!r}")

    def __str__(self) -> str:
        text = "[" + " ".join(str(p) for p in self.shape) + "]"
        if self.parity != "none":
            text += self.parity
        if self.cm_excitation is not None:
            text += f" cm={self.cm_excitation}"
        return text


@dataclass(frozen=True)
class EnergyLevel:
    """One degenerate level of the noninteracting N-particle spectrum."""

    energy: float
    compositions: tuple[Composition, ...]
    degeneracy: int
    irrep_content: tuple[tuple[IrrepLabel, int], ...]
    flag: str  # minimal | emergent_harmonic | accidental

    def content_dict(self) -> dict[IrrepLabel, int]:
        return dict(self.irrep_content)


def _parity_tag(sign: int | None) -> str:
    if sign is None:
        return "none"
    return "+" if sign > 0 else "-"


def enumerate_levels(
    s: SingleParticleSpectrum,
    n_particles: int,
    e_max: float,
    *,
    level_tol: float = 1e-9,
) -> list[EnergyLevel]:
    """All N-particle levels with total energy up to ``e_max``.

    Compositions with coinciding total energy (relative tolerance
    ``level_tol``) are merged into one level carrying the combined
    permutation-symmetry content.
    """
    if n_particles < 1:
        raise ValueError("need at least one particle")
    ground = n_particles * s.energy(0)
    scale = max(1.0, abs(e_max), abs(ground))
    if e_max < ground - level_tol * scale:
        raise ValueError(
            f"energy cutoff {e_max} lies below the N-particle ground energy {ground}"
        )

    # highest usable single-particle level
    budget = e_max - (n_particles - 1) * s.energy(0) + level_tol * scale
    top = 0
    while (s.size is None or top + 1 < s.size) and s.energy(top + 1) <= budget:
        top += 1

    found: list[tuple[float, Composition]] = []

    def extend(start: int, left: int, used: float, seq: list[int]):
        if left == 0:
            comp = Composition.from_sequence(seq)
            found.append((comp.energy(s), comp))
            return
        for lvl in range(start, top + 1):
            total = used + s.energy(lvl) * left  # cheapest completion from here
            if total > e_max + level_tol * scale:
                break
            seq.append(lvl)
            extend(lvl, left - 1, used + s.energy(lvl), seq)
            seq.pop()

    extend(0, n_particles, 0.0, [])
    found.sort(key=lambda item: (item[0], item[1].sorted_sequence()))

    levels: list[EnergyLevel] = []
    group: list[tuple[float, Composition]] = []

    def close(group: list[tuple[float, Composition]]):
        comps = tuple(comp for _, comp in group)
        energy = group[0][0]
        content: Counter[IrrepLabel] = Counter()
        for comp in comps:
            tag = _parity_tag(comp.parity(s))
            for shape, mult in kostka_row(comp.shape).items():
                if mult:
                    content[IrrepLabel(shape, tag)] += mult
        order = {shape: i for i, shape in enumerate(partitions(n_particles))}
        parity_rank = {"none": 0, "+": 1, "-": 2}
        sorted_content = tuple(
            sorted(content.items(), key=lambda kv: (order[kv[0].shape], parity_rank[kv[0].parity]))
        )
        if len(comps) == 1:
            flag = "minimal"
        elif s.kind == "harmonic":
            flag = "emergent_harmonic"
        else:
            flag = "accidental"
        levels.append(
            EnergyLevel(
                energy=energy,
                compositions=comps,
                degeneracy=sum(c.degeneracy() for c in comps),
                irrep_content=sorted_content,
                flag=flag,
            )
        )

    for energy, comp in found:
        if group and abs(energy - group[0][0]) > level_tol * max(1.0, abs(energy)):
            close(group)
            group = []
        group.append((energy, comp))
    if group:
        close(group)
    return levels


# ---------------------------------------------------------------------------
# degeneracy families
# ---------------------------------------------------------------------------


def harmonic_shell_degeneracy(n_particles: int, excitation: int) -> int:
    """Product-basis states of N oscillators at total excitation X."""
    if n_particles < 1 or excitation < 0:
        raise ValueError("need N >= 1 and X >= 0")
    return math.comb(excitation + n_particles - 1, n_particles - 1)


def orthogonal_irrep_dimension(space_dim: int, level: int) -> int:
    """Dimension of the level-lambda symmetric traceless tensor family of the
    rotation group in ``space_dim`` dimensions (2lambda+1 in three dimensions)."""
    if space_dim < 2:
        raise ValueError("rotation family needs space dimension >= 2")
    if level < 0:
        raise ValueError("family level must be >= 0")
    if level == 0:
        return 1
    if space_dim == 2:
        return 2
    num = (space_dim + 2 * level - 2) * math.factorial(space_dim + level - 3)
    return num // (math.factorial(level) * math.factorial(space_dim - 2))


# ---------------------------------------------------------------------------
# symmetry-group catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogRow:
    """Irrep dimensions of one symmetry group of the trapped-particle problem.

    ``dims`` pairs each dimension with the count of inequivalent irrep
    families of that dimension; infinite towers are described by ``family``
    (a formula reference) together with its first values.
    """

    role: str  # configuration | kinematic
    interacting: bool
    structure: str
    dims: tuple[tuple[int, int], ...] | None = None
    family: str | None = None
    family_values: tuple[int, ...] | None = None


@dataclass(frozen=True)
class Catalog:
    n_particles: int
    trap_kind: str
    rows: tuple[CatalogRow, ...]

    def row(self, role: str, interacting: bool) -> CatalogRow:
        for r in self.rows:
            if r.role == role and r.interacting == interacting:
                return r
        raise KeyError((role, interacting))


def _dim_multiset(values: Iterable[int]) -> tuple[tuple[int, int], ...]:
    counts = Counter(values)
    return tuple(sorted(counts.items()))


def _scaled(values: Iterable[int], factor: int) -> tuple[tuple[int, int], ...]:
    counts = Counter()
    for v in values:
        counts[v] += factor
    return tuple(sorted(counts.items()))


@cache
def _module_dimension(shape: Shape) -> int:
    n = sum(shape)
    count = math.factorial(n)
    for part in shape:
        count //= math.factorial(part)
    return count


def parity_class_count(shape: Shape) -> int:
    """Inequivalent parity decorations of an occupancy shape: one factor
    c+1 per group of c levels sharing the same occupancy multiplicity."""
    mult_of_multiplicity = Counter(shape)
    out = 1
    for _, c in mult_of_multiplicity.items():
        out *= c + 1
    return out


def _hyperoctahedral_dims(n: int) -> list[int]:
    dims = []
    for a in range(n + 1):
        for lam in partitions(a):
            for mu in partitions(n - a):
                dims.append(math.comb(n, a) * irrep_dimension(lam) * irrep_dimension(mu))
    return dims


FAMILY_PREVIEW = 8


def minimal_group_catalog(n_particles: int, kind: str) -> Catalog:
    """Symmetry groups and irrep dimension tallies for N = 2..4 particles in
    an asymmetric, symmetric, or harmonic trap, with and without two-body
    interactions."""
    if n_particles not in (2, 3, 4):
        raise ValueError(f"catalog covers 2 <= N <= 4, got {n_particles}")
    if kind not in ("asymmetric", "symmetric", "harmonic"):
        raise ValueError(f"unknown trap kind {kind!r}")
    n = n_particles
    sn_dims = [irrep_dimension(s) for s in partitions(n)]
    module_dims = [_module_dimension(s) for s in partitions(n)]

    if kind == "asymmetric":
        conf0 = CatalogRow("configuration", False, f"S{n}", dims=_dim_multiset(sn_dims))
        kin0 = CatalogRow("kinematic", False, f"S{n} ⋉ T_t^{n}", dims=_dim_multiset(module_dims))
        conf_factor = 1
        conf_s = f"S{n}"
        kin_s = f"S{n} × T_t"
    elif kind == "symmetric":
        conf0 = CatalogRow(
            "configuration", False, f"S{n} ⋉ O(1)^{n}", dims=_dim_multiset(_hyperoctahedral_dims(n))
        )
        kin_counts = Counter()
        for shape in partitions(n):
            kin_counts[_module_dimension(shape)] += parity_class_count(shape)
        kin0 = CatalogRow(
            "kinematic", False, f"S{n} ⋉ (O(1) × T_t)^{n}", dims=tuple(sorted(kin_counts.items()))
        )
        conf_factor = 2
        conf_s = f"S{n} × O(1)"
        kin_s = f"S{n} × O(1) × T_t"
    else:  # harmonic
        conf0 = CatalogRow(
            "configuration",
            False,
            f"O({n})",
            family=f"orthogonal_irrep_dimension({n}, lam)",
            family_values=tuple(orthogonal_irrep_dimension(n, lam) for lam in range(FAMILY_PREVIEW)),
        )
        kin0 = CatalogRow(
            "kinematic",
            False,
            f"U({n})",
            family=f"harmonic_shell_degeneracy({n}, X)",
            family_values=tuple(harmonic_shell_degeneracy(n, x) for x in range(FAMILY_PREVIEW)),
        )
        if n == 2:
            conf_factor = 2
            conf_s = "S2 × O(1)"
            kin_s = "S2 × U(1) × T_t"
        else:
            conf_factor = 4
            conf_s = f"S{n} × O(1)^2"
            kin_s = f"S{n} × O(1) × U(1) × T_t"

    conf1 = CatalogRow("configuration", True, conf_s, dims=_scaled(sn_dims, conf_factor))
    kin1 = CatalogRow("kinematic", True, kin_s, dims=_scaled(sn_dims, conf_factor))
    return Catalog(n, kind, (conf0, kin0, conf1, kin1))
