"""Two-body interactions and symmetry-reduced spectral computations.

Matrix elements are computed between real trap orbitals, cached under a
canonical key exploiting their full symmetry: a contact interaction is
invariant under all 24 label rearrangements, a general pair kernel under
the eight that preserve the {bra,ket} pairing at each coordinate.

The many-body machinery works in occupancy modules: the basis sequences of
a composition carry a permutation action, and sandwiching the interaction
between multiplicity-space bases built from a fixed reference tableau row
yields blocks that are independent of the row choice.  That independence
is verified internally on every call.  Labels for the multiplicity states
come from symbol-exchange class sums: compositions of distinct levels get
genuine tableau labels, others fall back to ordinal labels with their
symbol-exchange eigenvalue patterns attached.
"""

from __future__ import annotations

import math
import warnings
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cache
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import quadrature
from .spectra import (
    Composition,
    EnergyLevel,
    IrrepLabel,
    SingleParticleSpectrum,
    enumerate_levels,
)
from .spinstats import physical_state_count
from .symgroup import (
    Permutation,
    Shape,
    Tableau,
    all_permutations,
    fix_phase,
    irrep_dimension,
    irrep_matrices,
    irrep_matrix,
    kostka_row,
    partitions,
    simultaneous_eigenbasis,
    standard_tableaux,
    tableau_from_contents,
)

SQRT2 = math.sqrt(2.0)


class QuadratureError(RuntimeError):
    """A two-body integral failed to converge at the requested order."""

    def __init__(self, key, estimate: float, tol: float):
        self.key = key
        self.estimate = estimate
        super().__init__(
            f"two-body integral {key} has error estimate {estimate:.3e} above {tol:.3e}"
        )


class EmptySectorError(ValueError):
    """The requested symmetry sector holds no states in the truncation."""


# ---------------------------------------------------------------------------
# two-body tables
# ---------------------------------------------------------------------------


class TwoBodyTable:
    """Cached two-body matrix elements ⟨ab|V|cd⟩ for a trap's orbitals.

    ``kind`` is ``contact`` (strength times a delta function) or ``generic``
    (an even pair kernel evaluated at the interparticle distance).  The
    cache is filled on demand; concurrent readers are safe once a key is
    present, and a single writer per key is assumed while filling.
    """

    def __init__(
        self,
        kind: str,
        *,
        strength: float = 1.0,
        kernel: Callable[[np.ndarray], np.ndarray] | None = None,
        order: int = 80,
        error_tol: float = 1e-9,
    ):
        if kind not in ("contact", "generic"):
            raise ValueError(f"unknown interaction kind {kind!r}")
        if kind == "generic" and kernel is None:
            raise ValueError("generic interaction needs a kernel")
        self.kind = kind
        self.strength = float(strength)
        self.kernel = kernel
        self.order = int(order)
        self.error_tol = float(error_tol)
        self._cache: dict[tuple, float] = {}
        self._traps: dict[int, SingleParticleSpectrum] = {}

    @classmethod
    def contact(
        cls, strength: float = 1.0, *, order: int = 80, error_tol: float = 1e-9
    ) -> "TwoBodyTable":
        return cls("contact", strength=strength, order=order, error_tol=error_tol)

    @classmethod
    def from_kernel(
        cls,
        kernel: Callable[[np.ndarray], np.ndarray],
        *,
        strength: float = 1.0,
        order: int = 80,
        error_tol: float = 1e-9,
    ) -> "TwoBodyTable":
        return cls("generic", strength=strength, kernel=kernel, order=order, error_tol=error_tol)

    @classmethod
    def from_kernel_file(
        cls,
        path: str | Path,
        *,
        strength: float = 1.0,
        order: int = 80,
        error_tol: float = 1e-9,
    ) -> "TwoBodyTable":
        """Kernel sampled as ``r value`` lines with strictly increasing r;
        linear interpolation in between, first value below the range, zero
        beyond it.  ``#`` starts a comment."""
        rs: list[float] = []
        vs: list[float] = []
        for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            fields = line.split()
            if len(fields) != 2:
                raise ValueError(f"{path}:{lineno}: expected 'r value', got {raw!r}")
            try:
                r, v = float(fields[0]), float(fields[1])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
            if rs and r <= rs[-1]:
                raise ValueError(f"{path}:{lineno}: radii must be strictly increasing")
            rs.append(r)
            vs.append(v)
        if not rs:
            raise ValueError(f"{path}: no kernel samples found")
        r_arr, v_arr = np.array(rs), np.array(vs)

        def kernel(r: np.ndarray) -> np.ndarray:
            return np.interp(np.abs(r), r_arr, v_arr, left=v_arr[0], right=0.0)

        return cls("generic", strength=strength, kernel=kernel, order=order, error_tol=error_tol)

    # -- keys --------------------------------------------------------------

    def canonical_key(self, a: int, b: int, c: int, d: int) -> tuple:
        """Orbit representative of the element's label symmetry."""
        if self.kind == "contact":
            return tuple(sorted((a, b, c, d)))
        first = tuple(sorted((a, c)))
        second = tuple(sorted((b, d)))
        return tuple(sorted((first, second)))

    # -- evaluation --------------------------------------------------------

    def element(self, s: SingleParticleSpectrum, a: int, b: int, c: int, d: int) -> float:
        """⟨ab|V|cd⟩ with orbital a and c at the first coordinate."""
        if not s.has_wavefunctions:
            raise ValueError("two-body elements need a trap with orbital evaluators")
        key = (id(s),) + (self.canonical_key(a, b, c, d),)
        self._traps.setdefault(id(s), s)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        coarse = self._integrate(s, a, b, c, d, self.order)
        refine = self.order + max(8, self.order // 5)
        fine = self._integrate(s, a, b, c, d, refine)
        estimate = abs(fine - coarse)
        if not math.isfinite(estimate) or estimate > self.error_tol * max(1.0, abs(fine)):
            raise QuadratureError(key[1], estimate, self.error_tol)
        self._cache[key] = fine
        return fine

    def cached_elements(self) -> int:
        return len(self._cache)

    def _integrate(self, s: SingleParticleSpectrum, a, b, c, d, order: int) -> float:
        if self.kind == "contact":
            if s.kind == "harmonic":
                x, w = quadrature.cached_gauss_hermite(order)
                pts = x / SQRT2
                h = quadrature.hermite_parts(max(a, b, c, d), pts)
                return self.strength / SQRT2 * float(np.sum(w * h[a] * h[b] * h[c] * h[d]))
            x, w = self._well_rule(s, order)
            prod = (
                s.wavefunction(a, x) * s.wavefunction(b, x) * s.wavefunction(c, x) * s.wavefunction(d, x)
            )
            return self.strength * float(np.sum(w * prod))
        # generic pair kernel on two coordinates
        if s.kind == "harmonic":
            x, w = quadrature.cached_gauss_hermite(order)
            h = quadrature.hermite_parts(max(a, b, c, d), x)
            left = h[a] * h[c]
            right = h[b] * h[d]
        else:
            x, w = self._well_rule(s, order)
            left = s.wavefunction(a, x) * s.wavefunction(c, x)
            right = s.wavefunction(b, x) * s.wavefunction(d, x)
        kernel_grid = self.kernel(np.abs(x[:, None] - x[None, :]))
        return self.strength * float((w * left) @ kernel_grid @ (w * right))

    @staticmethod
    def _well_rule(s: SingleParticleSpectrum, order: int) -> tuple[np.ndarray, np.ndarray]:
        lo, hi = s.domain
        panels = max(6, order // 10)
        return quadrature.gauss_legendre_panels(lo, hi, panels, 12)


def two_body_element(
    table: TwoBodyTable, s: SingleParticleSpectrum, a: int, b: int, c: int, d: int
) -> float:
    return table.element(s, a, b, c, d)


# ---------------------------------------------------------------------------
# occupancy modules and multiplicity bases
# ---------------------------------------------------------------------------


def _apply_to_sequence(p: Permutation, seq: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(seq[p(i) - 1] for i in range(1, len(seq) + 1))


@cache
def _irrep_elements(shape: Shape) -> dict[Permutation, np.ndarray]:
    n = sum(shape)
    return {p: irrep_matrix(shape, p) for p in all_permutations(n)}


@dataclass(frozen=True)
class MultiplicityBasis:
    """Orthonormal basis of the multiplicity space of one permutation irrep
    inside an occupancy module, taken at the reference tableau row."""

    shape: Shape
    labels: tuple[str, ...]
    weyl: tuple[Tableau | None, ...]
    patterns: tuple[tuple[float, ...], ...]
    vectors: np.ndarray  # module dimension x multiplicity

    @property
    def multiplicity(self) -> int:
        return self.vectors.shape[1]


def _row_transfer(shape: Shape, row: int, ref: int, seqs, index) -> np.ndarray:
    """Matrix (d/N!) sum_p D_{row,ref}(p) U(p) on the module."""
    n = len(seqs[0])
    dim = irrep_dimension(shape)
    scale = dim / math.factorial(n)
    mats = _irrep_elements(shape)
    out = np.zeros((len(seqs), len(seqs)))
    for p, dmat in mats.items():
        coeff = scale * dmat[row, ref]
        if abs(coeff) < 1e-15:
            continue
        for col, seq in enumerate(seqs):
            out[index[_apply_to_sequence(p, seq)], col] += coeff
    return out


def _symbol_chain_operators(c: Composition, seqs, index) -> list[np.ndarray]:
    """Class sums of symbol exchanges, one chain per group of equally
    occupied levels, groups in decreasing occupancy order."""
    by_mult: dict[int, list[int]] = defaultdict(list)
    for level, mult in c.occupations:
        by_mult[mult].append(level)
    ops = []
    for mult in sorted(by_mult, reverse=True):
        symbols = by_mult[mult]
        for k in range(2, len(symbols) + 1):
            mat = np.zeros((len(seqs), len(seqs)))
            for i in range(k - 1):
                for j in range(i + 1, k):
                    x, y = symbols[i], symbols[j]
                    swap = {x: y, y: x}
                    for col, seq in enumerate(seqs):
                        image = tuple(swap.get(v, v) for v in seq)
                        mat[index[image], col] += 1.0
            ops.append((mat + mat.T) / 2.0)
    return ops


def _weyl_label(tab: Tableau, levels: Sequence[int]) -> str:
    rows = tuple(tuple(levels[v - 1] for v in row) for row in tab.rows)
    return "|".join(" ".join(str(e) for e in row) for row in rows)


@cache
def multiplicity_bases(c: Composition) -> dict[Shape, MultiplicityBasis]:
    """Symmetry-adapted multiplicity bases for every permutation irrep
    occurring in the occupancy module of ``c``.

    Basis order and phases are deterministic: states sort by decreasing
    symbol-exchange eigenvalue pattern and each vector's first significant
    component is positive.  For distinct-level compositions the full symbol
    chain resolves every state and the labels are tableau fillings in the
    level indices.
    """
    n = c.n_particles
    if n > 7:
        raise ValueError("occupancy modules supported up to 7 particles")
    seqs = _module_sequences(c)
    index = {seq: i for i, seq in enumerate(seqs)}
    symbol_slots = [lvl for lvl, _ in c.occupations]
    distinct = c.shape == (1,) * n
    chain_ops = _symbol_chain_operators(c, seqs, index)

    out: dict[Shape, MultiplicityBasis] = {}
    for shape, mult in kostka_row(c.shape).items():
        if mult == 0:
            continue
        projector = _row_transfer(shape, 0, 0, seqs, index)
        vals, vecs = np.linalg.eigh((projector + projector.T) / 2.0)
        keep = vals > 0.5
        if int(np.sum(keep)) != mult:
            raise RuntimeError(
                f"projector rank {int(np.sum(keep))} does not match multiplicity {mult}"
            )
        basis = vecs[:, keep]
        if chain_ops:
            blocks = simultaneous_eigenbasis(chain_ops, basis=basis, tol=1e-9)
        else:
            blocks = [((), basis)]
        # symmetric patterns first, deterministic within ties
        blocks.sort(key=lambda item: tuple(round(v, 6) for v in item[0]), reverse=True)
        columns: list[np.ndarray] = []
        patterns: list[tuple[float, ...]] = []
        for pattern, block in blocks:
            for j in range(block.shape[1]):
                columns.append(fix_phase(block[:, j].copy()))
                patterns.append(pattern)
        labels: list[str] = []
        weyl: list[Tableau | None] = []
        for i, pattern in enumerate(patterns):
            tab = None
            if distinct and len(pattern) == n - 1:
                try:
                    tab = tableau_from_contents([round(p - q) for p, q in zip(pattern, (0.0,) + tuple(pattern))])
                except ValueError:
                    tab = None
            if tab is not None and tab.shape == shape:
                labels.append(_weyl_label(tab, symbol_slots))
            else:
                tab = None
                labels.append(f"W{i + 1}")
            weyl.append(tab)
        vectors = np.column_stack(columns)
        vectors.setflags(write=False)
        out[shape] = MultiplicityBasis(shape, tuple(labels), tuple(weyl), tuple(patterns), vectors)
    return out


@cache
def _module_sequences(c: Composition) -> tuple[tuple[int, ...], ...]:
    import itertools

    return tuple(sorted(set(itertools.permutations(c.sorted_sequence()))))


def double_tableau_columns(
    c: Composition,
) -> tuple[list[tuple[Shape, str, int]], np.ndarray]:
    """Complete orthonormal change of basis from the sequence basis of a
    composition's occupancy module to the doubly labeled symmetry basis.

    Each column is labeled ``(shape, copy label, tableau row)``; rows beyond
    the reference one come from the transfer isometry, so the whole matrix is
    square and orthogonal.  In this basis any permutation-invariant two-body
    operator couples only equal shapes at equal tableau rows.
    """
    seqs = _module_sequences(c)
    index = {seq: i for i, seq in enumerate(seqs)}
    labels: list[tuple[Shape, str, int]] = []
    cols: list[np.ndarray] = []
    for shape, basis in multiplicity_bases(c).items():
        for row in range(irrep_dimension(shape)):
            moved = (
                basis.vectors
                if row == 0
                else _row_transfer(shape, row, 0, seqs, index) @ basis.vectors
            )
            for w in range(basis.multiplicity):
                labels.append((shape, basis.labels[w], row))
                cols.append(moved[:, w])
    return labels, np.column_stack(cols)


# ---------------------------------------------------------------------------
# interaction matrices on modules
# ---------------------------------------------------------------------------


def interaction_matrix(
    seqs: Sequence[tuple[int, ...]],
    table: TwoBodyTable,
    s: SingleParticleSpectrum,
) -> np.ndarray:
    """Pairwise-interaction matrix over basis sequences (any mix of
    compositions); entry (m, m') is ⟨seq_m|sum_{i<j} V_ij|seq_m'⟩."""
    n = len(seqs[0])
    size = len(seqs)
    out = np.zeros((size, size))
    for i in range(n - 1):
        for j in range(i + 1, n):
            groups: dict[tuple[int, ...], list[int]] = defaultdict(list)
            for m, seq in enumerate(seqs):
                rest = seq[:i] + seq[i + 1 : j] + seq[j + 1 :]
                groups[rest].append(m)
            for members in groups.values():
                for m in members:
                    am, bm = seqs[m][i], seqs[m][j]
                    for mp in members:
                        ap, bp = seqs[mp][i], seqs[mp][j]
                        out[m, mp] += table.element(s, am, bm, ap, bp)
    return out


@dataclass(frozen=True)
class ReducedBlock:
    """Interaction block of one permutation irrep inside one composition,
    in the multiplicity basis of :func:`multiplicity_bases`."""

    shape: Shape
    composition: Composition
    matrix: np.ndarray
    labels: tuple[str, ...]
    weyl: tuple[Tableau | None, ...]
    check_residual: float

    @property
    def multiplicity(self) -> int:
        return self.matrix.shape[0]


def reduced_blocks(
    c: Composition,
    table: TwoBodyTable,
    s: SingleParticleSpectrum,
    *,
    check_tol: float = 1e-10,
) -> dict[Shape, ReducedBlock]:
    """First-order interaction blocks of every irrep in the composition.

    Every call recomputes each block from a second tableau row as well and
    verifies the two agree to ``check_tol``; a contact interaction leaves
    the fully antisymmetric states untouched, so that block is exactly zero.
    """
    bases = multiplicity_bases(c)
    seqs = _module_sequences(c)
    index = {seq: i for i, seq in enumerate(seqs)}
    vmat = interaction_matrix(seqs, table, s)
    out: dict[Shape, ReducedBlock] = {}
    for shape, basis in bases.items():
        antisym = shape == (1,) * c.n_particles
        if antisym and table.kind == "contact":
            block = np.zeros((basis.multiplicity, basis.multiplicity))
            residual = 0.0
        else:
            block = basis.vectors.T @ vmat @ basis.vectors
            block = (block + block.T) / 2.0
            residual = 0.0
            if irrep_dimension(shape) > 1:
                transfer = _row_transfer(shape, 1, 0, seqs, index)
                moved = transfer @ basis.vectors
                gram = moved.T @ moved
                if not np.allclose(gram, np.eye(basis.multiplicity), atol=1e-8):
                    raise RuntimeError("row transfer failed to stay orthonormal")
                other = moved.T @ vmat @ moved
                other = (other + other.T) / 2.0
                residual = float(np.max(np.abs(other - block)))
                if residual > check_tol * max(1.0, float(np.max(np.abs(block)))):
                    raise RuntimeError(
                        f"reduced block for {shape} depends on the tableau row "
                        f"(residual {residual:.3e})"
                    )
        block.setflags(write=False)
        out[shape] = ReducedBlock(shape, c, block, basis.labels, basis.weyl, residual)
    return out


# ---------------------------------------------------------------------------
# first-order splittings
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SplittingEntry:
    label: IrrepLabel
    shift: float
    multiplicity: int
    vector: np.ndarray | None = None
    coincident: bool = False


@dataclass(frozen=True)
class SplittingResult:
    base_energy: float
    entries: tuple[SplittingEntry, ...]

    def shifts(self, shape: Shape | None = None) -> list[float]:
        return [e.shift for e in self.entries if shape is None or e.label.shape == shape]


def _shape_rank(n: int) -> dict[Shape, int]:
    return {shape: i for i, shape in enumerate(partitions(n))}


def first_order_splitting(
    c: Composition, table: TwoBodyTable, s: SingleParticleSpectrum
) -> SplittingResult:
    """Degenerate first-order shifts of one composition's level, resolved by
    permutation symmetry.  Each entry's multiplicity is the spatial
    degeneracy its irrep contributes."""
    blocks = reduced_blocks(c, table, s)
    tag = _parity_tag(c.parity(s))
    rank = _shape_rank(c.n_particles)
    entries: list[SplittingEntry] = []
    for shape, block in blocks.items():
        vals, vecs = np.linalg.eigh(block.matrix)
        for i, val in enumerate(vals):
            entries.append(
                SplittingEntry(
                    IrrepLabel(shape, tag),
                    float(val),
                    irrep_dimension(shape),
                    fix_phase(vecs[:, i].copy()),
                )
            )
    entries.sort(key=lambda e: (e.shift, rank[e.label.shape]))
    return SplittingResult(c.energy(s), tuple(entries))


def _parity_tag(sign: int | None) -> str:
    if sign is None:
        return "none"
    return "+" if sign > 0 else "-"


def first_order_level_splitting(
    level: EnergyLevel, table: TwoBodyTable, s: SingleParticleSpectrum
) -> SplittingResult:
    """First-order shifts of a full (possibly multi-composition) level.

    Compositions sharing the level mix at first order whenever they share a
    permutation irrep and parity, so the degenerate block spans all of them;
    for a single-composition level this reduces to
    :func:`first_order_splitting`."""
    comps = level.compositions
    union: list[tuple[int, ...]] = []
    offsets: dict[Composition, int] = {}
    for c in comps:
        offsets[c] = len(union)
        union.extend(_module_sequences(c))
    vmat = interaction_matrix(union, table, s)
    n = comps[0].n_particles
    rank = _shape_rank(n)
    entries: list[SplittingEntry] = []
    by_parity: dict[str, list[Composition]] = defaultdict(list)
    for c in comps:
        by_parity[_parity_tag(c.parity(s))].append(c)
    for tag, group in sorted(by_parity.items()):
        for shape in partitions(n):
            antisym = shape == (1,) * n
            pieces = []
            for c in group:
                basis = multiplicity_bases(c).get(shape)
                if basis is None:
                    continue
                lift = np.zeros((len(union), basis.multiplicity))
                lift[offsets[c] : offsets[c] + basis.vectors.shape[0]] = basis.vectors
                pieces.append(lift)
            if not pieces:
                continue
            wide = np.hstack(pieces)
            if antisym and table.kind == "contact":
                block = np.zeros((wide.shape[1], wide.shape[1]))
            else:
                block = wide.T @ vmat @ wide
                block = (block + block.T) / 2.0
            vals, vecs = np.linalg.eigh(block)
            for i, val in enumerate(vals):
                entries.append(
                    SplittingEntry(
                        IrrepLabel(shape, tag),
                        float(val),
                        irrep_dimension(shape),
                        fix_phase(vecs[:, i].copy()),
                    )
                )
    entries.sort(key=lambda e: (e.shift, rank[e.label.shape]))
    return SplittingResult(level.energy, tuple(entries))


# ---------------------------------------------------------------------------
# exact diagonalization
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Truncation:
    kind: str  # energy | excitation
    value: float

    @classmethod
    def energy(cls, e_max: float) -> "Truncation":
        return cls("energy", float(e_max))

    @classmethod
    def excitation(cls, x_max: int) -> "Truncation":
        if x_max < 0:
            raise ValueError("excitation cutoff must be >= 0")
        return cls("excitation", int(x_max))


@dataclass(frozen=True)
class TowerSpectrum:
    """Eigenvalues of one irrep tower; each appears in the physical spectrum
    with the spatial degeneracy of the irrep (times the spin multiplicity,
    when a statistics sector was requested)."""

    shape: Shape
    eigenvalues: tuple[float, ...]
    dimension: int
    spin_multiplicity: int | None = None


@dataclass(frozen=True)
class ExactDiagResult:
    truncation_energy: float
    naive_dimension: int
    reduced_dimension: int
    towers: tuple[TowerSpectrum, ...]

    def eigenvalues(self) -> tuple[float, ...]:
        out: list[float] = []
        for t in self.towers:
            out.extend(t.eigenvalues)
        return tuple(sorted(out))

    @property
    def dimension_saved(self) -> int:
        return self.naive_dimension - self.reduced_dimension


def _resolve_truncation(t, s: SingleParticleSpectrum, n_particles: int) -> float:
    if isinstance(t, (int, float)) and not isinstance(t, bool):
        return float(t)
    if isinstance(t, Truncation):
        if t.kind == "energy":
            return float(t.value)
        if s.kind != "harmonic":
            raise ValueError("excitation truncation only applies to the harmonic trap")
        return float(t.value) + n_particles * 0.5
    raise TypeError(f"truncation must be a number or Truncation, got {t!r}")


def exact_diagonalize(
    s: SingleParticleSpectrum,
    n_particles: int,
    table: TwoBodyTable,
    truncation: Truncation | float,
    sector: Shape | tuple[str, int] | None = None,
    g: float | None = None,
) -> ExactDiagResult:
    """Eigenvalues of the interacting problem inside an energy truncation,
    one symmetry-reduced tower per permutation irrep.

    ``sector`` selects either a single spatial irrep (a partition), a
    ``(statistics, components)`` pair restricting to physically allowed
    irreps, or everything.  ``g`` rescales the interaction strength away
    from the table's own."""
    e_max = _resolve_truncation(truncation, s, n_particles)
    levels = enumerate_levels(s, n_particles, e_max)
    comps = [c for lv in levels for c in lv.compositions]

    spin_mult: dict[Shape, int] = {}
    if sector is None:
        shapes = list(partitions(n_particles))
    elif isinstance(sector, tuple) and len(sector) == 2 and isinstance(sector[0], str):
        statistics, components = sector
        for shape in partitions(n_particles):
            count = physical_state_count(shape, statistics, int(components))
            if count:
                spin_mult[shape] = count
        shapes = list(spin_mult)
        if not shapes:
            raise EmptySectorError(
                f"no {statistics} states with {components} components for N={n_particles}"
            )
    else:
        shape = tuple(int(p) for p in sector)  # type: ignore[arg-type]
        if shape not in partitions(n_particles):
            raise ValueError(f"{shape} is not a partition of {n_particles}")
        shapes = [shape]

    union: list[tuple[int, ...]] = []
    offsets: dict[Composition, int] = {}
    energies: dict[Composition, float] = {}
    for c in comps:
        offsets[c] = len(union)
        union.extend(_module_sequences(c))
        energies[c] = c.energy(s)
    factor = 1.0 if g is None else g / table.strength

    vmat: np.ndarray | None = None
    towers: list[TowerSpectrum] = []
    for shape in shapes:
        columns: list[np.ndarray] = []
        diag: list[float] = []
        for c in comps:
            basis = multiplicity_bases(c).get(shape)
            if basis is None:
                continue
            lift = np.zeros((len(union), basis.multiplicity))
            lift[offsets[c] : offsets[c] + basis.vectors.shape[0]] = basis.vectors
            columns.append(lift)
            diag.extend([energies[c]] * basis.multiplicity)
        if not columns:
            if sector is not None and not isinstance(sector, tuple):
                raise EmptySectorError(
                    f"irrep {shape} holds no states below energy {e_max}"
                )
            continue
        wide = np.hstack(columns)
        if shape == (1,) * n_particles and table.kind == "contact":
            ham = np.diag(diag)
        else:
            if vmat is None:
                vmat = interaction_matrix(union, table, s)
            ham = np.diag(diag) + factor * (wide.T @ vmat @ wide)
            ham = (ham + ham.T) / 2.0
        vals = np.linalg.eigvalsh(ham)
        towers.append(
            TowerSpectrum(
                shape,
                tuple(float(v) for v in vals),
                len(diag),
                spin_mult.get(shape),
            )
        )
    if not towers:
        raise EmptySectorError(f"no states below energy {e_max} in the requested sector")
    return ExactDiagResult(
        truncation_energy=e_max,
        naive_dimension=len(union),
        reduced_dimension=sum(t.dimension for t in towers),
        towers=tuple(towers),
    )
