"""Hard-core-limit spectra through ordering sectors and the snippet basis.

At infinite contact repulsion the wavefunction vanishes wherever two
coordinates meet, so configuration space falls apart into N! sectors, one
per ordering of the particles along the line.  Restricting the free
fermionic state of a given composition to each sector yields an orthonormal
degenerate basis; every such level is exactly N!-fold degenerate.

Two commuting permutation groups act on the sector labels: particle
relabelings act on the right (inverted), orderings act on the left.  The
leading finite-coupling correction is a hopping operator between adjacent
orderings; its matrix in the sector basis is built from ordering
transpositions weighted by tunneling amplitudes, which in turn come from
facet integrals of the squared normal derivative of the fermionic state.
Only amplitude ratios carry physics — the overall scale, including the
convention for integrating the contact delta across a sector boundary, drops
out of every observable ratio.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cache

import numpy as np

from . import quadrature
from .interactions import SplittingEntry, SplittingResult
from .spectra import Composition, IrrepLabel, SingleParticleSpectrum
from .symgroup import (
    Permutation,
    Shape,
    all_permutations,
    partitions,
    simultaneous_eigenbasis,
    tableau_from_contents,
    transposition_class_sum,
)

SQRT2 = math.sqrt(2.0)


@dataclass(frozen=True, order=True)
class Sector:
    """One ordering of the particles: q_{s1} < q_{s2} < ... < q_{sN}."""

    order: Permutation

    @property
    def n(self) -> int:
        return self.order.n

    def __str__(self) -> str:
        return "{" + "".join(str(i) for i in self.order.images) + "}"


@cache
def sectors(n: int) -> tuple[Sector, ...]:
    """All N! ordering sectors, lexicographic in one-line notation."""
    return tuple(Sector(p) for p in all_permutations(n))


def particle_action(p: Permutation, s: Sector) -> Sector:
    """Relabeling the particles by ``p`` carries sector ``s`` to ``s p^-1``."""
    return Sector(s.order * p.inverse())


def ordering_action(o: Permutation, s: Sector) -> Sector:
    """Permuting the slots of the ordering carries ``s`` to ``o s``."""
    return Sector(o * s.order)


def reversal(n: int) -> Permutation:
    """The ordering permutation that mirrors the line, slot i -> N+1-i."""
    return Permutation(tuple(range(n, 0, -1)))


@dataclass(frozen=True)
class SnippetLevel:
    """One N!-fold degenerate level of the hard-core limit.

    ``composition`` has all occupations distinct (the free-fermion filling
    behind the level); ``parity`` is the product of orbital parities, or
    ``None`` when the trap has no reflection symmetry."""

    composition: Composition
    energy: float
    sectors: tuple[Sector, ...]
    parity: int | None = None

    def __post_init__(self):
        if self.composition.shape != (1,) * self.composition.n_particles:
            raise ValueError("snippet levels require all occupations distinct")

    @property
    def n_particles(self) -> int:
        return self.composition.n_particles

    @property
    def degeneracy(self) -> int:
        return math.factorial(self.n_particles)


def unitary_spectrum(
    s: SingleParticleSpectrum, n_particles: int, count: int
) -> list[SnippetLevel]:
    """The lowest ``count`` hard-core levels: one per distinct-occupation
    composition, ordered by energy (ties broken by occupation list)."""
    if count < 1:
        raise ValueError("count must be >= 1")
    if n_particles < 1:
        raise ValueError("need at least one particle")
    n_levels = n_particles + count
    while True:
        if s.kind == "table":
            n_levels = len(s._energies)  # finite ladder: use all of it
            if n_levels < n_particles:
                raise ValueError(
                    f"table trap has only {n_levels} levels for {n_particles} particles"
                )
        found: list[tuple[float, tuple[int, ...]]] = []

        def extend(prefix: list[int], start: int, energy: float):
            if len(prefix) == n_particles:
                found.append((energy, tuple(prefix)))
                return
            for lvl in range(start, n_levels - (n_particles - len(prefix) - 1)):
                extend(prefix + [lvl], lvl + 1, energy + s.energy(lvl))

        extend([], 0, 0.0)
        found.sort()
        if s.kind == "table" or len(found) >= count:
            # with an infinite ladder, accept only levels certain to beat
            # any composition that uses states beyond the enumerated window
            if s.kind != "table":
                floor = s.energy(n_levels) + sum(
                    s.energy(k) for k in range(n_particles - 1)
                )
                safe = [f for f in found if f[0] < floor]
                if len(safe) < count:
                    n_levels *= 2
                    continue
                found = safe
            if len(found) < count:
                raise ValueError(
                    f"trap supports only {len(found)} distinct-occupation levels"
                )
            break

    secs = sectors(n_particles)
    out = []
    for energy, seq in found[:count]:
        c = Composition.from_sequence(seq)
        out.append(SnippetLevel(c, energy, secs, c.parity(s)))
    return out


def snippet_parity(level: SnippetLevel, s: Sector) -> tuple[int, Sector]:
    """Mirror image of a sector state: the level's parity sign together with
    the reversed ordering."""
    if level.parity is None:
        raise ValueError("parity is unavailable for an asymmetric trap")
    return level.parity, ordering_action(reversal(level.n_particles), s)


@dataclass(frozen=True)
class TunnelingAmplitudes:
    """Couplings a_1..a_{N-1} between adjacent ordering sectors; a_k joins
    the orderings differing by the exchange of slots (k, k+1)."""

    values: tuple[float, ...]
    symmetric: bool = False
    error_estimate: float | None = None

    def __post_init__(self):
        if any(v < 0 for v in self.values):
            raise ValueError("tunneling amplitudes must be non-negative")
        if self.symmetric:
            for k, v in enumerate(self.values):
                partner = self.values[len(self.values) - 1 - k]
                if not math.isclose(v, partner, rel_tol=1e-12, abs_tol=1e-15):
                    raise ValueError(
                        "symmetric amplitudes require a_k equal to a_{N-k}"
                    )

    @property
    def n_particles(self) -> int:
        return len(self.values) + 1

    @property
    def total(self) -> float:
        return sum(self.values)

    @classmethod
    def symmetric_pair(cls, t: float, u: float) -> "TunnelingAmplitudes":
        """Four-particle amplitudes (t, u, t) of a symmetric trap."""
        return cls((float(t), float(u), float(t)), symmetric=True)


def _ordering_matrix(o: Permutation) -> np.ndarray:
    secs = sectors(o.n)
    index = {s: i for i, s in enumerate(secs)}
    mat = np.zeros((len(secs), len(secs)))
    for col, s in enumerate(secs):
        mat[index[ordering_action(o, s)], col] = 1.0
    return mat


def _particle_matrix(p: Permutation) -> np.ndarray:
    secs = sectors(p.n)
    index = {s: i for i, s in enumerate(secs)}
    mat = np.zeros((len(secs), len(secs)))
    for col, s in enumerate(secs):
        mat[index[particle_action(p, s)], col] = 1.0
    return mat


def tunneling_matrix(n_particles: int, amps: TunnelingAmplitudes) -> np.ndarray:
    """Leading finite-coupling correction in the sector basis:
    −Σ_k a_k P(o_k) − (Σ_k a_k)·I with o_k the adjacent slot exchange."""
    if amps.n_particles != n_particles:
        raise ValueError(
            f"expected {n_particles - 1} amplitudes, got {len(amps.values)}"
        )
    size = math.factorial(n_particles)
    mat = -amps.total * np.eye(size)
    for k, a in enumerate(amps.values, start=1):
        mat -= a * _ordering_matrix(Permutation.transposition(n_particles, k, k + 1))
    return mat


def symmetric_quartet_shifts(t: float, u: float) -> dict[tuple[Shape, str], tuple[tuple[float, int], ...]]:
    """Closed-form four-particle shifts for symmetric amplitudes (t, u, t),
    keyed by (particle irrep, parity); values are (shift, state count)."""
    mixed = math.sqrt(4 * t * t - 2 * t * u + u * u)
    skew = math.sqrt(t * t + u * u)
    return {
        ((4,), "+"): ((-4 * t - 2 * u, 1),),
        ((3, 1), "+"): ((-2 * t - 2 * u, 3),),
        ((2, 2), "+"): ((-2 * t - u - mixed, 2), (-2 * t - u + mixed, 2)),
        ((2, 1, 1), "+"): ((-2 * t, 3),),
        ((1, 1, 1, 1), "+"): ((0.0, 1),),
        ((3, 1), "-"): ((-3 * t - u - skew, 3), (-3 * t - u + skew, 3)),
        ((2, 1, 1), "-"): ((-t - u - skew, 3), (-t - u + skew, 3)),
    }


def _parity_matrix(level: SnippetLevel) -> np.ndarray:
    sign = level.parity if level.parity is not None else 1
    return sign * _ordering_matrix(reversal(level.n_particles))


def near_unitary_splitting(
    level: SnippetLevel,
    amps: TunnelingAmplitudes,
    *,
    cluster_tol: float = 1e-9,
    assign_tol: float = 1e-8,
) -> SplittingResult:
    """First-order level splitting near the hard-core limit.

    Diagonalizes the tunneling matrix and classifies each eigenvalue cluster
    by particle irrep through the chain of transposition class sums, adding
    the mirror operator when both the trap and the amplitudes allow it.
    Shifts are coefficients of one over the coupling; clusters hosting more
    than one (irrep, parity) pair are flagged coincident rather than split.
    """
    n = level.n_particles
    tmat = tunneling_matrix(n, amps)
    vals, vecs = np.linalg.eigh(tmat)

    ops = [
        transposition_class_sum(_particle_matrix, n, k) for k in range(2, n + 1)
    ]
    with_parity = level.parity is not None and (amps.symmetric or n == 2)
    if with_parity:
        ops.append(_parity_matrix(level))

    scale = max(1.0, amps.total)
    rank = {shape: i for i, shape in enumerate(partitions(n))}
    entries: list[SplittingEntry] = []
    start = 0
    for stop in range(1, len(vals) + 1):
        if stop < len(vals) and vals[stop] - vals[stop - 1] <= cluster_tol * scale:
            continue
        cluster = vecs[:, start:stop]
        shift = float(np.mean(vals[start:stop]))
        tally: dict[tuple[Shape, str], int] = {}
        for pattern, block in simultaneous_eigenbasis(
            ops, basis=cluster, tol=assign_tol
        ):
            chain = pattern[: n - 1]
            tag = "none"
            if with_parity:
                tag = "+" if pattern[-1] > 0 else "-"
            deltas = [
                round(a - b) for a, b in zip(chain, (0.0,) + tuple(chain[:-1]))
            ]
            shape = tableau_from_contents(deltas).shape
            tally[(shape, tag)] = tally.get((shape, tag), 0) + block.shape[1]
        coincident = len(tally) > 1
        for (shape, tag), count in sorted(tally.items()):
            entries.append(
                SplittingEntry(
                    IrrepLabel(shape, tag), shift, count, None, coincident
                )
            )
        start = stop
    entries.sort(key=lambda e: (e.shift, rank[e.label.shape], e.label.parity))
    return SplittingResult(level.energy, tuple(entries))


# ---------------------------------------------------------------------------
# tunneling amplitudes from a trap
# ---------------------------------------------------------------------------


def _facet_integral_harmonic(
    levels: tuple[int, ...], k: int, order: int
) -> float:
    """Integral of the squared doubled-column determinant over the ordered
    facet with coordinates k and k+1 fused, for harmonic orbitals."""
    n = len(levels)
    top = max(levels)
    nodes, weights = quadrature.cached_gauss_hermite(order)
    h = quadrature.hermite_parts(top, nodes)
    y = nodes / SQRT2
    hy = quadrature.hermite_parts(top, y)
    hpy = quadrature.hermite_part_derivatives(top, y)
    dcol = hpy - y * hy  # orbital-derivative polynomial parts at the fused point

    axes = n - 1  # free coordinates: x_1..x_{k-1}, y, x_{k+2}..x_N
    y_axis = k - 1
    grids = np.meshgrid(*([np.arange(order)] * axes), indexing="ij")
    idx = np.stack([g.ravel() for g in grids], axis=-1)

    # strict ordering along the line, with the fused coordinate in place
    coords = []
    for a in range(axes):
        vals = y[idx[:, a]] if a == y_axis else nodes[idx[:, a]]
        coords.append(vals)
    mask = np.ones(idx.shape[0], dtype=bool)
    for a in range(axes - 1):
        mask &= coords[a] < coords[a + 1]
    idx = idx[mask]
    if idx.shape[0] == 0:
        return 0.0

    weight = np.ones(idx.shape[0])
    for a in range(axes):
        weight *= weights[idx[:, a]]
    weight /= SQRT2  # jacobian of the fused-coordinate substitution

    mats = np.empty((idx.shape[0], n, n))
    for i, lvl in enumerate(levels):
        col = 0
        for a in range(axes):
            if a == y_axis:
                mats[:, i, col] = dcol[lvl, idx[:, a]]
                mats[:, i, col + 1] = hy[lvl, idx[:, a]]
                col += 2
            else:
                mats[:, i, col] = h[lvl, idx[:, a]]
                col += 1
    dets = np.linalg.det(mats)
    return float(np.sum(weight * dets * dets))


def _facet_integral_well(
    s: SingleParticleSpectrum, levels: tuple[int, ...], k: int, order: int
) -> float:
    n = len(levels)
    lo, hi = s.domain
    nodes, weights = quadrature.gauss_legendre_panels(lo, hi, max(4, order // 12), 12)
    count = nodes.size
    vals = np.stack([s.wavefunction(lvl, nodes) for lvl in levels])
    ders = np.stack([s.wavefunction_derivative(lvl, nodes) for lvl in levels])

    axes = n - 1
    y_axis = k - 1
    grids = np.meshgrid(*([np.arange(count)] * axes), indexing="ij")
    idx = np.stack([g.ravel() for g in grids], axis=-1)
    coords = [nodes[idx[:, a]] for a in range(axes)]
    mask = np.ones(idx.shape[0], dtype=bool)
    for a in range(axes - 1):
        mask &= coords[a] < coords[a + 1]
    idx = idx[mask]
    if idx.shape[0] == 0:
        return 0.0
    weight = np.ones(idx.shape[0])
    for a in range(axes):
        weight *= weights[idx[:, a]]

    mats = np.empty((idx.shape[0], n, n))
    for i in range(n):
        col = 0
        for a in range(axes):
            if a == y_axis:
                mats[:, i, col] = ders[i, idx[:, a]]
                mats[:, i, col + 1] = vals[i, idx[:, a]]
                col += 2
            else:
                mats[:, i, col] = vals[i, idx[:, a]]
                col += 1
    dets = np.linalg.det(mats)
    return float(np.sum(weight * dets * dets))


def _facet_amplitudes(
    s: SingleParticleSpectrum, levels: tuple[int, ...], order: int
) -> np.ndarray:
    n = len(levels)
    out = np.empty(n - 1)
    for k in range(1, n):
        if s.kind == "harmonic":
            out[k - 1] = _facet_integral_harmonic(levels, k, order)
        else:
            out[k - 1] = _facet_integral_well(s, levels, k, order)
    return out


def tunneling_amplitudes_from_trap(
    s: SingleParticleSpectrum,
    level: SnippetLevel,
    g_reference: float,
    *,
    order: int = 60,
) -> TunnelingAmplitudes:
    """Amplitudes a_k for one snippet level by quadrature over the ordered
    facets where coordinates k and k+1 meet.

    Only the ratios are physical; ``g_reference`` sets the reported scale.
    The two-order error estimate is kept on the result and a warning is
    issued if it exceeds one percent.
    """
    if not s.has_wavefunctions:
        raise ValueError("amplitudes need a trap with orbital evaluators")
    if level.n_particles > 5:
        raise ValueError("facet quadrature is supported up to 5 particles")
    if g_reference == 0:
        raise ValueError("reference coupling must be nonzero")
    levels = tuple(lvl for lvl, _ in level.composition.occupations)
    coarse = _facet_amplitudes(s, levels, order)
    fine = _facet_amplitudes(s, levels, order + max(8, order // 5))
    scale = float(np.max(np.abs(fine)))
    estimate = float(np.max(np.abs(fine - coarse))) / max(scale, 1e-300)
    if estimate > 0.01:
        warnings.warn(
            f"facet quadrature error estimate {estimate:.2%} above 1%",
            stacklevel=2,
        )
    values = fine / g_reference
    if s.symmetric:
        values = (values + values[::-1]) / 2.0
    return TunnelingAmplitudes(
        tuple(float(v) for v in values),
        symmetric=bool(s.symmetric),
        error_estimate=estimate,
    )
