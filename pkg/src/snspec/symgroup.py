"""Exact combinatorics and representation theory of the symmetric group.

Permutations, integer partitions, Young tableaux, orthogonal irrep matrices
built from adjacent transpositions, Kostka numbers by semistandard-tableau
enumeration, and simultaneous diagonalization of transposition class sums
along the canonical subgroup chain.

Conventions used throughout the package:

* Permutations are written in one-line notation ``{p(1) ... p(N)}`` and
  multiply left to right: ``(p * q)(i) = q(p(i))``, i.e. apply ``p`` first.
* Standard tableaux of a given shape are listed in last-letter order, the
  one fixed by sorting descending on ``(row(N), row(N-1), ..., row(2))``.
* Adjacent-transposition matrices follow the orthogonal (Young) convention:
  diagonal ``1/d`` with ``d`` the axial distance from the cell of ``k`` to
  the cell of ``k+1``, non-negative off-diagonal ``sqrt(1 - 1/d^2)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cache
from typing import Callable, Iterable, Sequence

import numpy as np

Shape = tuple[int, ...]


class ClusterSeparationError(Exception):
    """Raised when class-sum eigenvalues cannot be clustered at tolerance."""

    def __init__(self, level: int, spread: float, tol: float):
        self.level = level
        self.spread = spread
        super().__init__(
            f"eigenvalue cluster at chain level {level} has spread {spread:.3e}"
            f" exceeding tolerance {tol:.3e}"
        )


# ---------------------------------------------------------------------------
# permutations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Permutation:
    """A permutation of 1..N in one-line notation.

    ``images[i-1]`` is the image of ``i``.  Products read left to right:
    ``(p * q)(i) == q(p(i))``.
    """

    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if sorted(self.images) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {self.images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(tuple(images))

    @classmethod
    def from_cycles(cls, n: int, *cycles: Sequence[int]) -> "Permutation":
        images = list(range(1, n + 1))
        for cycle in cycles:
            for a, b in zip(cycle, cycle[1:] + type(cycle)((cycle[0],))):
                images[a - 1] = b
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # apply self first, then other
        return Permutation(tuple(other.images[im - 1] for im in self.images))

    def inverse(self) -> "Permutation":
        images = [0] * self.n
        for i, im in enumerate(self.images, start=1):
            images[im - 1] = i
        return Permutation(tuple(images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Disjoint cycles, each starting at its smallest element."""
        seen = [False] * self.n
        out = []
        for start in range(1, self.n + 1):
            if seen[start - 1]:
                continue
            cyc = [start]
            seen[start - 1] = True
            j = self(start)
            while j != start:
                cyc.append(j)
                seen[j - 1] = True
                j = self(j)
            out.append(tuple(cyc))
        return tuple(out)

    def cycle_type(self) -> Shape:
        return tuple(sorted((len(c) for c in self.cycles()), reverse=True))

    @property
    def sign(self) -> int:
        return -1 if (self.n - len(self.cycles())) % 2 else 1

    def adjacent_factors(self) -> tuple[int, ...]:
        """Indices ``k`` with ``self == s(k1) * s(k2) * ...`` for adjacent
        transpositions ``s(k) = (k, k+1)``, in left-to-right product order."""
        word = list(self.images)
        ks = []
        # bubble sort; swapping positions k,k+1 of the word prepends (k,k+1)
        changed = True
        while changed:
            changed = False
            for j in range(self.n - 1):
                if word[j] > word[j + 1]:
                    word[j], word[j + 1] = word[j + 1], word[j]
                    ks.append(j + 1)
                    changed = True
        return tuple(ks)


def all_permutations(n: int) -> list[Permutation]:
    """All of S_n, sorted lexicographically by one-line notation."""
    return [Permutation(images) for images in itertools.permutations(range(1, n + 1))]


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------


@cache
def partitions(n: int, max_part: int | None = None) -> tuple[Shape, ...]:
    """Partitions of ``n`` in canonical order, ``[n]`` first, ``[1^n]`` last."""
    if n == 0:
        return ((),)
    if max_part is None or max_part > n:
        max_part = n
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def is_partition(shape: Sequence[int]) -> bool:
    parts = tuple(shape)
    return all(a >= b for a, b in zip(parts, parts[1:])) and all(p >= 1 for p in parts)


def _check_shape(shape: Sequence[int]) -> Shape:
    parts = tuple(int(p) for p in shape)
    if not is_partition(parts):
        raise ValueError(f"not a partition: {shape}")
    return parts


def conjugate(shape: Sequence[int]) -> Shape:
    """Transpose of the Ferrers diagram."""
    parts = _check_shape(shape)
    if not parts:
        return ()
    return tuple(sum(1 for p in parts if p > i) for i in range(parts[0]))


def irrep_dimension(shape: Sequence[int]) -> int:
    """Dimension by the hook-length formula."""
    parts = _check_shape(shape)
    n = sum(parts)
    cols = conjugate(parts)
    hooks = 1
    for r, row_len in enumerate(parts):
        for c in range(row_len):
            hooks *= (row_len - c) + (cols[c] - r) - 1
    return math.factorial(n) // hooks


def conjugacy_classes(n: int) -> list[tuple[Shape, int]]:
    """(cycle type, class size) for S_n; class sizes sum to n!."""
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for shape in partitions(n):
        counts: dict[int, int] = {}
        for part in shape:
            counts[part] = counts.get(part, 0) + 1
        centralizer = 1
        for length, mult in counts.items():
            centralizer *= length**mult * math.factorial(mult)
        out.append((shape, math.factorial(n) // centralizer))
    return out


# ---------------------------------------------------------------------------
# tableaux
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tableau:
    """Row-wise filling of a Ferrers diagram."""

    rows: tuple[tuple[int, ...], ...]

    @property
    def shape(self) -> Shape:
        return tuple(len(r) for r in self.rows)

    @property
    def n(self) -> int:
        return sum(len(r) for r in self.rows)

    def position(self, value: int) -> tuple[int, int]:
        """(row, column) of ``value``, 0-indexed."""
        for r, row in enumerate(self.rows):
            for c, entry in enumerate(row):
                if entry == value:
                    return r, c
        raise ValueError(f"{value} not in tableau")

    def content(self, value: int) -> int:
        r, c = self.position(value)
        return c - r

    def is_standard(self) -> bool:
        if sorted(itertools.chain.from_iterable(self.rows)) != list(range(1, self.n + 1)):
            return False
        return self._increasing(strict_rows=True)

    def is_semistandard(self) -> bool:
        return self._increasing(strict_rows=False)

    def _increasing(self, strict_rows: bool) -> bool:
        if not is_partition(self.shape):
            return False
        for row in self.rows:
            for a, b in zip(row, row[1:]):
                if (a >= b) if strict_rows else (a > b):
                    return False
        for upper, lower in zip(self.rows, self.rows[1:]):
            for a, b in zip(upper, lower):
                if a >= b:
                    return False
        return True

    def weight(self) -> tuple[int, ...]:
        """Multiplicity of each entry value 1..max."""
        entries = list(itertools.chain.from_iterable(self.rows))
        return tuple(entries.count(v) for v in range(1, max(entries) + 1))

    def __str__(self) -> str:
        return "|".join(" ".join(str(e) for e in row) for row in self.rows)


def _last_letter_key(t: Tableau) -> tuple[int, ...]:
    # descending sort on this key gives last-letter order
    return tuple(t.position(v)[0] for v in range(t.n, 1, -1))


@cache
def standard_tableaux(shape: Sequence[int]) -> tuple[Tableau, ...]:
    """All standard tableaux of ``shape`` in last-letter order."""
    parts = _check_shape(shape)
    n = sum(parts)

    def fill(remaining: int, rows: list[list[int]]):
        if remaining > n:
            yield Tableau(tuple(tuple(r) for r in rows))
            return
        for r in range(len(parts)):
            c = len(rows[r])
            if c >= parts[r]:
                continue
            if r > 0 and len(rows[r - 1]) <= c:
                continue
            rows[r].append(remaining)
            yield from fill(remaining + 1, rows)
            rows[r].pop()

    tableaux = list(fill(1, [[] for _ in parts]))
    tableaux.sort(key=_last_letter_key, reverse=True)
    return tuple(tableaux)


def semistandard_tableaux(shape: Sequence[int], content: Sequence[int]) -> tuple[Tableau, ...]:
    """Semistandard tableaux of ``shape`` where symbol ``i`` (1-based) appears
    ``content[i-1]`` times.  Empty when the filling is impossible."""
    parts = _check_shape(shape)
    weights = tuple(int(w) for w in content)
    if any(w < 0 for w in weights):
        raise ValueError(f"negative multiplicity in content {content}")
    if sum(weights) != sum(parts):
        return ()
    cells = [(r, c) for r, row_len in enumerate(parts) for c in range(row_len)]

    out: list[Tableau] = []
    grid: dict[tuple[int, int], int] = {}
    remaining = list(weights)

    def fill(idx: int):
        if idx == len(cells):
            out.append(Tableau(tuple(tuple(grid[(r, c)] for c in range(parts[r])) for r in range(len(parts)))))
            return
        r, c = cells[idx]
        lo = grid[(r, c - 1)] if c > 0 else 1
        if r > 0:
            lo = max(lo, grid[(r - 1, c)] + 1)
        for symbol in range(lo, len(weights) + 1):
            if remaining[symbol - 1] == 0:
                continue
            grid[(r, c)] = symbol
            remaining[symbol - 1] -= 1
            fill(idx + 1)
            remaining[symbol - 1] += 1
        grid.pop((r, c), None)

    fill(0)
    return tuple(out)


def kostka_number(shape: Sequence[int], content: Sequence[int]) -> int:
    return len(semistandard_tableaux(_check_shape(shape), tuple(content)))


@cache
def kostka_row(content_shape: Sequence[int]) -> dict[Shape, int]:
    """Multiplicity of each irrep inside the permutation module with the given
    content shape, as a mapping over all partitions in canonical order."""
    parts = _check_shape(content_shape)
    n = sum(parts)
    return {shape: kostka_number(shape, parts) for shape in partitions(n)}


# ---------------------------------------------------------------------------
# orthogonal irrep matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IrrepMatrices:
    """Orthogonal matrices for the adjacent transpositions (k, k+1) of one
    irrep, in the standard-tableau basis of :func:`standard_tableaux`."""

    shape: Shape
    tableaux: tuple[Tableau, ...]
    generators: tuple[np.ndarray, ...]  # index k-1 holds the matrix of (k, k+1)

    @property
    def dim(self) -> int:
        return len(self.tableaux)


def _swap_values(t: Tableau, k: int) -> Tableau:
    rows = [list(r) for r in t.rows]
    for row in rows:
        for i, e in enumerate(row):
            if e == k:
                row[i] = k + 1
            elif e == k + 1:
                row[i] = k
    return Tableau(tuple(tuple(r) for r in rows))


@cache
def irrep_matrices(shape: Sequence[int]) -> IrrepMatrices:
    parts = _check_shape(shape)
    n = sum(parts)
    tableaux = standard_tableaux(parts)
    index = {t: i for i, t in enumerate(tableaux)}
    dim = len(tableaux)
    gens = []
    for k in range(1, n):
        mat = np.zeros((dim, dim))
        for i, t in enumerate(tableaux):
            d = t.content(k + 1) - t.content(k)  # axial distance
            mat[i, i] = 1.0 / d
            swapped = _swap_values(t, k)
            if swapped.is_standard():
                j = index[swapped]
                mat[i, j] = math.sqrt(1.0 - 1.0 / d**2)
        mat.setflags(write=False)
        gens.append(mat)
    return IrrepMatrices(parts, tableaux, tuple(gens))


def irrep_matrix(shape: Sequence[int], p: Permutation) -> np.ndarray:
    """Orthogonal matrix of ``p``; satisfies D(p) @ D(q) == D(p * q)."""
    reps = irrep_matrices(shape)
    if sum(reps.shape) != p.n:
        raise ValueError(f"permutation of {p.n} does not match shape {shape}")
    mat = np.eye(reps.dim)
    for k in p.adjacent_factors():
        mat = mat @ reps.generators[k - 1]
    return mat


# ---------------------------------------------------------------------------
# permutation modules
# ---------------------------------------------------------------------------


def module_sequences(content: Sequence[int]) -> list[tuple[int, ...]]:
    """All distinct sequences in which symbol ``i`` (1-based) appears
    ``content[i-1]`` times, sorted lexicographically."""
    symbols: list[int] = []
    for sym, mult in enumerate(content, start=1):
        symbols.extend([sym] * mult)
    return sorted(set(itertools.permutations(symbols)))


def permutation_module(content: Sequence[int]) -> Callable[[Permutation], np.ndarray]:
    """Matrix representation of S_N on the sequences of a composition.

    A permutation ``p`` maps the basis sequence ``n`` to the sequence with
    entries ``n[p(i)]``; the returned callable gives its matrix in the sorted
    sequence basis.
    """
    seqs = module_sequences(content)
    index = {s: i for i, s in enumerate(seqs)}
    n = sum(content)

    def rep(p: Permutation) -> np.ndarray:
        if p.n != n:
            raise ValueError(f"permutation of {p.n} does not act on {n} slots")
        mat = np.zeros((len(seqs), len(seqs)))
        for i, seq in enumerate(seqs):
            image = tuple(seq[p(j) - 1] for j in range(1, n + 1))
            mat[index[image], i] = 1.0
        return mat

    return rep


def regular_representation(n: int) -> Callable[[Permutation], np.ndarray]:
    """The n!-dimensional module on sequences of n distinct symbols."""
    return permutation_module((1,) * n)


# ---------------------------------------------------------------------------
# class operators
# ---------------------------------------------------------------------------


def transposition_class_sum(rep: Callable[[Permutation], np.ndarray], n: int, k: int) -> np.ndarray:
    """Sum of rep((i j)) over all transpositions with i < j <= k."""
    mats = [rep(Permutation.transposition(n, i, j)) for i in range(1, k) for j in range(i + 1, k + 1)]
    total = sum(mats)
    return (total + total.T) / 2.0


def fix_phase(vec: np.ndarray, tol: float = 1e-8) -> np.ndarray:
    """Flip sign so the first significant component is positive."""
    threshold = tol * max(1.0, float(np.max(np.abs(vec))))
    for x in vec:
        if abs(x) > threshold:
            return vec if x > 0 else -vec
    return vec


def simultaneous_eigenbasis(
    operators: Sequence[np.ndarray],
    *,
    basis: np.ndarray | None = None,
    tol: float = 1e-9,
) -> list[tuple[tuple[float, ...], np.ndarray]]:
    """Common eigenspaces of commuting symmetric operators.

    Returns ``(pattern, block)`` pairs where ``pattern`` holds one eigenvalue
    per operator and the columns of ``block`` span the joint eigenspace.
    Raises :class:`ClusterSeparationError` when the eigenvalues of some
    operator do not separate into clusters at tolerance ``tol``; the error
    records the 1-based position of the offending operator.
    """
    if basis is None:
        dim = operators[0].shape[0]
        basis = np.eye(dim)
    blocks = [((), basis)]
    for level, op in enumerate(operators, start=1):
        refined = []
        for pattern, block in blocks:
            mat = block.T @ op @ block
            mat = (mat + mat.T) / 2.0
            vals, vecs = np.linalg.eigh(mat)
            start = 0
            for stop in range(1, len(vals) + 1):
                if stop == len(vals) or vals[stop] - vals[stop - 1] > tol:
                    spread = vals[stop - 1] - vals[start]
                    if spread > tol:
                        raise ClusterSeparationError(level, float(spread), tol)
                    mean = float(np.mean(vals[start:stop]))
                    refined.append((pattern + (mean,), block @ vecs[:, start:stop]))
                    start = stop
        blocks = refined
    return blocks


def tableau_from_contents(deltas: Sequence[int]) -> Tableau:
    """Rebuild the standard tableau whose cell of ``k`` has content
    ``deltas[k-2]`` for k = 2..N (the cell of 1 sits at the origin)."""
    rows: list[list[int]] = [[1]]
    for value, delta in enumerate(deltas, start=2):
        placed = False
        for r in range(len(rows) + 1):
            row_len = len(rows[r]) if r < len(rows) else 0
            content = row_len - r
            if content != delta:
                continue
            if r > 0 and len(rows[r - 1]) <= row_len:
                continue
            if r < len(rows):
                rows[r].append(value)
            else:
                rows.append([value])
            placed = True
            break
        if not placed:
            raise ValueError(f"no addable cell with content {delta} for entry {value}")
    return Tableau(tuple(tuple(r) for r in rows))


@dataclass(frozen=True)
class LabeledVector:
    """One simultaneous eigenvector of the chain class sums."""

    tableau: Tableau
    eigenvalues: tuple[float, ...]  # class-sum values for S_2, S_3, ..., S_N
    vector: np.ndarray


@dataclass(frozen=True)
class ClassOperatorSpectrum:
    chain: tuple[int, ...]
    vectors: tuple[LabeledVector, ...]

    def count_by_shape(self) -> dict[Shape, int]:
        counts: dict[Shape, int] = {}
        for lv in self.vectors:
            counts[lv.tableau.shape] = counts.get(lv.tableau.shape, 0) + 1
        return counts


def class_operator_spectrum(
    rep: Callable[[Permutation], np.ndarray],
    n: int,
    chain: Sequence[int] | None = None,
    *,
    cluster_tol: float = 1e-9,
) -> ClassOperatorSpectrum:
    """Joint eigenbasis of the transposition class sums along the subgroup
    chain, with each vector labeled by the standard tableau its eigenvalue
    pattern determines.

    ``rep`` maps a permutation of 1..n to its (orthogonal) matrix.  ``chain``
    lists the subgroup sizes, largest first; the default is n, n-1, ..., 2.
    """
    if chain is None:
        chain = tuple(range(n, 1, -1))
    levels = sorted(chain)  # refine small subgroups first
    if levels[0] < 2 or levels[-1] != n:
        raise ValueError(f"chain {chain} must descend from {n} to 2")
    operators = [transposition_class_sum(rep, n, k) for k in levels]
    blocks = simultaneous_eigenbasis(operators, tol=cluster_tol)

    labeled = []
    for pattern, block in blocks:
        by_level = dict(zip(levels, pattern))
        # chain levels may skip sizes; contents need consecutive sums, so
        # require the canonical chain for tableau reconstruction
        full = [by_level.get(k) for k in range(2, n + 1)]
        if any(v is None for v in full):
            raise ValueError("tableau labels need the full chain n, n-1, ..., 2")
        prev = 0.0
        deltas = []
        for value in full:
            delta = value - prev
            rounded = round(delta)
            if abs(delta - rounded) > 100 * cluster_tol:
                raise ClusterSeparationError(len(deltas) + 2, abs(delta - rounded), cluster_tol)
            deltas.append(int(rounded))
            prev = value
        tableau = tableau_from_contents(deltas)
        eigenvalues = tuple(float(v) for v in full)
        for col in range(block.shape[1]):
            labeled.append(LabeledVector(tableau, eigenvalues, fix_phase(block[:, col].copy())))
    return ClassOperatorSpectrum(tuple(chain), tuple(labeled))
