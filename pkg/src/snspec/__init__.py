"""Symmetry-adapted spectra of a few interacting particles in a trap.

Subpackages cover the symmetric-group machinery (``symgroup``), trap spectra
and degeneracy catalogs (``spectra``), spin statistics (``spinstats``),
interaction matrix elements and symmetry-reduced diagonalization
(``interactions``), the strong-coupling sector description (``unitary``),
and the command-line interface (``cli``).
"""

__version__ = "0.1.0"
