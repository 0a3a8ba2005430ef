"""Gaussian quadrature helpers and trap orbital evaluation.

The harmonic-trap orbitals are evaluated through their polynomial parts
``h_n`` with the Gaussian factor kept symbolic, so products of orbitals can
be folded exactly into Gauss-Hermite weights without underflow:

    phi_n(q) = h_n(q) exp(-q^2/2)
    phi_n'(q) = (h_n'(q) - q h_n(q)) exp(-q^2/2)

``h_n`` follows the normalized recurrence h_0 = pi^(-1/4),
h_n = sqrt(2/n) q h_{n-1} - sqrt((n-1)/n) h_{n-2}.
"""

from __future__ import annotations

import math
from functools import cache

import numpy as np
from scipy.special import roots_hermite


def gauss_hermite(order: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes and weights for integrals against exp(-x^2) on the real line.

    Computed by scipy, which stays stable at orders where the textbook
    companion-matrix route overflows."""
    return roots_hermite(order)


def gauss_legendre_panels(a: float, b: float, panels: int, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss-Legendre rule over [a, b] split into equal panels."""
    base_x, base_w = np.polynomial.legendre.leggauss(order)
    width = (b - a) / panels
    xs, ws = [], []
    for i in range(panels):
        lo = a + i * width
        xs.append(lo + (base_x + 1.0) * (width / 2.0))
        ws.append(base_w * (width / 2.0))
    return np.concatenate(xs), np.concatenate(ws)


def hermite_parts(n_max: int, x: np.ndarray) -> np.ndarray:
    """Polynomial parts h_0..h_{n_max} at the points ``x``; shape (n_max+1, len(x))."""
    x = np.asarray(x, dtype=float)
    out = np.empty((n_max + 1, x.size))
    out[0] = math.pi ** -0.25
    if n_max >= 1:
        out[1] = math.sqrt(2.0) * x * out[0]
    for n in range(2, n_max + 1):
        out[n] = math.sqrt(2.0 / n) * x * out[n - 1] - math.sqrt((n - 1) / n) * out[n - 2]
    return out


def hermite_part_derivatives(n_max: int, x: np.ndarray) -> np.ndarray:
    """Derivatives h_0'..h_{n_max}' at the points ``x``."""
    x = np.asarray(x, dtype=float)
    h = hermite_parts(n_max, x)
    out = np.zeros((n_max + 1, x.size))
    for n in range(1, n_max + 1):
        out[n] = math.sqrt(2.0 / n) * (h[n - 1] + x * out[n - 1])
        if n >= 2:
            out[n] -= math.sqrt((n - 1) / n) * out[n - 2]
    return out


@cache
def _cached_hermgauss(order: int) -> tuple[tuple[float, ...], tuple[float, ...]]:
    x, w = gauss_hermite(order)
    return tuple(x), tuple(w)


def cached_gauss_hermite(order: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = _cached_hermgauss(order)
    return np.array(x), np.array(w)
