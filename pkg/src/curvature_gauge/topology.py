"""Betti numbers of the catalog manifolds via Kunneth products of spheres.

Products of spheres have torsion-free homology, so the Betti numbers do not
depend on the coefficient field and a single integer vector suffices.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import CodimensionError

__all__ = ["PoincarePolynomial", "sphere_poincare", "product_poincare", "betti_window_sum"]


@dataclass(frozen=True)
class PoincarePolynomial:
    """Coefficients (beta_0, ..., beta_n) of the Poincare polynomial."""

    coefficients: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))

    @property
    def dim(self) -> int:
        return len(self.coefficients) - 1

    def betti(self, i: int) -> int:
        if 0 <= i < len(self.coefficients):
            return self.coefficients[i]
        return 0

    @property
    def total(self) -> int:
        return sum(self.coefficients)

    @property
    def euler_characteristic(self) -> int:
        return sum((-1) ** i * c for i, c in enumerate(self.coefficients))


def sphere_poincare(m: int) -> PoincarePolynomial:
    """1 + t^m for the sphere S^m."""
    coeffs = [0] * (m + 1)
    coeffs[0] = 1
    coeffs[m] += 1
    return PoincarePolynomial(tuple(coeffs))


def product_poincare(*factors: PoincarePolynomial) -> PoincarePolynomial:
    """Kunneth product: multiply Poincare polynomials."""
    out = np.array([1], dtype=np.int64)
    for f in factors:
        out = np.convolve(out, np.array(f.coefficients, dtype=np.int64))
    return PoincarePolynomial(tuple(int(c) for c in out))


def betti_window_sum(poly: PoincarePolynomial, p: int) -> int:
    """Sum of Betti numbers over the index window [p, n-p] (p = 0 gives all)."""
    n = poly.dim
    if p < 0 or 2 * p > n:
        raise CodimensionError(f"window [p, n-p] empty for p={p}, n={n}")
    return sum(poly.betti(i) for i in range(p, n - p + 1))
