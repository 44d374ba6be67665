"""Kunneth Betti vectors for the catalog manifolds."""

import pytest

from curvature_gauge import (
    CodimensionError,
    ProductOfSpheres,
    SphereInCodim,
    betti_window_sum,
    product_poincare,
    sphere_poincare,
)


def test_sphere_polynomials():
    assert sphere_poincare(4).coefficients == (1, 0, 0, 0, 1)
    assert sphere_poincare(2).coefficients == (1, 0, 1)


def test_product_polynomials():
    s2 = sphere_poincare(2)
    assert product_poincare(s2, s2).coefficients == (1, 0, 2, 0, 1)
    assert product_poincare(s2, sphere_poincare(3)).coefficients == (1, 0, 1, 1, 0, 1)


def test_poincare_duality_and_connectedness():
    for poly in (
        sphere_poincare(5),
        product_poincare(sphere_poincare(2), sphere_poincare(2)),
        product_poincare(sphere_poincare(3), sphere_poincare(4)),
    ):
        coeffs = poly.coefficients
        assert coeffs[0] == 1 and coeffs[-1] == 1
        assert coeffs == tuple(reversed(coeffs))


def test_window_sums():
    s2xs2 = product_poincare(sphere_poincare(2), sphere_poincare(2))
    assert betti_window_sum(s2xs2, 2) == 2
    assert betti_window_sum(sphere_poincare(4), 2) == 0
    assert betti_window_sum(s2xs2, 0) == 4
    with pytest.raises(CodimensionError):
        betti_window_sum(s2xs2, 3)


def test_catalog_euler_characteristics():
    assert ProductOfSpheres(2, 1.0, 2, 1.0).euler_characteristic() == 4
    assert SphereInCodim(4, 1.0, 2).euler_characteristic() == 2
    assert ProductOfSpheres(2, 1.0, 3, 1.0).euler_characteristic() == 0
