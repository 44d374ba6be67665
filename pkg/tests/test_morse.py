"""Height-function critical points, Morse counts and the integral identities."""

import math

import numpy as np
import pytest

from curvature_gauge import (
    GenericityError,
    ProductOfSpheres,
    SphereInCodim,
    chern_lashof_check,
    height_critical_points,
    index_of,
    make_rules,
    morse_inequality_check,
    mu_counts,
    shiohama_xu_check,
)
from curvature_gauge.morse import mu_counts_batch

S2XS2 = ProductOfSpheres(2, 1.0, 2, 1.0)
S4 = SphereInCodim(4, 1.0, 2)


def unit(v):
    v = np.asarray(v, dtype=float)
    return v / np.linalg.norm(v)


def test_product_profile_counts_and_euler():
    rng = np.random.default_rng(0)
    for _ in range(20):
        u = unit(rng.standard_normal(6))
        prof = height_critical_points(S2XS2, u)
        assert len(prof.critical_points) == 4
        assert list(prof.counts) == [1, 0, 2, 0, 1]
        assert prof.euler_characteristic == 4 == S2XS2.euler_characteristic()


def test_sphere_profile_counts():
    rng = np.random.default_rng(1)
    for _ in range(10):
        u = unit(rng.standard_normal(6))
        prof = height_critical_points(S4, u)
        assert list(prof.counts) == [1, 0, 0, 0, 1]
        assert prof.euler_characteristic == 2


def test_critical_points_lie_on_manifold_and_are_nondegenerate():
    u = unit([0.3, -0.2, 0.5, 0.1, 0.9, -0.4])
    prof = height_critical_points(S2XS2, u)
    heights = []
    for cp in prof.critical_points:
        x1, x2 = cp.point[:3], cp.point[3:]
        assert np.linalg.norm(x1) == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.norm(x2) == pytest.approx(1.0, abs=1e-12)
        assert np.min(np.abs(cp.hessian_eigenvalues)) > 1e-10
        assert cp.height == pytest.approx(float(np.dot(cp.point, u)), abs=1e-12)
        heights.append(cp.height)
    assert max(heights) == pytest.approx(np.linalg.norm(u[:3]) + np.linalg.norm(u[3:]))


def test_analytic_index_matches_numeric_hessian_index():
    rng = np.random.default_rng(2)
    for _ in range(10):
        u = unit(rng.standard_normal(6))
        prof = height_critical_points(S2XS2, u)
        for cp in prof.critical_points:
            hess = np.diag(cp.hessian_eigenvalues)
            assert index_of(hess, 1e-10) == cp.index


def test_genericity_error_and_perturbation_retry():
    u = unit([0.0, 0.0, 0.0, 1.0, 0.0, 0.0])  # vanishing first-factor projection
    with pytest.raises(GenericityError):
        height_critical_points(S2XS2, u)
    counts = mu_counts(S2XS2, u)
    assert list(counts) == [1, 0, 2, 0, 1]
    u_sphere = unit([0.0, 0.0, 0.0, 0.0, 0.0, 1.0])  # normal plane direction
    with pytest.raises(GenericityError):
        height_critical_points(S4, u_sphere)
    assert list(mu_counts(S4, u_sphere)) == [1, 0, 0, 0, 1]


def test_mu_counts_batch_matches_scalar():
    rng = np.random.default_rng(3)
    dirs = rng.standard_normal((50, 6))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    for imm in (S2XS2, S4):
        batch = mu_counts_batch(imm, dirs)
        for row, u in zip(batch, dirs):
            assert np.array_equal(row, mu_counts(imm, u))


def test_chern_lashof_identity_s2xs2():
    man, fib, amb = make_rules(S2XS2, level=2, fiber_nodes=256)
    rep = chern_lashof_check(S2XS2, man, fib, amb)
    lhs = rep.quantities["lhs_normal_bundle_integral"].value
    rhs = rep.quantities["rhs_morse_count_integral"].value
    assert rep.status == "pass"
    assert lhs == pytest.approx(4 * math.pi**3, rel=1e-3)
    assert rhs == pytest.approx(4 * math.pi**3, rel=1e-3)


def test_chern_lashof_identity_s4():
    man, fib, amb = make_rules(S4, level=2, fiber_nodes=256)
    rep = chern_lashof_check(S4, man, fib, amb)
    assert rep.status == "pass"
    assert rep.quantities["lhs_normal_bundle_integral"].value == pytest.approx(
        2 * math.pi**3, rel=1e-3
    )


def test_chern_lashof_scale_invariance():
    vals = []
    for r in (1.0, 2.0):
        imm = ProductOfSpheres(2, r, 2, r)
        man, fib, amb = make_rules(imm, level=2, fiber_nodes=128)
        rep = chern_lashof_check(imm, man, fib, amb)
        vals.append(rep.quantities["lhs_normal_bundle_integral"].value)
    assert vals[0] == pytest.approx(vals[1], rel=1e-6)


def test_shiohama_xu_slices():
    man, fib, amb = make_rules(S2XS2, level=2, fiber_nodes=256)
    rep2 = shiohama_xu_check(S2XS2, 2, man, fib, amb)
    assert rep2.status == "pass"
    assert rep2.quantities["lhs_index_slice_integral"].value == pytest.approx(
        2 * math.pi**3, rel=1e-3
    )
    assert rep2.quantities["rhs_morse_count_integral"].value == pytest.approx(
        2 * math.pi**3, rel=1e-3
    )
    for i in (1, 3):
        rep = shiohama_xu_check(S2XS2, i, man, fib, amb)
        assert rep.status == "pass"
        assert abs(rep.quantities["lhs_index_slice_integral"].value) < 1e-3
        assert abs(rep.quantities["rhs_morse_count_integral"].value) < 1e-3


def test_shiohama_xu_sums_to_chern_lashof():
    man, fib, amb = make_rules(S2XS2, level=1, fiber_nodes=128)
    total = chern_lashof_check(S2XS2, man, fib, amb)
    lhs_total = total.quantities["lhs_normal_bundle_integral"].value
    parts = [
        shiohama_xu_check(S2XS2, i, man, fib, amb).quantities[
            "lhs_index_slice_integral"
        ].value
        for i in range(5)
    ]
    assert sum(parts) == pytest.approx(lhs_total, rel=1e-6)


def test_morse_inequality_check_both_kinds():
    for imm in (S2XS2, S4):
        rep = morse_inequality_check(imm, n_directions=64)
        assert rep.status == "pass"
        assert rep.quantities["min_mu_minus_betti"].value >= 0
