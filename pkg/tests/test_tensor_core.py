"""Tensor-core algebra against brute-force oracles.

Every derived expected value here is computed (or was frozen from) the
quadruple-loop oracles below, which expand the four-term product definitions
term by term and never call the library implementations.
"""

import numpy as np
import pytest

from curvature_gauge import (
    BilinearForm,
    DimensionError,
    HypothesisViolation,
    KSignError,
    NormalizationError,
    diagonal_form,
    gauss_curvature,
    index_of,
    is_flat,
    kn_scalar,
    kn_vector,
    lemma_decompose,
    nullity_space,
    r1_tensor,
    sc,
    scal,
    sharp,
    umbilic_form,
)
from curvature_gauge.tensor_core import symmetrized


def kn_scalar_oracle(phi, psi):
    """Literal four-term expansion, one component at a time."""
    n = phi.shape[0]
    t = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    t[i, j, k, l] = (
                        phi[i, k] * psi[j, l]
                        + phi[j, l] * psi[i, k]
                        - phi[i, l] * psi[j, k]
                        - phi[j, k] * psi[i, l]
                    )
    return t


def kn_vector_oracle(bcomp, ccomp):
    n = bcomp.shape[1]
    t = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    t[i, j, k, l] = (
                        np.dot(bcomp[:, i, k], ccomp[:, j, l])
                        + np.dot(bcomp[:, j, l], ccomp[:, i, k])
                        - np.dot(bcomp[:, i, l], ccomp[:, j, k])
                        - np.dot(bcomp[:, j, k], ccomp[:, i, l])
                    )
    return t


def gauss_oracle(bcomp):
    """Unexpanded Gauss equation: R(X,Y,Z,W) = <a(X,W),a(Y,Z)> - <a(X,Z),a(Y,W)>."""
    n = bcomp.shape[1]
    r = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    r[i, j, k, l] = np.dot(bcomp[:, i, l], bcomp[:, j, k]) - np.dot(
                        bcomp[:, i, k], bcomp[:, j, l]
                    )
    return r


def random_form(rng, n, p):
    comp = rng.standard_normal((p, n, n))
    return BilinearForm(symmetrized(comp))


def test_kn_scalar_metric_on_metric_n2():
    t = kn_scalar(np.eye(2), np.eye(2)).values
    assert t[0, 1, 0, 1] == 2.0
    assert t[0, 1, 1, 0] == -2.0
    assert np.all(t[0, 0] == 0.0)
    assert np.array_equal(t, kn_scalar_oracle(np.eye(2), np.eye(2)))


def test_kn_scalar_zero_factor():
    rng = np.random.default_rng(0)
    phi = symmetrized(rng.standard_normal((5, 5)))
    assert kn_scalar(phi, np.zeros((5, 5))).norm_sq == 0.0


def test_kn_scalar_metric_norm_n4():
    # Brute-force oracle gives sum over all n^4 components = 8 n (n-1) = 96.
    oracle = np.sum(kn_scalar_oracle(np.eye(4), np.eye(4)) ** 2)
    assert oracle == 96.0
    assert kn_scalar(np.eye(4), np.eye(4)).norm_sq == pytest.approx(96.0, rel=1e-14)


def test_kn_scalar_matches_oracle_random():
    rng = np.random.default_rng(1)
    for _ in range(5):
        n = rng.integers(2, 6)
        phi = symmetrized(rng.standard_normal((n, n)))
        psi = symmetrized(rng.standard_normal((n, n)))
        assert np.allclose(kn_scalar(phi, psi).values, kn_scalar_oracle(phi, psi), atol=1e-13)


def test_kn_scalar_dimension_mismatch():
    with pytest.raises(DimensionError):
        kn_scalar(np.eye(3), np.eye(4))


def test_kn_vector_umbilic_reduces_to_scalar():
    beta = umbilic_form(4, 2)
    assert np.allclose(kn_vector(beta, beta).values, kn_scalar(np.eye(4), np.eye(4)).values)


def test_kn_vector_rank_one_is_flat():
    comp = np.zeros((2, 4, 4))
    comp[0, 0, 0] = 1.0
    beta = BilinearForm(comp)
    assert kn_vector(beta, beta).norm_sq == 0.0
    assert is_flat(beta)


def test_kn_vector_symmetric_in_arguments_and_matches_oracle():
    rng = np.random.default_rng(2)
    for _ in range(5):
        n, p = int(rng.integers(2, 6)), int(rng.integers(1, 4))
        beta, gamma = random_form(rng, n, p), random_form(rng, n, p)
        tbg = kn_vector(beta, gamma).values
        tgb = kn_vector(gamma, beta).values
        assert np.allclose(tbg, tgb, atol=1e-13)
        assert np.allclose(tbg, kn_vector_oracle(beta.components, gamma.components), atol=1e-12)


def test_curvature_type_symmetries_exact():
    rng = np.random.default_rng(3)
    phi = symmetrized(rng.standard_normal((4, 4)))
    psi = symmetrized(rng.standard_normal((4, 4)))
    t = kn_scalar(phi, psi).values
    assert np.array_equal(t, -t.transpose(1, 0, 2, 3))
    assert np.array_equal(t, -t.transpose(0, 1, 3, 2))
    assert np.array_equal(t, t.transpose(2, 3, 0, 1))
    beta = random_form(rng, 5, 2)
    tv = kn_vector(beta, beta).values
    assert np.array_equal(tv, -tv.transpose(1, 0, 2, 3))
    assert np.array_equal(tv, -tv.transpose(0, 1, 3, 2))
    assert np.array_equal(tv, tv.transpose(2, 3, 0, 1))


def test_is_flat_cases():
    comp = np.zeros((1, 3, 3))
    comp[0, 0, 0] = 1.0
    assert is_flat(BilinearForm(comp))
    assert not is_flat(umbilic_form(4, 2))
    # diagonal form with mutually orthogonal diagonal values is flat
    values = np.zeros((5, 2))
    values[0, 0] = 1.3
    values[1, 1] = -0.7
    assert is_flat(diagonal_form(values))


def test_nullity_space_explicit_kernel():
    comp = np.zeros((1, 4, 4))
    comp[0, 0, 0] = 1.0
    ns = nullity_space(BilinearForm(comp))
    assert ns.dim == 3
    assert np.allclose(ns.basis @ np.array([1.0, 0, 0, 0]), 0.0, atol=1e-12)


def test_nullity_space_nondegenerate_and_flat_bound():
    assert nullity_space(umbilic_form(4, 2)).dim == 0
    rng = np.random.default_rng(4)
    n, p = 5, 2
    values = np.zeros((n, p))
    values[0, 0] = rng.standard_normal()
    values[3, 1] = rng.standard_normal()
    beta = diagonal_form(values)
    ns = nullity_space(beta)
    assert ns.dim == 3 >= n - p


def test_nullity_basis_orthonormal():
    rng = np.random.default_rng(5)
    beta = random_form(rng, 6, 3)
    ns = nullity_space(beta)
    gram = ns.basis @ ns.basis.T
    assert np.allclose(gram, np.eye(ns.dim), atol=1e-12)


def test_sharp_single_component_and_linearity():
    beta = umbilic_form(3, 1)
    assert np.array_equal(sharp(beta, np.array([1.0])).entries, np.eye(3))
    rng = np.random.default_rng(6)
    beta = random_form(rng, 4, 2)
    theta = 0.7
    u = np.array([np.cos(theta), np.sin(theta)])
    expected = np.cos(theta) * beta.components[0] + np.sin(theta) * beta.components[1]
    assert np.allclose(sharp(beta, u).entries, expected, atol=1e-15)
    assert np.allclose(sharp(beta, -u).entries, -sharp(beta, u).entries, atol=1e-15)


def test_sharp_rejects_non_unit():
    with pytest.raises(NormalizationError):
        sharp(umbilic_form(3, 2), np.array([1.0, 1.0]))


def test_index_of_basic_and_conjugation_invariant():
    assert index_of(np.diag([1.0, -1.0, -1.0, 2.0])) == 2
    assert index_of(np.zeros((3, 3))) == 0
    rng = np.random.default_rng(7)
    for _ in range(5):
        d = rng.standard_normal(5)
        q, _ = np.linalg.qr(rng.standard_normal((5, 5)))
        rotated = symmetrized(q @ np.diag(d) @ q.T)
        assert index_of(rotated) == int(np.sum(d < 0))


def test_sc_values():
    assert sc(umbilic_form(4, 2)) == pytest.approx(12.0, abs=1e-12)
    # orthogonal diagonal values: every cross term vanishes
    values = np.zeros((4, 2))
    values[0, 0] = 2.0
    values[2, 1] = -1.0
    assert sc(diagonal_form(values)) == pytest.approx(0.0, abs=1e-12)
    # sign-split scalar form: (tr)^2 - n = (n - 2l)^2 - n
    n, l = 6, 2
    values = np.zeros((n, 1))
    values[:, 0] = 1.0
    values[l:, 0] = -1.0
    assert sc(diagonal_form(values)) == pytest.approx((n - 2 * l) ** 2 - n, abs=1e-12)


def test_sc_equals_half_trace_of_kn_and_rotation_invariant():
    rng = np.random.default_rng(8)
    for _ in range(5):
        beta = random_form(rng, 4, 2)
        t = kn_vector(beta, beta).values
        half_trace = 0.5 * sum(t[i, j, i, j] for i in range(4) for j in range(4))
        assert sc(beta) == pytest.approx(half_trace, rel=1e-12, abs=1e-12)
        q, _ = np.linalg.qr(rng.standard_normal((4, 4)))
        rotated = BilinearForm(
            symmetrized(np.einsum("ij,ajk,lk->ail", q, beta.components, q))
        )
        assert sc(rotated) == pytest.approx(sc(beta), rel=1e-10, abs=1e-10)


def test_gauss_curvature_unit_sphere_data():
    r = gauss_curvature(umbilic_form(4, 2))
    assert r.values[0, 1, 1, 0] == pytest.approx(1.0, abs=1e-15)
    assert scal(r) == pytest.approx(12.0, abs=1e-12)
    assert gauss_curvature(BilinearForm(np.zeros((2, 4, 4)))).norm_sq == 0.0


def test_gauss_curvature_matches_direct_oracle():
    rng = np.random.default_rng(9)
    for _ in range(10):
        n, p = int(rng.integers(2, 7)), int(rng.integers(1, 4))
        beta = random_form(rng, n, p)
        assert np.allclose(
            gauss_curvature(beta).values, gauss_oracle(beta.components), atol=1e-12
        )


def test_first_bianchi_identity():
    rng = np.random.default_rng(10)
    for _ in range(5):
        beta = random_form(rng, 5, 2)
        r = gauss_curvature(beta).values
        cyclic = r + r.transpose(1, 2, 0, 3) + r.transpose(2, 0, 1, 3)
        assert np.max(np.abs(cyclic)) < 1e-12 * max(1.0, np.max(np.abs(r)))


def test_scal_of_gauss_equals_sc():
    rng = np.random.default_rng(11)
    for _ in range(8):
        beta = random_form(rng, int(rng.integers(2, 6)), int(rng.integers(1, 4)))
        assert scal(gauss_curvature(beta)) == pytest.approx(sc(beta), rel=1e-10, abs=1e-10)


def test_r1_tensor_values():
    from curvature_gauge import QuadTensor

    assert scal(QuadTensor(np.zeros((4, 4, 4, 4)))) == 0.0
    r1 = r1_tensor(2)
    assert r1.values[0, 1, 0, 1] == -1.0
    # count of nonzero components: two per ordered off-diagonal pair
    for n in (2, 4, 5):
        t = r1_tensor(n)
        assert t.norm_sq == pytest.approx(2.0 * n * (n - 1), abs=1e-12)
        assert scal(t) == pytest.approx(n * (n - 1), abs=1e-12)
    assert scal(gauss_curvature(umbilic_form(4, 2))) == pytest.approx(12.0)
    assert scal(r1_tensor(4)) == pytest.approx(12.0)


def test_lemma_decompose_umbilic():
    beta = umbilic_form(4, 2, scale=2.0)  # k = 4
    xi, v1 = lemma_decompose(beta, 4.0)
    assert np.allclose(xi, [1.0, 0.0], atol=1e-12)
    assert v1.dim == 4


def test_lemma_decompose_perturbed():
    k = 2.0
    comp = np.zeros((2, 4, 4))
    comp[0] = np.sqrt(k) * np.eye(4)
    comp[1, 0, 0] = 1.0
    beta = BilinearForm(comp)
    xi, v1 = lemma_decompose(beta, k, tol=1e-8)
    assert np.allclose(xi, [1.0, 0.0], atol=1e-10)
    assert v1.dim >= 3
    # recovered subspace avoids e_1
    assert np.max(np.abs(v1.basis @ np.array([1.0, 0, 0, 0]))) < 1e-10


def test_lemma_decompose_residual_bound_random():
    rng = np.random.default_rng(12)
    for _ in range(10):
        n = int(rng.integers(4, 7))
        p = int(rng.integers(2, min(n - 1, 4)))
        k = float(rng.uniform(0.5, 4.0))
        q, _ = np.linalg.qr(rng.standard_normal((p, p)))
        v = rng.standard_normal(n)
        v /= np.linalg.norm(v)
        comp = np.sqrt(k) * q[0][:, None, None] * np.eye(n) + q[1][
            :, None, None
        ] * np.outer(v, v)
        beta = BilinearForm(symmetrized(comp))
        tol = 1e-8
        xi, v1 = lemma_decompose(beta, k, tol=tol)
        assert abs(abs(np.dot(xi, q[0])) - 1.0) < 1e-8
        assert np.dot(xi, q[0]) > 0  # sign fixed by <beta(y,y), xi> > 0
        assert v1.dim >= n - p + 1
        # certified residual: beta(x, y) = sqrt(k) <x, y> xi on V1
        res = beta.components - np.sqrt(k) * xi[:, None, None] * np.eye(n)
        worst = np.linalg.norm(res.reshape(p * n, n) @ v1.projector(), 2)
        assert worst <= 10 * tol * max(1.0, beta.norm)


def test_lemma_decompose_errors():
    with pytest.raises(KSignError):
        lemma_decompose(umbilic_form(4, 2), -1.0)
    with pytest.raises(HypothesisViolation):
        rng = np.random.default_rng(13)
        lemma_decompose(random_form(rng, 4, 2), 1.0, tol=1e-10)
    with pytest.raises(DimensionError):
        lemma_decompose(umbilic_form(3, 2), 1.0)  # p > n - 2


def test_bilinear_form_validation_and_reconstruction():
    with pytest.raises(DimensionError):
        BilinearForm(np.random.default_rng(14).standard_normal((2, 3, 3)))
    rng = np.random.default_rng(15)
    beta = random_form(rng, 4, 2)
    x, y = rng.standard_normal(4), rng.standard_normal(4)
    assert np.allclose(beta(x, y), beta(y, x), atol=1e-13)
    assert beta.norm_sq == pytest.approx(np.sum(beta.components**2))
