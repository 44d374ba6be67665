"""Analytic Morse theory of height functions on the catalog immersions.

For a direction u the height function h_u(x) = <f(x), u> on a product of
round spheres has exactly one critical point per choice of signs (factor
maximum or minimum); its index is the sum of the dimensions of the maximised
factors.  Directions with a vanishing factor projection are the measure-zero
exceptional set: they raise GenericityError and callers retry after a
deterministic 1e-7 perturbation along a fixed pseudo-random direction.

The module verifies the total-curvature identity (normal-bundle determinant
integral = integrated Morse counts), its per-index refinement, and the weak
Morse inequalities mu_i >= beta_i against the topology catalog.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, GenericityError
from .quadrature import ProductRule, SphereRule, pairwise_sum, sphere_volume
from .report import VerificationReport
from .submanifolds import (
    CatalogImmersion,
    ProductOfSpheres,
    SphereInCodim,
    total_abs_curvature,
    total_curvature_by_index,
)

__all__ = [
    "CriticalPoint",
    "MorseProfile",
    "height_critical_points",
    "mu_counts",
    "mu_counts_batch",
    "chern_lashof_check",
    "shiohama_xu_check",
    "morse_inequality_check",
]

_DEGENERACY_EPS = 1e-10
# Fixed perturbation direction for non-generic height directions.
_PERTURB = np.random.default_rng(8675309).standard_normal(64)


@dataclass(frozen=True)
class CriticalPoint:
    point: np.ndarray
    index: int
    height: float
    hessian_eigenvalues: np.ndarray


@dataclass(frozen=True)
class MorseProfile:
    """Critical points and per-index counts mu_i of one height function."""

    direction: np.ndarray
    critical_points: tuple[CriticalPoint, ...]
    counts: np.ndarray

    @property
    def euler_characteristic(self) -> int:
        return int(sum((-1) ** i * c for i, c in enumerate(self.counts)))


def _profile_from_points(direction, pts, n) -> MorseProfile:
    counts = np.zeros(n + 1, dtype=np.int64)
    for cp in pts:
        counts[cp.index] += 1
    return MorseProfile(np.asarray(direction, float), tuple(pts), counts)


def height_critical_points(imm: CatalogImmersion, u: np.ndarray) -> MorseProfile:
    """Critical points, indices and Morse counts of h_u(x) = <f(x), u>."""
    u = np.asarray(u, dtype=float)
    if u.shape != (imm.ambient_dim,):
        raise DimensionError(f"direction must live in R^{imm.ambient_dim}")
    if abs(np.linalg.norm(u) - 1.0) > 1e-8:
        raise DimensionError("direction must be a unit vector")

    if isinstance(imm, ProductOfSpheres):
        u1, u2 = u[: imm.n1 + 1], u[imm.n1 + 1 :]
        m1, m2 = np.linalg.norm(u1), np.linalg.norm(u2)
        if min(m1, m2) < _DEGENERACY_EPS:
            raise GenericityError("a factor projection of u vanishes")
        hat1, hat2 = u1 / m1, u2 / m2
        pts = []
        for s1 in (-1.0, 1.0):
            for s2 in (-1.0, 1.0):
                point = np.concatenate([s1 * imm.r1 * hat1, s2 * imm.r2 * hat2])
                index = (imm.n1 if s1 > 0 else 0) + (imm.n2 if s2 > 0 else 0)
                height = s1 * imm.r1 * m1 + s2 * imm.r2 * m2
                hess = np.concatenate(
                    [
                        np.full(imm.n1, -s1 * m1 / imm.r1),
                        np.full(imm.n2, -s2 * m2 / imm.r2),
                    ]
                )
                pts.append(CriticalPoint(point, index, height, hess))
        return _profile_from_points(u, pts, imm.n)

    if isinstance(imm, SphereInCodim):
        proj = u[: imm.n + 1]
        m = np.linalg.norm(proj)
        if m < _DEGENERACY_EPS:
            raise GenericityError("u is normal to the sphere's ambient plane")
        hat = proj / m
        pts = []
        for s in (-1.0, 1.0):
            point = np.concatenate([s * imm.r * hat, np.zeros(imm.p - 1)])
            index = imm.n if s > 0 else 0
            height = s * imm.r * m
            hess = np.full(imm.n, -s * m / imm.r)
            pts.append(CriticalPoint(point, index, height, hess))
        return _profile_from_points(u, pts, imm.n)

    raise DimensionError(f"unsupported immersion {type(imm)!r}")


def mu_counts(imm: CatalogImmersion, u: np.ndarray, retries: int = 4) -> np.ndarray:
    """Morse counts of h_u, retrying non-generic u with a fixed perturbation."""
    u = np.asarray(u, dtype=float)
    for _ in range(retries):
        try:
            return height_critical_points(imm, u).counts
        except GenericityError:
            u = u + 1e-7 * _PERTURB[: u.shape[0]]
            u = u / np.linalg.norm(u)
    return height_critical_points(imm, u).counts


def mu_counts_batch(imm: CatalogImmersion, directions: np.ndarray) -> np.ndarray:
    """Morse count vectors for a batch of ambient unit directions.

    Vectorised over the (constant a.e.) catalog counts; the rare non-generic
    rows fall back to the perturb-and-retry scalar path.
    """
    dirs = np.asarray(directions, dtype=float)
    m = dirs.shape[0]
    counts = np.zeros((m, imm.n + 1), dtype=np.int64)
    if isinstance(imm, ProductOfSpheres):
        m1 = np.linalg.norm(dirs[:, : imm.n1 + 1], axis=1)
        m2 = np.linalg.norm(dirs[:, imm.n1 + 1 :], axis=1)
        generic = np.minimum(m1, m2) >= _DEGENERACY_EPS
        counts[generic, 0] = 1
        counts[generic, imm.n] += 1
        counts[generic, imm.n1] += 1
        counts[generic, imm.n2] += 1
    elif isinstance(imm, SphereInCodim):
        mp = np.linalg.norm(dirs[:, : imm.n + 1], axis=1)
        generic = mp >= _DEGENERACY_EPS
        counts[generic, 0] = 1
        counts[generic, imm.n] += 1
    else:
        raise DimensionError(f"unsupported immersion {type(imm)!r}")
    for row in np.nonzero(~generic)[0]:
        counts[row] = mu_counts(imm, dirs[row])
    return counts


def _ambient_mu_integrals(
    imm: CatalogImmersion, ambient_rule: SphereRule
) -> np.ndarray:
    """int_{S^{n+p-1}} mu_i(u) dS_u for every index i, by quadrature."""
    counts = mu_counts_batch(imm, ambient_rule.nodes)
    return np.array(
        [
            pairwise_sum(ambient_rule.weights * counts[:, i])
            for i in range(imm.n + 1)
        ]
    )


def chern_lashof_check(
    imm: CatalogImmersion,
    manifold_rule: ProductRule,
    fiber_rule: SphereRule,
    ambient_rule: SphereRule,
    rel_tol: float = 1e-3,
    index_tol: float = 1e-10,
) -> VerificationReport:
    """Both sides of int_{UN_f} |det A_xi| dSigma = sum_i int mu_i(u) dS_u."""
    t0 = time.perf_counter()
    vol = sphere_volume(imm.ambient_dim - 1)
    lhs = total_abs_curvature(imm, manifold_rule, fiber_rule, index_tol).value * vol
    rhs = float(np.sum(_ambient_mu_integrals(imm, ambient_rule)))
    rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs), 1e-300)
    rep = VerificationReport(
        "chern-lashof",
        inputs={
            "immersion": imm.name,
            "fiber_nodes": fiber_rule.n_nodes,
            "manifold_nodes": manifold_rule.n_nodes,
            "ambient_nodes": ambient_rule.n_nodes,
        },
    )
    rep.add("lhs_normal_bundle_integral", lhs, rel_tol, "quadrature")
    rep.add("rhs_morse_count_integral", rhs, rel_tol, "quadrature")
    rep.add("relative_discrepancy", rel, rel_tol, "quadrature")
    rep.status = "pass" if rel < rel_tol else "fail"
    rep.wall_time_s = time.perf_counter() - t0
    return rep


def shiohama_xu_check(
    imm: CatalogImmersion,
    i: int,
    manifold_rule: ProductRule,
    fiber_rule: SphereRule,
    ambient_rule: SphereRule,
    rel_tol: float = 1e-3,
    abs_tol: float = 1e-3,
    index_tol: float = 1e-10,
) -> VerificationReport:
    """Per-index refinement int_{U^i N_f} |det A_xi| dSigma = int mu_i dS."""
    if not 0 <= i <= imm.n:
        raise DimensionError(f"index {i} outside 0..{imm.n}")
    t0 = time.perf_counter()
    vol = sphere_volume(imm.ambient_dim - 1)
    taus = total_curvature_by_index(imm, manifold_rule, fiber_rule, index_tol)
    lhs = taus[i] * vol
    rhs = float(_ambient_mu_integrals(imm, ambient_rule)[i])
    if max(abs(lhs), abs(rhs)) < abs_tol:
        ok, rel = True, 0.0
    else:
        rel = abs(lhs - rhs) / max(abs(lhs), abs(rhs))
        ok = rel < rel_tol
    rep = VerificationReport(
        "shiohama-xu",
        inputs={
            "immersion": imm.name,
            "index": i,
            "fiber_nodes": fiber_rule.n_nodes,
            "ambient_nodes": ambient_rule.n_nodes,
        },
    )
    rep.add("lhs_index_slice_integral", lhs, rel_tol, "quadrature")
    rep.add("rhs_morse_count_integral", rhs, rel_tol, "quadrature")
    rep.add("relative_discrepancy", rel, rel_tol, "quadrature")
    rep.status = "pass" if ok else "fail"
    rep.wall_time_s = time.perf_counter() - t0
    return rep


def morse_inequality_check(
    imm: CatalogImmersion, n_directions: int = 64, seed: int = 20240811
) -> VerificationReport:
    """mu_i(u) >= beta_i at a deterministic sample of generic directions."""
    t0 = time.perf_counter()
    rng = np.random.default_rng(seed)
    betti = np.array(imm.poincare().coefficients, dtype=np.int64)
    chi = imm.euler_characteristic()
    worst_slack = None
    euler_ok = True
    for _ in range(n_directions):
        u = rng.standard_normal(imm.ambient_dim)
        u /= np.linalg.norm(u)
        counts = mu_counts(imm, u)
        slack = int(np.min(counts - betti))
        worst_slack = slack if worst_slack is None else min(worst_slack, slack)
        if int(np.sum((-1) ** np.arange(imm.n + 1) * counts)) != chi:
            euler_ok = False
    rep = VerificationReport(
        "morse-inequalities",
        inputs={"immersion": imm.name, "directions": n_directions, "seed": seed},
    )
    rep.add("min_mu_minus_betti", worst_slack, 0.0, "count")
    rep.add("euler_characteristic", chi, 0.0, "count")
    rep.status = "pass" if (worst_slack >= 0 and euler_ok) else "fail"
    rep.wall_time_s = time.perf_counter() - t0
    return rep
