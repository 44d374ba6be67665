"""Pinching functionals, empirical constant estimates and degenerating sequences.

The quantities here quantify how far a W-valued form beta is from a
spherical multiple of the metric, relative to the size of its admissible
shape-operator determinant integral:

* ``phi_k``      ||beta*beta - k <,>*<,>||^2 (plain Frobenius norm),
* ``phi_scal``   the same with the least-squares choice k = sc/(n(n-1)),
* ``psi``        integral of |det beta#(u)| over the admissible fiber region,
* ``omega_ratio``  phi / psi^{4/n}.

``estimate_constant`` minimises omega over forms obeying the pinching
constraint |sc| >= delta^2 ||beta||^2 by multistart derivative-free descent.
The result is an *empirical upper estimate* of the true positive infimum:
the search can only ever certify an upper bound, and reports label it so.

``example_sequence`` builds the explicit diagonal sequences along which the
ratio degenerates to zero once the pinching constraint is dropped, together
with the closed-form split phi = eta^{4(n-1)/n} rho and
psi_Omega = eta^{n-1} sigma over a fixed open fiber region.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .errors import (
    CodimensionError,
    ConditionError,
    ConstraintError,
    DegenerateRegion,
    DimensionError,
    EmptyDomain,
    PatternError,
    SignError,
)
from .quadrature import SphereRule, circle_rule, pairwise_sum, sphere_rule
from .tensor_core import BilinearForm, diagonal_form, kn_scalar, kn_vector, sc

__all__ = [
    "phi_k",
    "phi_scal",
    "RegionSpec",
    "region_of",
    "psi",
    "omega_ratio",
    "ConstantEstimate",
    "estimate_constant",
    "remark_bound",
    "normal_moment_closed_form",
    "SequencePattern",
    "default_pattern",
    "positive_sc_pattern",
    "SequenceRecord",
    "example_sequence",
    "example_beta_sequence",
    "sequence_region_arcs",
    "sequence_region_mask",
]

_GG_CACHE: dict[int, np.ndarray] = {}


def _gg(n: int) -> np.ndarray:
    if n not in _GG_CACHE:
        eye = np.eye(n)
        _GG_CACHE[n] = kn_scalar(eye, eye).values
    return _GG_CACHE[n]


def phi_k(beta: BilinearForm, k: float) -> float:
    """||beta * beta - k <,> * <,>||^2 under the Frobenius convention."""
    diff = kn_vector(beta, beta).values - float(k) * _gg(beta.n)
    return float(np.sum(diff**2))


def phi_scal(beta: BilinearForm) -> float:
    """phi_k at the scalar-normalised coefficient k = sc(beta) / (n(n-1))."""
    n = beta.n
    return phi_k(beta, sc(beta) / (n * (n - 1)))


@dataclass(frozen=True)
class RegionSpec:
    """Admissible fiber region: the full sphere S^{p-1} or the index window."""

    kind: str  # "omega" or "full"
    n: int
    p: int

    @property
    def window(self) -> tuple[int, int] | None:
        if self.kind == "omega":
            return (self.p, self.n - self.p)
        return None


def region_of(beta: BilinearForm, mode: str, k: float | None = None,
              tol: float = 1e-10):
    """Region spec plus a membership predicate on fiber directions.

    mode "prop23" selects the index window iff k > 0; mode "prop24" selects
    it iff sc(beta) > 0; otherwise the full sphere.  Boundary indices p and
    n - p are inside the window.
    """
    n, p = beta.n, beta.p
    if mode == "prop23":
        if k is None:
            raise ValueError("mode 'prop23' needs k")
        omega = k > 0
    elif mode == "prop24":
        omega = sc(beta) > 0
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if omega:
        if not (2 <= p and 2 * p <= n):
            raise CodimensionError(f"index window needs 2 <= p <= n/2, got p={p}, n={n}")
        spec = RegionSpec("omega", n, p)

        def member(u, _comp=beta.components, _tol=tol, _p=p, _n=n):
            _, idx = kernels.sweep_shape_operators(
                _comp, np.asarray(u, dtype=float)[None, :], _tol, want_index=True
            )
            return _p <= int(idx[0]) <= _n - _p

        return spec, member
    spec = RegionSpec("full", n, p)
    return spec, (lambda u: True)


def psi(beta: BilinearForm, region: RegionSpec, rule: SphereRule,
        tol: float = 1e-10) -> float:
    """Integral of |det beta#(u)| over the region, by the fixed sphere rule."""
    if rule.nodes.shape[1] != beta.p:
        raise DimensionError("fiber rule dimension must be p - 1")
    window = region.window
    absdet, index = kernels.sweep_shape_operators(
        beta.components, rule.nodes, tol, want_index=window is not None
    )
    contrib = rule.weights * absdet
    if window is not None:
        mask = (index >= window[0]) & (index <= window[1])
        contrib = np.where(mask, contrib, 0.0)
    return pairwise_sum(contrib)


def _pinching_ok(beta: BilinearForm, delta: float) -> bool:
    return abs(sc(beta)) >= delta**2 * beta.norm_sq - 1e-12 * max(1.0, beta.norm_sq)


def omega_ratio(beta: BilinearForm, mode: str, delta: float, rule: SphereRule,
                k: float | None = None, tol: float = 1e-10) -> float:
    """phi / psi^{4/n} for the selected mode, on the admissible domain."""
    if not _pinching_ok(beta, delta):
        raise ConstraintError(
            f"|sc| = {abs(sc(beta)):.3e} < delta^2 ||beta||^2 = "
            f"{delta**2 * beta.norm_sq:.3e}"
        )
    spec, _ = region_of(beta, mode, k=k, tol=tol)
    ps = psi(beta, spec, rule, tol)
    if ps <= 0.0:
        raise DegenerateRegion("psi vanishes on the admissible region")
    phi = phi_scal(beta) if mode == "prop24" else phi_k(beta, float(k))
    return phi / ps ** (4.0 / beta.n)


# ----------------------------------------------------------------------------
# Empirical estimation of the pinching constants

@dataclass(frozen=True)
class ConstantEstimate:
    """Empirical upper estimate of the positive infimum of omega.

    estimated_min is an upper bound on the true constant: the optimizer can
    only exhibit admissible forms, never certify a lower bound.
    """

    n: int
    p: int
    mode: str
    k: float | None
    delta: float
    estimated_min: float
    argmin_form: BilinearForm
    sample_count: int
    seed: int
    wall_time_s: float
    injected_candidate_best: float | None
    label: str = "empirical upper estimate"


def _pack_dim(n: int, p: int) -> int:
    return p * (n * (n + 1) // 2)


def _unpack(vec: np.ndarray, n: int, p: int) -> BilinearForm:
    iu = np.triu_indices(n)
    per = iu[0].size
    comp = np.zeros((p, n, n))
    for a in range(p):
        mat = np.zeros((n, n))
        mat[iu] = vec[a * per : (a + 1) * per]
        comp[a] = mat + mat.T - np.diag(np.diag(mat))
    return BilinearForm(comp)


def _pack(beta: BilinearForm) -> np.ndarray:
    iu = np.triu_indices(beta.n)
    return np.concatenate([beta.components[a][iu] for a in range(beta.p)])


def _sign_split_candidate(n: int, p: int, minus: int) -> BilinearForm:
    """Diagonal single-channel form with ``minus`` eigenvalues equal to -1."""
    values = np.zeros((n, p))
    values[:, 0] = 1.0
    values[n - minus :, 0] = -1.0
    return diagonal_form(values)


def _two_channel_candidate(n: int, p: int, mix: float) -> BilinearForm:
    """Umbilic first channel plus an indefinite split in the second channel."""
    values = np.zeros((n, p))
    values[:, 0] = 1.0
    half = n // 2
    values[:, 1] = math.sqrt(mix)
    values[n - half :, 1] *= -1.0
    return diagonal_form(values)


def _injected_candidates(n: int, p: int, mode: str, delta: float,
                         k: float | None) -> list[BilinearForm]:
    cands = [_sign_split_candidate(n, p, minus) for minus in range(n + 1)]
    if p >= 2:
        half = n // 2
        split = (n - 2 * half) ** 2 - n
        if delta**2 < n - 1:
            bound = n * (n - 1 - delta**2) / (delta**2 * n - split)
            if bound > 0:
                cands.append(_two_channel_candidate(n, p, 0.9 * bound))
        cands.append(_two_channel_candidate(n, p, 1.0))
    if mode == "prop23" and k not in (None, 0.0):
        cands.extend([c.scaled(t) for c in list(cands) for t in (0.5, 2.0)])
    return cands


def _unit_psi_normalized(beta: BilinearForm, mode: str, delta: float,
                         rule: SphereRule, k: float | None, tol: float) -> BilinearForm:
    """Rescale beta to psi = 1, legal whenever omega is scale invariant."""
    spec, _ = region_of(beta, mode, k=k, tol=tol)
    ps = psi(beta, spec, rule, tol)
    if ps <= 0.0:
        return beta
    return beta.scaled(ps ** (-1.0 / beta.n))


def estimate_constant(
    n: int,
    p: int,
    mode: str,
    delta: float,
    budget: int,
    seed: int,
    k: float | None = None,
    fiber_nodes: int = 256,
    level: int = 3,
    index_tol: float = 1e-10,
    n_random_starts: int = 6,
) -> ConstantEstimate:
    """Multistart constrained minimisation of omega over admissible forms.

    Starts are deterministic injected candidates plus rejection-sampled
    Gaussian forms satisfying |sc| >= delta^2 ||beta||^2 and psi > 0, refined
    by Nelder-Mead with constraint violations mapped to a large barrier.
    For k != 0 the search is confined to the norm annulus [1e-2, 1e2] since
    omega_k is not scale invariant there.  The winner is the lexicographic
    (value, start index) minimum, so results do not depend on how many
    workers (CURVATURE_GAUGE_THREADS) evaluate the starts.

    Raises EmptyDomain when no admissible start exists within ``budget``
    rejections; this happens exactly when delta^2 exceeds n - 1, the sharp
    bound on |sc| / ||beta||^2.
    """
    if not (2 <= p and 2 * p <= n):
        raise CodimensionError(f"need 2 <= p <= n/2, got p={p}, n={n}")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if budget < 100:
        raise ValueError("budget must be at least 100")
    if mode == "prop23" and k is None:
        raise ValueError("mode 'prop23' needs k")
    if mode not in ("prop23", "prop24"):
        raise ValueError(f"unknown mode {mode!r}")

    t0 = time.perf_counter()
    rule = circle_rule(fiber_nodes) if p == 2 else sphere_rule(p - 1, level)
    evals = 0

    def ratio_or_none(beta: BilinearForm):
        nonlocal evals
        evals += 1
        try:
            return omega_ratio(beta, mode, delta, rule, k=k, tol=index_tol)
        except (ConstraintError, DegenerateRegion, CodimensionError):
            return None

    starts: list[tuple[str, BilinearForm, float]] = []
    candidate_best = None
    for j, cand in enumerate(_injected_candidates(n, p, mode, delta, k)):
        val = ratio_or_none(cand)
        if val is not None:
            starts.append((f"candidate-{j}", cand, val))
            candidate_best = val if candidate_best is None else min(candidate_best, val)

    rng = np.random.default_rng(seed)
    dim = _pack_dim(n, p)
    accepted = 0
    rejections = 0
    while accepted < n_random_starts and rejections < budget:
        vec = rng.standard_normal(dim)
        scale = 10.0 ** rng.uniform(-1.0, 1.0) if (mode == "prop23" and k) else 1.0
        rejections += 1
        beta = _unpack(scale * vec, n, p)
        if not _pinching_ok(beta, delta):
            continue
        val = ratio_or_none(beta)
        if val is None:
            continue
        starts.append((f"random-{accepted}", beta, val))
        accepted += 1

    if not starts:
        raise EmptyDomain(
            f"no admissible start in {rejections} rejections; note "
            f"|sc| <= (n-1)||beta||^2 makes delta^2 > {n - 1} infeasible"
        )

    barrier = 1e60
    in_annulus = (lambda b: 1e-2 <= b.norm <= 1e2) if (mode == "prop23" and k) else (lambda b: True)

    def objective(vec: np.ndarray) -> float:
        beta = _unpack(vec, n, p)
        if not in_annulus(beta) or not _pinching_ok(beta, delta):
            return barrier
        val = ratio_or_none(beta)
        return barrier if val is None else val

    remaining = max(budget - evals, 60 * len(starts))
    per_start = max(60, remaining // len(starts))

    def descend(start):
        label, beta, start_val = start
        res = minimize(
            objective,
            _pack(beta),
            method="Nelder-Mead",
            options={"maxfev": per_start, "xatol": 1e-9, "fatol": 1e-12},
        )
        if res.fun < start_val:
            return float(res.fun), _unpack(res.x, n, p)
        return start_val, beta

    workers = int(os.environ.get("CURVATURE_GAUGE_THREADS", "1") or "1")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(descend, starts))
    else:
        results = [descend(s) for s in starts]

    best_idx = min(range(len(results)), key=lambda i: (results[i][0], i))
    best_val, best_form = results[best_idx]
    if mode == "prop24" or (mode == "prop23" and not k):
        normalized = _unit_psi_normalized(best_form, mode, delta, rule, k, index_tol)
        val = ratio_or_none(normalized)
        if val is not None and (candidate_best is None or val <= candidate_best):
            best_form, best_val = normalized, val
    return ConstantEstimate(
        n=n,
        p=p,
        mode=mode,
        k=k,
        delta=delta,
        estimated_min=float(best_val),
        argmin_form=best_form,
        sample_count=evals,
        seed=seed,
        wall_time_s=time.perf_counter() - t0,
        injected_candidate_best=candidate_best,
    )


def empirical_epsilon(
    n: int,
    lam: float,
    budget: int,
    seed: int,
    mode: str = "prop24",
    k: float | None = None,
    fiber_nodes: int = 256,
) -> float:
    """Empirical threshold min_p (c_hat/4)^{n/4} Vol(S^{n+p-1}) over 2 <= p <= n/2.

    ``lam`` is the pinching ratio |scal| / ||alpha||^2, which enters the
    form-level constraint as delta^2.  Because every c_hat is an empirical
    upper estimate of the true constant, the returned threshold is an upper
    estimate as well: comparisons against it are advisory, never assertions.
    """
    from .quadrature import sphere_volume

    best = None
    for p in range(2, n // 2 + 1):
        est = estimate_constant(
            n, p, mode, math.sqrt(lam), budget, seed, k=k, fiber_nodes=fiber_nodes
        )
        val = (est.estimated_min / 4.0) ** (n / 4.0) * sphere_volume(n + p - 1)
        best = val if best is None else min(best, val)
    return float(best)


# ----------------------------------------------------------------------------
# Closed-form upper bound from the explicit sign-split candidate

def normal_moment_closed_form(n: int, p: int) -> float:
    """int_{S^{p-1}} |<u, xi>|^n dS_u = 2 pi^{(p-1)/2} G((n+1)/2) / G((n+p)/2)."""
    return (
        2.0
        * math.pi ** ((p - 1) / 2.0)
        * math.gamma((n + 1) / 2.0)
        / math.gamma((n + p) / 2.0)
    )


def remark_bound(n: int, p: int, delta: float, l: int,
                 fiber_nodes: int = 256, level: int = 3) -> float:
    """Upper bound on the scalar-normalised constant from a sign-split form.

    Evaluates omega at beta(x, y) = (sum_{i<=l} x_i y_i - sum_{i>l} x_i y_i) xi,
    which is admissible exactly when delta^2 <= ((n-2l)^2 - n)/n; the closed
    form is 8 (n^2(n-1)^2 - S^2) / (n(n-1) W^{4/n}) with S = (n-2l)^2 - n and
    W the full-sphere |<u, xi>|^n moment, computed here by quadrature.
    """
    if not (2 <= p and 2 * p <= n):
        raise CodimensionError(f"need 2 <= p <= n/2, got p={p}, n={n}")
    if not 1 <= l <= n:
        raise ConditionError(f"need 1 <= l <= n, got l={l}")
    split = (n - 2 * l) ** 2 - n
    if split <= 0:
        raise ConditionError(f"(n-2l)^2 - n = {split} must be positive")
    if delta**2 > split / n + 1e-12:
        raise ConditionError(f"delta^2 = {delta**2} exceeds ((n-2l)^2 - n)/n = {split / n}")
    if not (p <= l <= n - p):
        # Outside the window the index set Omega is empty and the candidate
        # carries no determinant mass, so the bound is vacuous.
        raise ConditionError(f"l = {l} outside the index window [{p}, {n - p}]")
    rule = circle_rule(fiber_nodes) if p == 2 else sphere_rule(p - 1, level)
    moment = pairwise_sum(rule.weights * np.abs(rule.nodes[:, 0]) ** n)
    top = n * n * (n - 1) ** 2 - split**2
    return 8.0 * top / (n * (n - 1) * moment ** (4.0 / n))


# ----------------------------------------------------------------------------
# Degenerating sequences

@dataclass(frozen=True)
class SequencePattern:
    """Sign/magnitude pack instantiating the degenerating diagonal sequences.

    ``s`` scales the slow diagonal channel (a_j = s_j / m), ``t`` the cross
    channel (b_a = t_a / m), and ``theta`` is the fixed (p-1) x (n-1) base
    array rescaled each step so the normalisation constraint holds exactly.
    """

    n: int
    p: int
    s: tuple
    t: tuple
    theta: tuple
    name: str

    def theta_array(self) -> np.ndarray:
        return np.asarray(self.theta, dtype=float).reshape(self.p - 1, self.n - 1)


def default_pattern(n: int = 4, p: int = 2) -> SequencePattern:
    """Deterministic pattern with p leading minus signs in every channel."""
    if not (2 <= p and 2 * p <= n):
        raise CodimensionError(f"need 2 <= p <= n/2, got p={p}, n={n}")
    row = (-1.0,) * p + (1.0,) * (n - 1 - p)
    return SequencePattern(
        n=n, p=p, s=row, t=(1.0,) * (p - 1), theta=(row,) * (p - 1), name="default"
    )


def positive_sc_pattern(n: int = 4, p: int = 2) -> SequencePattern:
    """Variant whose scalar curvature stays positive (for k > 0 rescalings)."""
    if p != 2:
        raise PatternError("positive-sc pattern is defined for p = 2")
    if 2 * p > n:
        raise CodimensionError(f"need p <= n/2, got p={p}, n={n}")
    s = (-1.0, -1.0, float(n)) + (1.0,) * (n - 4)
    theta_row = (-0.5, -0.5) + (0.05,) * (n - 3)
    return SequencePattern(n=n, p=p, s=s, t=(1.0,), theta=(theta_row,), name="positive-sc")


@dataclass(frozen=True)
class SequenceRecord:
    """Scalars tracked along the degenerating sequence at one index m."""

    m: int
    gamma_norm: float
    sc_value: float
    rho: float
    sigma: float
    ratio: float


_REGION_MARGIN = 0.2


def sequence_region_arcs() -> tuple[tuple[float, float], ...]:
    """Fixed open fiber arcs contained in the index window for all m.

    In the limit the shape-operator entries have signs (sign cos, sign of
    sin times the theta row), which puts the first and third quadrants inside
    the window for the patterns above; the margin absorbs the O(eta^{1/2})
    boundary drift at finite m.
    """
    return (
        (_REGION_MARGIN, math.pi / 2 - _REGION_MARGIN),
        (math.pi + _REGION_MARGIN, 3 * math.pi / 2 - _REGION_MARGIN),
    )


def sequence_region_mask(rule: SphereRule) -> np.ndarray:
    angles = np.mod(np.arctan2(rule.nodes[:, 1], rule.nodes[:, 0]), 2 * math.pi)
    mask = np.zeros(rule.n_nodes, dtype=bool)
    for lo, hi in sequence_region_arcs():
        mask |= (angles > lo) & (angles < hi)
    return mask


def _sequence_data(m: int, pattern: SequencePattern):
    n, p = pattern.n, pattern.p
    if m < 1:
        raise ValueError("need m >= 1")
    eta = 1.0 / m
    s = np.asarray(pattern.s, dtype=float)
    t = np.asarray(pattern.t, dtype=float)
    theta0 = pattern.theta_array()
    if s.shape != (n - 1,) or t.shape != (p - 1,) or theta0.shape != (p - 1, n - 1):
        raise PatternError("pattern array shapes do not match (n, p)")

    a = s / m
    b = t / m
    e_slow = 2.0 * (n - 1) / n   # exponent on the eta scale of the a channel
    e_cross = (n - 2.0) / n      # exponent of the b channel
    # Normalisation: eta^{2(n-2)/n} sum a^2 + sum theta^2 = 1 keeps
    # ||gamma_m|| = 1 exactly; kappa solves it for the theta rescaling.
    kappa_sq = (1.0 - eta ** (2.0 * (n - 2) / n) * float(np.sum(a**2))) / float(
        np.sum(theta0**2)
    )
    if kappa_sq <= 0:
        raise PatternError("theta normalisation constraint unsatisfiable")
    theta = math.sqrt(kappa_sq) * theta0
    gamma1_sq = 1.0 - eta**2 - eta ** (2.0 * (n - 2) / n) * float(np.sum(b**2))
    if gamma1_sq <= 0:
        raise PatternError("gamma^(1) normalisation constraint unsatisfiable")
    gamma1 = math.sqrt(gamma1_sq)

    # Index-window constraints on the two displayed diagonal matrices.
    w1 = np.concatenate([[gamma1], eta**e_slow * a])
    if not (p <= int(np.sum(w1 < 0)) <= n - p):
        raise PatternError("slow-channel index window violated")
    for alpha in range(p - 1):
        w2 = np.concatenate([[b[alpha]], eta ** (2.0 / n) * theta[alpha]])
        if not (p <= int(np.sum(w2 < 0)) <= n - p):
            raise PatternError(f"cross-channel index window violated (alpha={alpha + 2})")

    values = np.zeros((n, p))
    values[0, 0] = gamma1
    values[0, 1:] = eta**e_cross * b
    values[1:, 0] = eta**e_slow * a
    values[1:, 1:] = eta * theta.T
    return eta, values


def example_sequence(
    m: int, n: int, p: int, pattern: SequencePattern, fiber_nodes: int = 256
) -> tuple[BilinearForm, SequenceRecord]:
    """Sequence member gamma_m plus its degeneration record.

    rho and sigma are the eta-rescaled residual norm and region integral,
    phi_scal(gamma_m) = eta^{4(n-1)/n} rho (rho from the exact diagonal
    closed form, cross-checked against the full tensor route in the tests)
    and psi over the fixed arcs = eta^{n-1} sigma.
    """
    if (n, p) != (pattern.n, pattern.p):
        raise PatternError("pattern was built for different (n, p)")
    if p != 2:
        raise PatternError("the fixed fiber region machinery requires p = 2")
    eta, values = _sequence_data(m, pattern)
    gamma = diagonal_form(values)

    gram = values @ values.T
    scv = float(np.sum(gram) - np.trace(gram))
    resid = gram - scv / (n * (n - 1))
    np.fill_diagonal(resid, 0.0)
    phi_closed = 8.0 * float(np.sum(resid**2))
    rho = phi_closed / eta ** (4.0 * (n - 1) / n)

    rule = circle_rule(fiber_nodes)
    mask = sequence_region_mask(rule)
    absdet, _ = kernels.sweep_shape_operators(
        gamma.components, rule.nodes, 0.0, want_index=False
    )
    psi_omega = pairwise_sum(np.where(mask, rule.weights * absdet, 0.0))
    sigma = psi_omega / eta ** (n - 1)
    ratio = phi_closed / psi_omega ** (4.0 / n)

    record = SequenceRecord(
        m=m,
        gamma_norm=gamma.norm,
        sc_value=scv,
        rho=rho,
        sigma=sigma,
        ratio=ratio,
    )
    return gamma, record


def example_beta_sequence(
    m: int, k: float, pattern: SequencePattern, fiber_nodes: int = 256
) -> BilinearForm:
    """Rescaled member beta_m with sc(beta_m) = n(n-1) k.

    The scaling sqrt(n(n-1) k / sc(gamma_m)) transfers the fixed-k ratio of
    beta_m exactly onto the scalar-normalised ratio of gamma_m; it requires
    k sc(gamma_m) > 0.
    """
    gamma, record = example_sequence(m, pattern.n, pattern.p, pattern, fiber_nodes)
    if k * record.sc_value <= 0:
        raise SignError(f"k sc(gamma_m) = {k * record.sc_value:.3e} must be positive")
    n = pattern.n
    return gamma.scaled(math.sqrt(n * (n - 1) * k / record.sc_value))
