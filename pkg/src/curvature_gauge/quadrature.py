"""Deterministic quadrature on unit spheres and products of round spheres.

Rules carry positive weights that sum to the exact sphere volume.  S^d is
parametrised by d-1 polar angles and one azimuth; each polar angle with
volume factor sin^k is handled by a Gauss-Gegenbauer rule in t = cos(phi)
(weight (1 - t^2)^{(k-1)/2}), the azimuth by midpoint-offset equispaced
angles.  All reductions run over the node-index order with a fixed pairwise
tree, so serial and worker-distributed evaluations agree bitwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iter_product

import numpy as np
from scipy.special import roots_gegenbauer

from .errors import ResolutionError

__all__ = [
    "SphereRule",
    "ProductRule",
    "sphere_volume",
    "circle_rule",
    "sphere_rule",
    "integrate_region",
    "integrate_unit_normal_bundle",
    "pairwise_sum",
]


def pairwise_sum(values: np.ndarray) -> float:
    """Pairwise reduction over index order (zero-padded to a power of two).

    Adjacent entries are added level by level; the tree depends only on the
    array length, never on how the values were produced, which makes every
    integral in this package reproducible bitwise across worker counts.
    """
    acc = np.ascontiguousarray(values, dtype=np.float64).ravel()
    if acc.size == 0:
        return 0.0
    size = 1 << (acc.size - 1).bit_length()
    if size != acc.size:
        acc = np.concatenate([acc, np.zeros(size - acc.size)])
    while acc.size > 1:
        acc = acc[0::2] + acc[1::2]
    return float(acc[0])


def sphere_volume(d: int) -> float:
    """Volume of the unit sphere S^d, 2 pi^{(d+1)/2} / Gamma((d+1)/2)."""
    return 2.0 * math.pi ** ((d + 1) / 2.0) / math.gamma((d + 1) / 2.0)


@dataclass(frozen=True)
class SphereRule:
    """Quadrature nodes (unit vectors) and positive weights on S^d."""

    d: int
    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.ascontiguousarray(self.nodes, dtype=float)
        weights = np.ascontiguousarray(self.weights, dtype=float)
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @property
    def n_nodes(self) -> int:
        return self.nodes.shape[0]


def circle_rule(n_nodes: int) -> SphereRule:
    """Equispaced midpoint rule on S^1: exact for trig polynomials of degree < N."""
    if n_nodes < 4:
        raise ResolutionError(f"need at least 4 circle nodes, got {n_nodes}")
    theta = (np.arange(n_nodes) + 0.5) * (2.0 * math.pi / n_nodes)
    nodes = np.stack([np.cos(theta), np.sin(theta)], axis=1)
    weights = np.full(n_nodes, 2.0 * math.pi / n_nodes)
    return SphereRule(1, nodes, weights)


def _azimuth_count(level: int) -> int:
    return max(8, 8 * level)


def _polar_count(level: int) -> int:
    # Even so that t = 0 (a coordinate hyperplane) is never a node.
    return 2 * level + 2


def sphere_rule(d: int, level: int) -> SphereRule:
    """Tensorised positive-weight rule on S^d with node count growing in level.

    Polynomials in the coordinates integrate exactly up to degree
    2*polar_count - 1, so constants and degree-2 moments are exact at every
    level; refining the level shrinks the error for non-polynomial
    integrands.
    """
    if d < 1:
        raise ValueError("need d >= 1")
    if level < 1:
        raise ValueError("need level >= 1")
    if d == 1:
        return circle_rule(_azimuth_count(level))

    q = _polar_count(level)
    polar_t, polar_w = [], []
    for j in range(1, d):
        k = d - j  # sin^k volume factor for this polar angle
        t, w = roots_gegenbauer(q, k / 2.0)
        polar_t.append(t)
        polar_w.append(w)
    azimuth = circle_rule(_azimuth_count(level))

    grids = np.meshgrid(*polar_t, np.arange(azimuth.n_nodes), indexing="ij")
    flat = [g.ravel() for g in grids]
    m = flat[0].size
    nodes = np.empty((m, d + 1))
    radial = np.ones(m)
    for j in range(d - 1):
        t = flat[j]
        nodes[:, j] = radial * t
        radial = radial * np.sqrt(1.0 - t**2)
    az_idx = flat[-1].astype(int)
    nodes[:, d - 1] = radial * azimuth.nodes[az_idx, 0]
    nodes[:, d] = radial * azimuth.nodes[az_idx, 1]

    wgrids = np.meshgrid(*polar_w, azimuth.weights, indexing="ij")
    weights = np.ones(m)
    for g in wgrids:
        weights = weights * g.ravel()
    return SphereRule(d, nodes, weights)


@dataclass(frozen=True)
class ProductRule:
    """Product quadrature over round-sphere factors of given radii.

    Node m corresponds to the tuple of factor unit vectors obtained by
    unraveling m over the factor node counts (lexicographic order); its
    weight is the product of factor weights times prod r_a^{d_a}, so the
    weights sum to the Riemannian volume of the product manifold.
    """

    rules: tuple[SphereRule, ...]
    radii: tuple[float, ...]

    def __post_init__(self):
        if len(self.rules) != len(self.radii):
            raise ValueError("one radius per factor rule")
        object.__setattr__(self, "rules", tuple(self.rules))
        object.__setattr__(self, "radii", tuple(float(r) for r in self.radii))

    @property
    def n_nodes(self) -> int:
        out = 1
        for rule in self.rules:
            out *= rule.n_nodes
        return out

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(rule.n_nodes for rule in self.rules)

    def weights(self) -> np.ndarray:
        factors = [
            rule.weights * r ** rule.d for rule, r in zip(self.rules, self.radii)
        ]
        out = factors[0]
        for f in factors[1:]:
            out = np.multiply.outer(out, f)
        return out.ravel()

    def points(self):
        """Iterate node tuples (one unit vector per factor) in index order."""
        for combo in iter_product(*(rule.nodes for rule in self.rules)):
            yield combo


def _node_values(rule_nodes, fn, count: int) -> np.ndarray:
    if callable(fn):
        return np.fromiter((float(fn(x)) for x in rule_nodes), dtype=float, count=count)
    return np.ascontiguousarray(fn, dtype=float)


def integrate_region(rule: SphereRule, f, indicator=None) -> float:
    """Sum of weight * f over nodes where the indicator holds.

    ``f`` and ``indicator`` may be callables on nodes or precomputed arrays
    in node order.  Excluded nodes contribute exactly 0.0 and the reduction
    is the fixed pairwise tree of :func:`pairwise_sum`.
    """
    values = _node_values(rule.nodes, f, rule.n_nodes)
    contrib = rule.weights * values
    if indicator is not None:
        if callable(indicator):
            mask = np.fromiter(
                (bool(indicator(x)) for x in rule.nodes), dtype=bool, count=rule.n_nodes
            )
        else:
            mask = np.ascontiguousarray(indicator, dtype=bool)
        contrib = np.where(mask, contrib, 0.0)
    return pairwise_sum(contrib)


def integrate_unit_normal_bundle(
    manifold_rule: ProductRule, fiber_rule: SphereRule, f, indicator=None
) -> float:
    """Iterated sum over the unit normal bundle, d(Sigma) = dM wedge dV.

    ``f(x, u)`` receives the manifold node tuple x and the fiber direction u
    expressed in the adapted orthonormal normal frame.  Integrands may speed
    up the inner loop by providing ``f.fiber_batch(x, fiber_rule)`` (values
    over all fiber nodes) and optionally ``f.fiber_mask(x, fiber_rule)``;
    the reduction order is identical on both paths.
    """
    fiber_w = fiber_rule.weights
    batch = getattr(f, "fiber_batch", None)
    mask_fn = getattr(f, "fiber_mask", None)
    outer = np.empty(manifold_rule.n_nodes)
    for m, x in enumerate(manifold_rule.points()):
        if batch is not None:
            values = batch(x, fiber_rule)
            if mask_fn is not None:
                mask = mask_fn(x, fiber_rule)
            elif indicator is not None:
                mask = np.fromiter(
                    (bool(indicator(x, u)) for u in fiber_rule.nodes),
                    dtype=bool,
                    count=fiber_rule.n_nodes,
                )
            else:
                mask = None
        else:
            values = np.fromiter(
                (float(f(x, u)) for u in fiber_rule.nodes),
                dtype=float,
                count=fiber_rule.n_nodes,
            )
            if indicator is not None:
                mask = np.fromiter(
                    (bool(indicator(x, u)) for u in fiber_rule.nodes),
                    dtype=bool,
                    count=fiber_rule.n_nodes,
                )
            else:
                mask = None
        contrib = fiber_w * values
        if mask is not None:
            contrib = np.where(mask, contrib, 0.0)
        outer[m] = pairwise_sum(contrib)
    return pairwise_sum(manifold_rule.weights() * outer)
