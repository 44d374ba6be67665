"""Algebra of symmetric vector-valued bilinear forms and (0,4)-curvature tensors.

A form beta on an n-dimensional inner-product space V with values in a
p-dimensional inner-product space W is stored as p symmetric n x n component
matrices B_a, one per element of the standard orthonormal basis of W.  The
module provides the scalar and vector-valued Kulkarni-Nomizu products, the
flatness test, nullity spaces, shape operators beta#(u) with their inertia,
the algebraic scalar curvature sc(beta), the Gauss-equation curvature tensor
and the recovery of the spherical-multiple decomposition for forms with
beta * beta = k <,> * <,>.

All tensor norms are plain Frobenius norms over all n^4 components.  The
trace convention scal(T) = sum_{i,j} T(e_i, e_j, e_j, e_i) is fixed so that
scal(gauss_curvature(alpha)) == sc(alpha); with it the round unit sphere has
scal = +n(n-1) and curvature tensor exactly equal to r1_tensor(n).

Every type is an immutable value and every operation is a pure function, so
the module is safe for concurrent use without locking.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionError,
    HypothesisViolation,
    KSignError,
    NormalizationError,
)

__all__ = [
    "BilinearForm",
    "QuadTensor",
    "SymmetricOperator",
    "Subspace",
    "kn_scalar",
    "kn_vector",
    "is_flat",
    "nullity_space",
    "sharp",
    "index_of",
    "sc",
    "gauss_curvature",
    "r1_tensor",
    "scal",
    "lemma_decompose",
    "umbilic_form",
    "diagonal_form",
    "symmetrized",
]


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=float)
    arr.setflags(write=False)
    return arr


def symmetrized(mat: np.ndarray) -> np.ndarray:
    """Exactly symmetric average (m + m^T)/2 (float addition commutes)."""
    mat = np.asarray(mat, dtype=float)
    return (mat + mat.swapaxes(-1, -2)) / 2.0


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric W-valued bilinear form, stored as p symmetric n x n matrices.

    ``components[a]`` is the matrix of <beta(.,.), xi_a> in an orthonormal
    basis of V, for the a-th standard basis vector xi_a of W.
    """

    components: np.ndarray

    def __post_init__(self):
        comp = np.asarray(self.components, dtype=float)
        if comp.ndim != 3 or comp.shape[1] != comp.shape[2]:
            raise DimensionError(f"components must be (p, n, n), got {comp.shape}")
        if comp.shape[1] < 2 or comp.shape[0] < 1:
            raise DimensionError("need n >= 2 and p >= 1")
        if not np.array_equal(comp, comp.transpose(0, 2, 1)):
            raise DimensionError("component matrices must be exactly symmetric")
        object.__setattr__(self, "components", _readonly(comp))

    @property
    def n(self) -> int:
        return self.components.shape[1]

    @property
    def p(self) -> int:
        return self.components.shape[0]

    @property
    def norm_sq(self) -> float:
        """||beta||^2 = sum of squared Frobenius norms of the components."""
        return float(np.sum(self.components**2))

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def __call__(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Evaluate beta(x, y) as a vector in W."""
        return np.einsum("aij,i,j->a", self.components, x, y)

    def scaled(self, t: float) -> "BilinearForm":
        return BilinearForm(t * self.components)


def umbilic_form(n: int, p: int, axis: int = 0, scale: float = 1.0) -> BilinearForm:
    """The form scale * <.,.> xi_axis, i.e. B_axis = scale * I."""
    comp = np.zeros((p, n, n))
    comp[axis] = scale * np.eye(n)
    return BilinearForm(comp)


def diagonal_form(values: np.ndarray) -> BilinearForm:
    """Diagonal form with beta(e_i, e_i) = values[i] in W; values is (n, p)."""
    values = np.asarray(values, dtype=float)
    n, p = values.shape
    comp = np.zeros((p, n, n))
    for a in range(p):
        comp[a] = np.diag(values[:, a])
    return BilinearForm(comp)


@dataclass(frozen=True)
class QuadTensor:
    """Real (0,4)-tensor on V with curvature-type symmetries."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 4 or len(set(vals.shape)) != 1:
            raise DimensionError(f"values must be (n, n, n, n), got {vals.shape}")
        object.__setattr__(self, "values", _readonly(vals))

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def norm_sq(self) -> float:
        return float(np.sum(self.values**2))

    @property
    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq))

    def __sub__(self, other: "QuadTensor") -> "QuadTensor":
        if self.n != other.n:
            raise DimensionError("tensor dimensions differ")
        return QuadTensor(self.values - other.values)

    def __rmul__(self, t: float) -> "QuadTensor":
        return QuadTensor(float(t) * self.values)


@dataclass(frozen=True)
class SymmetricOperator:
    """Selfadjoint endomorphism of (V, <,>)."""

    entries: np.ndarray

    def __post_init__(self):
        ent = np.asarray(self.entries, dtype=float)
        if ent.ndim != 2 or ent.shape[0] != ent.shape[1]:
            raise DimensionError(f"entries must be square, got {ent.shape}")
        if not np.array_equal(ent, ent.T):
            raise DimensionError("entries must be exactly symmetric")
        object.__setattr__(self, "entries", _readonly(ent))

    @property
    def n(self) -> int:
        return self.entries.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.entries)


@dataclass(frozen=True)
class Subspace:
    """Subspace of R^n given by an orthonormal basis (rows of ``basis``)."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float).reshape(-1, self.ambient_dim)
        object.__setattr__(self, "basis", _readonly(basis))

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def projector(self) -> np.ndarray:
        return self.basis.T @ self.basis


def kn_scalar(phi: np.ndarray, psi: np.ndarray) -> QuadTensor:
    """Kulkarni-Nomizu product of two symmetric scalar bilinear forms.

    T(i,j,k,l) = phi(i,k)psi(j,l) + phi(j,l)psi(i,k)
               - phi(i,l)psi(j,k) - phi(j,k)psi(i,l).
    """
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    if phi.shape != psi.shape or phi.ndim != 2 or phi.shape[0] != phi.shape[1]:
        raise DimensionError(f"incompatible shapes {phi.shape} and {psi.shape}")
    # Grouping (P1 + P2) - (P3 + P4) makes the curvature-type symmetries
    # exact in floating point, not just up to rounding.
    t = (
        np.einsum("ik,jl->ijkl", phi, psi) + np.einsum("jl,ik->ijkl", phi, psi)
    ) - (
        np.einsum("il,jk->ijkl", phi, psi) + np.einsum("jk,il->ijkl", phi, psi)
    )
    return QuadTensor(t)


def kn_vector(beta: BilinearForm, gamma: BilinearForm) -> QuadTensor:
    """Kulkarni-Nomizu product of two W-valued forms via the W inner product."""
    if beta.n != gamma.n or beta.p != gamma.p:
        raise DimensionError("forms must share n and p")
    b, c = beta.components, gamma.components
    t = (
        np.einsum("aik,ajl->ijkl", b, c) + np.einsum("ajl,aik->ijkl", b, c)
    ) - (
        np.einsum("ail,ajk->ijkl", b, c) + np.einsum("ajk,ail->ijkl", b, c)
    )
    return QuadTensor(t)


def is_flat(beta: BilinearForm, tol: float = 1e-10) -> bool:
    """True iff ||beta * beta|| <= tol * max(1, ||beta||^2)."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return kn_vector(beta, beta).norm <= tol * max(1.0, beta.norm_sq)


def nullity_space(beta: BilinearForm, tol: float = 1e-10) -> Subspace:
    """Kernel of the stacked (p n) x n component matrix, via SVD.

    Singular values below tol * sigma_max count as zero, so the rank decision
    is invariant under rescaling beta -> t beta.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    stacked = beta.components.reshape(beta.p * beta.n, beta.n)
    _, s, vt = np.linalg.svd(stacked)
    cutoff = tol * (s[0] if s.size else 0.0)
    rank = int(np.sum(s > cutoff))
    return Subspace(beta.n, vt[rank:].copy())


def sharp(beta: BilinearForm, u: np.ndarray) -> SymmetricOperator:
    """Shape operator beta#(u) = sum_a u_a B_a for a unit vector u in W."""
    u = np.asarray(u, dtype=float)
    if u.shape != (beta.p,):
        raise DimensionError(f"direction must have length p={beta.p}")
    if abs(np.linalg.norm(u) - 1.0) > 1e-10:
        raise NormalizationError(f"|u| = {np.linalg.norm(u)!r} is not 1")
    return SymmetricOperator(np.einsum("a,aij->ij", u, beta.components))


def index_of(op: SymmetricOperator | np.ndarray, tol: float = 1e-10) -> int:
    """Number of eigenvalues below -tol * max(1, ||S||_F).

    Eigenvalues within the symmetric band around zero count as zero, which
    keeps index decisions stable under quadrature-level perturbations.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    entries = op.entries if isinstance(op, SymmetricOperator) else symmetrized(op)
    w = np.linalg.eigvalsh(entries)
    thr = tol * max(1.0, float(np.linalg.norm(entries)))
    return int(np.sum(w < -thr))


def sc(beta: BilinearForm) -> float:
    """Algebraic scalar curvature sum_{i,j} [<b_ii, b_jj> - ||b_ij||^2].

    Equals (1/2) sum_{i,j} (beta*beta)(e_i, e_j, e_i, e_j), is basis
    independent, and reduces to sum_a (tr B_a)^2 - ||beta||^2.
    """
    traces = np.trace(beta.components, axis1=1, axis2=2)
    return float(np.sum(traces**2) - beta.norm_sq)


def gauss_curvature(alpha: BilinearForm) -> QuadTensor:
    """Curvature tensor R = -(1/2) alpha * alpha of the Gauss equation."""
    return QuadTensor(-0.5 * kn_vector(alpha, alpha).values)


def r1_tensor(n: int) -> QuadTensor:
    """Unit-curvature comparison tensor -(1/2) g * g.

    Components are R1(i,j,k,l) = -(d_ik d_jl - d_il d_jk); this is exactly
    the curvature tensor of the round unit sphere, with scal(R1) = n(n-1).
    """
    if n < 2:
        raise DimensionError("need n >= 2")
    eye = np.eye(n)
    t = -(np.einsum("ik,jl->ijkl", eye, eye) - np.einsum("il,jk->ijkl", eye, eye))
    return QuadTensor(t)


def scal(tensor: QuadTensor) -> float:
    """Trace scal(T) = sum_{i,j} T(e_i, e_j, e_j, e_i).

    The sign is fixed so that scal(gauss_curvature(alpha)) == sc(alpha).
    """
    return float(np.einsum("ijji->", tensor.values))


# Deterministic generic directions tried by lemma_decompose; each has all
# coordinates nonzero so eigenvalue clusters of sharp(beta, u0) separate for
# generic inputs, and later entries cover unlucky coincidences.
def _generic_directions(p: int):
    base = 1.0 / np.sqrt(1.0 + np.arange(p))
    yield base / np.linalg.norm(base)
    alt = base * np.where(np.arange(p) % 2 == 0, 1.0, -1.0)
    yield alt / np.linalg.norm(alt)
    for a in range(p):
        e = np.zeros(p)
        e[a] = 1.0
        yield e


def _eigen_clusters(w: np.ndarray, gap: float):
    """Split sorted eigenvalues into clusters separated by more than ``gap``."""
    clusters = [[0]]
    for i in range(1, len(w)):
        if w[i] - w[i - 1] > gap:
            clusters.append([i])
        else:
            clusters[-1].append(i)
    return clusters


def lemma_decompose(
    beta: BilinearForm, k: float, tol: float = 1e-8
) -> tuple[np.ndarray, Subspace]:
    """Recover (xi, V1) with beta(x, y) = sqrt(k) <x, y> xi for y in V1.

    Requires beta * beta = k <,> * <,> up to ``tol`` and p <= n - 2; returns
    a unit xi in W (signed so <beta(y,y), xi> > 0 on V1) and a subspace V1 of
    dimension at least n - p + 1.

    The candidate xi is read off the dominant eigenvalue cluster of a generic
    shape operator, and V1 is the SVD kernel of the stacked residual
    beta - sqrt(k) <,> xi, so the construction certifies itself.
    """
    if k <= 0:
        raise KSignError(f"k = {k} must be positive")
    n, p = beta.n, beta.p
    if p > n - 2:
        raise DimensionError("need dim W <= dim V - 2")

    gg = kn_scalar(np.eye(n), np.eye(n))
    residual = float(np.linalg.norm(kn_vector(beta, beta).values - k * gg.values))
    scale_sq = max(1.0, beta.norm_sq)
    if residual > tol * scale_sq:
        raise HypothesisViolation(
            f"||beta*beta - k g*g|| = {residual:.3e} exceeds tol*max(1,||beta||^2)"
        )

    sqrt_k = np.sqrt(k)
    scale = max(1.0, beta.norm)
    for u0 in _generic_directions(p):
        op = sharp(beta, u0)
        w, vecs = np.linalg.eigh(op.entries)
        gap = max(10.0 * tol, 1e-8) * max(1.0, float(np.linalg.norm(op.entries)))
        for cluster in sorted(_eigen_clusters(w, gap), key=len, reverse=True):
            if len(cluster) < n - p + 1:
                continue
            ys = vecs[:, cluster]
            xi_raw = np.einsum("aij,ik,jk->a", beta.components, ys, ys)
            nrm = np.linalg.norm(xi_raw)
            if nrm <= tol * scale:
                continue
            xi = xi_raw / nrm
            res = beta.components - sqrt_k * xi[:, None, None] * np.eye(n)
            v1 = nullity_space(BilinearForm(res), max(tol, 1e-12))
            if v1.dim < n - p + 1:
                continue
            diag = np.einsum("aij,ki,kj->ka", beta.components, v1.basis, v1.basis)
            if np.any(diag @ xi <= 0):
                continue
            stacked = res.reshape(p * n, n) @ v1.projector()
            worst = float(np.linalg.norm(stacked, 2))
            if worst <= 10.0 * tol * scale:
                return xi, v1
    raise HypothesisViolation("decomposition not recoverable at this tolerance")
