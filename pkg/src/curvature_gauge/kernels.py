"""Hot-loop kernels with a compiled core and a NumPy fallback.

The single performance-critical primitive of the toolkit is the sweep that,
for a batch of fiber directions u, assembles the shape operator
S(u) = sum_a u_a B_a and extracts |det S(u)| and its inertia index.  Sphere
quadrature drives this kernel millions of times, so a Cython implementation
is preferred; when the extension is unavailable (pure-Python install) the
module falls back to batched NumPy linear algebra with identical semantics.

``BACKEND`` records which implementation was selected at import time.
``benchmarks/bench_sweep.py`` compares the two.
"""

from __future__ import annotations

import numpy as np

try:  # compiled core, built by setup.py
    from . import _sweep_cy as _compiled
except ImportError:  # pragma: no cover - depends on build environment
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "numpy"

__all__ = ["BACKEND", "sweep_shape_operators", "sweep_numpy", "sweep_compiled"]


def _prepare(components: np.ndarray, directions: np.ndarray):
    comps = np.ascontiguousarray(components, dtype=np.float64)
    dirs = np.ascontiguousarray(directions, dtype=np.float64)
    if comps.ndim != 3 or comps.shape[1] != comps.shape[2]:
        raise ValueError(f"components must be (p, n, n), got {comps.shape}")
    if dirs.ndim != 2 or dirs.shape[1] != comps.shape[0]:
        raise ValueError("directions must be (F, p) matching components")
    return comps, dirs


def sweep_numpy(
    components: np.ndarray,
    directions: np.ndarray,
    tol: float = 1e-10,
    want_index: bool = True,
):
    """NumPy reference implementation of the shape-operator sweep."""
    comps, dirs = _prepare(components, directions)
    s = np.einsum("fa,aij->fij", dirs, comps)
    if want_index:
        w = np.linalg.eigvalsh(s)
        absdet = np.abs(np.prod(w, axis=1))
        thr = tol * np.maximum(1.0, np.sqrt(np.sum(s**2, axis=(1, 2))))
        index = np.sum(w < -thr[:, None], axis=1).astype(np.int64)
        return absdet, index
    return np.abs(np.linalg.det(s)), None


def sweep_compiled(
    components: np.ndarray,
    directions: np.ndarray,
    tol: float = 1e-10,
    want_index: bool = True,
):
    """Compiled Jacobi sweep; raises RuntimeError when the extension is absent."""
    if _compiled is None:
        raise RuntimeError("compiled kernel not available in this install")
    comps, dirs = _prepare(components, directions)
    return _compiled.sweep(comps, dirs, float(tol), bool(want_index))


if _compiled is not None:

    def sweep_shape_operators(components, directions, tol=1e-10, want_index=True):
        return sweep_compiled(components, directions, tol, want_index)

else:

    def sweep_shape_operators(components, directions, tol=1e-10, want_index=True):
        return sweep_numpy(components, directions, tol, want_index)


sweep_shape_operators.__doc__ = (
    "|det S(u)| and inertia index of S(u) = sum_a u_a B_a for each direction "
    "row u; dispatches to the %s backend selected at import." % BACKEND
)
