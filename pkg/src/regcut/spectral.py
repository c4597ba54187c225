"""Eigendecomposition of the normalized adjacency, threshold rank and the
spectral truncation ``B``."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph, normalized_adjacency

OFFDIAG_TOL = 1e-10
MAX_SWEEPS = 100
# eigenvalues this close to the threshold count as not exceeding it
TIE_TOL = 1e-12


class EigenError(RuntimeError):
    def __init__(self, message, residual):
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs sorted by descending eigenvalue; ``vectors[:, i]`` pairs with
    ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class ThresholdData:
    delta: float
    k: float
    kept_indices: np.ndarray


def _jacobi(m: np.ndarray, tol: float, max_sweeps: int):
    a = np.array(m, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = max(np.linalg.norm(a), 1.0)

    def off(x):
        return np.sqrt(max(np.sum(x * x) - np.sum(np.diag(x) ** 2), 0.0))

    for _ in range(max_sweeps):
        if off(a) <= tol * scale:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) < 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2 * apq)
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1)) if theta else 1.0
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                ap, aq = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                ap, aq = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * ap - s * aq
                a[q, :] = s * ap + c * aq
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    residual = off(a)
    if residual <= tol * scale:
        return np.diag(a).copy(), v
    raise EigenError(f"Jacobi did not converge in {max_sweeps} sweeps", residual)


def eig_sym(m: np.ndarray, method: str = "lapack", tol: float = OFFDIAG_TOL,
            max_sweeps: int = MAX_SWEEPS) -> Spectrum:
    """Eigendecomposition of a symmetric matrix.

    ``method="lapack"`` calls :func:`numpy.linalg.eigh`; ``method="jacobi"``
    runs cyclic Jacobi rotations until the off-diagonal Frobenius mass falls
    below ``tol`` times the matrix norm, raising :class:`EigenError` after
    ``max_sweeps`` sweeps.
    """
    m = np.asarray(m, dtype=float)
    if not np.allclose(m, m.T, rtol=0, atol=1e-12):
        raise ValueError("matrix is not symmetric")
    if method == "lapack":
        try:
            w, v = np.linalg.eigh(m)
        except np.linalg.LinAlgError as exc:
            raise EigenError(f"LAPACK eigh failed: {exc}", float("nan")) from exc
    elif method == "jacobi":
        w, v = _jacobi(m, tol, max_sweeps)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(-w, kind="stable")
    return Spectrum(w[order], v[:, order])


def graph_spectrum(g: Graph, method: str = "lapack") -> Spectrum:
    return eig_sym(normalized_adjacency(g), method=method)


def kept(spec: Spectrum, delta: float) -> np.ndarray:
    return np.flatnonzero(np.abs(spec.values) > delta + TIE_TOL)


def threshold_rank(spec: Spectrum, delta: float) -> ThresholdData:
    """Sum of ``lambda_i**2`` over eigenvalues with ``|lambda_i| > delta``."""
    if not 0 < delta < 1:
        raise ValueError(f"delta must lie in (0, 1), got {delta}")
    idx = kept(spec, delta)
    return ThresholdData(delta, float(np.sum(spec.values[idx] ** 2)), idx)


def threshold_approximation(spec: Spectrum, delta: float) -> np.ndarray:
    """Truncated normalized matrix ``sum_{|l|>delta} l f f^T``."""
    idx = kept(spec, delta)
    f = spec.vectors[:, idx]
    return (f * spec.values[idx]) @ f.T


def low_rank_B(g: Graph, spec: Spectrum, delta: float) -> np.ndarray:
    """``D^{1/2} T_delta D^{1/2}``: cut values of ``A`` up to ``delta * m``."""
    if not 0 <= delta < 1:
        raise ValueError(f"delta must lie in [0, 1), got {delta}")
    t = threshold_approximation(spec, delta)
    r = np.sqrt(g.degree)
    b = t * r[:, None] * r[None, :]
    return (b + b.T) / 2


def normalize(g: Graph, m: np.ndarray) -> np.ndarray:
    """``D^{-1/2} M D^{-1/2}`` for an arbitrary (possibly asymmetric) ``M``."""
    r = 1.0 / np.sqrt(g.degree)
    return m * r[:, None] * r[None, :]
