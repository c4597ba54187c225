"""Phase-1 simplex for two-sided row constraints over the unit box.

Finds ``y`` in ``[0, 1]^p`` with ``lower <= C y + offset <= upper`` or reports
infeasibility. Dense tableau, Bland's rule, so it terminates and is
deterministic.
"""
from __future__ import annotations

import numpy as np

ROW_TOL = 1e-7
PIVOT_TOL = 1e-11


class LpSolverError(RuntimeError):
    """The solver stalled or returned a point that fails the row check."""


def row_violation(coef, offset, lower, upper, y) -> float:
    """Largest violation of any row or box constraint at ``y``."""
    y = np.asarray(y, dtype=float)
    v = coef @ y + offset if coef.size else np.asarray(offset, dtype=float)
    worst = max(np.max(lower - v, initial=0.0), np.max(v - upper, initial=0.0))
    if y.size:
        worst = max(worst, -y.min(), y.max() - 1)
    return float(worst)


def _pivot(tab, r, c):
    tab[r] /= tab[r, c]
    col = tab[:, c].copy()
    col[r] = 0
    tab -= np.outer(col, tab[r])


def feasible_point(coef, offset, lower, upper, tol: float = ROW_TOL,
                   max_iter: int | None = None):
    """Return a feasible ``y`` or ``None``; raise :class:`LpSolverError` on stall."""
    coef = np.asarray(coef, dtype=float)
    offset, lower, upper = (np.asarray(a, dtype=float) for a in (offset, lower, upper))
    n_rows = offset.size
    p = coef.shape[1] if coef.ndim == 2 else 0
    coef = coef.reshape(n_rows, p)
    if np.any(lower > upper + tol):
        return None
    if p == 0:
        return np.zeros(0) if row_violation(coef, offset, lower, upper, np.zeros(0)) <= tol else None

    # G y <= h with y >= 0
    g = np.vstack([coef, -coef, np.eye(p)])
    h = np.concatenate([upper - offset, offset - lower, np.ones(p)])
    q = g.shape[0]
    neg = h < 0
    n_art = int(neg.sum())
    if n_art == 0:
        return np.zeros(p)
    sign = np.where(neg, -1.0, 1.0)
    # columns: y (p) | slack (q) | artificial (n_art) | rhs
    ncol = p + q + n_art
    tab = np.zeros((q + 1, ncol + 1))
    tab[:q, :p] = g * sign[:, None]
    tab[:q, p:p + q] = np.diag(sign)
    art_rows = np.flatnonzero(neg)
    tab[art_rows, p + q + np.arange(n_art)] = 1.0
    tab[:q, -1] = h * sign
    basis = np.where(neg, 0, p + np.arange(q))
    basis[art_rows] = p + q + np.arange(n_art)
    # objective row: minimize the artificial sum, reduced costs in tab[q]
    tab[q, p + q:ncol] = 1.0
    for r in art_rows:
        tab[q] -= tab[r]

    max_iter = max_iter or 50 * (q + ncol)
    scale = max(1.0, np.abs(tab[:q, -1]).max())
    for _ in range(max_iter):
        reduced = tab[q, :ncol]
        entering = np.flatnonzero(reduced < -PIVOT_TOL * scale)
        if entering.size == 0:
            break
        c = int(entering[0])
        col = tab[:q, c]
        ok = np.flatnonzero(col > PIVOT_TOL)
        if ok.size == 0:
            raise LpSolverError("phase-1 objective unbounded, which cannot happen")
        ratios = tab[ok, -1] / col[ok]
        best = ratios.min()
        ties = ok[ratios <= best + PIVOT_TOL * scale]
        r = int(ties[np.argmin(basis[ties])])
        _pivot(tab, r, c)
        basis[r] = c
    else:
        raise LpSolverError(f"simplex did not terminate in {max_iter} pivots")

    if -tab[q, -1] > tol * scale:
        return None
    y = np.zeros(ncol)
    y[basis] = tab[:q, -1]
    y = np.clip(y[:p], 0.0, 1.0)
    if row_violation(coef, offset, lower, upper, y) > tol:
        raise LpSolverError("phase-1 point fails the row check")
    return y
