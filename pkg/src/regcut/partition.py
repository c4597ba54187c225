"""Heavy vertices, discretization step, refining partition and the
feasibility LP over part-inclusion probabilities."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .graph import Graph, members
from .regularity import Decomposition
from .simplex import ROW_TOL, feasible_point, row_violation

DELTA_MIN_FRACTION = 1e-9
# slack on the floor used for guess indices, so exact multiples stay exact
_FLOOR_EPS = 1e-9


def compute_delta(epsilon: float, alpha_max: float, sigma: int, m: float) -> float:
    """Discretization step ``floor(eps / (48 alpha_max sigma))`` in degree units,
    clamped below at ``m * 1e-9``; with no cut matrices it is ``m``."""
    if sigma == 0:
        return m
    if alpha_max <= 0:
        raise ValueError("alpha_max must be positive")
    return max(math.floor(epsilon / (48 * alpha_max * sigma)), m * DELTA_MIN_FRACTION)


def floor_index(x: float, step: float) -> int:
    """``floor(x / step)`` tolerant to representation error at exact multiples."""
    return int(math.floor(x / step + _FLOOR_EPS))


@dataclass(frozen=True)
class PartitionScheme:
    u_set: np.ndarray            # heavy vertices, mask
    delta_step: float
    parts: list[np.ndarray]      # vertex index arrays partitioning V \ U
    part_signatures: list[tuple[int, ...]]
    part_degree: np.ndarray
    in_s: np.ndarray             # (sigma, n_parts): part inside S_i
    in_t: np.ndarray
    degree: np.ndarray
    s_matrix: np.ndarray         # (sigma, n) copied from the decomposition
    t_matrix: np.ndarray

    @property
    def n_parts(self) -> int:
        return len(self.parts)

    @property
    def sigma(self) -> int:
        return self.s_matrix.shape[0]

    def membership(self) -> np.ndarray:
        """``(n_parts, n)`` 0/1 matrix of part membership."""
        out = np.zeros((self.n_parts, self.degree.size))
        for i, p in enumerate(self.parts):
            out[i, p] = 1.0
        return out

    def to_json(self) -> str:
        return json.dumps({
            "U": members(self.u_set),
            "delta_step": self.delta_step,
            "parts": [[int(v) for v in p] for p in self.parts],
            "signatures": [list(s) for s in self.part_signatures],
        })


def build_partition(g: Graph, d: Decomposition, delta_step: float) -> PartitionScheme:
    """Split ``V \\ U`` by membership in every ``S_i`` and ``T_i``, then chop each
    class (ascending vertex order, first fit) into chunks of degree at most
    ``delta_step``."""
    if not delta_step > 0:
        raise ValueError("delta_step must be positive")
    deg = g.degree
    smat, tmat = d.s_matrix(), d.t_matrix()
    heavy = deg >= delta_step
    classes: dict[tuple[int, ...], list[int]] = {}
    for v in np.flatnonzero(~heavy):
        sig = tuple(int(b) for b in np.concatenate([smat[:, v], tmat[:, v]]))
        classes.setdefault(sig, []).append(int(v))
    parts, sigs = [], []
    for sig, verts in classes.items():
        chunk, mass = [], 0.0
        for v in verts:
            if chunk and mass + deg[v] > delta_step:
                parts.append(np.array(chunk))
                sigs.append(sig)
                chunk, mass = [], 0.0
            chunk.append(v)
            mass += deg[v]
        parts.append(np.array(chunk))
        sigs.append(sig)
    sigma = d.sigma
    sig_arr = np.array(sigs, dtype=bool).reshape(len(sigs), 2 * sigma)
    return PartitionScheme(
        u_set=heavy,
        delta_step=float(delta_step),
        parts=parts,
        part_signatures=sigs,
        part_degree=np.array([deg[p].sum() for p in parts], dtype=float),
        in_s=sig_arr[:, :sigma].T.copy(),
        in_t=sig_arr[:, sigma:].T.copy(),
        degree=deg,
        s_matrix=smat,
        t_matrix=tmat,
    )


@dataclass(frozen=True)
class GuessVector:
    """Discretized targets ``s~_i = s_idx[i] * step``, ``t~_i = t_idx[i] * step``
    and the heavy vertices placed on the ``S`` side."""

    s_idx: np.ndarray
    t_idx: np.ndarray
    u_assignment: np.ndarray
    step: float

    @property
    def s_tilde(self) -> np.ndarray:
        return self.s_idx * self.step

    @property
    def t_tilde(self) -> np.ndarray:
        return self.t_idx * self.step


def planted_guess(scheme: PartitionScheme, s_star: np.ndarray) -> GuessVector:
    """Guess read off a known set: floors of ``d(S_i & S*)`` and ``d(T_i - S*)``."""
    deg, step = scheme.degree, scheme.delta_step
    s_true = scheme.s_matrix @ (deg * s_star)
    t_true = scheme.t_matrix @ (deg * ~s_star)
    return GuessVector(
        np.array([floor_index(x, step) for x in s_true], dtype=np.int64),
        np.array([floor_index(x, step) for x in t_true], dtype=np.int64),
        s_star & scheme.u_set,
        step,
    )


@dataclass(frozen=True)
class LpInstance:
    """Rows ``lower <= coef @ y + offset <= upper`` with ``y`` in ``[0,1]``.

    Row 0 is the size row, rows ``1..sigma`` the ``S_i`` rows, the rest the
    ``T_i`` rows.
    """

    coef: np.ndarray
    offset: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    @property
    def n_rows(self) -> int:
        return self.offset.size

    def violation(self, y) -> float:
        return row_violation(self.coef, self.offset, self.lower, self.upper, y)


def build_lp(scheme: PartitionScheme, guess: GuessVector, gamma: float, epsilon: float,
             d: Decomposition) -> LpInstance:
    m = d.m
    deg, dp, step = scheme.degree, scheme.part_degree, scheme.delta_step
    u_s = guess.u_assignment & scheme.u_set
    u_sbar = scheme.u_set & ~u_s
    size_coef = dp[None, :]
    size_off = [deg[u_s].sum()]
    s_coef = scheme.in_s * dp
    s_off = scheme.s_matrix @ (deg * u_s)
    # T rows count the parts left out: sum (1 - y_P) d(P)
    t_coef = -(scheme.in_t * dp)
    t_off = scheme.t_matrix @ (deg * u_sbar) + (scheme.in_t * dp).sum(axis=1)
    half = epsilon * m / 2
    return LpInstance(
        coef=np.vstack([size_coef, s_coef, t_coef]),
        offset=np.concatenate([size_off, s_off, t_off]),
        lower=np.concatenate([[gamma - half], guess.s_tilde, guess.t_tilde]),
        upper=np.concatenate([[gamma + half], guess.s_tilde + step, guess.t_tilde + step]),
    )


def lp_feasible(lp: LpInstance, tol: float = ROW_TOL):
    """A point satisfying every row within ``tol``, or ``None`` if none exists.

    Raises :class:`regcut.simplex.LpSolverError` if the simplex stalls.
    """
    return feasible_point(lp.coef, lp.offset, lp.lower, lp.upper, tol)
