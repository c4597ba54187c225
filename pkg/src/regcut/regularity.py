"""Constructive weak regularity: write ``A`` as a short sum of cut matrices.

The iteration works on ``B = D^{1/2} T_{eps/2} D^{1/2}``, whose cut values are
within ``eps*m/2`` of ``A``'s, and repeatedly subtracts ``CUT(S, T, alpha)``
for a pair ``(S, T)`` on which the residual is large. The potential
``h(R) = ||D^{-1/2} R D^{-1/2}||_F`` starts at ``sqrt(k)`` and drops by a fixed
amount per step, which bounds the number of cut matrices.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import cutnorm as cn
from .graph import Graph, as_mask, members
from .spectral import Spectrum, graph_spectrum, low_rank_B, normalize, threshold_rank


@dataclass(frozen=True)
class CutMatrix:
    """``alpha * d_S (x) d_T``; not symmetric in general."""

    s: np.ndarray
    t: np.ndarray
    alpha: float

    def dense(self, degree: np.ndarray) -> np.ndarray:
        return self.alpha * np.outer(degree * self.s, degree * self.t)


@dataclass(frozen=True)
class Step:
    """One iteration of the decomposition loop."""

    r_st: float          # R(S,T) before the update
    alpha: float
    d_s: float
    d_t: float
    h_before: float
    h_after: float

    @property
    def decrement(self) -> float:
        """Observed change of ``h**2``."""
        return self.h_after ** 2 - self.h_before ** 2

    @property
    def predicted_decrement(self) -> float:
        return -2 * self.alpha * self.r_st + self.alpha ** 2 * self.d_s * self.d_t


@dataclass
class Decomposition:
    cuts: list[CutMatrix]
    epsilon: float
    k: float
    m: float
    n: int
    mode: str = "theorem"
    oracle: str = "exact"
    h_B: float = float("nan")
    certified_residual: float | None = None
    stalled_witness: float | None = None
    trace: list[Step] = field(default_factory=list)

    @property
    def sigma(self) -> int:
        return len(self.cuts)

    @property
    def sigma_cap(self) -> int:
        return sigma_cap(self.k, self.epsilon, self.mode)

    @property
    def alpha_max(self) -> float:
        return max((abs(c.alpha) for c in self.cuts), default=0.0)

    @property
    def certified(self) -> bool:
        """True when the exact residual cut norm was computed and is within ``eps*m``."""
        return (self.certified_residual is not None
                and self.certified_residual <= self.epsilon * self.m + 1e-8)

    def s_matrix(self) -> np.ndarray:
        return np.array([c.s for c in self.cuts], dtype=bool).reshape(self.sigma, self.n)

    def t_matrix(self) -> np.ndarray:
        return np.array([c.t for c in self.cuts], dtype=bool).reshape(self.sigma, self.n)

    def alphas(self) -> np.ndarray:
        return np.array([c.alpha for c in self.cuts], dtype=float)

    def dense(self, degree: np.ndarray) -> np.ndarray:
        """The full matrix ``W = sum_i CUT(S_i, T_i, alpha_i)``."""
        ds = self.s_matrix() * degree
        dt = self.t_matrix() * degree
        return (ds.T * self.alphas()) @ dt

    def to_json(self) -> str:
        return json.dumps(decomposition_to_dict(self))


def sigma_cap(k: float, epsilon: float, mode: str = "theorem") -> int:
    if mode == "proposition":
        return math.ceil(1 / epsilon ** 2)
    return math.ceil(16 * k / epsilon ** 2)


def decomposition_to_dict(d: Decomposition) -> dict:
    return {
        "epsilon": d.epsilon,
        "k": d.k,
        "n": d.n,
        "m": d.m,
        "mode": d.mode,
        "cuts": [{"S": members(c.s), "T": members(c.t), "alpha": c.alpha} for c in d.cuts],
        "certified_residual": d.certified_residual,
        "stalled_witness": d.stalled_witness,
    }


def decomposition_from_dict(data: dict, g: Graph | None = None) -> Decomposition:
    n = int(data["n"]) if "n" in data else g.n
    m = float(data["m"]) if "m" in data else g.m
    cuts = [CutMatrix(as_mask(c["S"], n), as_mask(c["T"], n), float(c["alpha"]))
            for c in data["cuts"]]
    return Decomposition(cuts, float(data["epsilon"]), float(data["k"]), m, n,
                         mode=data.get("mode", "theorem"),
                         certified_residual=data.get("certified_residual"),
                         stalled_witness=data.get("stalled_witness"))


def decompose(g: Graph, epsilon: float, oracle: str = "auto", seed: int = 0,
              mode: str = "theorem", spectrum: Spectrum | None = None,
              certify: bool = True, restarts: int = cn.DEFAULT_RESTARTS) -> Decomposition:
    """Cut decomposition of ``g`` with ``||A - W||_C <= epsilon * m``.

    ``oracle`` is ``"exact"``, ``"heuristic"`` or ``"auto"`` (exact up to
    ``cutnorm.EXACT_CAP`` vertices). With the heuristic oracle a step is taken
    whenever the witness reaches ``epsilon*m/4``; when it falls short and the
    graph is small enough, the exact oracle takes over. If it falls short on a
    graph too large to check, the result carries ``stalled_witness`` and no
    certificate.

    ``mode="proposition"`` uses ``alpha = R(S,T) / (d(S) d(T))`` and stops once
    ``|R(S,T)| <= epsilon * h(B) * sqrt(d(S) d(T))`` for every pair (searched
    exhaustively up to 10 vertices); it caps the number of cuts at
    ``ceil(1/epsilon**2)`` and makes no cut-norm claim of its own.
    """
    if not 0 < epsilon < 2:
        raise ValueError(f"epsilon must lie in (0, 2), got {epsilon}")
    if mode not in ("theorem", "proposition"):
        raise ValueError(f"unknown mode {mode!r}")
    n, m, deg = g.n, g.m, g.degree
    if oracle == "auto":
        oracle = "exact" if n <= cn.EXACT_CAP else "heuristic"
    if oracle not in ("exact", "heuristic"):
        raise ValueError(f"unknown oracle {oracle!r}")
    spectrum = spectrum if spectrum is not None else graph_spectrum(g)
    delta = epsilon / 2
    k = threshold_rank(spectrum, delta).k
    assert k > 0, "the eigenvalue 1 always survives the threshold"
    b = low_rank_B(g, spectrum, delta)
    r = b.copy()
    rhat = normalize(g, r)
    h_b = float(np.linalg.norm(rhat))
    cap = sigma_cap(k, epsilon, mode)
    out = Decomposition([], epsilon, k, m, n, mode=mode, oracle=oracle, h_B=h_b)

    def find_witness():
        if mode == "proposition":
            if n <= 10:
                w = cn.normalized_cut_exact(r, deg)
            else:
                w = cn.cutnorm(r, oracle, seed + len(out.cuts), restarts)
            ds, dt = deg[w.s].sum(), deg[w.t].sum()
            if w.value <= epsilon * h_b * math.sqrt(ds * dt):
                return None
            return w
        if oracle == "exact":
            w = cn.cutnorm_exact(r)
            return w if w.value > epsilon * m / 2 else None
        w = cn.cutnorm_heuristic(r, restarts=restarts, seed=seed + len(out.cuts))
        if w.value >= epsilon * m / 4:
            return w
        if n <= cn.EXACT_CAP:
            w = cn.cutnorm_exact(r)
            return w if w.value > epsilon * m / 2 else None
        out.stalled_witness = w.value
        return None

    while len(out.cuts) < cap:
        w = find_witness()
        if w is None:
            break
        s, t = w.s, w.t
        ds, dt = float(deg[s].sum()), float(deg[t].sum())
        r_st = cn.block_sum(r, s, t)
        alpha = r_st / (ds * dt) if mode == "proposition" else r_st / m ** 2
        h_before = float(np.linalg.norm(rhat))
        block = np.ix_(s, t)
        r[block] -= alpha * np.outer(deg[s], deg[t])
        rhat[block] = normalize(g, r)[block]
        h_after = float(np.linalg.norm(rhat))
        out.cuts.append(CutMatrix(s.copy(), t.copy(), alpha))
        out.trace.append(Step(r_st, alpha, ds, dt, h_before, h_after))

    if certify and n <= cn.EXACT_CAP:
        out.certified_residual = residual_cutnorm_certificate(g, out)
    return out


def evaluate_W_cut(d: Decomposition, g: Graph, s) -> float:
    """``W(S, S-bar) = sum_i alpha_i d(S & S_i) d(S-bar & T_i)`` in ``O(sigma n)``."""
    x = as_mask(s, g.n)
    return float(evaluate_W_cuts(d, g, x[None, :])[0])


def evaluate_W_cuts(d: Decomposition, g: Graph, masks: np.ndarray) -> np.ndarray:
    """Vectorized :func:`evaluate_W_cut` over the rows of a ``(k, n)`` 0/1 array."""
    x = np.asarray(masks, dtype=float)
    if d.sigma == 0:
        return np.zeros(x.shape[0])
    ds = (x * g.degree) @ d.s_matrix().T
    dt = ((1 - x) * g.degree) @ d.t_matrix().T
    return (ds * dt) @ d.alphas()


def residual_cutnorm_certificate(g: Graph, d: Decomposition,
                                 n_cap: int = cn.EXACT_CAP) -> float:
    """Exact ``||A - W||_C``; refuses beyond the exact oracle's cap."""
    if g.n > n_cap:
        raise cn.OracleRefused(f"cannot certify residual for n={g.n} > cap {n_cap}")
    return cn.cutnorm_exact(g.adjacency - d.dense(g.degree), n_cap).value
