"""Approximate max cut, max bisection and min bisection from a cut decomposition.

The pipeline decomposes ``A`` to accuracy ``eps/4``, guesses the discretized
intersections of the target set with every ``S_i`` and ``T_i`` together with
the side of each heavy vertex, solves the feasibility LP for each guess,
rounds every feasible LP point ``ceil(10/eps)`` times and keeps the sample with
the best approximate cut ``W(S, S-bar)`` among those of the right size.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .cutnorm import subset_masks
from .graph import Graph, as_mask, cut_value, cut_values_batch
from .partition import (GuessVector, PartitionScheme, build_lp, build_partition,
                        compute_delta, floor_index, lp_feasible, planted_guess)
from .regularity import Decomposition, decompose, evaluate_W_cuts

DEFAULT_BUDGET = 10 ** 6
BRUTE_FORCE_CAP = 20


class NoFeasibleSample(RuntimeError):
    """No rounded set landed inside the size window."""

    def __init__(self, closest_gap: float, window: float):
        super().__init__(
            f"no sampled set satisfies |d(S) - gamma| <= {window:.6g}; "
            f"closest achieved gap {closest_gap:.6g}")
        self.closest_gap = closest_gap
        self.window = window


@dataclass(frozen=True)
class Prepared:
    """Decomposition and partition shared by every guess and every target size."""

    graph: Graph
    epsilon: float
    decomposition: Decomposition
    delta_step: float
    scheme: PartitionScheme


def prepare(g: Graph, epsilon: float, oracle: str = "auto", seed: int = 0,
            delta_step: float | None = None) -> Prepared:
    """Decompose at accuracy ``epsilon/4`` and build the partition.

    ``delta_step`` overrides the computed discretization step; it exists to
    exercise the rounding on coarse partitions and voids the accuracy claims.
    """
    d = decompose(g, epsilon / 4, oracle=oracle, seed=seed)
    if delta_step is None:
        delta_step = compute_delta(epsilon, d.alpha_max, d.sigma, g.m)
    return Prepared(g, epsilon, d, delta_step, build_partition(g, d, delta_step))


@dataclass(frozen=True)
class SolveRequest:
    objective: str = "maximize"
    gamma: float = 0.0
    epsilon: float = 0.5
    budget: int = DEFAULT_BUDGET
    planted: object = None       # vertex set: single guess read off this set
    seed: int = 0
    oracle: str = "auto"
    delta_step: float | None = None
    window: float | None = None  # allowed |d(S) - gamma|; defaults to epsilon * m

    def validate(self, g: Graph):
        if self.objective not in ("maximize", "minimize"):
            raise ValueError(f"objective must be maximize or minimize, got {self.objective!r}")
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon}")
        if not 0 <= self.gamma <= g.m:
            raise ValueError(f"gamma must lie in [0, m={g.m:g}], got {self.gamma}")
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


@dataclass
class SolveResult:
    s: np.ndarray
    cut_value_A: float
    cut_value_W: float
    degree_mass: float
    guesses_tried: int
    certified: bool
    gamma: float = float("nan")
    feasible_guesses: int = 0
    prepared: Prepared | None = field(default=None, repr=False)


def enumerate_guesses(scheme: PartitionScheme, gamma: float, epsilon: float, m: float):
    """Every guess whose LP could be feasible, in a fixed order.

    Heavy-vertex subsets run in binary counting order; for each, ``s~_i`` runs
    over the multiples of the step whose window ``[s~_i, s~_i + step]`` can
    hold ``d(S_i & S)`` for some ``S`` agreeing with that subset on ``U``
    (the floor of every reachable value), and likewise ``t~_i``.
    """
    deg, dp, step = scheme.degree, scheme.part_degree, scheme.delta_step
    heavy = np.flatnonzero(scheme.u_set)
    free_mass = dp.sum()
    half = epsilon * m / 2
    ps = scheme.in_s @ dp
    pt = scheme.in_t @ dp
    for code in range(1 << heavy.size):
        u_s = np.zeros(deg.size, dtype=bool)
        u_s[heavy[[(code >> b) & 1 == 1 for b in range(heavy.size)]]] = True
        mass = deg[u_s].sum()
        if mass > gamma + half + 1e-9 or mass + free_mass < gamma - half - 1e-9:
            continue
        base_s = scheme.s_matrix @ (deg * u_s)
        base_t = scheme.t_matrix @ (deg * (scheme.u_set & ~u_s))
        ranges = [range(floor_index(b, step), floor_index(b + p, step) + 1)
                  for b, p in zip(base_s, ps)]
        ranges += [range(floor_index(b, step), floor_index(b + p, step) + 1)
                   for b, p in zip(base_t, pt)]
        sigma = scheme.sigma
        for combo in itertools.product(*ranges):
            yield GuessVector(np.array(combo[:sigma], dtype=np.int64),
                              np.array(combo[sigma:], dtype=np.int64), u_s, step)


def round_lp(scheme: PartitionScheme, u_s: np.ndarray, y: np.ndarray, seed: int,
             guess_index: int, n_samples: int) -> np.ndarray:
    """Independent rounding: ``u_s`` plus each part with probability ``y_P``.

    Sample ``j`` draws from ``default_rng([seed, guess_index, j])`` so any
    sample can be reproduced on its own. Returns a ``(n_samples, n)`` mask.
    """
    out = np.repeat(u_s[None, :], n_samples, axis=0)
    if scheme.n_parts == 0:
        return out
    for j in range(n_samples):
        take = np.random.default_rng([seed, guess_index, j]).random(scheme.n_parts) < y
        for p in np.flatnonzero(take):
            out[j, scheme.parts[p]] = True
    return out


def solve(g: Graph, req: SolveRequest, prepared: Prepared | None = None) -> SolveResult:
    """Find ``S`` with ``|d(S) - gamma| <= window`` and near-optimal cut.

    Without ``req.planted`` every guess is enumerated until the budget runs
    out; ``certified`` reports whether the sweep finished. With a planted set
    only the guess read off that set is tried.
    """
    req.validate(g)
    prep = prepared or prepare(g, req.epsilon, req.oracle, req.seed, req.delta_step)
    scheme, d = prep.scheme, prep.decomposition
    m = g.m
    window = req.epsilon * m if req.window is None else req.window
    n_samples = math.ceil(10 / req.epsilon)
    sign = 1.0 if req.objective == "maximize" else -1.0

    if req.planted is not None:
        guesses = iter([planted_guess(scheme, as_mask(req.planted, g.n))])
    else:
        guesses = enumerate_guesses(scheme, req.gamma, req.epsilon, m)

    best = None          # (signed W, mask, W)
    closest = math.inf
    tried = feasible = 0
    complete = True
    for index, guess in enumerate(guesses):
        if index >= req.budget:
            complete = False
            break
        tried += 1
        y = lp_feasible(build_lp(scheme, guess, req.gamma, req.epsilon, d))
        if y is None:
            continue
        feasible += 1
        samples = round_lp(scheme, guess.u_assignment, y, req.seed, index, n_samples)
        sizes = samples @ g.degree
        gaps = np.abs(sizes - req.gamma)
        closest = min(closest, float(gaps.min()))
        ok = np.flatnonzero(gaps <= window + 1e-9)
        if ok.size == 0:
            continue
        w = evaluate_W_cuts(d, g, samples[ok])
        j = int(np.argmax(sign * w))
        if best is None or sign * w[j] > best[0]:
            best = (sign * w[j], samples[ok[j]].copy(), float(w[j]))

    if best is None:
        raise NoFeasibleSample(closest, window)
    s = best[1]
    return SolveResult(
        s=s,
        cut_value_A=cut_value(g, s),
        cut_value_W=best[2],
        degree_mass=float(g.degree[s].sum()),
        guesses_tried=tried,
        certified=req.planted is None and complete,
        gamma=req.gamma,
        feasible_guesses=feasible,
        prepared=prep,
    )


def solve_maxcut_sweep(g: Graph, epsilon: float, budget: int = DEFAULT_BUDGET,
                       seed: int = 0, oracle: str = "auto",
                       prepared: Prepared | None = None) -> SolveResult:
    """Max cut: run :func:`solve` for every target size on a grid of spacing
    ``eps*m/2`` with size window ``eps*m/2`` and keep the best ``W``."""
    prep = prepared or prepare(g, epsilon, oracle, seed)
    step = epsilon * g.m / 2
    best, tried, certified = None, 0, True
    for j in range(int(math.floor(g.m / step + 1e-9)) + 1):
        req = SolveRequest("maximize", min(j * step, g.m), epsilon, budget,
                           seed=seed, oracle=oracle, window=step)
        try:
            res = solve(g, req, prep)
        except NoFeasibleSample:
            certified = False
            continue
        tried += res.guesses_tried
        certified = certified and res.certified
        if best is None or res.cut_value_W > best.cut_value_W:
            best = res
    if best is None:
        raise NoFeasibleSample(math.inf, step)
    best.guesses_tried = tried
    best.certified = certified
    return best


def solve_bisection(g: Graph, epsilon: float, objective: str = "maximize",
                    budget: int = DEFAULT_BUDGET, seed: int = 0,
                    oracle: str = "auto") -> SolveResult:
    return solve(g, SolveRequest(objective, g.m / 2, epsilon, budget, seed=seed, oracle=oracle))


def brute_force_best_cut(g: Graph, gamma: float, tol: float,
                         objective: str = "maximize") -> tuple[np.ndarray, float]:
    """Exact best ``A(S, S-bar)`` over all ``S`` with ``|d(S) - gamma| <= tol``.

    Ties go to the lowest binary code of ``S``.
    """
    if g.n > BRUTE_FORCE_CAP:
        raise ValueError(f"brute force refused for n={g.n} > {BRUTE_FORCE_CAP}")
    masks = subset_masks(g.n)
    sizes = masks @ g.degree
    ok = np.flatnonzero(np.abs(sizes - gamma) <= tol + 1e-9)
    if ok.size == 0:
        raise ValueError(f"no set has |d(S) - {gamma}| <= {tol}")
    vals = cut_values_batch(g, masks[ok])
    j = int(np.argmax(vals) if objective == "maximize" else np.argmin(vals))
    return masks[ok[j]].copy(), float(vals[j])
