"""
Exact and heuristic cut norm
============================

The exact oracle enumerates all 2^n row sets and picks the column set in
closed form. The heuristic alternates best responses from random and
singular-vector starts; here it is compared with the exact value on random
+-1 matrices and on graph residuals A - B.
"""
import time

import numpy as np

from regcut.cutnorm import cutnorm_exact, cutnorm_heuristic, oracle_bench

rng = np.random.default_rng(0)
m = rng.normal(size=(14, 14))
t = time.perf_counter()
exact = cutnorm_exact(m)
t_exact = time.perf_counter() - t
t = time.perf_counter()
heur = cutnorm_heuristic(m, seed=0)
t_heur = time.perf_counter() - t
print(f"14x14 gaussian: exact {exact.value:.4f} ({t_exact * 1e3:.1f} ms), "
      f"heuristic {heur.value:.4f} ({t_heur * 1e3:.1f} ms)")

report = oracle_bench(200, seed=0)
ratios = np.array([r["ratio"] for r in report["rows"]])
print(f"\n200 instances: fraction with ratio >= 0.56: {report['pass_fraction']:.3f}")
print(f"min ratio {ratios.min():.3f}, median {np.median(ratios):.3f}, "
      f"exactly optimal on {np.mean(ratios > 1 - 1e-12):.1%}")
for kind in ("pm1", "residual"):
    sel = np.array([r["kind"] == kind for r in report["rows"]])
    print(f"  {kind:9s} mean ratio {ratios[sel].mean():.4f}")
