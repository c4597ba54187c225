"""
Approximate max cut and bisection
=================================

``solve`` decomposes the graph at accuracy eps/4, enumerates guesses of how
the target set meets every S_i and T_i, solves the feasibility LP for each
guess, rounds the LP point ten-over-eps times and keeps the best sample by the
approximate cut W. Here the answers are compared with brute force.
"""
from regcut.graph import random_graph
from regcut.maxcut import (SolveRequest, brute_force_best_cut, solve, solve_bisection,
                           solve_maxcut_sweep)

eps = 0.6
# Brute-force references use the same size window |d(S) - m/2| <= eps*m, wide
# enough at n = 10 that the empty set counts as a "bisection" with cut 0.
print(" seed   m    max cut   found   |  max bisection  found   |  min bisection  found")
for seed in range(5):
    g = random_graph(10, 0.5, seed=seed)
    _, opt = brute_force_best_cut(g, 0, g.m)
    found = solve_maxcut_sweep(g, eps, seed=seed).cut_value_A
    _, bmax = brute_force_best_cut(g, g.m / 2, eps * g.m, "maximize")
    _, bmin = brute_force_best_cut(g, g.m / 2, eps * g.m, "minimize")
    rmax = solve_bisection(g, eps, "maximize", seed=seed).cut_value_A
    rmin = solve_bisection(g, eps, "minimize", seed=seed).cut_value_A
    print(f"{seed:5d} {g.m:4g} {opt:8g} {found:7g}   | {bmax:11g} {rmax:8g}   | "
          f"{bmin:11g} {rmin:8g}")

# The guarantee is additive: within eps*m of the best set of the same size.
# Planted mode feeds the guess read off a known set to the LP and rounding.
g = random_graph(10, 0.5, seed=7)
s_star, opt = brute_force_best_cut(g, 0, g.m)
res = solve(g, SolveRequest("maximize", g.degree[s_star].sum(), eps, planted=s_star))
print(f"\nplanted: A(S*) = {opt:g}, returned A(S) = {res.cut_value_A:g}, "
      f"W(S) = {res.cut_value_W:.2f}, slack eps*m = {eps * g.m:.1f}")
print(f"step {res.prepared.delta_step:.2e}, heavy vertices {res.prepared.scheme.u_set.sum()}, "
      f"parts {res.prepared.scheme.n_parts}")
