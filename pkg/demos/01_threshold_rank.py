"""
Threshold rank and the spectral truncation B
============================================

The normalized adjacency of a graph has eigenvalues in [-1, 1]. Summing the
squares of those above a threshold gives the threshold rank, and keeping only
those eigenpairs gives a low-rank matrix B whose cut values stay within
delta * m of the graph's.
"""
import numpy as np

from regcut.cutnorm import cutnorm_exact
from regcut.graph import complete_bipartite, complete_graph, cycle_graph, random_graph
from regcut.spectral import graph_spectrum, low_rank_B, threshold_rank

graphs = {
    "K_6": complete_graph(6),
    "K_{3,3}": complete_bipartite(3, 3),
    "C_8": cycle_graph(8),
    "G(12, 0.5)": random_graph(12, 0.5, seed=0),
}

# Complete graphs have one large eigenvalue; bipartite graphs have +1 and -1;
# long cycles spread their spectrum over the whole interval.
for name, g in graphs.items():
    spec = graph_spectrum(g)
    print(f"{name:11s} eigenvalues:", np.round(spec.values, 3))

print()
print("threshold rank t_delta for delta in 0.1, 0.3, 0.5, 0.7")
for name, g in graphs.items():
    spec = graph_spectrum(g)
    ks = [threshold_rank(spec, d).k for d in (0.1, 0.3, 0.5, 0.7)]
    print(f"{name:11s}", " ".join(f"{k:6.3f}" for k in ks))

# ||A - B||_C never exceeds delta * m; the exact cut norm is cheap at n = 12.
print()
g = graphs["G(12, 0.5)"]
spec = graph_spectrum(g)
for delta in (0.1, 0.3, 0.5):
    b = low_rank_B(g, spec, delta)
    gap = cutnorm_exact(g.adjacency - b).value
    print(f"delta={delta}: ||A - B||_C = {gap:7.3f}   delta*m = {delta * g.m:7.3f}")
