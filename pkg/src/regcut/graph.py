"""Weighted undirected graphs, degree bookkeeping and cut evaluation.

Vertex sets are passed around as boolean masks of length ``n``; any iterable of
vertex indices is accepted wherever a set is expected and converted with
:func:`as_mask`.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graph input."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Symmetric nonnegative weight matrix with cached degrees.

    ``total_degree`` is ``m = d(V)``, i.e. twice the total edge weight.
    """

    adjacency: np.ndarray
    degree: np.ndarray = field(init=False, repr=False)
    total_degree: float = field(init=False)

    def __post_init__(self):
        a = np.array(self.adjacency, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphError(f"adjacency must be square, got shape {a.shape}")
        if not np.allclose(a, a.T, rtol=0, atol=1e-12):
            raise GraphError("adjacency must be symmetric")
        if (a < 0).any():
            raise GraphError("negative edge weight")
        if np.any(np.diag(a) != 0):
            v = int(np.flatnonzero(np.diag(a))[0])
            raise GraphError(f"self-loop at vertex {v}")
        deg = a.sum(axis=1)
        isolated = np.flatnonzero(deg <= 0)
        if isolated.size:
            raise GraphError(f"vertex {int(isolated[0])} is isolated")
        a.setflags(write=False)
        deg.setflags(write=False)
        object.__setattr__(self, "adjacency", a)
        object.__setattr__(self, "degree", deg)
        object.__setattr__(self, "total_degree", float(deg.sum()))

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    @property
    def m(self) -> float:
        return self.total_degree

    @property
    def edge_weight(self) -> float:
        """Total edge weight ``|E|`` (half of ``m``)."""
        return self.total_degree / 2

    def edges(self):
        iu, ju = np.nonzero(np.triu(self.adjacency, 1))
        return [(int(u), int(v), float(self.adjacency[u, v])) for u, v in zip(iu, ju)]

    @classmethod
    def from_edges(cls, edges, n: int | None = None) -> "Graph":
        """Build a graph from ``(u, v, w)`` triples; parallel edges are summed."""
        edges = list(edges)
        top = max((max(int(u), int(v)) for u, v, _ in edges), default=-1) + 1
        if n is None:
            n = top
        elif top > n:
            raise GraphError(f"vertex {top - 1} out of range for n={n}")
        a = np.zeros((n, n))
        for lineno, (u, v, w) in enumerate(edges):
            u, v, w = int(u), int(v), float(w)
            if u < 0 or v < 0:
                raise GraphError(f"edge {lineno}: negative vertex index")
            if u == v:
                raise GraphError(f"edge {lineno}: self-loop at vertex {u}")
            if not w > 0:
                raise GraphError(f"edge {lineno}: weight must be positive, got {w}")
            a[u, v] += w
            a[v, u] += w
        return cls(a)


def as_mask(s, n: int) -> np.ndarray:
    """Convert a vertex set (mask or index iterable) to a boolean mask."""
    if isinstance(s, np.ndarray) and s.dtype == bool:
        if s.shape != (n,):
            raise ValueError(f"mask has shape {s.shape}, expected ({n},)")
        return s
    mask = np.zeros(n, dtype=bool)
    idx = np.fromiter((int(v) for v in s), dtype=int)
    if idx.size and (idx.min() < 0 or idx.max() >= n):
        raise ValueError(f"vertex index out of range 0..{n - 1}")
    mask[idx] = True
    return mask


def members(mask: np.ndarray) -> list[int]:
    return [int(v) for v in np.flatnonzero(mask)]


def parse_edge_list(text: str, n: int | None = None) -> Graph:
    """Parse whitespace separated ``u v w`` lines; ``#`` starts a comment line."""
    edges = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 3:
            raise GraphError(f"line {lineno}: expected 'u v w', got {line!r}")
        try:
            u, v, w = int(parts[0]), int(parts[1]), float(parts[2])
        except ValueError:
            raise GraphError(f"line {lineno}: cannot parse {line!r}") from None
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at vertex {u}")
        if not w > 0:
            raise GraphError(f"line {lineno}: weight must be positive, got {w}")
        edges.append((u, v, w))
    return Graph.from_edges(edges, n)


def parse_json_graph(text: str) -> Graph:
    data = json.loads(text)
    return Graph.from_edges([tuple(e) for e in data["edges"]], int(data["n"]))


def load_graph(source) -> Graph:
    """Load a graph from a path or from edge-list / JSON text.

    A path ending in ``.json``, or text starting with ``{``, is read as
    ``{"n": int, "edges": [[u, v, w], ...]}``; anything else as an edge list.
    """
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and Path(source).is_file()):
        path = Path(source)
        text = path.read_text()
        if path.suffix == ".json":
            return parse_json_graph(text)
    else:
        text = source
    if text.lstrip().startswith("{"):
        return parse_json_graph(text)
    return parse_edge_list(text)


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.edges()]})


def cut_value(g: Graph, s) -> float:
    """Weight of edges leaving ``s``: ``A(S, V \\ S)``."""
    x = as_mask(s, g.n).astype(float)
    return float(x @ g.adjacency @ (1.0 - x))


def subset_degree(g: Graph, s) -> float:
    return float(g.degree[as_mask(s, g.n)].sum())


def cut_values_batch(g: Graph, masks: np.ndarray) -> np.ndarray:
    """``A(S, V \\ S)`` for each row of a ``(k, n)`` 0/1 matrix."""
    x = np.asarray(masks, dtype=float)
    return np.einsum("ij,ij->i", x @ g.adjacency, 1.0 - x)


def normalized_adjacency(g: Graph) -> np.ndarray:
    """``D^{-1/2} A D^{-1/2}``."""
    r = 1.0 / np.sqrt(g.degree)
    m = g.adjacency * r[:, None] * r[None, :]
    return (m + m.T) / 2


# Small named graphs used throughout tests and demos.

def complete_graph(n: int) -> Graph:
    return Graph(np.ones((n, n)) - np.eye(n))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges([(i, (i + 1) % n, 1.0) for i in range(n)], n)


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges([(i, a + j, 1.0) for i in range(a) for j in range(b)], a + b)


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges([(0, i, 1.0) for i in range(1, leaves + 1)], leaves + 1)


def random_graph(n: int, p: float, seed: int, weighted: bool = False,
                 max_tries: int = 1000) -> Graph:
    """Erdos-Renyi ``G(n, p)`` resampled until no vertex is isolated."""
    rng = np.random.default_rng(seed)
    for _ in range(max_tries):
        upper = np.triu(rng.random((n, n)) < p, 1).astype(float)
        if weighted:
            upper *= rng.uniform(0.5, 2.0, size=(n, n))
        a = upper + upper.T
        if (a.sum(axis=1) > 0).all():
            return Graph(a)
    raise GraphError(f"could not draw G({n}, {p}) without isolated vertices")
