"""Random geometric network topology: construction, queries, JSON audit dump.

Nodes are 0-based dense integers.  Adjacency lists are sorted ascending,
which fixes iteration order (and therefore RNG consumption) across
platforms.  Graph objects are immutable after construction and safe to
share between concurrent runs.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

MAX_SAMPLE_ATTEMPTS = 1000


class GraphConnectivityError(RuntimeError):
    """Raised when rejection sampling cannot produce a connected graph."""


@dataclass(frozen=True)
class Graph:
    """Undirected graph with node positions in the unit square.

    ``adjacency[s]`` is the sorted array of neighbors of node ``s``
    (never containing ``s`` itself).  ``gen_d``, ``gen_seed`` and
    ``gen_attempts`` record how a random geometric sample was drawn and
    are ``None`` for hand-built graphs.
    """

    positions: np.ndarray
    adjacency: tuple[np.ndarray, ...]
    gen_d: float | None = None
    gen_seed: int | None = None
    gen_attempts: int | None = None
    degrees: np.ndarray = field(init=False)

    def __post_init__(self):
        degs = np.array([len(a) for a in self.adjacency], dtype=np.int64)
        degs.flags.writeable = False
        object.__setattr__(self, "degrees", degs)

    @property
    def n(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return int(self.degrees.sum()) // 2

    def mean_degree(self) -> float:
        return float(self.degrees.mean())


def connection_radius(n: int, d: float) -> float:
    """Connection radius sqrt(d * ln(n) / n); log is the natural log."""
    return math.sqrt(d * math.log(n) / n)


def _freeze(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


def _adjacency_from_mask(conn: np.ndarray) -> tuple[np.ndarray, ...]:
    return tuple(_freeze(np.flatnonzero(conn[s]).astype(np.int64)) for s in range(conn.shape[0]))


def _default_positions(n: int) -> np.ndarray:
    # Deterministic circular layout for hand-built graphs; only used so
    # position-dependent fields stay well defined.
    theta = 2.0 * np.pi * np.arange(n) / max(n, 1)
    pos = 0.5 + 0.4 * np.column_stack([np.cos(theta), np.sin(theta)])
    return _freeze(pos)


def generate_random_geometric(n: int, d: float, rng) -> Graph:
    """Sample a connected random geometric graph on the unit square.

    Points are uniform in [0,1]^2; an edge joins two nodes iff their
    Euclidean distance is strictly less than the connection radius.
    Disconnected draws are rejected and redrawn from the same stream;
    after MAX_SAMPLE_ATTEMPTS consecutive failures a
    GraphConnectivityError reports that d is too small for n.

    ``rng`` may be an integer seed (recorded in the graph for audit
    dumps) or a ``numpy.random.Generator``.
    """
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    if d <= 0:
        raise ValueError(f"scaling factor d must be > 0, got {d}")
    seed = rng if isinstance(rng, (int, np.integer)) else None
    gen = np.random.default_rng(rng) if seed is not None else rng

    r_sq = d * math.log(n) / n
    for attempt in range(1, MAX_SAMPLE_ATTEMPTS + 1):
        pos = gen.random((n, 2))
        diff = pos[:, None, :] - pos[None, :, :]
        dist_sq = np.einsum("ijk,ijk->ij", diff, diff)
        conn = dist_sq < r_sq
        np.fill_diagonal(conn, False)
        adjacency = _adjacency_from_mask(conn)
        g = Graph(
            positions=_freeze(pos),
            adjacency=adjacency,
            gen_d=float(d),
            gen_seed=(int(seed) if seed is not None else None),
            gen_attempts=attempt,
        )
        if is_connected(g):
            return g
    raise GraphConnectivityError(
        f"no connected sample in {MAX_SAMPLE_ATTEMPTS} attempts for n={n}, d={d}; "
        f"d is too small for this network size"
    )


def from_edges(n: int, edges, positions: np.ndarray | None = None) -> Graph:
    """Build a graph from an undirected edge list (may be disconnected)."""
    if n < 2:
        raise ValueError(f"need at least 2 nodes, got {n}")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    for s, t in edges:
        s, t = int(s), int(t)
        if s == t:
            raise ValueError(f"self-loop on node {s}")
        if not (0 <= s < n and 0 <= t < n):
            raise ValueError(f"edge ({s},{t}) out of range for n={n}")
        nbrs[s].add(t)
        nbrs[t].add(s)
    if positions is None:
        positions = _default_positions(n)
    else:
        positions = _freeze(np.array(positions, dtype=float))
        if positions.shape != (n, 2):
            raise ValueError(f"positions must have shape ({n}, 2)")
    adjacency = tuple(_freeze(np.array(sorted(a), dtype=np.int64)) for a in nbrs)
    return Graph(positions=positions, adjacency=adjacency)


def complete_graph(n: int) -> Graph:
    return from_edges(n, [(s, t) for s in range(n) for t in range(s + 1, n)])


def is_connected(g: Graph) -> bool:
    """Breadth-first search from node 0 reaches every node."""
    n = g.n
    seen = np.zeros(n, dtype=bool)
    seen[0] = True
    queue = deque([0])
    count = 1
    while queue:
        s = queue.popleft()
        for t in g.adjacency[s]:
            if not seen[t]:
                seen[t] = True
                count += 1
                queue.append(int(t))
    return count == n


def _check_node(g: Graph, s: int) -> int:
    s = int(s)
    if not 0 <= s < g.n:
        raise IndexError(f"node id {s} out of range for n={g.n}")
    return s


def neighbors(g: Graph, s: int) -> np.ndarray:
    """Sorted neighbor ids of node s (read-only view)."""
    return g.adjacency[_check_node(g, s)]


def degree(g: Graph, s: int) -> int:
    return len(g.adjacency[_check_node(g, s)])


def to_json_dict(g: Graph) -> dict:
    """Audit dump: positions, canonical edge list (s < t), sampling metadata."""
    edges = [[int(s), int(t)] for s in range(g.n) for t in g.adjacency[s] if s < t]
    return {
        "n": g.n,
        "d": g.gen_d,
        "seed": g.gen_seed,
        "positions": [[float(x), float(y)] for x, y in g.positions],
        "edges": edges,
        "resampling": "rejection",
        "attempts": g.gen_attempts,
    }


def from_json_dict(obj: dict) -> Graph:
    n = int(obj["n"])
    g = from_edges(n, obj["edges"], positions=np.array(obj["positions"], dtype=float))
    object.__setattr__(g, "gen_d", obj.get("d"))
    object.__setattr__(g, "gen_seed", obj.get("seed"))
    object.__setattr__(g, "gen_attempts", obj.get("attempts"))
    return g


def save_json(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(to_json_dict(g), fh)


def load_json(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return from_json_dict(json.load(fh))
