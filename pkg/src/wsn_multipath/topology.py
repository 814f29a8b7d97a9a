"""Sensor field deployment and radio-range connectivity.

Nodes live on a plane; two alive nodes share an (undirected) edge when their
distance is at most the radio range and the link has not been disabled by a
fault. The graph is a single-writer structure: mutations bump ``version`` so
routing tables built against an older topology can be detected as stale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

__all__ = [
    "Node",
    "TopologyGraph",
    "UnrecoverableFailureError",
    "deploy_field",
    "dump_topology",
    "parse_topology",
]

ALIVE = "alive"
FAILED = "failed"


class UnrecoverableFailureError(RuntimeError):
    """No redundant node is available to take over for a failed one."""


@dataclass
class Node:
    id: int
    position: tuple[float, float]
    residual_energy: float
    is_redundant: bool = False
    status: str = ALIVE
    assumed_id: int | None = None  # serial taken over from a failed node

    @property
    def alive(self) -> bool:
        return self.status == ALIVE


class TopologyGraph:
    def __init__(self, nodes: list[Node], radio_range: float):
        if radio_range <= 0:
            raise ValueError(f"radio range must be > 0, got {radio_range}")
        self.nodes: dict[int, Node] = {}
        for n in nodes:
            if n.id in self.nodes:
                raise ValueError(f"duplicate node id {n.id}")
            self.nodes[n.id] = n
        self.radio_range = radio_range
        self.disabled_links: set[frozenset[int]] = set()
        # per-direction link parameter overrides, consulted by probed
        # parameter estimation; key (u, v) applies to traffic u -> v
        self.link_overrides: dict[tuple[int, int], object] = {}
        self.version = 1
        self._adjacency: dict[int, list[int]] | None = None

    def __contains__(self, node_id: int) -> bool:
        return node_id in self.nodes

    def node(self, node_id: int) -> Node:
        return self.nodes[node_id]

    def alive_ids(self) -> list[int]:
        return [n.id for n in self.nodes.values() if n.alive]

    def distance(self, u: int, v: int) -> float:
        (x1, y1), (x2, y2) = self.nodes[u].position, self.nodes[v].position
        return math.hypot(x1 - x2, y1 - y2)

    def _build_adjacency(self) -> dict[int, list[int]]:
        ids = sorted(self.alive_ids())
        adj: dict[int, list[int]] = {i: [] for i in ids}
        if len(ids) > 1:
            pts = np.array([self.nodes[i].position for i in ids])
            tree = cKDTree(pts)
            for a, b in tree.query_pairs(self.radio_range):
                u, v = ids[a], ids[b]
                if frozenset((u, v)) not in self.disabled_links:
                    adj[u].append(v)
                    adj[v].append(u)
        for i in ids:
            adj[i].sort()
        return adj

    def neighbors(self, u: int) -> list[int]:
        """Alive neighbors of u in ascending id order."""
        if self._adjacency is None:
            self._adjacency = self._build_adjacency()
        return self._adjacency.get(u, [])

    def has_edge(self, u: int, v: int) -> bool:
        a, b = self.nodes.get(u), self.nodes.get(v)
        if a is None or b is None or not (a.alive and b.alive):
            return False
        if frozenset((u, v)) in self.disabled_links:
            return False
        return self.distance(u, v) <= self.radio_range

    def degree(self, u: int) -> int:
        return len(self.neighbors(u))

    def _touch(self):
        self.version += 1
        self._adjacency = None

    def fail_node(self, node_id: int):
        node = self.nodes[node_id]
        if node.alive:
            node.status = FAILED
            self._touch()

    def disable_link(self, u: int, v: int):
        key = frozenset((u, v))
        if key not in self.disabled_links:
            self.disabled_links.add(key)
            self._touch()

    def link_disabled(self, u: int, v: int) -> bool:
        return frozenset((u, v)) in self.disabled_links

    def activate_spare(self, node_id: int, assumed_id: int | None = None):
        """Turn a redundant node into a regular route participant."""
        node = self.nodes[node_id]
        node.is_redundant = False
        node.assumed_id = assumed_id
        self._touch()

    def nearest_redundant(self, near: int, exclude: frozenset[int] = frozenset()) -> Node | None:
        """Closest alive redundant node to ``near``; lowest id wins ties."""
        ref = self.nodes[near].position
        best = None
        for n in self.nodes.values():
            if not (n.alive and n.is_redundant) or n.id in exclude:
                continue
            d = math.hypot(n.position[0] - ref[0], n.position[1] - ref[1])
            key = (d, n.id)
            if best is None or key < best[0]:
                best = (key, n)
        return best[1] if best else None


def deploy_field(area: tuple[float, float], node_count: int, seed: int,
                 radio_range: float = 24.0, redundant_fraction: float = 0.05,
                 initial_energy: float = 23760.0) -> TopologyGraph:
    """Scatter ``node_count`` nodes uniformly over the area, deterministically.

    A fixed fraction of the nodes is flagged redundant; those stay out of
    initial routes and form the replacement pool for fault recovery.
    """
    w, h = area
    if w <= 0 or h <= 0:
        raise ValueError(f"area dimensions must be positive, got {area}")
    if node_count < 0:
        raise ValueError(f"node count must be >= 0, got {node_count}")
    rng = np.random.default_rng(seed)
    xs = rng.uniform(0.0, w, node_count)
    ys = rng.uniform(0.0, h, node_count)
    n_spare = int(node_count * redundant_fraction)
    spares = set(rng.choice(node_count, size=n_spare, replace=False).tolist()) if n_spare else set()
    nodes = [
        Node(id=i, position=(float(xs[i]), float(ys[i])),
             residual_energy=initial_energy, is_redundant=i in spares)
        for i in range(node_count)
    ]
    return TopologyGraph(nodes, radio_range=radio_range)


def dump_topology(g: TopologyGraph) -> str:
    """One node per line: ``id x y energy redundant_flag``."""
    lines = []
    for nid in sorted(g.nodes):
        n = g.nodes[nid]
        lines.append(f"{n.id} {n.position[0]:.10g} {n.position[1]:.10g} "
                     f"{n.residual_energy:.10g} {int(n.is_redundant)}")
    return "\n".join(lines) + "\n"


def parse_topology(text: str, radio_range: float) -> TopologyGraph:
    """Inverse of dump_topology; blank lines and # comments are skipped."""
    nodes = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"line {lineno}: expected 'id x y energy redundant_flag', got {raw!r}")
        try:
            nodes.append(Node(
                id=int(parts[0]),
                position=(float(parts[1]), float(parts[2])),
                residual_energy=float(parts[3]),
                is_redundant=bool(int(parts[4])),
            ))
        except ValueError as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
    return TopologyGraph(nodes, radio_range=radio_range)
