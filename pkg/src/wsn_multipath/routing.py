"""Node-disjoint route discovery and routing tables.

Routes are found greedily: repeat a hop-count shortest-path search, record the
result, delete its interior nodes from the working graph, and search again
until the sink becomes unreachable. The direct source-sink edge (if the two
are in radio range) may serve as at most one single-hop route. All tie-breaks
are by lowest node id, so discovery is fully deterministic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field, replace as dc_replace

from .model import EnergyParams, LinkParams, PathProfile, per_hop_delay
from .topology import TopologyGraph, UnrecoverableFailureError

__all__ = [
    "Route",
    "RoutingTable",
    "StaleRouteError",
    "discover_disjoint_paths",
    "estimate_path_params",
    "build_routing_table",
    "replace_failed_node",
]


class StaleRouteError(RuntimeError):
    """A route references a node that is no longer alive in the topology."""


@dataclass
class Route:
    path_id: int
    nodes: tuple[int, ...]
    profile: PathProfile | None = None

    def __post_init__(self):
        if len(self.nodes) < 2:
            raise ValueError(f"route needs at least source and sink, got {self.nodes}")
        if len(set(self.nodes)) != len(self.nodes):
            raise ValueError(f"route revisits a node: {self.nodes}")

    @property
    def hops(self) -> int:
        return len(self.nodes) - 1

    @property
    def source(self) -> int:
        return self.nodes[0]

    @property
    def sink(self) -> int:
        return self.nodes[-1]

    @property
    def interior(self) -> tuple[int, ...]:
        return self.nodes[1:-1]


@dataclass
class RoutingTable:
    source: int
    entries: dict[int, list[Route]] = field(default_factory=dict)
    version: int = 0

    def destinations(self) -> list[int]:
        return sorted(self.entries)

    def routes_for(self, destination: int) -> list[Route]:
        return self.entries.get(destination, [])

    def single_destination(self) -> int:
        dests = self.destinations()
        if len(dests) != 1:
            raise ValueError(f"expected exactly one destination, table has {dests}")
        return dests[0]

    def check_fresh(self, g: TopologyGraph):
        if self.version != g.version:
            raise StaleRouteError(
                f"routing table built at topology version {self.version}, "
                f"graph is now at {g.version}")

    def swap_node(self, old: int, new: int):
        """Replace ``old`` with ``new`` in every route that contains it."""
        for routes in self.entries.values():
            for i, r in enumerate(routes):
                if old in r.nodes:
                    nodes = tuple(new if n == old else n for n in r.nodes)
                    routes[i] = dc_replace(r, nodes=nodes)

    def format_routes(self, destination: int) -> str:
        lines = [f"{r.path_id}: {','.join(str(n) for n in r.nodes)}"
                 for r in self.routes_for(destination)]
        return "\n".join(lines) + ("\n" if lines else "")


def _shortest_hops(g: TopologyGraph, source: int, sink: int,
                   removed: set[int], skip_direct: bool) -> list[int] | None:
    """Min-hop path avoiding ``removed`` interiors; lowest-id tie-breaks.

    Dijkstra over unit weights. The heap pops equal-distance nodes in id
    order and a node keeps its first (lowest-id) predecessor, so the
    returned path is the lexicographically smallest among min-hop paths.
    """
    dist = {source: 0}
    parent: dict[int, int] = {}
    heap = [(0, source)]
    while heap:
        d, u = heapq.heappop(heap)
        if d > dist.get(u, math.inf):
            continue
        if u == sink:
            break
        for v in g.neighbors(u):
            if v in removed and v != sink:
                continue
            if u == source and v == sink and skip_direct:
                continue
            if d + 1 < dist.get(v, math.inf):
                dist[v] = d + 1
                parent[v] = u
                heapq.heappush(heap, (d + 1, v))
    if sink not in dist:
        return None
    path = [sink]
    while path[-1] != source:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def discover_disjoint_paths(g: TopologyGraph, source: int, sink: int,
                            max_paths: int = 5) -> list[Route]:
    """Greedy node-disjoint routes from source to sink, shortest first.

    Redundant nodes are held back as the replacement pool and never appear
    on an initial route.
    """
    if source == sink:
        raise ValueError("source and sink must differ")
    for nid in (source, sink):
        if nid not in g or not g.nodes[nid].alive:
            raise ValueError(f"node {nid} is not an alive node of the topology")
    removed = {n.id for n in g.nodes.values() if n.is_redundant}
    removed.discard(source)
    removed.discard(sink)
    routes: list[Route] = []
    direct_used = False
    while len(routes) < max_paths:
        path = _shortest_hops(g, source, sink, removed, skip_direct=direct_used)
        if path is None:
            break
        if len(path) == 2:
            direct_used = True
        routes.append(Route(path_id=len(routes) + 1, nodes=tuple(path)))
        removed.update(path[1:-1])
    return routes


def _link_for(g: TopologyGraph, u: int, v: int, default: LinkParams) -> LinkParams:
    override = g.link_overrides.get((u, v))
    return override if isinstance(override, LinkParams) else default


def estimate_path_params(g: TopologyGraph, route: Route, link: LinkParams,
                         mode: str = "analytic",
                         packet_bits: float = 1000.0) -> PathProfile:
    """Per-hop delay and end-to-end distance for one route.

    analytic: tau from the nominal link parameters (bits/rate + latencies).
    probed:   a hello/reply round trip is priced over the actual hops, using
              any per-direction link overrides, and tau = RTT / (2H).
    """
    for nid in route.nodes:
        if nid not in g or not g.nodes[nid].alive:
            raise StaleRouteError(f"route {route.path_id} references dead node {nid}")
    h = route.hops
    t_dist = g.distance(route.source, route.sink)
    if t_dist <= 0:
        raise ValueError("source and sink positions coincide; no path distance")
    if mode == "analytic":
        tau = per_hop_delay(packet_bits, link)
    elif mode == "probed":
        rtt = 0.0
        for u, v in zip(route.nodes, route.nodes[1:]):
            rtt += per_hop_delay(packet_bits, _link_for(g, u, v, link))
        for u, v in zip(reversed(route.nodes), list(reversed(route.nodes))[1:]):
            rtt += per_hop_delay(packet_bits, _link_for(g, u, v, link))
        tau = rtt / (2 * h)
    else:
        raise ValueError(f"unknown estimation mode {mode!r}")
    return PathProfile(path_id=route.path_id, H=h, tau=tau, T_dist=t_dist)


def build_routing_table(g: TopologyGraph, source: int, destinations: list[int],
                        link: LinkParams, max_paths: int = 5,
                        mode: str = "analytic",
                        packet_bits: float = 1000.0) -> RoutingTable:
    """Discover routes and parameter profiles for each destination.

    Unreachable destinations get no entry; a destination equal to the source
    is rejected (no self-entry).
    """
    table = RoutingTable(source=source)
    for dest in destinations:
        if dest == source:
            continue
        routes = discover_disjoint_paths(g, source, dest, max_paths=max_paths)
        for r in routes:
            r.profile = estimate_path_params(g, r, link, mode=mode, packet_bits=packet_bits)
        if routes:
            table.entries[dest] = routes
    table.version = g.version
    return table


def replace_failed_node(g: TopologyGraph, failed_id: int, table: RoutingTable,
                        near: int | None = None,
                        exclude: frozenset[int] = frozenset()) -> int:
    """Swap a route node for the nearest alive redundant node.

    ``near`` picks the reference point for "nearest" (defaults to the failed
    node itself; recovery passes the node that detected the fault). The spare
    assumes the failed node's route slot in every affected route. Returns the
    id of the activated spare. Raises UnrecoverableFailureError when the pool
    is empty.
    """
    if failed_id not in g:
        raise ValueError(f"unknown node {failed_id}")
    on_routes = {n for routes in table.entries.values() for r in routes for n in r.nodes}
    spare = g.nearest_redundant(near if near is not None else failed_id,
                                exclude=exclude | frozenset(on_routes))
    if spare is None:
        raise UnrecoverableFailureError(
            f"no redundant node available to replace node {failed_id}")
    g.activate_spare(spare.id, assumed_id=failed_id)
    table.swap_node(failed_id, spare.id)
    table.version = g.version
    return spare.id
