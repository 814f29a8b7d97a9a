import math

import networkx as nx
import pytest

from wsn_multipath import (
    LinkParams,
    Node,
    Route,
    StaleRouteError,
    TopologyGraph,
    UnrecoverableFailureError,
    build_routing_table,
    deploy_field,
    discover_disjoint_paths,
    estimate_path_params,
    replace_failed_node,
)


def graph_from(points, radio, spares=()):
    nodes = [Node(id=i, position=(float(x), float(y)), residual_energy=100.0,
                  is_redundant=i in spares)
             for i, (x, y) in points.items()]
    return TopologyGraph(nodes, radio_range=radio)


def diamond():
    # two 2-hop routes between 0 and 3, one through 1, one through 2
    return graph_from({0: (0, 0), 1: (1, 1), 2: (1, -1), 3: (2, 0)}, radio=1.6)


class TestDiscovery:
    def test_diamond_two_routes(self):
        routes = discover_disjoint_paths(diamond(), 0, 3)
        assert [r.nodes for r in routes] == [(0, 1, 3), (0, 2, 3)]
        assert [r.path_id for r in routes] == [1, 2]

    def test_lowest_id_tiebreak(self):
        g = graph_from({0: (0, 0), 5: (1, 1), 4: (1, -1), 9: (2, 0)}, radio=1.6)
        routes = discover_disjoint_paths(g, 0, 9)
        # both interiors give 2 hops; id 4 must come out first
        assert routes[0].nodes == (0, 4, 9)

    def test_direct_edge_used_once(self):
        g = graph_from({0: (0, 0), 1: (0.5, 0.8), 2: (1, 0)}, radio=1.1)
        routes = discover_disjoint_paths(g, 0, 2)
        assert routes[0].nodes == (0, 2)
        assert routes[1].nodes == (0, 1, 2)
        assert len(routes) == 2

    def test_hop_counts_nondecreasing(self):
        g = deploy_field((60.0, 60.0), 60, seed=5, radio_range=15.0,
                         redundant_fraction=0.0)
        routes = discover_disjoint_paths(g, 0, 59, max_paths=6)
        hops = [r.hops for r in routes]
        assert hops == sorted(hops)

    def test_interiors_disjoint(self):
        g = deploy_field((60.0, 60.0), 80, seed=9, radio_range=14.0,
                         redundant_fraction=0.0)
        routes = discover_disjoint_paths(g, 0, 79, max_paths=8)
        seen = set()
        for r in routes:
            assert not (set(r.interior) & seen)
            seen.update(r.interior)

    def test_redundant_nodes_held_back(self):
        g = graph_from({0: (0, 0), 1: (1, 1), 2: (1, -1), 3: (2, 0)},
                       radio=1.6, spares={1})
        routes = discover_disjoint_paths(g, 0, 3)
        assert [r.nodes for r in routes] == [(0, 2, 3)]

    def test_count_bounded_by_source_degree(self):
        g = deploy_field((40.0, 40.0), 60, seed=2, radio_range=12.0,
                         redundant_fraction=0.0)
        routes = discover_disjoint_paths(g, 0, 59, max_paths=10)
        assert len(routes) <= g.degree(0)

    def test_same_node_rejected(self):
        with pytest.raises(ValueError):
            discover_disjoint_paths(diamond(), 2, 2)

    def test_max_paths_cap(self):
        routes = discover_disjoint_paths(diamond(), 0, 3, max_paths=1)
        assert len(routes) == 1


class TestAgainstFlowOracle:
    def test_greedy_never_beats_menger(self):
        # exact vertex-disjoint maximum via max-flow on small fields
        for seed in range(25):
            g = deploy_field((30.0, 30.0), 11, seed=seed, radio_range=12.0,
                             redundant_fraction=0.0)
            G = nx.Graph()
            G.add_nodes_from(g.nodes)
            for u in g.nodes:
                for v in g.neighbors(u):
                    G.add_edge(u, v)
            s, t = 0, 10
            ours = len(discover_disjoint_paths(g, s, t, max_paths=99))
            if not nx.has_path(G, s, t):
                assert ours == 0
                continue
            best = nx.connectivity.local_node_connectivity(G, s, t)
            assert ours <= best


class TestEstimate:
    def test_analytic_kilobit(self):
        g = graph_from({0: (0, 0), 1: (50, 0), 2: (100, 0)}, radio=60.0)
        r = Route(path_id=1, nodes=(0, 1, 2))
        prof = estimate_path_params(g, r, LinkParams(b=50000.0), mode="analytic")
        assert prof.tau == 0.02
        assert prof.H == 2
        assert prof.T_dist == 100.0

    def test_probed_matches_analytic_on_uniform_links(self):
        g = graph_from({0: (0, 0), 1: (50, 0), 2: (100, 0)}, radio=60.0)
        r = Route(path_id=1, nodes=(0, 1, 2))
        link = LinkParams(b=50000.0, l=0.001)
        a = estimate_path_params(g, r, link, mode="analytic")
        p = estimate_path_params(g, r, link, mode="probed")
        assert p.tau == pytest.approx(a.tau, rel=1e-12)

    def test_probed_uses_directional_overrides(self):
        g = graph_from({0: (0, 0), 1: (50, 0), 2: (100, 0)}, radio=60.0)
        # the reverse direction of hop 1->0 is slower
        g.link_overrides[(1, 0)] = LinkParams(b=50000.0, l=0.01)
        r = Route(path_id=1, nodes=(0, 1, 2))
        prof = estimate_path_params(g, r, LinkParams(b=50000.0), mode="probed")
        # rtt = 4 * 0.02 + 0.01, halved over 2 hops
        assert prof.tau == pytest.approx((4 * 0.02 + 0.01) / 4, rel=1e-12)

    def test_dead_node_raises_stale(self):
        g = graph_from({0: (0, 0), 1: (50, 0), 2: (100, 0)}, radio=60.0)
        g.fail_node(1)
        r = Route(path_id=1, nodes=(0, 1, 2))
        with pytest.raises(StaleRouteError):
            estimate_path_params(g, r, LinkParams(b=50000.0))

    def test_unknown_mode(self):
        g = graph_from({0: (0, 0), 1: (100, 0)}, radio=150.0)
        r = Route(path_id=1, nodes=(0, 1))
        with pytest.raises(ValueError):
            estimate_path_params(g, r, LinkParams(b=50000.0), mode="guess")


class TestRoutingTable:
    def test_build_fills_profiles(self):
        g = diamond()
        table = build_routing_table(g, 0, [3], LinkParams(b=50000.0))
        routes = table.routes_for(3)
        assert len(routes) == 2
        assert all(r.profile is not None for r in routes)
        assert table.version == g.version

    def test_self_destination_skipped(self):
        table = build_routing_table(diamond(), 0, [0, 3], LinkParams(b=50000.0))
        assert table.destinations() == [3]

    def test_unreachable_destination_absent(self):
        g = graph_from({0: (0, 0), 1: (1, 0), 2: (50, 50)}, radio=1.5)
        table = build_routing_table(g, 0, [1, 2], LinkParams(b=50000.0))
        assert table.destinations() == [1]

    def test_stale_after_mutation(self):
        g = diamond()
        table = build_routing_table(g, 0, [3], LinkParams(b=50000.0))
        g.fail_node(1)
        with pytest.raises(StaleRouteError):
            table.check_fresh(g)

    def test_format_routes(self):
        table = build_routing_table(diamond(), 0, [3], LinkParams(b=50000.0))
        assert table.format_routes(3) == "1: 0,1,3\n2: 0,2,3\n"


class TestReplacement:
    def replacement_setup(self):
        g = graph_from({0: (0, 0), 1: (1, 1), 2: (1, -1), 3: (2, 0),
                        8: (1.2, 1.2), 9: (4, 4)},
                       radio=1.8, spares={8, 9})
        table = build_routing_table(g, 0, [3], LinkParams(b=50000.0))
        return g, table

    def test_nearest_spare_takes_slot(self):
        g, table = self.replacement_setup()
        g.fail_node(1)
        spare = replace_failed_node(g, 1, table)
        assert spare == 8
        assert table.routes_for(3)[0].nodes == (0, 8, 3)
        assert not g.nodes[8].is_redundant
        assert g.nodes[8].assumed_id == 1
        assert table.version == g.version

    def test_near_reference_changes_choice(self):
        g, table = self.replacement_setup()
        spare = replace_failed_node(g, 1, table, near=3)
        # node 9 is closer to nothing useful; 8 still wins from node 3
        assert spare == 8

    def test_exhausted_pool_raises(self):
        g, table = self.replacement_setup()
        g.fail_node(8)
        g.fail_node(9)
        with pytest.raises(UnrecoverableFailureError):
            replace_failed_node(g, 1, table)

    def test_on_route_nodes_not_borrowed(self):
        g, table = self.replacement_setup()
        # spare 8 already promoted onto a route: only 9 remains
        replace_failed_node(g, 1, table)
        spare = replace_failed_node(g, 2, table)
        assert spare == 9
