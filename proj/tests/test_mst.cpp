#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "oracles.hpp"
#include "spantree/mst.hpp"
#include "spantree/stats.hpp"

using namespace spantree;
using oracle::make_graph;

namespace {

CallNumbers calls(std::vector<double> v) { return CallNumbers{std::move(v)}; }

// Edges of the tree path between a and b, found through the parent chains.
std::vector<EdgeId> tree_path(const SpanningTree& t, VertexId a, VertexId b) {
    std::vector<EdgeId> chain_edge; // edge leaving the i-th vertex of a's chain upward
    std::vector<std::int32_t> pos(t.graph->vertex_count(), -1);
    std::int32_t depth = 0;
    for (VertexId v = a;; v = t.parent_vertex(v)) {
        pos[v] = depth++;
        if (v == t.root) break;
        chain_edge.push_back(t.parent[v]);
    }
    std::vector<EdgeId> path;
    VertexId v = b;
    while (pos[v] < 0) {
        path.push_back(t.parent[v]);
        v = t.parent_vertex(v);
    }
    for (std::int32_t i = 0; i < pos[v]; ++i) path.push_back(chain_edge[i]);
    return path;
}

// Spanning tree one swap away from the minimum: adds the first vacant edge
// and drops a tree edge from the cycle this closes.
SpanningTree corrupt_swap(const RegionGraph& g, const SpanningTree& t) {
    std::vector<char> in_tree(g.edge_count(), 0);
    for (EdgeId e : t.tree_edges) in_tree[e] = 1;
    EdgeId vacant = -1;
    for (EdgeId e = 0; e < g.edge_count(); ++e)
        if (!in_tree[e]) {
            vacant = e;
            break;
        }
    REQUIRE(vacant >= 0);
    EdgeId dropped = tree_path(t, g.edges[vacant].a, g.edges[vacant].b).front();
    std::vector<EdgeId> edges;
    for (EdgeId e : t.tree_edges)
        if (e != dropped) edges.push_back(e);
    edges.push_back(vacant);
    return assemble_tree(g, std::move(edges), t.root);
}

double tree_weight(const SpanningTree& t, const CallNumbers& u) {
    double s = 0.0;
    for (EdgeId e : t.tree_edges) s += u.values[e];
    return s;
}

} // namespace

TEST_CASE("call numbers are uniform on the unit interval") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 1000, 500}, Boundary::Free);
    REQUIRE(g.edge_count() >= 1000000);
    Rng rng = Rng::stream(60, 0);
    CallNumbers u = draw_call_numbers(g, rng);
    double mean = std::accumulate(u.values.begin(), u.values.end(), 0.0) / u.values.size();
    CHECK(std::abs(mean - 0.5) < 0.002);
    double d = ks_statistic_uniform(u.values);
    CHECK(ks_pvalue(d, static_cast<std::int64_t>(u.values.size())) > 1e-3);

    // half the edges are occupied at the critical density
    std::int64_t occupied = occupied_subgraph(g, u, 0.5).size();
    CHECK(std::abs(static_cast<double>(occupied) / g.edge_count() - 0.5) < 0.002);
}

TEST_CASE("call number draws are reproducible by stream") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 4, 4}, Boundary::Free);
    Rng a = Rng::stream(61, 3), b = Rng::stream(61, 3), c = Rng::stream(61, 4);
    CHECK(draw_call_numbers(g, a).values == draw_call_numbers(g, b).values);
    CHECK(draw_call_numbers(g, c).values != draw_call_numbers(g, b).values);
}

TEST_CASE("occupied subgraph is empty at zero, full at one, monotone between") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 5, 5}, Boundary::Free);
    Rng rng = Rng::stream(62, 0);
    CallNumbers u = draw_call_numbers(g, rng);
    CHECK(occupied_subgraph(g, u, 0.0).empty());
    CHECK(static_cast<std::int32_t>(occupied_subgraph(g, u, 1.0).size()) == g.edge_count());
    auto lo = occupied_subgraph(g, u, 0.3), hi = occupied_subgraph(g, u, 0.7);
    CHECK(std::includes(hi.begin(), hi.end(), lo.begin(), lo.end()));
}

TEST_CASE("triangle call numbers pick the two cheapest edges") {
    RegionGraph g = make_graph({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
    SpanningTree t = kruskal_mst(g, calls({0.1, 0.5, 0.9}));
    CHECK(t.tree_edges == std::vector<EdgeId>{0, 1});
}

TEST_CASE("a tree-shaped graph is returned whole for any call numbers") {
    RegionGraph g = make_graph({{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                               {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    CallNumbers u = calls({0.9, 0.2, 0.6, 0.4});
    CHECK(kruskal_mst(g, u).tree_edges == std::vector<EdgeId>{0, 1, 2, 3});
    CHECK(invasion_tree(g, u, 2).tree_edges == std::vector<EdgeId>{0, 1, 2, 3});
}

TEST_CASE("invasion of a path adjoins edges in adjacency order") {
    RegionGraph g = make_graph({{0, 0}, {1, 0}, {2, 0}, {3, 0}, {4, 0}},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    SpanningTree t = invasion_tree(g, calls({0.9, 0.1, 0.8, 0.2}), 0);
    REQUIRE(t.tree_edges == std::vector<EdgeId>{0, 1, 2, 3});
    for (VertexId v = 1; v < 5; ++v) CHECK(t.parent_vertex(v) == v - 1);
}

TEST_CASE("the four-cycle omits its costliest edge") {
    RegionGraph g = make_graph({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    CallNumbers u = calls({0.2, 0.4, 0.6, 0.8});
    CHECK(kruskal_mst(g, u).tree_edges == std::vector<EdgeId>{0, 1, 2});
    for (VertexId root = 0; root < 4; ++root)
        CHECK(invasion_tree(g, u, root).tree_edges == std::vector<EdgeId>{0, 1, 2});
}

TEST_CASE("kruskal rejects a disconnected graph") {
    RegionGraph g = make_graph({{0, 0}, {1, 0}, {3, 0}, {4, 0}}, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(kruskal_mst(g, calls({0.4, 0.6})), std::invalid_argument);
    CHECK_THROWS_AS(invasion_tree(g, calls({0.4, 0.6}), 0), std::invalid_argument);
}

TEST_CASE("kruskal weight matches the brute-force minimum on small graphs") {
    Rng rng = Rng::stream(63, 0);
    for (int trial = 0; trial < 200; ++trial) {
        RegionGraph g = oracle::random_connected_graph(rng);
        CallNumbers u = draw_call_numbers(g, rng);
        SpanningTree t = kruskal_mst(g, u);
        oracle::require_spanning_tree(g, t);
        auto trees = oracle::enumerate_spanning_trees(g);
        double best = 1e18;
        std::vector<EdgeId> argbest;
        for (const auto& tree : trees) {
            double w = 0.0;
            for (EdgeId e : tree) w += u.values[e];
            if (w < best) {
                best = w;
                argbest = tree;
            }
        }
        CHECK(t.tree_edges == argbest);
        CHECK(tree_weight(t, u) <= best + 1e-12);
    }
}

TEST_CASE("invasion equals kruskal from every root") {
    Rng rng = Rng::stream(64, 0);
    for (int trial = 0; trial < 800; ++trial) {
        RegionGraph g = oracle::random_connected_graph(rng);
        CallNumbers u = draw_call_numbers(g, rng);
        VertexId root = static_cast<VertexId>(rng.next_below(g.vertex_count()));
        CHECK(invasion_tree(g, u, root).tree_edges == kruskal_mst(g, u).tree_edges);
    }
    RegionGraph box = build_lattice_box(1.0, {0, 0, 5, 5}, Boundary::Wired);
    AnnulusSpec spec{{0, 0}, 2.0, 7.0, Boundary::Free, Boundary::Wired};
    RegionGraph shell = build_lattice_annulus(1.0, spec);
    for (const RegionGraph* g : {&box, &shell}) {
        for (int trial = 0; trial < 100; ++trial) {
            CallNumbers u = draw_call_numbers(*g, rng);
            VertexId root = static_cast<VertexId>(rng.next_below(g->vertex_count()));
            SpanningTree a = invasion_tree(*g, u, root);
            SpanningTree b = kruskal_mst(*g, u);
            CHECK(a.tree_edges == b.tree_edges);
            CHECK(a.root == root);
        }
    }
}

TEST_CASE("the tree depends only on the ordering of the call numbers") {
    Rng rng = Rng::stream(65, 0);
    for (int trial = 0; trial < 50; ++trial) {
        RegionGraph g = oracle::random_connected_graph(rng);
        CallNumbers u = draw_call_numbers(g, rng);
        CallNumbers cubed = u;
        for (double& v : cubed.values) v = v * v * v;
        CHECK(kruskal_mst(g, cubed).tree_edges == kruskal_mst(g, u).tree_edges);
        CHECK(invasion_tree(g, cubed, 0).tree_edges == kruskal_mst(g, u).tree_edges);
    }
}

TEST_CASE("vacant triangle edge is bypassed by the two cheaper ones") {
    RegionGraph g = make_graph({{0, 0}, {1, 0}, {0, 1}}, {{0, 1}, {1, 2}, {2, 0}});
    CallNumbers u = calls({0.1, 0.5, 0.9});
    SpanningTree t = kruskal_mst(g, u);
    CHECK(verify_vacancy_cycle_property(g, u, t).ok());

    // the swap evicts the middle edge, which no cheaper path can replace
    SpanningTree bad = corrupt_swap(g, t);
    VacancyReport report = verify_vacancy_cycle_property(g, u, bad);
    REQUIRE(!report.ok());
    CHECK(report.violations == std::vector<EdgeId>{1});
}

TEST_CASE("every vacant edge is bypassed by cheaper connections on annuli") {
    std::vector<AnnulusSpec> shapes = {
        {{0, 0}, 2.0, 7.0, Boundary::Free, Boundary::Wired},
        {{0, 0}, 3.0, 9.0, Boundary::Wired, Boundary::Free},
        {{0, 0}, 0.0, 5.0, Boundary::Free, Boundary::Wired},
        {{0, 0}, 2.0, 8.5, Boundary::Free, Boundary::Free},
    };
    Rng rng = Rng::stream(66, 0);
    for (const AnnulusSpec& spec : shapes) {
        RegionGraph g = build_lattice_annulus(1.0, spec);
        for (int trial = 0; trial < 2500; ++trial) {
            CallNumbers u = draw_call_numbers(g, rng);
            CHECK(verify_vacancy_cycle_property(g, u, kruskal_mst(g, u)).ok());
        }
    }
}

TEST_CASE("corrupted trees are reported on lattice graphs") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 6, 6}, Boundary::Wired);
    Rng rng = Rng::stream(67, 0);
    for (int trial = 0; trial < 50; ++trial) {
        CallNumbers u = draw_call_numbers(g, rng);
        SpanningTree bad = corrupt_swap(g, kruskal_mst(g, u));
        CHECK(!verify_vacancy_cycle_property(g, u, bad).ok());
    }
}

TEST_CASE("vacant duals of the four-cycle form the dual minimum tree") {
    RegionGraph g = make_graph({{0, 0}, {1, 0}, {1, 1}, {0, 1}},
                               {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
    PlanarDual d = planar_dual(g);
    REQUIRE(d.dual.vertex_count() == 2);
    REQUIRE(d.dual.edge_count() == 4);
    CallNumbers u = calls({0.35, 0.6, 0.15, 0.8});
    CHECK(dual_mst_check(g, u, d).ok());

    // the dual tree is the single dual edge crossing the costliest primal edge
    CallNumbers reversed = calls({0, 0, 0, 0});
    for (EdgeId e = 0; e < 4; ++e) reversed.values[d.to_dual[e]] = 1.0 - u.values[e];
    CHECK(kruskal_mst(d.dual, reversed).tree_edges == std::vector<EdgeId>{d.to_dual[3]});

    // permuting the reversed numbers between the copies breaks the identity
    CallNumbers shifted = calls({0, 0, 0, 0});
    for (EdgeId e = 0; e < 4; ++e) shifted.values[d.to_dual[e]] = 1.0 - u.values[(e + 1) % 4];
    CHECK(kruskal_mst(d.dual, shifted).tree_edges != std::vector<EdgeId>{d.to_dual[3]});
}

TEST_CASE("vacant duals form the dual minimum tree on boxes and annuli") {
    Rng rng = Rng::stream(68, 0);
    std::vector<RegionGraph> graphs;
    graphs.push_back(build_lattice_box(1.0, {0, 0, 3, 3}, Boundary::Free));
    graphs.push_back(build_lattice_box(1.0, {0, 0, 4, 2}, Boundary::Free));
    graphs.push_back(build_lattice_box(1.0, {0, 0, 3, 2}, Boundary::Wired));
    graphs.push_back(build_lattice_annulus(1.0, {{0, 0}, 2.0, 7.0, Boundary::Free, Boundary::Wired}));
    graphs.push_back(build_lattice_annulus(1.0, {{0, 0}, 0.0, 4.0, Boundary::Free, Boundary::Wired}));
    for (const RegionGraph& g : graphs) {
        PlanarDual d = planar_dual(g);
        for (int trial = 0; trial < 200; ++trial) {
            CallNumbers u = draw_call_numbers(g, rng);
            CHECK(dual_mst_check(g, u, d).ok());
        }
    }
}

TEST_CASE("free and wired subregion trees bracket the full tree") {
    Rng rng = Rng::stream(69, 0);
    RegionGraph box = build_lattice_box(1.0, {0, 0, 11, 9}, Boundary::Free);
    RegionGraph wired = build_lattice_box(1.0, {0, 0, 9, 9}, Boundary::Wired);
    for (const RegionGraph* g : {&box, &wired}) {
        for (int trial = 0; trial < 334; ++trial) {
            double x0 = 0.5 + rng.next_below(4), y0 = 0.5 + rng.next_below(4);
            Rect sub{x0, y0, x0 + 2 + rng.next_below(3), y0 + 2 + rng.next_below(3)};
            CallNumbers u = draw_call_numbers(*g, rng);
            CHECK(bracketing_check(*g, u, sub).ok());
        }
    }
    AnnulusSpec spec{{0, 0}, 2.0, 9.0, Boundary::Free, Boundary::Wired};
    RegionGraph shell = build_lattice_annulus(1.0, spec);
    for (int trial = 0; trial < 334; ++trial) {
        double x0 = 2.5 + rng.next_below(2), y0 = -1.5 + 2.0 * rng.next_below(2);
        Rect sub{x0, y0, x0 + 2 + rng.next_below(2), y0 + 2};
        CallNumbers u = draw_call_numbers(shell, rng);
        CHECK(bracketing_check(shell, u, sub).ok());
    }
}

TEST_CASE("bracketing over the full region is an identity") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 11, 9}, Boundary::Free);
    Rng rng = Rng::stream(70, 0);
    CallNumbers u = draw_call_numbers(g, rng);
    Rect sub{0, 0, 11, 9};
    CHECK(bracketing_check(g, u, sub).ok());

    SpanningTree full = kruskal_mst(g, u);
    SubgraphMap fs = restrict_region(g, inside_rect(g, sub), Boundary::Free);
    CHECK(fs.graph.edge_count() == g.edge_count());
    CHECK(kruskal_mst(fs.graph, restrict_calls(u, fs)).tree_edges == full.tree_edges);
    SubgraphMap ws = restrict_region(g, inside_rect(g, sub), Boundary::Wired);
    CHECK(!ws.graph.wired()); // no edge leaves the full region, so no boundary vertex
    CHECK(kruskal_mst(ws.graph, restrict_calls(u, ws)).tree_edges == full.tree_edges);
}

TEST_CASE("bracketing rejects a subregion outside the graph") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 5, 5}, Boundary::Free);
    Rng rng = Rng::stream(71, 0);
    CallNumbers u = draw_call_numbers(g, rng);
    CHECK_THROWS_AS(bracketing_check(g, u, {3, 3, 7, 4}), std::invalid_argument);
    RegionGraph shell =
        build_lattice_annulus(1.0, {{0, 0}, 2.0, 9.0, Boundary::Free, Boundary::Wired});
    CallNumbers us = draw_call_numbers(shell, rng);
    // overlaps the inner hole, so it is not contained in the shell
    CHECK_THROWS_AS(bracketing_check(shell, us, {-1.5, -1.5, 1.5, 1.5}), std::invalid_argument);
}

TEST_CASE("permuted call numbers between the copies break the bracketing") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 11, 9}, Boundary::Free);
    Rng rng = Rng::stream(72, 0);
    CallNumbers u = draw_call_numbers(g, rng);
    SpanningTree full = kruskal_mst(g, u);
    Rect sub{2.5, 2.5, 7.5, 6.5};
    SubgraphMap fs = restrict_region(g, inside_rect(g, sub), Boundary::Free);
    CallNumbers permuted = restrict_calls(u, fs);
    std::reverse(permuted.values.begin(), permuted.values.end());
    SpanningTree decoupled = kruskal_mst(fs.graph, permuted);
    std::vector<char> in_free(fs.graph.edge_count(), 0);
    for (EdgeId e : decoupled.tree_edges) in_free[e] = 1;
    int violations = 0;
    for (EdgeId e : full.tree_edges) {
        const auto& ed = g.edges[e];
        if (!sub.contains(ed.tip) || !sub.contains(g.coords[ed.a])) continue;
        if (fs.image_edge[e] < 0 || !in_free[fs.image_edge[e]]) ++violations;
    }
    CHECK(violations > 0);
}

TEST_CASE("circle cuts factorize into independent free and wired trees") {
    Rng rng = Rng::stream(73, 0);
    AnnulusSpec spec{{0, 0}, 2.0, 8.0, Boundary::Free, Boundary::Wired};
    RegionGraph shell = build_lattice_annulus(1.0, spec);
    RegionGraph box = build_lattice_box(1.0, {0, 0, 9, 7}, Boundary::Free);
    for (int trial = 0; trial < 500; ++trial) {
        Circle cut{{0.13, -0.07}, 2.6 + 4.8 * rng.next_double()};
        CallNumbers u = draw_call_numbers(shell, rng);
        CHECK(fw_factorization_sample(shell, u, cut).ok());
    }
    for (int trial = 0; trial < 500; ++trial) {
        Circle cut{{4.5 + rng.next_double(), 3.5 + rng.next_double()}, 1.3 + 3.0 * rng.next_double()};
        CallNumbers u = draw_call_numbers(box, rng);
        CHECK(fw_factorization_sample(box, u, cut).ok());
    }
}

TEST_CASE("a cut around the whole region is an identity factorization") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 9, 7}, Boundary::Free);
    Rng rng = Rng::stream(74, 0);
    CallNumbers u = draw_call_numbers(g, rng);
    Circle cut{{4.5, 3.5}, 1000.0};
    CHECK(fw_factorization_sample(g, u, cut).ok());
    SubgraphMap fs = restrict_region(g, inside_circle(g, cut), Boundary::Free);
    CHECK(fs.graph.edge_count() == g.edge_count());
    CHECK(kruskal_mst(fs.graph, restrict_calls(u, fs)).tree_edges ==
          kruskal_mst(g, u).tree_edges);
}

TEST_CASE("permuted call numbers break the factorization coupling") {
    RegionGraph g = build_lattice_box(1.0, {0, 0, 9, 7}, Boundary::Free);
    Rng rng = Rng::stream(75, 0);
    CallNumbers u = draw_call_numbers(g, rng);
    SpanningTree full = kruskal_mst(g, u);
    Circle cut{{4.5, 3.5}, 3.2};
    std::vector<char> mask = inside_circle(g, cut);
    SubgraphMap fs = restrict_region(g, mask, Boundary::Free);
    CallNumbers permuted = restrict_calls(u, fs);
    std::reverse(permuted.values.begin(), permuted.values.end());
    SpanningTree decoupled = kruskal_mst(fs.graph, permuted);
    std::vector<char> in_free(fs.graph.edge_count(), 0);
    for (EdgeId e : decoupled.tree_edges) in_free[e] = 1;
    int violations = 0;
    for (EdgeId e : full.tree_edges) {
        const auto& ed = g.edges[e];
        if (mask[ed.a] && mask[ed.b] && !in_free[fs.image_edge[e]]) ++violations;
    }
    CHECK(violations > 0);
}

TEST_CASE("critical percolation crosses the self-dual rectangle half the time") {
    // (n+1) x n vertices: left-right crossings and their dual complements
    // have the same law at density one half
    RegionGraph g = build_lattice_box(1.0, {0, 0, 8, 7}, Boundary::Free);
    std::vector<VertexId> left, right;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.coords[v].x == 0.0) left.push_back(v);
        if (g.coords[v].x == 8.0) right.push_back(v);
    }
    std::int64_t crossings = 0, n_samples = 10000;
    for (std::int64_t s = 0; s < n_samples; ++s) {
        Rng rng = Rng::stream(76, static_cast<std::uint64_t>(s));
        CallNumbers u = draw_call_numbers(g, rng);
        oracle::UnionFind uf(g.vertex_count());
        for (EdgeId e : occupied_subgraph(g, u, 0.5)) uf.unite(g.edges[e].a, g.edges[e].b);
        bool crossed = false;
        for (VertexId l : left)
            for (VertexId r : right)
                if (!crossed && uf.find(l) == uf.find(r)) crossed = true;
        crossings += crossed;
    }
    double p_hat = static_cast<double>(crossings) / static_cast<double>(n_samples);
    CHECK(std::abs(p_hat - 0.5) < 3.0 * std::sqrt(0.25 / static_cast<double>(n_samples)));
}
