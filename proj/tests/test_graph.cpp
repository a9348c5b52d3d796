#include <catch2/catch_amalgamated.hpp>

#include "psdrank/graph.hpp"
#include "psdrank/rand.hpp"

using namespace psdrank;

namespace {

Graph random_graph(int n, double p, std::mt19937_64& rng) {
    Graph g(n);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (u(rng) < p) g.add_edge(i, j);
    return g;
}

}  // namespace

TEST_CASE("generators") {
    CHECK(complete_graph(4).num_edges() == 6);
    CHECK(complete_bipartite(3, 5).num_edges() == 15);
    CHECK(cycle_graph(5).num_edges() == 5);
    CHECK(path_graph(6).num_edges() == 5);
    CHECK(wheel_graph(6).num_edges() == 10);  // C5 plus apex
    auto fig = figure1_graph();
    CHECK(fig.num_vertices() == 10);
    CHECK(fig.num_edges() == 12);
    // K4 with each edge subdivided: four degree-3 branch vertices, six degree-2
    int deg3 = 0, deg2 = 0;
    for (int v = 1; v <= 10; ++v) {
        if (fig.degree(v) == 3) ++deg3;
        if (fig.degree(v) == 2) ++deg2;
    }
    CHECK(deg3 == 4);
    CHECK(deg2 == 6);
}

TEST_CASE("generator tokens") {
    CHECK(generate("complete:4") == complete_graph(4));
    CHECK(generate("bipartite:2:3") == complete_bipartite(2, 3));
    CHECK(generate("cycle:5") == cycle_graph(5));
    CHECK(generate("path:3") == path_graph(3));
    CHECK(generate("wheel:5") == wheel_graph(5));
    CHECK(generate("figure1") == figure1_graph());
    CHECK_THROWS_AS(generate("torus:3"), std::invalid_argument);
    CHECK_THROWS_AS(generate("cycle"), std::invalid_argument);
    CHECK_THROWS_AS(generate("cycle:x"), std::invalid_argument);
}

TEST_CASE("edge list parsing") {
    auto g = graph_from_edge_list("3 2\n1 2\n2 3\n");
    CHECK(g.num_vertices() == 3);
    CHECK(g.has_edge(1, 2));
    CHECK(g.has_edge(2, 3));
    CHECK_FALSE(g.has_edge(1, 3));
    CHECK_THROWS_AS(graph_from_edge_list(""), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edge_list("3 1\n1 4\n"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edge_list("3 2\n1 2\n1 2\n"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edge_list("3 1\n2 1\n"), std::invalid_argument);
    CHECK_THROWS_AS(graph_from_edge_list("3 2\n1 2\n"), std::invalid_argument);
}

TEST_CASE("clique number") {
    CHECK(clique_number(complete_graph(4)) == 4);
    CHECK(clique_number(cycle_graph(5)) == 2);
    CHECK(clique_number(wheel_graph(6)) == 3);
    for (int m = 1; m <= 4; ++m)
        for (int n = m; n <= 6; ++n) CHECK(clique_number(complete_bipartite(m, n)) == 2);
}

TEST_CASE("k-core") {
    auto [kept, sub] = k_core(figure1_graph(), 3);
    CHECK(kept.empty());
    CHECK(sub.num_vertices() == 0);
    auto [kept2, sub2] = k_core(complete_graph(5), 3);
    CHECK(kept2.size() == 5);

    auto rng = make_rng(11);
    for (int t = 0; t < 20; ++t) {
        auto g = random_graph(8, 0.4, rng);
        for (int k = 0; k <= 3; ++k) {
            auto [a, ga] = k_core(g, k);
            auto [b, gb] = k_core(g, k + 1);
            // monotone: the (k+1)-core sits inside the k-core
            for (int v : b) CHECK(std::find(a.begin(), a.end(), v) != a.end());
            // idempotent
            auto [aa, gaa] = k_core(ga, k);
            CHECK(aa.size() == a.size());
        }
    }
}

TEST_CASE("chordality") {
    CHECK(is_chordal(complete_graph(5)));
    CHECK(is_chordal(path_graph(6)));
    CHECK_FALSE(is_chordal(cycle_graph(4)));
    CHECK_FALSE(is_chordal(cycle_graph(6)));
    CHECK(is_chordal(wheel_graph(4)));  // K4
    CHECK_FALSE(is_chordal(wheel_graph(6)));
}

TEST_CASE("treewidth at most 2 recognition") {
    CHECK(treewidth_at_most_2(cycle_graph(6)));
    CHECK_FALSE(treewidth_at_most_2(complete_graph(4)));
    CHECK(treewidth_at_most_2(complete_bipartite(2, 3)));
    CHECK(treewidth_at_most_2(path_graph(8)));
    CHECK_FALSE(treewidth_at_most_2(wheel_graph(6)));
    CHECK_FALSE(treewidth_at_most_2(complete_bipartite(3, 3)));
}

TEST_CASE("treewidth upper bound") {
    CHECK(treewidth_upper_bound(complete_graph(4)) == 3);
    CHECK(treewidth_upper_bound(path_graph(9)) == 1);
    // valid bound for complete bipartite graphs: at most m+1
    for (int m = 2; m <= 4; ++m)
        for (int n = m; n <= 7; ++n) CHECK(treewidth_upper_bound(complete_bipartite(m, n)) <= m + 1);
    // the min-fill heuristic is exact on chordal graphs
    auto rng = make_rng(7);
    for (int t = 0; t < 20; ++t) {
        // random chordal graph: each new vertex attaches to a clique
        Graph g(7);
        std::vector<std::vector<int>> cliques{{1}};
        for (int v = 2; v <= 7; ++v) {
            auto& base = cliques[rng() % cliques.size()];
            std::vector<int> nb;
            for (int u : base)
                if (rng() % 2) nb.push_back(u);
            for (int u : nb) g.add_edge(u, v);
            nb.push_back(v);
            cliques.push_back(nb);
        }
        REQUIRE(is_chordal(g));
        CHECK(treewidth_upper_bound(g) == clique_number(g) - 1);
    }
}

TEST_CASE("bipartition detection") {
    auto parts = complete_bipartite_parts(complete_bipartite(3, 5));
    REQUIRE(parts);
    CHECK(parts->first.size() == 3);
    CHECK(parts->second.size() == 5);
    CHECK_FALSE(complete_bipartite_parts(cycle_graph(5)));
    CHECK_FALSE(complete_bipartite_parts(path_graph(4)));  // bipartite but not complete bipartite
    CHECK(bipartition(cycle_graph(6)).has_value());
    CHECK_FALSE(bipartition(cycle_graph(5)).has_value());
}

TEST_CASE("graph basics") {
    Graph g(3);
    g.add_edge(3, 1);
    CHECK(g.has_edge(1, 3));
    CHECK(g.edges() == std::vector<std::pair<int, int>>{{1, 3}});
    CHECK_THROWS_AS(g.add_edge(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(g.add_edge(0, 2), std::invalid_argument);
    auto sub = complete_graph(4).induced({2, 3});
    CHECK(sub.num_vertices() == 2);
    CHECK(sub.has_edge(1, 2));
    CHECK(complete_graph(4).is_clique({1, 2, 4}));
    CHECK_FALSE(cycle_graph(4).is_clique({1, 2, 3}));
}
