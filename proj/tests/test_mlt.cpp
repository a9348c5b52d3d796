#include <catch2/catch_amalgamated.hpp>

#include "psdrank/completion.hpp"
#include "psdrank/gcr.hpp"
#include "psdrank/mlt.hpp"

using namespace psdrank;

TEST_CASE("mlt closed form for complete bipartite graphs") {
    CHECK(mlt_bipartite(5, 5) == 4);
    CHECK(mlt_bipartite(2, 2) == 3);
    CHECK(mlt_bipartite(3, 3) == 3);
    CHECK_THROWS_AS(mlt_bipartite(1, 3), std::invalid_argument);
    CHECK_THROWS_AS(mlt_bipartite(4, 2), std::invalid_argument);
}

TEST_CASE("mlt equals gcr for small bipartite parts") {
    for (int m = 2; m <= 4; ++m)
        for (int n = m; n <= 20; ++n) CHECK(mlt_bipartite(m, n) == gcr_bipartite(m, n));
    // and whenever n exceeds C(m,2)
    for (int m = 2; m <= 8; ++m)
        for (int n = m * (m - 1) / 2 + 1; n <= m * (m - 1) / 2 + 6; ++n)
            CHECK(mlt_bipartite(m, n) == gcr_bipartite(m, n));
}

TEST_CASE("buhl bounds") {
    CHECK(buhl_bounds(complete_graph(4)) == std::pair<int, int>{4, 4});
    CHECK(buhl_bounds(cycle_graph(5)) == std::pair<int, int>{2, 3});
    CHECK(buhl_bounds(complete_bipartite(5, 5)) == std::pair<int, int>{2, 6});
}

TEST_CASE("mlt dispatch") {
    // chordal: the clique/treewidth squeeze closes
    auto rep = mlt_dispatch(wheel_graph(4));  // K4
    REQUIRE(rep.exact);
    CHECK(*rep.exact == 4);
    auto path = mlt_dispatch(path_graph(5));
    REQUIRE(path.exact);
    CHECK(*path.exact == 2);

    // K4 glued to K_{3,4} at a shared vertex
    Graph g(10);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) g.add_edge(i, j);
    for (int i = 4; i <= 6; ++i)
        for (int j = 7; j <= 10; ++j) g.add_edge(i, j);
    auto sum = mlt_dispatch(g);
    REQUIRE(sum.exact);
    CHECK(*sum.exact == 4);

    auto b = mlt_dispatch(complete_bipartite(5, 5));
    REQUIRE(b.exact);
    CHECK(*b.exact == 4);

    // series-parallel branch: mlt equals gcr
    auto c5 = mlt_dispatch(cycle_graph(5));
    REQUIRE(c5.exact);
    CHECK(*c5.exact == 3);

    auto j = to_json(b);
    CHECK(j.at("value").get<int>() == 4);
    CHECK(j.contains("lower"));
    CHECK(j.contains("seed"));
}

TEST_CASE("clique-sum rule consistency") {
    // gluing two exactly-solved graphs combines by maximum
    Graph g1 = complete_graph(4);
    Graph g2 = complete_bipartite(3, 4);
    Graph glued(10);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) glued.add_edge(i, j);
    for (int i = 4; i <= 6; ++i)
        for (int j = 7; j <= 10; ++j) glued.add_edge(i, j);
    auto r1 = mlt_dispatch(g1), r2 = mlt_dispatch(g2), r = mlt_dispatch(glued);
    REQUIRE((r1.exact && r2.exact && r.exact));
    CHECK(*r.exact == std::max(*r1.exact, *r2.exact));
}

TEST_CASE("mlt never exceeds gcr on the generator corpus") {
    std::vector<Graph> corpus{complete_graph(4),  complete_graph(6),        complete_bipartite(2, 4),
                              complete_bipartite(3, 5), complete_bipartite(5, 5), cycle_graph(5),
                              cycle_graph(8),     path_graph(7),            wheel_graph(6),
                              wheel_graph(8),     figure1_graph()};
    for (const auto& g : corpus) {
        auto m = mlt_dispatch(g);
        auto r = gcr_dispatch(g);
        REQUIRE(r.exact());
        CHECK(m.upper <= r.lo);
        if (m.exact) CHECK(*m.exact <= r.lo);
    }
}

TEST_CASE("pd completion existence, identity partial") {
    auto g = cycle_graph(6);
    SymMatrix id(6);
    for (int i = 0; i < 6; ++i) id.at(i, i) = 1.0;
    auto p = project(g, id);
    auto v = pd_completion_exists(p);
    CHECK(v.status == ExistenceStatus::Exists);
    REQUIRE(v.witness);
    auto [lmin, vec] = min_eigenvalue_and_vector(*v.witness);
    (void)vec;
    CHECK(lmin > 0.0);
    CHECK(verify_completion(p, *v.witness, 6, 1e-8).max_residual <= 1e-8);
}

TEST_CASE("pd completion existence, C4 obstruction") {
    GPartialMatrix p;
    p.graph = cycle_graph(4);
    p.diag = {1, 1, 1, 1};
    p.edge_vals[{1, 2}] = 1;
    p.edge_vals[{2, 3}] = 1;
    p.edge_vals[{3, 4}] = 1;
    p.edge_vals[{1, 4}] = -1;
    auto v = pd_completion_exists(p);
    CHECK(v.status == ExistenceStatus::NotExists);
    REQUIRE(v.certificate);
    CHECK(v.certificate->sound());
    CHECK(v.pairing_value <= 1e-6);
}

TEST_CASE("pd completion existence, rank-4 Wishart on K55") {
    auto g = complete_bipartite(5, 5);
    for (int t = 0; t < 5; ++t) {
        auto p = wishart_partial(g, 4, derive_seed(0, 5000 + t));
        auto v = pd_completion_exists(p);
        CHECK(v.status == ExistenceStatus::Exists);
        REQUIRE(v.witness);
        auto [lmin, vec] = min_eigenvalue_and_vector(*v.witness);
        (void)vec;
        CHECK(lmin > 0.0);
        CHECK(verify_completion(p, *v.witness, g.num_vertices(), 1e-6).max_residual <= 1e-6 * (1.0 + p.scale()));
    }
}

TEST_CASE("boundary certificate search") {
    // C4 obstruction: a certificate with pairing <= 1e-6 exists
    GPartialMatrix p;
    p.graph = cycle_graph(4);
    p.diag = {1, 1, 1, 1};
    p.edge_vals[{1, 2}] = 1;
    p.edge_vals[{2, 3}] = 1;
    p.edge_vals[{3, 4}] = 1;
    p.edge_vals[{1, 4}] = -1;
    auto cert = boundary_certificate_search(p);
    REQUIRE(cert);
    CHECK(cert->sound());
    CHECK(pairing(*cert, p) <= 1e-6);

    // identity partial: pairing equals trace = 1, no certificate possible
    auto g = cycle_graph(4);
    SymMatrix id(4);
    for (int i = 0; i < 4; ++i) id.at(i, i) = 1.0;
    CHECK_FALSE(boundary_certificate_search(project(g, id)));
}

TEST_CASE("bipartite certificate soundness") {
    auto bc = bipartite_certificate(5, 5, 3, 0, 1000);
    CHECK(bc.cert.sound());
    CHECK(float_rank(bc.cert.matrix, 1e-6) <= 5);
    double mw = 0.0;
    for (int j = 0; j < 3; ++j) {
        std::vector<double> col(10);
        for (int i = 0; i < 10; ++i) col[i] = bc.w.at(i, j);
        for (double x : bc.cert.matrix.apply(col)) mw = std::max(mw, std::abs(x));
    }
    CHECK(mw <= 1e-8);

    auto bc22 = bipartite_certificate(2, 2, 2, 0, 1000);
    CHECK(bc22.cert.sound());

    CHECK_THROWS_AS(bipartite_certificate(3, 3, 3, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(bipartite_certificate(3, 2, 2, 0, 10), std::invalid_argument);
}

TEST_CASE("plant and recover") {
    auto bc = bipartite_certificate(5, 5, 3, 21, 1000);
    // a PSD matrix whose column span lies in the killed subspace
    SymMatrix a(10);
    for (int i = 0; i < 10; ++i)
        for (int j = i; j < 10; ++j)
            for (int k = 0; k < 3; ++k) a.at(i, j) += bc.w.at(i, k) * bc.w.at(j, k);
    auto p = project(complete_bipartite(5, 5), a);
    CHECK(std::abs(pairing(bc.cert, p)) <= 1e-8 * (1.0 + p.scale()));
    auto v = pd_completion_exists(p);
    CHECK(v.status != ExistenceStatus::Exists);
}

TEST_CASE("wishart sampling") {
    auto g = cycle_graph(5);
    auto p1 = wishart_partial(g, 2, 77);
    auto p2 = wishart_partial(g, 2, 77);
    CHECK(p1.diag == p2.diag);
    CHECK(p1.edge_vals == p2.edge_vals);
    for (double d : p1.diag) CHECK(d >= 0.0);
    auto full = wishart_partial(g, 5, 78);
    CHECK(pd_completion_exists(full).status == ExistenceStatus::Exists);
    CHECK_THROWS_AS(wishart_partial(g, 0, 1), std::invalid_argument);
}

TEST_CASE("monte carlo estimates") {
    // K4: the sample itself must be PD, so the estimate is n
    auto mc = mlt_monte_carlo(complete_graph(4), 20, 0);
    REQUIRE(mc.estimate);
    CHECK(*mc.estimate == 4);
    for (int r = 1; r <= 3; ++r) CHECK(mc.exists_frequency[r] < 1.0);

    auto mcp = mlt_monte_carlo(path_graph(4), 20, 0);
    REQUIRE(mcp.estimate);
    CHECK(*mcp.estimate == 2);

    // frequencies are monotone in r up to Undetermined noise
    auto mcc = mlt_monte_carlo(cycle_graph(4), 50, 0);
    for (int r = 1; r < 4; ++r) {
        double slack = mcc.undetermined_frequency[r] + mcc.undetermined_frequency[r + 1];
        CHECK(mcc.exists_frequency[r + 1] >= mcc.exists_frequency[r] - slack - 1e-12);
    }
}

TEST_CASE("sparsity order for complete bipartite graphs") {
    CHECK(sparsity_order_bipartite(3, 4) == 4);
    CHECK(gcr_bipartite(3, 4) + sparsity_order_bipartite(3, 4) == 8);  // equality case n = C(m,2)+1
    CHECK(sparsity_order_bipartite(5, 5) == 5);
    CHECK(sparsity_order_bipartite(2, 2) == 2);
    CHECK(gcr_bipartite(2, 2) + sparsity_order_bipartite(2, 2) == 5);
    for (int m = 2; m <= 5; ++m)
        for (int n = m; n <= 12; ++n) CHECK(check_order_inequality(m, n));
    CHECK_THROWS_AS(sparsity_order_bipartite(1, 2), std::invalid_argument);
}
