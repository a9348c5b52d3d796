#include <catch2/catch_amalgamated.hpp>

#include "psdrank/completion.hpp"

using namespace psdrank;

namespace {

// Gram matrix of random Gaussian rows of length r.
SymMatrix random_gram(int n, int r, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Dense f(n, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) f.at(i, j) = g(rng);
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < r; ++k) s += f.at(i, k) * f.at(j, k);
            a.at(i, j) = s;
        }
    return a;
}

BorderedMatrix bordered_from(const SymMatrix& full) {
    int n = full.dim() - 2;
    BorderedMatrix bm;
    bm.m_core = Dense(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) bm.m_core.at(i, j) = full.at(i + 1, j + 1);
    bm.a.resize(n + 1);
    bm.a[0] = full.at(0, 0);
    for (int i = 0; i < n; ++i) bm.a[i + 1] = full.at(0, i + 1);
    bm.b.resize(n + 1);
    for (int i = 0; i < n; ++i) bm.b[i] = full.at(i + 1, n + 1);
    bm.b[n] = full.at(n + 1, n + 1);
    return bm;
}

// Case (b) oracle: rank n+1 overall, bottom-right (n+1)-block of rank n.
SymMatrix case_b_instance(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Dense f(n + 2, n + 1);
    for (int i = 0; i < n + 2; ++i)
        for (int j = 0; j < n + 1; ++j) f.at(i, j) = g(rng);
    for (int j = 0; j < n + 1; ++j) {
        double s = 0.0;
        for (int i = 1; i <= n; ++i) s += 0.3 * f.at(i, j);
        f.at(n + 1, j) = s;  // last row depends on the middle rows
    }
    SymMatrix full(n + 2);
    for (int i = 0; i < n + 2; ++i)
        for (int j = i; j < n + 2; ++j) {
            double s = 0.0;
            for (int k = 0; k < n + 1; ++k) s += f.at(i, k) * f.at(j, k);
            full.at(i, j) = s;
        }
    return full;
}

}  // namespace

TEST_CASE("one entry case a, worked 3x3 examples") {
    BorderedMatrix bm;
    bm.m_core = Dense(1, 1);
    bm.m_core.at(0, 0) = 1.0;
    bm.a = {1.0, 0.0};
    bm.b = {1.0, 1.0};
    // det P(t) = (a0 - a M^{-1} a)(t - b M^{-1} a)^2 = t^2
    auto r = one_entry_case_a(bm);
    REQUIRE(r.real);
    CHECK(r.first.real() == Catch::Approx(0.0).margin(1e-10));
    CHECK(r.second.real() == Catch::Approx(0.0).margin(1e-10));

    bm.a = {2.0, 1.0};
    auto r2 = one_entry_case_a(bm);
    REQUIRE(r2.real);
    CHECK(r2.first.real() == Catch::Approx(1.0));
    CHECK(r2.second.real() == Catch::Approx(1.0));
}

TEST_CASE("one entry case a roots drop the rank") {
    auto rng = make_rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int t = 0; t < 40; ++t) {
        int n = 2 + static_cast<int>(rng() % 3);
        SymMatrix full(n + 2);
        for (int i = 0; i < n + 2; ++i)
            for (int j = i; j < n + 2; ++j) full.at(i, j) = u(rng);
        auto bm = bordered_from(full);
        QuadraticRoots roots;
        try {
            roots = one_entry_case_a(bm);
        } catch (const std::runtime_error&) {
            continue;  // singular core: resample
        }
        if (!roots.real) continue;
        auto p0 = bm.assemble(roots.first.real());
        CHECK(float_rank(p0, 1e-6) <= n + 1);
    }
}

TEST_CASE("case a square structure at the rank-deficient corner") {
    // when the bottom-right block is singular (b_{n+1} = b^T M^{-1} b) the
    // determinant is a perfect square in t, so both roots coincide
    auto rng = make_rng(12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int n = 3;
    BorderedMatrix bm;
    bm.m_core = Dense(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double x = u(rng);
            bm.m_core.at(i, j) = bm.m_core.at(j, i) = x;
        }
    bm.a.resize(n + 1);
    for (int i = 0; i <= n; ++i) bm.a[i] = u(rng);
    bm.b.resize(n + 1);
    for (int i = 0; i < n; ++i) bm.b[i] = 1.7 * bm.a[i + 1];  // scaled copy of the row border
    std::vector<double> bvec(bm.b.begin(), bm.b.end() - 1);
    auto minv_b = detail::solve_symmetric(bm.m_core, bvec, 1e-10, "test");
    double btmb = 0.0;
    for (int i = 0; i < n; ++i) btmb += bvec[i] * minv_b[i];
    bm.b[n] = btmb;
    auto r = one_entry_case_a(bm);
    REQUIRE(r.real);
    CHECK(std::abs(r.first - r.second) <= 1e-5 * (1.0 + std::abs(r.first)));
}

TEST_CASE("one entry case b") {
    BorderedMatrix bm;
    bm.m_core = Dense(1, 1);
    bm.m_core.at(0, 0) = 1.0;
    bm.a = {1.0, 0.0};
    bm.b = {1.0, 1.0};
    double t0 = one_entry_case_b(bm);
    CHECK(t0 == Catch::Approx(0.0).margin(1e-12));
    CHECK(float_rank(bm.assemble(t0), 1e-8) == 2);

    // scaling the column border scales t0 linearly; the corner entry picks up
    // the square so the singular bottom-right block stays singular
    auto rng = make_rng(13);
    auto full = case_b_instance(3, rng);
    auto bm2 = bordered_from(full);
    double base = one_entry_case_b(bm2);
    int nb = static_cast<int>(bm2.b.size()) - 1;
    for (int i = 0; i < nb; ++i) bm2.b[i] *= 2.5;
    bm2.b[nb] *= 2.5 * 2.5;
    CHECK(one_entry_case_b(bm2) == Catch::Approx(2.5 * base));
}

TEST_CASE("case b double root identity and rank") {
    auto rng = make_rng(14);
    for (int t = 0; t < 30; ++t) {
        int n = 2 + static_cast<int>(rng() % 3);
        auto full = case_b_instance(n, rng);
        auto bm = bordered_from(full);
        double t0 = one_entry_case_b(bm);
        // the planted corner is the unique double root
        CHECK(t0 == Catch::Approx(full.at(0, n + 1)).margin(1e-6 * (1.0 + full.max_abs())));
        CHECK(float_rank(bm.assemble(t0), 1e-7) == n + 1);
        // recover the quadratic det P(t) and confirm t0 is a double root
        double q0 = detail::determinant(bm.assemble(0.0));
        double q1 = detail::determinant(bm.assemble(1.0));
        double qm1 = detail::determinant(bm.assemble(-1.0));
        double alpha = 0.5 * (q1 + qm1) - q0;
        double beta = 0.5 * (q1 - qm1);
        double gamma = q0;
        double coef_scale = std::max({std::abs(alpha), std::abs(beta), std::abs(gamma)});
        double grow = 1.0 + t0 * t0;
        CHECK(std::abs(alpha * t0 * t0 + beta * t0 + gamma) <= 1e-6 * coef_scale * grow);
        CHECK(std::abs(2.0 * alpha * t0 + beta) <= 1e-6 * coef_scale * grow);
    }
}

TEST_CASE("one entry case c") {
    BorderedMatrix ones;
    ones.m_core = Dense(1, 1);
    ones.m_core.at(0, 0) = 1.0;
    ones.a = {1.0, 1.0};
    ones.b = {1.0, 1.0};
    double t0 = one_entry_case_c(ones);
    CHECK(t0 == Catch::Approx(1.0));
    CHECK(float_rank(ones.assemble(t0), 1e-8) == 1);

    BorderedMatrix twos;
    twos.m_core = Dense(1, 1);
    twos.m_core.at(0, 0) = 2.0;
    twos.a = {2.0, 2.0};
    twos.b = {2.0, 2.0};
    CHECK(one_entry_case_c(twos) == Catch::Approx(2.0));
}

TEST_CASE("case c erase and restore") {
    auto rng = make_rng(15);
    for (int t = 0; t < 30; ++t) {
        int n = 2 + static_cast<int>(rng() % 4);
        auto full = random_gram(n + 2, n, rng);
        auto bm = bordered_from(full);
        double t0;
        try {
            t0 = one_entry_case_c(bm);
        } catch (const std::runtime_error&) {
            continue;  // non-generic sample
        }
        CHECK(t0 == Catch::Approx(full.at(0, n + 1)).margin(1e-6 * (1.0 + full.max_abs())));
        CHECK(float_rank(bm.assemble(t0), 1e-6) == n);
    }
}

TEST_CASE("symmetric from nonsymmetric factors") {
    Dense u(2, 1), v(3, 1);
    u.at(0, 0) = 1.0;  // e1
    v.at(0, 0) = 1.0;
    auto x = symmetric_from_nonsymmetric(u, v);
    CHECK(x.dim() == 5);
    CHECK(x.at(0, 0) == 1.0);
    CHECK(x.at(0, 2) == 1.0);
    CHECK(x.at(2, 2) == 1.0);
    CHECK(float_rank(x, 1e-8) == 1);

    auto rng = make_rng(16);
    std::normal_distribution<double> g;
    Dense u2(3, 2), v2(3, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) u2.at(i, j) = g(rng), v2.at(i, j) = g(rng);
    auto x2 = symmetric_from_nonsymmetric(u2, v2);
    CHECK(float_rank(x2, 1e-8) == 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double uv = 0.0;
            for (int k = 0; k < 2; ++k) uv += u2.at(i, k) * v2.at(j, k);
            CHECK(x2.at(i, 3 + j) == Catch::Approx(uv).margin(1e-12));
        }

    auto zero = symmetric_from_nonsymmetric(Dense(2, 0), Dense(2, 0));
    CHECK(zero.max_abs() == 0.0);
}

TEST_CASE("verify completion") {
    auto rng = make_rng(17);
    auto a = random_gram(5, 5, rng);
    auto g = cycle_graph(5);
    auto p = project(g, a);
    CHECK(verify_completion(p, a, 5, 1e-8).pass);

    auto bad = a;
    bad.at(0, 1) += 1.0;  // (1,2) is an edge of the cycle
    auto rep = verify_completion(p, bad, 5, 1e-8);
    CHECK_FALSE(rep.pass);
    CHECK(rep.max_residual == Catch::Approx(1.0));
}

TEST_CASE("rank_r_fit restores low-rank data") {
    auto rng = make_rng(18);
    for (int t = 0; t < 5; ++t) {
        auto g = cycle_graph(5);
        auto p = wishart_partial(g, 3, derive_seed(99, t));
        auto x = rank_r_fit(p, 3);
        CHECK(verify_completion(p, x, 3, 1e-5).pass);
    }
}

TEST_CASE("clique sum completion, worked path(3) instance") {
    GPartialMatrix p;
    p.graph = path_graph(3);
    p.diag = {1.0, 5.0, 1.0};
    p.edge_vals[{1, 2}] = 2.0;
    p.edge_vals[{2, 3}] = 1.0;
    auto tree = two_atom_tree(p.graph, {1, 2}, {2, 3});
    auto x = clique_sum_complete(tree, p, 2, 2);
    auto rep = verify_completion(p, x, 2, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.rank <= 2);
}

TEST_CASE("clique sum completion, two triangles glued on an edge") {
    auto rng = make_rng(19);
    Graph g(4);
    g.add_edge(1, 2);
    g.add_edge(1, 3);
    g.add_edge(2, 3);
    g.add_edge(2, 4);
    g.add_edge(3, 4);
    for (int t = 0; t < 10; ++t) {
        auto a = random_gram(4, 3, rng);
        auto p = project(g, a);
        auto tree = two_atom_tree(g, {1, 2, 3}, {2, 3, 4});
        auto x = clique_sum_complete(tree, p, 3, 3, t);
        CHECK(verify_completion(p, x, 3, 1e-6).pass);
    }
}

TEST_CASE("clique sum completion, full-rank separator needs no growth") {
    auto rng = make_rng(20);
    // K4 and K4 glued on a triangle, data of rank 3: separator rank equals target
    Graph g(5);
    for (int i = 1; i <= 4; ++i)
        for (int j = i + 1; j <= 4; ++j) g.add_edge(i, j);
    for (int i = 2; i <= 4; ++i) g.add_edge(i, 5);
    for (int t = 0; t < 10; ++t) {
        auto a = random_gram(5, 3, rng);
        auto p = project(g, a);
        auto tree = two_atom_tree(g, {1, 2, 3, 4}, {2, 3, 4, 5});
        auto x = clique_sum_complete(tree, p, 3, 3, t);
        CHECK(verify_completion(p, x, 3, 1e-6).pass);
    }
}
