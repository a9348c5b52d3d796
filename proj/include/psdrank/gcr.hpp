#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psdrank/decomposition.hpp"
#include "psdrank/gf.hpp"
#include "psdrank/graph.hpp"
#include "psdrank/rand.hpp"

namespace psdrank {

/// An n x r factor over GF(p); its rows are indexed by vertices 1..n.
/// Encodes a generic point of the rank-<=r variety as U U^T.
struct RankPoint {
    GfMatrix u;
    int r = 0;

    static RankPoint random(int n, int r, std::mt19937_64& rng) {
        RankPoint p;
        p.r = r;
        p.u = GfMatrix(n, r);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < r; ++j) p.u.at(i, j) = gf::uniform(rng);
        return p;
    }
};

/// Jacobian of X -> pi_G(U X^T + X U^T) at the rank point U.
/// Rows: n diagonal coordinates then edges in lexicographic order.
/// Columns: the n*r entries of X, column (i,k) at index i*r + k (i 0-based).
inline GfMatrix terracini_matrix(const Graph& g, const RankPoint& point) {
    int n = g.num_vertices();
    int r = point.r;
    if (point.u.rows != n) throw std::invalid_argument("terracini_matrix: point has wrong row count");
    GfMatrix m(n + g.num_edges(), n * r);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < r; ++k) m.at(i, i * r + k) = gf::add(point.u.at(i, k), point.u.at(i, k));
    int row = n;
    for (auto [u, v] : g.edges()) {
        int i = u - 1, j = v - 1;
        for (int k = 0; k < r; ++k) {
            m.at(row, i * r + k) = gf::add(m.at(row, i * r + k), point.u.at(j, k));
            m.at(row, j * r + k) = gf::add(m.at(row, j * r + k), point.u.at(i, k));
        }
        ++row;
    }
    return m;
}

/// Randomized dominance test for the rank-r completion map. A single full-rank
/// Terracini matrix is a proof of dominance; a false verdict is probabilistic.
inline bool is_dominant(const Graph& g, int r, int trials, std::uint64_t seed) {
    int n = g.num_vertices();
    if (r < 1 || r > n) throw std::invalid_argument("is_dominant: rank out of range");
    if (trials < 1) throw std::invalid_argument("is_dominant: trials must be >= 1");
    int target = n + g.num_edges();
    if (n * r < target) return false;  // too few parameters, never dominant
    for (int t = 0; t < trials; ++t) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(t));
        auto point = RankPoint::random(n, r, rng);
        if (gf_rank(terracini_matrix(g, point)) == target) return true;
    }
    return false;
}

/// Smallest r with |E| <= n(r-1) - r(r-1)/2; a valid lower bound on the
/// generic completion rank by edge count.
inline int edge_lower_bound(const Graph& g) {
    long long n = g.num_vertices(), e = g.num_edges();
    for (int r = 1; r <= n; ++r)
        if (e <= n * (r - 1) - static_cast<long long>(r) * (r - 1) / 2) return r;
    return static_cast<int>(n);
}

/// Smallest r with a dominant rank-r projection (linear upward scan; dominance
/// is monotone in r).
inline int gcr_randomized(const Graph& g, int trials = 5, std::uint64_t seed = 0) {
    int n = g.num_vertices();
    if (n == 0) return 0;
    for (int r = std::max(1, edge_lower_bound(g)); r <= n; ++r)
        if (is_dominant(g, r, trials, seed)) return r;
    return n;  // r = n is always dominant; unreachable unless trials are unlucky
}

/// Closed form for K_{m,n}, n >= m >= 2: m if n <= C(m,2), else m+1.
inline int gcr_bipartite(int m, int n) {
    if (m < 2 || n < m) throw std::invalid_argument("gcr_bipartite: need n >= m >= 2");
    return n <= m * (m - 1) / 2 ? m : m + 1;
}

/// Explicit witness for the K_{m, C(m,2)} boundary case: the 0/1 matrix A with
/// k-th row e_i + e_j for the k-th pair (i,j), and the coefficient matrix
/// C[(i,j), k] = a_{ki} a_{kj}, which must be a permutation matrix.
struct RankmWitness {
    GfMatrix a;  // n x m, n = C(m,2)
    GfMatrix c;  // C(m,2) x n
};

inline RankmWitness rankm_witness(int m) {
    if (m < 2) throw std::invalid_argument("rankm_witness: m must be >= 2");
    int n = m * (m - 1) / 2;
    RankmWitness w;
    w.a = GfMatrix(n, m);
    int k = 0;
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
            w.a.at(k, i) = 1;
            w.a.at(k, j) = 1;
            pairs.emplace_back(i, j);
            ++k;
        }
    w.c = GfMatrix(n, n);
    for (int row = 0; row < n; ++row) {
        auto [i, j] = pairs[row];
        for (int col = 0; col < n; ++col) w.c.at(row, col) = gf::mul(w.a.at(col, i), w.a.at(col, j));
    }
    return w;
}

inline bool is_permutation_matrix(const GfMatrix& m) {
    if (m.rows != m.cols) return false;
    for (int i = 0; i < m.rows; ++i) {
        int ones = 0;
        for (int j = 0; j < m.cols; ++j) {
            if (m.at(i, j) == 1)
                ++ones;
            else if (m.at(i, j) != 0)
                return false;
        }
        if (ones != 1) return false;
    }
    for (int j = 0; j < m.cols; ++j) {
        int ones = 0;
        for (int i = 0; i < m.rows; ++i)
            if (m.at(i, j) == 1) ++ones;
        if (ones != 1) return false;
    }
    return true;
}

/// Bipartite pattern for the non-symmetric completion problem: known entries
/// of an m x n matrix.
struct BipartitePattern {
    int m = 0, n = 0;
    std::vector<std::pair<int, int>> entries;  // (row, col), 1-based

    static BipartitePattern complete(int m, int n) {
        BipartitePattern p{m, n, {}};
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j <= n; ++j) p.entries.emplace_back(i, j);
        return p;
    }

    /// The bipartite graph on [m] + [n] with an edge per known entry.
    Graph as_graph() const {
        Graph g(m + n);
        for (auto [i, j] : entries) g.add_edge(i, m + j);
        return g;
    }
};

/// Non-symmetric generic completion rank: smallest r such that the Jacobian of
/// (X, Y) -> (entries of U Y^T + X V^T) at random U (m x r), V (n x r) has
/// full row rank |E| over GF(p). r = 0 iff the pattern is empty.
inline int nonsym_gcr(const BipartitePattern& p, int trials = 5, std::uint64_t seed = 0) {
    if (p.entries.empty()) return 0;
    int e = static_cast<int>(p.entries.size());
    int rmax = std::min(p.m, p.n);
    for (int r = 1; r <= rmax; ++r) {
        bool ok = false;
        for (int t = 0; t < trials && !ok; ++t) {
            auto rng = make_rng(seed, static_cast<std::uint64_t>(t) * 7919 + r);
            GfMatrix u(p.m, r), v(p.n, r);
            for (int i = 0; i < p.m; ++i)
                for (int k = 0; k < r; ++k) u.at(i, k) = gf::uniform(rng);
            for (int j = 0; j < p.n; ++j)
                for (int k = 0; k < r; ++k) v.at(j, k) = gf::uniform(rng);
            // columns: entries of X (m*r) then entries of Y (n*r)
            GfMatrix jac(e, r * (p.m + p.n));
            for (int row = 0; row < e; ++row) {
                auto [i1, j1] = p.entries[row];
                int i = i1 - 1, j = j1 - 1;
                for (int k = 0; k < r; ++k) {
                    jac.at(row, i * r + k) = v.at(j, k);                  // d/dX_{ik}
                    jac.at(row, p.m * r + j * r + k) = u.at(i, k);        // d/dY_{jk}
                }
            }
            ok = gf_rank(jac) == e;
        }
        if (ok) return r;
    }
    return rmax;
}

/// Result of gcr_dispatch: an exact value or an interval, with the method used
/// and the standing bounds.
struct GcrReport {
    int n = 0, num_edges = 0;
    int lo = 0, hi = 0;             // lo == hi means exact
    std::string method;             // closed-form | clique-sum | randomized | bound-only
    int trials = 0;
    std::uint64_t seed = 0;
    int bound_edge = 0, bound_clique = 0, bound_treewidth_plus_1 = 0;

    bool exact() const { return lo == hi; }
};

inline nlohmann::json to_json(const GcrReport& r) {
    nlohmann::json j{{"n", r.n},
                     {"edges", r.num_edges},
                     {"method", r.method},
                     {"bounds",
                      {{"edge", r.bound_edge}, {"clique", r.bound_clique}, {"treewidth_plus_1", r.bound_treewidth_plus_1}}},
                     {"trials", r.trials},
                     {"seed", r.seed}};
    if (r.exact())
        j["value"] = r.lo;
    else
        j["interval"] = {r.lo, r.hi};
    return j;
}

namespace detail {

/// Exact gcr of an atom through closed forms where recognized, else randomized.
/// Returns (value, method).
inline std::pair<int, std::string> atom_gcr(const Graph& atom, int trials, std::uint64_t seed) {
    int n = atom.num_vertices();
    if (n == 0) return {0, "closed-form"};
    if (atom.num_edges() == static_cast<long long>(n) * (n - 1) / 2) return {n, "closed-form"};
    if (auto parts = complete_bipartite_parts(atom); parts && parts->first.size() >= 2)
        return {gcr_bipartite(static_cast<int>(parts->first.size()), static_cast<int>(parts->second.size())),
                "closed-form"};
    if (is_chordal(atom)) return {clique_number(atom), "closed-form"};
    return {gcr_randomized(atom, trials, seed), "randomized"};
}

}  // namespace detail

/// Generic completion rank with clique-sum decomposition and closed forms;
/// the result carries the edge-count, clique, and treewidth bounds.
inline GcrReport gcr_dispatch(const Graph& g, int trials = 5, std::uint64_t seed = 0) {
    GcrReport rep;
    rep.n = g.num_vertices();
    rep.num_edges = g.num_edges();
    rep.trials = trials;
    rep.seed = seed;
    rep.bound_edge = edge_lower_bound(g);
    rep.bound_clique = clique_number(g);
    rep.bound_treewidth_plus_1 = treewidth_upper_bound(g) + 1;
    if (g.num_vertices() == 0) {
        rep.method = "closed-form";
        return rep;
    }
    auto tree = clique_separator_decomposition(g);
    int value = 0;
    bool any_randomized = false;
    for (const auto& atom : tree.atoms) {
        auto [v, method] = detail::atom_gcr(atom.graph, trials, seed);
        value = std::max(value, v);
        if (method == "randomized") any_randomized = true;
    }
    rep.lo = rep.hi = value;
    rep.method = tree.atoms.size() > 1 ? "clique-sum" : (any_randomized ? "randomized" : "closed-form");
    return rep;
}

}  // namespace psdrank
