#pragma once

#include <cmath>
#include <map>
#include <random>
#include <utility>
#include <stdexcept>
#include <vector>

#include <nlohmann/json.hpp>

#include "psdrank/graph.hpp"
#include "psdrank/rand.hpp"
#include "psdrank/sym.hpp"

namespace psdrank {

/// A G-partial matrix: diagonal values plus one value per edge of the graph.
struct GPartialMatrix {
    Graph graph;
    std::vector<double> diag;            // size n, 1-based vertex i -> diag[i-1]
    std::map<std::pair<int, int>, double> edge_vals;  // keyed by (u,v), u < v

    double edge(int u, int v) const {
        if (u > v) std::swap(u, v);
        auto it = edge_vals.find({u, v});
        if (it == edge_vals.end()) throw std::out_of_range("GPartialMatrix: entry not specified");
        return it->second;
    }

    void validate() const {
        if (static_cast<int>(diag.size()) != graph.num_vertices())
            throw std::invalid_argument("GPartialMatrix: diagonal size mismatch");
        if (static_cast<int>(edge_vals.size()) != graph.num_edges())
            throw std::invalid_argument("GPartialMatrix: edge value count mismatch");
        for (const auto& [e, val] : edge_vals) {
            (void)val;
            if (!graph.has_edge(e.first, e.second))
                throw std::invalid_argument("GPartialMatrix: value on a non-edge");
        }
    }

    double scale() const {
        double s = 0.0;
        for (double d : diag) s = std::max(s, std::abs(d));
        for (const auto& [e, v] : edge_vals) {
            (void)e;
            s = std::max(s, std::abs(v));
        }
        return s;
    }
};

/// The projection pi_G: keep diagonal and edge entries of a symmetric matrix.
inline GPartialMatrix project(const Graph& g, const SymMatrix& a) {
    if (a.dim() != g.num_vertices()) throw std::invalid_argument("project: dimension mismatch");
    GPartialMatrix p;
    p.graph = g;
    p.diag.resize(g.num_vertices());
    for (int i = 1; i <= g.num_vertices(); ++i) p.diag[i - 1] = a.at(i - 1, i - 1);
    for (auto [u, v] : g.edges()) p.edge_vals[{u, v}] = a.at(u - 1, v - 1);
    return p;
}

/// pi_G(U U^T) for U an n x r matrix of standard Gaussians (a rank-r Wishart sample).
inline GPartialMatrix wishart_partial(const Graph& g, int r, std::uint64_t seed) {
    int n = g.num_vertices();
    if (r < 1 || r > n) throw std::invalid_argument("wishart_partial: rank out of range");
    auto rng = make_rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Dense u(n, r);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < r; ++j) u.at(i, j) = gauss(rng);
    SymMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            double s = 0.0;
            for (int k = 0; k < r; ++k) s += u.at(i, k) * u.at(j, k);
            a.at(i, j) = s;
        }
    return project(g, a);
}

inline nlohmann::json to_json(const GPartialMatrix& p) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [e, val] : p.edge_vals)
        edges.push_back({{"u", e.first}, {"v", e.second}, {"val", val}});
    return {{"n", p.graph.num_vertices()}, {"diag", p.diag}, {"edges", edges}};
}

inline GPartialMatrix partial_from_json(const nlohmann::json& j) {
    GPartialMatrix p;
    int n = j.at("n").get<int>();
    p.graph = Graph(n);
    p.diag = j.at("diag").get<std::vector<double>>();
    if (static_cast<int>(p.diag.size()) != n)
        throw std::invalid_argument("partial matrix: diag length does not match n");
    for (const auto& e : j.at("edges")) {
        int u = e.at("u").get<int>(), v = e.at("v").get<int>();
        p.graph.add_edge(u, v);
        if (u > v) std::swap(u, v);
        p.edge_vals[{u, v}] = e.at("val").get<double>();
    }
    return p;
}

inline nlohmann::json sym_to_json(const SymMatrix& a) {
    std::vector<double> flat;
    flat.reserve(static_cast<size_t>(a.dim()) * a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) flat.push_back(a.at(i, j));
    return {{"n", a.dim()}, {"data", flat}};
}

}  // namespace psdrank
