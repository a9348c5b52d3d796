#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <vector>

#include "psdrank/graph.hpp"

namespace psdrank {

/// Decomposition of a graph into atoms glued along clique separators.
/// Atom vertices are labels of the parent graph; separator k joins atom
/// child_index to an earlier-emitted structure that survives in parent_index.
struct CliqueSumTree {
    struct Atom {
        std::vector<int> vertices;  // sorted parent labels
        Graph graph;                // induced subgraph, relabeled 1..|vertices|
    };
    struct Separator {
        std::vector<int> vertices;  // sorted parent labels; empty = disjoint union
        int child_index = -1;
        int parent_index = -1;
    };

    int n = 0;  // parent vertex count
    std::vector<Atom> atoms;
    std::vector<Separator> separators;

    /// Glue all atoms back together; must reproduce the original graph.
    Graph reassemble() const {
        Graph g(n);
        std::set<std::pair<int, int>> seen;
        for (const auto& a : atoms)
            for (auto [i, j] : a.graph.edges()) {
                int u = a.vertices[i - 1], v = a.vertices[j - 1];
                if (u > v) std::swap(u, v);
                if (seen.insert({u, v}).second) g.add_edge(u, v);
            }
        return g;
    }
};

namespace detail {

/// MCS-M: minimal elimination ordering plus minimal triangulation fill edges.
/// Returns (number[v] for v=1..n, filled adjacency). Vertices are eliminated
/// in increasing number order.
inline std::pair<std::vector<int>, std::vector<std::vector<bool>>> mcs_m(const Graph& g) {
    int n = g.num_vertices();
    std::vector<std::vector<bool>> adj(n + 1, std::vector<bool>(n + 1, false));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
    std::vector<int> weight(n + 1, 0), number(n + 1, 0);
    std::vector<bool> numbered(n + 1, false);
    for (int i = n; i >= 1; --i) {
        int v = -1;
        for (int u = 1; u <= n; ++u)
            if (!numbered[u] && (v == -1 || weight[u] > weight[v])) v = u;
        // u reachable from v through unnumbered vertices of smaller weight
        std::vector<int> reach_bound(n + 1, -1);
        std::vector<bool> fill_to(n + 1, false);
        for (int u = 1; u <= n; ++u) {
            if (numbered[u] || u == v) continue;
            // BFS from u over unnumbered intermediates with weight < weight[u]
            std::vector<bool> vis(n + 1, false);
            std::vector<int> stack{u};
            vis[u] = true;
            bool found = false;
            while (!stack.empty() && !found) {
                int x = stack.back();
                stack.pop_back();
                for (int y = 1; y <= n; ++y) {
                    if (!adj[x][y] || vis[y]) continue;
                    if (y == v) {
                        found = true;
                        break;
                    }
                    if (!numbered[y] && weight[y] < weight[u]) {
                        vis[y] = true;
                        stack.push_back(y);
                    }
                }
            }
            if (found) fill_to[u] = true;
        }
        for (int u = 1; u <= n; ++u)
            if (fill_to[u]) {
                ++weight[u];
                adj[u][v] = adj[v][u] = true;
            }
        number[v] = i;
        numbered[v] = true;
        (void)reach_bound;
    }
    return {number, adj};
}

}  // namespace detail

/// Clique-separator decomposition (Tarjan-style, driven by a minimal
/// elimination ordering). Atoms contain no clique separator; gluing them
/// along the returned separators reconstructs g. Disconnected inputs are
/// decomposed per component, components joined by empty separators.
inline CliqueSumTree clique_separator_decomposition(const Graph& g) {
    int n = g.num_vertices();
    CliqueSumTree tree;
    tree.n = n;
    auto [number, filled] = detail::mcs_m(g);
    std::vector<int> order(n);
    for (int v = 1; v <= n; ++v) order[number[v] - 1] = v;

    std::vector<bool> in_rest(n + 1, true);
    struct Pending {
        std::vector<int> atom_vertices;
        std::vector<int> separator;  // empty for component split
    };
    std::vector<Pending> emitted;

    auto components_of = [&](const std::vector<bool>& excluded) {
        std::vector<int> comp(n + 1, -1);
        std::vector<std::vector<int>> comps;
        for (int s = 1; s <= n; ++s) {
            if (!in_rest[s] || excluded[s] || comp[s] != -1) continue;
            int id = static_cast<int>(comps.size());
            comps.emplace_back();
            std::vector<int> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comps[id].push_back(v);
                for (int u : g.neighbors(v))
                    if (in_rest[u] && !excluded[u] && comp[u] == -1) {
                        comp[u] = id;
                        stack.push_back(u);
                    }
            }
        }
        return comps;
    };

    for (int v : order) {
        if (!in_rest[v]) continue;
        std::vector<int> sep;
        for (int u = 1; u <= n; ++u)
            if (u != v && in_rest[u] && filled[v][u] && number[u] > number[v]) sep.push_back(u);
        if (!g.is_clique(sep)) continue;
        std::vector<bool> excluded(n + 1, false);
        for (int u : sep) excluded[u] = true;
        auto comps = components_of(excluded);
        // component containing v
        std::vector<int> side;
        for (auto& c : comps)
            if (std::find(c.begin(), c.end(), v) != c.end()) side = c;
        // sep must separate the component of v, not just the remainder
        std::vector<bool> nothing(n + 1, false);
        int comp_v_size = 0;
        for (auto& c : components_of(nothing))
            if (std::find(c.begin(), c.end(), v) != c.end()) comp_v_size = static_cast<int>(c.size());
        if (static_cast<int>(side.size() + sep.size()) == comp_v_size) continue;  // sep does not separate
        std::vector<int> atom = side;
        atom.insert(atom.end(), sep.begin(), sep.end());
        std::sort(atom.begin(), atom.end());
        std::sort(sep.begin(), sep.end());
        emitted.push_back({atom, sep});
        for (int u : side) in_rest[u] = false;
    }
    // final atom: whatever remains (per connected component, joined by empty separators)
    {
        std::vector<bool> none(n + 1, false);
        auto comps = components_of(none);
        for (auto& c : comps) {
            std::sort(c.begin(), c.end());
            if (!c.empty()) emitted.push_back({c, {}});
        }
        if (emitted.empty() && n == 0) emitted.push_back({{}, {}});
    }

    for (auto& e : emitted) tree.atoms.push_back({e.atom_vertices, g.induced(e.atom_vertices)});
    // attach each non-final atom to a later atom containing its separator
    for (size_t i = 0; i + 1 < emitted.size(); ++i) {
        int parent = -1;
        for (size_t j = i + 1; j < emitted.size() && parent < 0; ++j) {
            bool contains = std::all_of(emitted[i].separator.begin(), emitted[i].separator.end(), [&](int u) {
                return std::binary_search(emitted[j].atom_vertices.begin(), emitted[j].atom_vertices.end(), u);
            });
            if (contains) parent = static_cast<int>(j);
        }
        CliqueSumTree::Separator s;
        s.vertices = emitted[i].separator;
        s.child_index = static_cast<int>(i);
        s.parent_index = parent < 0 ? static_cast<int>(emitted.size()) - 1 : parent;
        tree.separators.push_back(s);
    }
    return tree;
}

/// Two-atom clique-sum view of g from an explicit vertex split; the overlap
/// must induce a clique and both sides must cover g.
inline CliqueSumTree two_atom_tree(const Graph& g, const std::vector<int>& v1, const std::vector<int>& v2) {
    std::vector<int> a = v1, b = v2, sep;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(sep));
    if (!g.is_clique(sep)) throw std::invalid_argument("two_atom_tree: overlap is not a clique");
    for (auto [u, v] : g.edges()) {
        bool in_a = std::binary_search(a.begin(), a.end(), u) && std::binary_search(a.begin(), a.end(), v);
        bool in_b = std::binary_search(b.begin(), b.end(), u) && std::binary_search(b.begin(), b.end(), v);
        if (!in_a && !in_b) throw std::invalid_argument("two_atom_tree: edge crosses the split");
    }
    CliqueSumTree t;
    t.n = g.num_vertices();
    t.atoms.push_back({a, g.induced(a)});
    t.atoms.push_back({b, g.induced(b)});
    t.separators.push_back({sep, 0, 1});
    return t;
}

}  // namespace psdrank
