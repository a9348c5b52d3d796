#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace psdrank {

/// Simple undirected graph with vertices labeled 1..n.
/// Edges are stored as ordered pairs (u,v), u < v, in lexicographic order.
class Graph {
public:
    Graph() : n_(0) {}

    explicit Graph(int n) : n_(n) {
        if (n < 0) throw std::invalid_argument("graph: vertex count must be >= 0");
    }

    static Graph from_edges(int n, std::vector<std::pair<int, int>> edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    void add_edge(int u, int v) {
        if (u == v) throw std::invalid_argument("graph: self-loop at vertex " + std::to_string(u));
        if (u < 1 || u > n_ || v < 1 || v > n_)
            throw std::invalid_argument("graph: vertex out of range: " + std::to_string(u < 1 || u > n_ ? u : v));
        if (u > v) std::swap(u, v);
        if (edge_set_.count({u, v}))
            throw std::invalid_argument("graph: duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        edge_set_.insert({u, v});
        edges_.assign(edge_set_.begin(), edge_set_.end());
    }

    bool has_edge(int u, int v) const {
        if (u == v) return false;
        if (u > v) std::swap(u, v);
        return edge_set_.count({u, v}) != 0;
    }

    /// Edges in lexicographic order, 1-based labels.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    std::vector<int> neighbors(int v) const {
        std::vector<int> out;
        for (int u = 1; u <= n_; ++u)
            if (u != v && has_edge(u, v)) out.push_back(u);
        return out;
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// Induced subgraph on `vertices` (1-based labels of this graph).
    /// Vertex i of the result corresponds to vertices[i-1].
    Graph induced(const std::vector<int>& vertices) const {
        Graph g(static_cast<int>(vertices.size()));
        for (size_t i = 0; i < vertices.size(); ++i)
            for (size_t j = i + 1; j < vertices.size(); ++j)
                if (has_edge(vertices[i], vertices[j])) g.add_edge(static_cast<int>(i) + 1, static_cast<int>(j) + 1);
        return g;
    }

    bool is_clique(const std::vector<int>& vertices) const {
        for (size_t i = 0; i < vertices.size(); ++i)
            for (size_t j = i + 1; j < vertices.size(); ++j)
                if (!has_edge(vertices[i], vertices[j])) return false;
        return true;
    }

    bool operator==(const Graph& o) const { return n_ == o.n_ && edge_set_ == o.edge_set_; }

    std::vector<std::vector<int>> connected_components() const {
        std::vector<int> comp(n_ + 1, -1);
        std::vector<std::vector<int>> comps;
        for (int s = 1; s <= n_; ++s) {
            if (comp[s] != -1) continue;
            int id = static_cast<int>(comps.size());
            comps.emplace_back();
            std::vector<int> stack{s};
            comp[s] = id;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                comps[id].push_back(v);
                for (int u : neighbors(v))
                    if (comp[u] == -1) {
                        comp[u] = id;
                        stack.push_back(u);
                    }
            }
            std::sort(comps[id].begin(), comps[id].end());
        }
        return comps;
    }

private:
    int n_;
    std::set<std::pair<int, int>> edge_set_;
    std::vector<std::pair<int, int>> edges_;
};

/// Parses the edge-list format: first line "n m", then m lines "u v", 1 <= u < v <= n.
inline Graph graph_from_edge_list(const std::string& text) {
    std::istringstream in(text);
    long long n = 0, m = 0;
    if (!(in >> n >> m)) throw std::invalid_argument("edge-list: expected header line \"n m\"");
    if (n < 1) throw std::invalid_argument("edge-list: vertex count must be >= 1");
    if (m < 0) throw std::invalid_argument("edge-list: edge count must be >= 0");
    Graph g(static_cast<int>(n));
    for (long long k = 0; k < m; ++k) {
        long long u = 0, v = 0;
        if (!(in >> u >> v))
            throw std::invalid_argument("edge-list: expected " + std::to_string(m) + " edges, got " + std::to_string(k));
        if (u < 1 || u > n || v < 1 || v > n)
            throw std::invalid_argument("edge-list: vertex out of range in edge " + std::to_string(u) + " " +
                                        std::to_string(v));
        if (u >= v) throw std::invalid_argument("edge-list: edges must satisfy u < v");
        if (g.has_edge(static_cast<int>(u), static_cast<int>(v)))
            throw std::invalid_argument("edge-list: duplicate edge " + std::to_string(u) + " " + std::to_string(v));
        g.add_edge(static_cast<int>(u), static_cast<int>(v));
    }
    return g;
}

inline Graph complete_graph(int n) {
    if (n < 1) throw std::invalid_argument("complete: n must be >= 1");
    Graph g(n);
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
    return g;
}

/// K_{m,n} with part one = 1..m, part two = m+1..m+n.
inline Graph complete_bipartite(int m, int n) {
    if (m < 1 || n < 1) throw std::invalid_argument("bipartite: part sizes must be >= 1");
    Graph g(m + n);
    for (int i = 1; i <= m; ++i)
        for (int j = m + 1; j <= m + n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph cycle_graph(int n) {
    if (n < 3) throw std::invalid_argument("cycle: n must be >= 3");
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    g.add_edge(1, n);
    return g;
}

inline Graph path_graph(int n) {
    if (n < 1) throw std::invalid_argument("path: n must be >= 1");
    Graph g(n);
    for (int i = 1; i < n; ++i) g.add_edge(i, i + 1);
    return g;
}

/// Wheel on k vertices: cycle C_{k-1} on 1..k-1 plus apex k.
inline Graph wheel_graph(int k) {
    if (k < 4) throw std::invalid_argument("wheel: k must be >= 4");
    Graph g(k);
    for (int i = 1; i < k - 1; ++i) g.add_edge(i, i + 1);
    g.add_edge(1, k - 1);
    for (int i = 1; i < k; ++i) g.add_edge(i, k);
    return g;
}

/// K4 with every edge subdivided once: 10 vertices, 12 edges.
/// Branch vertices are 1, 3, 7, 10; each original edge gets one degree-2 vertex.
inline Graph figure1_graph() {
    return Graph::from_edges(10, {{1, 2}, {2, 3}, {3, 8}, {8, 10}, {6, 10}, {1, 6},
                                  {1, 4}, {4, 7}, {7, 9}, {9, 10}, {3, 5}, {5, 7}});
}

/// Parses a generator token: complete:n | bipartite:m:n | cycle:n | path:n | wheel:k | figure1.
inline Graph generate(const std::string& token) {
    auto parts = [&] {
        std::vector<std::string> out;
        std::string cur;
        for (char c : token) {
            if (c == ':') {
                out.push_back(cur);
                cur.clear();
            } else
                cur.push_back(c);
        }
        out.push_back(cur);
        return out;
    }();
    auto arg = [&](size_t i) {
        if (i >= parts.size()) throw std::invalid_argument("generator: missing parameter in '" + token + "'");
        try {
            return std::stoi(parts[i]);
        } catch (...) {
            throw std::invalid_argument("generator: bad parameter '" + parts[i] + "'");
        }
    };
    const std::string& name = parts[0];
    if (name == "complete") return complete_graph(arg(1));
    if (name == "bipartite") return complete_bipartite(arg(1), arg(2));
    if (name == "cycle") return cycle_graph(arg(1));
    if (name == "path") return path_graph(arg(1));
    if (name == "wheel") return wheel_graph(arg(1));
    if (name == "figure1") return figure1_graph();
    throw std::invalid_argument("generator: unknown name '" + name + "'");
}

namespace detail {

inline void extend_cliques(const Graph& g, std::vector<int>& r, std::vector<int> p, std::vector<int> x, int& best) {
    if (p.empty() && x.empty()) {
        best = std::max(best, static_cast<int>(r.size()));
        return;
    }
    if (static_cast<int>(r.size() + p.size()) <= best) return;  // bound
    // pivot: vertex of p∪x with most neighbors in p
    int pivot = -1, pn = -1;
    for (int cand : p)
        if (int c = static_cast<int>(std::count_if(p.begin(), p.end(), [&](int w) { return g.has_edge(cand, w); })); c > pn) {
            pn = c;
            pivot = cand;
        }
    for (int cand : x)
        if (int c = static_cast<int>(std::count_if(p.begin(), p.end(), [&](int w) { return g.has_edge(cand, w); })); c > pn) {
            pn = c;
            pivot = cand;
        }
    std::vector<int> candidates;
    for (int v : p)
        if (pivot == -1 || !g.has_edge(pivot, v)) candidates.push_back(v);
    for (int v : candidates) {
        std::vector<int> np, nx;
        for (int w : p)
            if (g.has_edge(v, w)) np.push_back(w);
        for (int w : x)
            if (g.has_edge(v, w)) nx.push_back(w);
        r.push_back(v);
        extend_cliques(g, r, np, nx, best);
        r.pop_back();
        p.erase(std::find(p.begin(), p.end(), v));
        x.push_back(v);
    }
}

}  // namespace detail

/// Exact maximum clique size (Bron–Kerbosch with pivoting). Intended for n <= ~40.
inline int clique_number(const Graph& g) {
    if (g.num_vertices() == 0) return 0;
    std::vector<int> r, p, x;
    for (int v = 1; v <= g.num_vertices(); ++v) p.push_back(v);
    int best = 1;
    detail::extend_cliques(g, r, p, x, best);
    return best;
}

/// Maximal induced subgraph with minimum degree >= k, as the surviving vertex labels
/// plus the induced graph (possibly empty).
inline std::pair<std::vector<int>, Graph> k_core(const Graph& g, int k) {
    if (k < 0) throw std::invalid_argument("k_core: k must be >= 0");
    std::vector<bool> alive(g.num_vertices() + 1, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 1; v <= g.num_vertices(); ++v) {
            if (!alive[v]) continue;
            int d = 0;
            for (int u : g.neighbors(v))
                if (alive[u]) ++d;
            if (d < k) {
                alive[v] = false;
                changed = true;
            }
        }
    }
    std::vector<int> kept;
    for (int v = 1; v <= g.num_vertices(); ++v)
        if (alive[v]) kept.push_back(v);
    return {kept, g.induced(kept)};
}

/// Maximum-cardinality search; returns a PEO candidate (last-to-first elimination order).
inline std::vector<int> mcs_order(const Graph& g) {
    int n = g.num_vertices();
    std::vector<int> weight(n + 1, 0), order;
    std::vector<bool> numbered(n + 1, false);
    for (int step = 0; step < n; ++step) {
        int best = -1;
        for (int v = 1; v <= n; ++v)
            if (!numbered[v] && (best == -1 || weight[v] > weight[best])) best = v;
        numbered[best] = true;
        order.push_back(best);
        for (int u : g.neighbors(best))
            if (!numbered[u]) ++weight[u];
    }
    std::reverse(order.begin(), order.end());  // elimination order: order[0] eliminated first
    return order;
}

/// Chordality test via MCS + elimination-ordering check.
/// Returns the perfect elimination ordering when chordal.
inline std::optional<std::vector<int>> chordal_peo(const Graph& g) {
    int n = g.num_vertices();
    auto order = mcs_order(g);
    std::vector<int> pos(n + 1);
    for (int i = 0; i < n; ++i) pos[order[i]] = i;
    for (int i = 0; i < n; ++i) {
        int v = order[i];
        std::vector<int> later;
        for (int u : g.neighbors(v))
            if (pos[u] > i) later.push_back(u);
        if (!g.is_clique(later)) return std::nullopt;
    }
    return order;
}

inline bool is_chordal(const Graph& g) { return chordal_peo(g).has_value(); }

/// True iff g reduces to nothing by deleting degree-<=1 vertices and suppressing
/// degree-2 vertices (merging parallel edges); equivalent to treewidth <= 2.
inline bool treewidth_at_most_2(const Graph& g) {
    int n = g.num_vertices();
    // multigraph adjacency with edge multiplicities; self-loops dropped
    std::vector<std::vector<int>> mult(n + 1, std::vector<int>(n + 1, 0));
    for (auto [u, v] : g.edges()) mult[u][v] = mult[v][u] = 1;
    std::vector<bool> alive(n + 1, true);
    int remaining = n;
    auto deg = [&](int v) {
        int d = 0;
        for (int u = 1; u <= n; ++u)
            if (u != v && alive[u]) d += mult[v][u] > 0 ? 1 : 0;
        return d;
    };
    bool progress = true;
    while (remaining > 0 && progress) {
        progress = false;
        for (int v = 1; v <= n && remaining > 0; ++v) {
            if (!alive[v]) continue;
            std::vector<int> nb;
            for (int u = 1; u <= n; ++u)
                if (u != v && alive[u] && mult[v][u] > 0) nb.push_back(u);
            if (nb.size() <= 1) {
                alive[v] = false;
                --remaining;
                for (int u : nb) mult[v][u] = mult[u][v] = 0;
                progress = true;
            } else if (nb.size() == 2) {
                alive[v] = false;
                --remaining;
                mult[nb[0]][nb[1]] = mult[nb[1]][nb[0]] = 1;  // suppress, merge parallels
                mult[v][nb[0]] = mult[nb[0]][v] = mult[v][nb[1]] = mult[nb[1]][v] = 0;
                progress = true;
            }
        }
        (void)deg;
    }
    return remaining == 0;
}

/// Treewidth upper bound from a min-fill elimination heuristic.
/// Exact on chordal graphs (= clique_number - 1); a valid upper bound in general.
inline int treewidth_upper_bound(const Graph& g) {
    int n = g.num_vertices();
    if (n == 0) return 0;
    std::vector<std::vector<bool>> adj(n + 1, std::vector<bool>(n + 1, false));
    for (auto [u, v] : g.edges()) adj[u][v] = adj[v][u] = true;
    std::vector<bool> alive(n + 1, true);
    int width = 0;
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long long best_fill = -1;
        int best_deg = -1;
        for (int v = 1; v <= n; ++v) {
            if (!alive[v]) continue;
            std::vector<int> nb;
            for (int u = 1; u <= n; ++u)
                if (u != v && alive[u] && adj[v][u]) nb.push_back(u);
            long long fill = 0;
            for (size_t i = 0; i < nb.size(); ++i)
                for (size_t j = i + 1; j < nb.size(); ++j)
                    if (!adj[nb[i]][nb[j]]) ++fill;
            if (best == -1 || fill < best_fill || (fill == best_fill && static_cast<int>(nb.size()) < best_deg)) {
                best = v;
                best_fill = fill;
                best_deg = static_cast<int>(nb.size());
            }
        }
        std::vector<int> nb;
        for (int u = 1; u <= n; ++u)
            if (u != best && alive[u] && adj[best][u]) nb.push_back(u);
        width = std::max(width, static_cast<int>(nb.size()));
        for (size_t i = 0; i < nb.size(); ++i)
            for (size_t j = i + 1; j < nb.size(); ++j) adj[nb[i]][nb[j]] = adj[nb[j]][nb[i]] = true;
        alive[best] = false;
    }
    return width;
}

/// True iff g is bipartite; returns the two parts (sorted labels) when it is.
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> bipartition(const Graph& g) {
    int n = g.num_vertices();
    std::vector<int> color(n + 1, -1);
    for (int s = 1; s <= n; ++s) {
        if (color[s] != -1) continue;
        color[s] = 0;
        std::vector<int> stack{s};
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : g.neighbors(v)) {
                if (color[u] == -1) {
                    color[u] = 1 - color[v];
                    stack.push_back(u);
                } else if (color[u] == color[v])
                    return std::nullopt;
            }
        }
    }
    std::vector<int> a, b;
    for (int v = 1; v <= n; ++v) (color[v] == 0 ? a : b).push_back(v);
    return std::make_pair(a, b);
}

/// True iff g is a complete bipartite graph K_{m,n}; returns (smaller part, larger part).
inline std::optional<std::pair<std::vector<int>, std::vector<int>>> complete_bipartite_parts(const Graph& g) {
    auto bp = bipartition(g);
    if (!bp) return std::nullopt;
    auto [a, b] = *bp;
    if (a.empty() || b.empty()) return std::nullopt;
    if (g.num_edges() != static_cast<int>(a.size() * b.size())) return std::nullopt;
    if (a.size() > b.size()) std::swap(a, b);
    return std::make_pair(a, b);
}

}  // namespace psdrank
