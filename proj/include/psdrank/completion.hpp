#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "psdrank/decomposition.hpp"
#include "psdrank/graph.hpp"
#include "psdrank/partial.hpp"
#include "psdrank/rand.hpp"
#include "psdrank/sym.hpp"

namespace psdrank {

/// Symmetric (n+2) x (n+2) matrix with one unknown corner entry t:
///   [ a0   a^T  t    ]
///   [ a    M    b    ]
///   [ t    b^T  b_np1]
struct BorderedMatrix {
    Dense m_core;            // n x n, symmetric data
    std::vector<double> a;   // size n+1: a0, a1..an
    std::vector<double> b;   // size n+1: b1..bn, b_{n+1}

    int core_dim() const { return m_core.rows; }

    SymMatrix assemble(double t) const {
        int n = core_dim();
        SymMatrix p(n + 2);
        p.at(0, 0) = a[0];
        for (int i = 0; i < n; ++i) p.at(0, i + 1) = a[i + 1];
        p.at(0, n + 1) = t;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) p.at(i + 1, j + 1) = m_core.at(i, j);
        for (int i = 0; i < n; ++i) p.at(i + 1, n + 1) = b[i];
        p.at(n + 1, n + 1) = b[n];
        return p;
    }
};

namespace detail {

/// Determinant by LU with partial pivoting.
inline double determinant(const SymMatrix& s) {
    int n = s.dim();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = s.at(i, j);
    double det = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        if (a[piv][col] == 0.0) return 0.0;
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (int r = col + 1; r < n; ++r) {
            double f = a[r][col] / a[col][col];
            for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    return det;
}

inline bool invertible_at_tol(const Dense& m, double tol = 1e-10) {
    SymMatrix s(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = i; j < m.cols; ++j) s.at(i, j) = 0.5 * (m.at(i, j) + m.at(j, i));
    auto d = sym_eigen(s);
    double big = 0.0;
    for (double v : d.values) big = std::max(big, std::abs(v));
    if (big == 0.0) return false;
    for (double v : d.values)
        if (std::abs(v) <= tol * big) return false;
    return true;
}

/// Solve M x = rhs for symmetric data; throws if M is singular at tolerance.
inline std::vector<double> solve_symmetric(const Dense& m, const std::vector<double>& rhs, double tol,
                                           const char* who) {
    SymMatrix s(m.rows);
    for (int i = 0; i < m.rows; ++i)
        for (int j = i; j < m.cols; ++j) s.at(i, j) = 0.5 * (m.at(i, j) + m.at(j, i));
    auto d = sym_eigen(s);
    double big = 0.0;
    for (double v : d.values) big = std::max(big, std::abs(v));
    for (double v : d.values)
        if (big == 0.0 || std::abs(v) <= tol * big)
            throw std::runtime_error(std::string(who) + ": singular core block (non-generic input)");
    std::vector<double> x(m.rows, 0.0);
    for (int k = 0; k < m.rows; ++k) {
        double coef = 0.0;
        for (int i = 0; i < m.rows; ++i) coef += d.vectors[k][i] * rhs[i];
        coef /= d.values[k];
        for (int i = 0; i < m.rows; ++i) x[i] += coef * d.vectors[k][i];
    }
    return x;
}

inline int block_rank(const SymMatrix& s, const std::vector<int>& idx, double tol = 1e-8) {
    SymMatrix b(static_cast<int>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = i; j < idx.size(); ++j) b.at(static_cast<int>(i), static_cast<int>(j)) = s.at(idx[i], idx[j]);
    return float_rank(b, tol);
}

}  // namespace detail

struct QuadraticRoots {
    std::complex<double> first, second;
    bool real = false;
};

/// Roots of det P(t), a quadratic with leading coefficient det M != 0.
/// Each root t0 makes rank P(t0) <= n+1. Complex roots come as a conjugate pair.
inline QuadraticRoots one_entry_case_a(const BorderedMatrix& p) {
    if (!detail::invertible_at_tol(p.m_core))
        throw std::runtime_error("one_entry_case_a: singular core block");
    double q0 = detail::determinant(p.assemble(0.0));
    double q1 = detail::determinant(p.assemble(1.0));
    double qm1 = detail::determinant(p.assemble(-1.0));
    double alpha = 0.5 * (q1 + qm1) - q0;
    double beta = 0.5 * (q1 - qm1);
    double gamma = q0;
    double disc = beta * beta - 4.0 * alpha * gamma;
    // a double root computes disc = 0 up to roundoff; clamp tiny negatives
    if (disc < 0.0 && -disc <= 1e-10 * (beta * beta + std::abs(4.0 * alpha * gamma))) disc = 0.0;
    QuadraticRoots r;
    if (disc >= 0.0) {
        double sq = std::sqrt(disc);
        r.first = (-beta + sq) / (2.0 * alpha);
        r.second = (-beta - sq) / (2.0 * alpha);
        r.real = true;
    } else {
        double sq = std::sqrt(-disc);
        r.first = std::complex<double>(-beta / (2.0 * alpha), sq / (2.0 * alpha));
        r.second = std::conj(r.first);
        r.real = false;
    }
    return r;
}

/// The unique t0 with a double root of det P(t): t0 = b^T M^{-1} a.
/// Requires the upper-left (n+1) block full rank and the bottom-right block of
/// rank n; the completed P(t0) has rank n+1.
inline double one_entry_case_b(const BorderedMatrix& p, double tol = 1e-8) {
    int n = p.core_dim();
    SymMatrix full = p.assemble(0.0);  // t only enters the excluded corners
    std::vector<int> ul, br;
    for (int i = 0; i <= n; ++i) ul.push_back(i);
    for (int i = 1; i <= n + 1; ++i) br.push_back(i);
    if (detail::block_rank(full, ul, tol) != n + 1)
        throw std::runtime_error("one_entry_case_b: upper-left block is not full rank");
    if (detail::block_rank(full, br, tol) != n)
        throw std::runtime_error("one_entry_case_b: bottom-right block does not have rank n");
    std::vector<double> avec(p.a.begin() + 1, p.a.end());
    std::vector<double> bvec(p.b.begin(), p.b.end() - 1);
    auto minv_a = detail::solve_symmetric(p.m_core, avec, 1e-10, "one_entry_case_b");
    double t0 = 0.0;
    for (int i = 0; i < n; ++i) t0 += bvec[i] * minv_a[i];
    return t0;
}

/// Both corner blocks have rank n; t0 = sum u_i b_i where u expresses the first
/// row through the rows of M. The completed P(t0) has rank n.
inline double one_entry_case_c(const BorderedMatrix& p, double tol = 1e-8) {
    int n = p.core_dim();
    SymMatrix full = p.assemble(0.0);
    std::vector<int> ul, br;
    for (int i = 0; i <= n; ++i) ul.push_back(i);
    for (int i = 1; i <= n + 1; ++i) br.push_back(i);
    if (detail::block_rank(full, ul, tol) != n)
        throw std::runtime_error("one_entry_case_c: upper-left block does not have rank n");
    if (detail::block_rank(full, br, tol) != n)
        throw std::runtime_error("one_entry_case_c: bottom-right block does not have rank n");
    std::vector<double> avec(p.a.begin() + 1, p.a.end());
    std::vector<double> bvec(p.b.begin(), p.b.end() - 1);
    auto u = detail::solve_symmetric(p.m_core, avec, 1e-10, "one_entry_case_c");
    double a0_check = 0.0;
    for (int i = 0; i < n; ++i) a0_check += u[i] * avec[i];
    double scale = std::max(1.0, std::abs(p.a[0]));
    if (std::abs(a0_check - p.a[0]) > 1e-6 * scale)
        throw std::runtime_error("one_entry_case_c: first row is not in the span of the core rows");
    double t0 = 0.0;
    for (int i = 0; i < n; ++i) t0 += u[i] * bvec[i];
    return t0;
}

/// [U; V] [U^T V^T]: symmetric (m+n) x (m+n), rank <= r, off-diagonal block U V^T.
inline SymMatrix symmetric_from_nonsymmetric(const Dense& u, const Dense& v) {
    if (u.cols != v.cols) throw std::invalid_argument("symmetric_from_nonsymmetric: factor widths differ");
    int m = u.rows, n = v.rows, r = u.cols;
    SymMatrix x(m + n);
    auto row = [&](int i) -> const Dense& { return i < m ? u : v; };
    auto ridx = [&](int i) { return i < m ? i : i - m; };
    for (int i = 0; i < m + n; ++i)
        for (int j = i; j < m + n; ++j) {
            double s = 0.0;
            for (int k = 0; k < r; ++k) s += row(i).at(ridx(i), k) * row(j).at(ridx(j), k);
            x.at(i, j) = s;
        }
    return x;
}

struct CompletionReport {
    bool pass = false;
    double max_residual = 0.0;
    int rank = 0;
};

/// Checks pi_G(x) = p entrywise within tol and float_rank(x) <= rank_target.
inline CompletionReport verify_completion(const GPartialMatrix& p, const SymMatrix& x, int rank_target, double tol) {
    if (x.dim() != p.graph.num_vertices()) throw std::invalid_argument("verify_completion: dimension mismatch");
    CompletionReport rep;
    for (int i = 1; i <= p.graph.num_vertices(); ++i)
        rep.max_residual = std::max(rep.max_residual, std::abs(x.at(i - 1, i - 1) - p.diag[i - 1]));
    for (const auto& [e, val] : p.edge_vals)
        rep.max_residual = std::max(rep.max_residual, std::abs(x.at(e.first - 1, e.second - 1) - val));
    rep.rank = float_rank(x, tol);
    double scale = std::max(1.0, p.scale());
    rep.pass = rep.max_residual <= tol * scale && rep.rank <= rank_target;
    return rep;
}

/// Rank-r completion of a partial matrix by iterated eigenvalue truncation:
/// alternate "restore specified entries" with "project to the nearest rank-r
/// symmetric matrix". Converges for data with an exact rank-r completion.
inline SymMatrix rank_r_fit(const GPartialMatrix& p, int r, double tol = 1e-8, int iter_cap = 5000) {
    int n = p.graph.num_vertices();
    SymMatrix x(n);
    for (int i = 0; i < n; ++i) x.at(i, i) = p.diag[i];
    for (const auto& [e, val] : p.edge_vals) x.at(e.first - 1, e.second - 1) = val;
    double scale = std::max(1.0, p.scale());
    for (int it = 0; it < iter_cap; ++it) {
        auto d = sym_eigen(x);
        // keep the r largest-magnitude eigenvalues
        std::vector<int> idx(n);
        for (int i = 0; i < n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return std::abs(d.values[a]) > std::abs(d.values[b]); });
        SymMatrix y(n);
        for (int kk = 0; kk < std::min(r, n); ++kk) {
            int k = idx[kk];
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) y.at(i, j) += d.values[k] * d.vectors[k][i] * d.vectors[k][j];
        }
        double resid = 0.0;
        for (int i = 0; i < n; ++i) resid = std::max(resid, std::abs(y.at(i, i) - p.diag[i]));
        for (const auto& [e, val] : p.edge_vals)
            resid = std::max(resid, std::abs(y.at(e.first - 1, e.second - 1) - val));
        for (int i = 0; i < n; ++i) y.at(i, i) = p.diag[i];
        for (const auto& [e, val] : p.edge_vals) y.at(e.first - 1, e.second - 1) = val;
        x = y;
        if (resid <= tol * scale) break;
    }
    return x;
}

/// Rank-preserving completion of a two-atom clique sum: the growing step of
/// the one-entry construction followed by the blockwise row-relation fill.
/// Returns a full symmetric matrix X with pi_G(X) = p and rank max(r1, r2).
inline SymMatrix clique_sum_complete(const CliqueSumTree& tree, const GPartialMatrix& p, int r1, int r2,
                                     std::uint64_t seed = 0, double tol = 1e-8) {
    if (tree.atoms.size() != 2 || tree.separators.size() != 1)
        throw std::invalid_argument("clique_sum_complete: expected a two-atom tree");
    p.validate();
    int n = p.graph.num_vertices();
    if (tree.n != n) throw std::invalid_argument("clique_sum_complete: tree/partial mismatch");

    std::vector<int> v1 = tree.atoms[0].vertices, v2 = tree.atoms[1].vertices;
    if (r1 < r2) std::swap(v1, v2), std::swap(r1, r2);
    const std::vector<int>& sep = tree.separators[0].vertices;

    auto restrict_partial = [&](const std::vector<int>& verts, const Graph& atom) {
        GPartialMatrix q;
        q.graph = atom;
        q.diag.resize(verts.size());
        for (size_t i = 0; i < verts.size(); ++i) q.diag[i] = p.diag[verts[i] - 1];
        for (auto [a, b] : atom.edges()) q.edge_vals[{a, b}] = p.edge(verts[a - 1], verts[b - 1]);
        return q;
    };

    Graph atom1 = p.graph.induced(v1), atom2 = p.graph.induced(v2);
    SymMatrix a1 = rank_r_fit(restrict_partial(v1, atom1), r1, tol);
    SymMatrix a2 = rank_r_fit(restrict_partial(v2, atom2), r2, tol);

    double star_scale = std::max(1.0, p.scale());
    auto rng = make_rng(seed, 0x636f6d70);

    const int max_retries = 20;
    std::string last_error = "unknown";
    for (int attempt = 0; attempt < max_retries; ++attempt) {
        try {
            // X indexed 0-based by parent labels - 1
            std::vector<std::vector<double>> x(n, std::vector<double>(n, 0.0));
            std::vector<std::vector<bool>> known(n, std::vector<bool>(n, false));
            auto put = [&](int gi, int gj, double val) {
                x[gi][gj] = x[gj][gi] = val;
                known[gi][gj] = known[gj][gi] = true;
            };
            for (size_t i = 0; i < v1.size(); ++i)
                for (size_t j = i; j < v1.size(); ++j)
                    put(v1[i] - 1, v1[j] - 1, a1.at(static_cast<int>(i), static_cast<int>(j)));
            for (size_t i = 0; i < v2.size(); ++i)
                for (size_t j = i; j < v2.size(); ++j)
                    if (!known[v2[i] - 1][v2[j] - 1])
                        put(v2[i] - 1, v2[j] - 1, a2.at(static_cast<int>(i), static_cast<int>(j)));

            std::vector<int> khat(sep.begin(), sep.end());  // overlap, parent labels
            std::vector<int> tail;                          // V2 \ K
            for (int v : v2)
                if (std::find(khat.begin(), khat.end(), v) == khat.end()) tail.push_back(v);
            std::vector<int> pending;                       // V1 \ K, absorbed from the back
            for (int v : v1)
                if (std::find(khat.begin(), khat.end(), v) == khat.end()) pending.push_back(v);

            std::vector<int> order = khat;  // current index list T of the growing block
            order.insert(order.end(), tail.begin(), tail.end());

            std::uniform_real_distribution<double> unif(-1.0, 1.0);

            // phase 1: absorb vertices until the overlap carries rank r2
            while (static_cast<int>(khat.size()) < r2 && !pending.empty()) {
                int u = pending.back();
                pending.pop_back();
                int mid_len = r2 - 1;
                if (mid_len > static_cast<int>(order.size()) - 1)
                    throw std::runtime_error("clique_sum_complete: atom too small for target rank");
                std::vector<int> mid(order.begin(), order.begin() + mid_len);
                int zstar = order[mid_len];
                // generic stars for unknown entries of the new row inside mid,
                // centered where a^T M^{-1} a is minimal so the bordered
                // determinant keeps real roots; the perturbation shrinks on
                // retries to stay inside that region
                {
                    std::vector<int> idx_known, idx_free;
                    for (int i = 0; i < mid_len; ++i)
                        (known[u - 1][mid[i] - 1] ? idx_known : idx_free).push_back(i);
                    std::vector<double> center(idx_free.size(), 0.0);
                    if (!idx_known.empty() && !idx_free.empty()) {
                        Dense blk(static_cast<int>(idx_known.size()), static_cast<int>(idx_known.size()));
                        std::vector<double> ak(idx_known.size());
                        for (size_t i = 0; i < idx_known.size(); ++i) {
                            ak[i] = x[u - 1][mid[idx_known[i]] - 1];
                            for (size_t j = 0; j < idx_known.size(); ++j)
                                blk.at(static_cast<int>(i), static_cast<int>(j)) =
                                    x[mid[idx_known[i]] - 1][mid[idx_known[j]] - 1];
                        }
                        auto e = least_squares(blk, ak);
                        for (size_t s = 0; s < idx_free.size(); ++s)
                            for (size_t k = 0; k < idx_known.size(); ++k)
                                center[s] += x[mid[idx_free[s]] - 1][mid[idx_known[k]] - 1] * e[k];
                    }
                    double eps = 0.05 * star_scale * std::pow(0.5, attempt);
                    for (size_t s = 0; s < idx_free.size(); ++s)
                        put(u - 1, mid[idx_free[s]] - 1, center[s] + unif(rng) * eps);
                }
                // the triangle entry: a root of the bordered determinant
                BorderedMatrix bm;
                bm.m_core = Dense(mid_len, mid_len);
                for (int i = 0; i < mid_len; ++i)
                    for (int j = 0; j < mid_len; ++j) bm.m_core.at(i, j) = x[mid[i] - 1][mid[j] - 1];
                bm.a.resize(mid_len + 1);
                bm.a[0] = x[u - 1][u - 1];
                for (int i = 0; i < mid_len; ++i) bm.a[i + 1] = x[u - 1][mid[i] - 1];
                bm.b.resize(mid_len + 1);
                for (int i = 0; i < mid_len; ++i) bm.b[i] = x[mid[i] - 1][zstar - 1];
                bm.b[mid_len] = x[zstar - 1][zstar - 1];
                auto roots = one_entry_case_a(bm);
                if (!roots.real) throw std::runtime_error("clique_sum_complete: complex roots in growing step");
                put(u - 1, zstar - 1, roots.first.real());
                // remaining entries of the new row follow the column relations
                std::vector<int> lead = mid;
                lead.push_back(zstar);
                Dense lhs(static_cast<int>(order.size()), static_cast<int>(lead.size()));
                for (size_t i = 0; i < order.size(); ++i)
                    for (size_t j = 0; j < lead.size(); ++j)
                        lhs.at(static_cast<int>(i), static_cast<int>(j)) = x[order[i] - 1][lead[j] - 1];
                for (int z : tail) {
                    if (known[u - 1][z - 1]) continue;
                    std::vector<double> rhs(order.size());
                    for (size_t i = 0; i < order.size(); ++i) rhs[i] = x[order[i] - 1][z - 1];
                    auto gamma = least_squares(lhs, rhs);
                    double val = 0.0;
                    for (size_t j = 0; j < lead.size(); ++j) val += gamma[j] * x[u - 1][lead[j] - 1];
                    put(u - 1, z - 1, val);
                }
                khat.insert(khat.begin(), u);
                order.insert(order.begin(), u);
            }

            // phase 2: remaining cross entries via the row relations of the overlap
            if (!pending.empty()) {
                Dense lhs(static_cast<int>(order.size()), static_cast<int>(khat.size()));
                for (size_t i = 0; i < order.size(); ++i)
                    for (size_t j = 0; j < khat.size(); ++j)
                        lhs.at(static_cast<int>(i), static_cast<int>(j)) = x[order[i] - 1][khat[j] - 1];
                for (int z : tail) {
                    std::vector<double> rhs(order.size());
                    for (size_t i = 0; i < order.size(); ++i) rhs[i] = x[order[i] - 1][z - 1];
                    auto d = least_squares(lhs, rhs);
                    for (int u : pending) {
                        if (known[u - 1][z - 1]) continue;
                        double val = 0.0;
                        for (size_t j = 0; j < khat.size(); ++j) val += d[j] * x[u - 1][khat[j] - 1];
                        put(u - 1, z - 1, val);
                    }
                }
            }

            SymMatrix out(n);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) out.at(i, j) = x[i][j];
            auto rep = verify_completion(p, out, std::max(r1, r2), std::max(tol, 1e-6));
            if (!rep.pass)
                throw std::runtime_error("clique_sum_complete: verification failed (residual " +
                                         std::to_string(rep.max_residual) + ", rank " + std::to_string(rep.rank) + ")");
            return out;
        } catch (const std::runtime_error& e) {
            last_error = e.what();
        }
    }
    throw std::runtime_error("clique_sum_complete: exhausted retries; last error: " + last_error);
}

}  // namespace psdrank
