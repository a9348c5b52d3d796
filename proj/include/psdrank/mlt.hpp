#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "psdrank/decomposition.hpp"
#include "psdrank/gcr.hpp"
#include "psdrank/graph.hpp"
#include "psdrank/partial.hpp"
#include "psdrank/rand.hpp"
#include "psdrank/sym.hpp"

namespace psdrank {

/// A matrix in L_G: supported on the diagonal and the edges of the graph,
/// PSD to tolerance, trace normalized to 1. Pairs with partial matrices.
struct CertificateMatrix {
    Graph graph;
    SymMatrix matrix;

    bool supported() const {
        int n = graph.num_vertices();
        if (matrix.dim() != n) return false;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (!graph.has_edge(i, j) && matrix.at(i - 1, j - 1) != 0.0) return false;
        return true;
    }

    bool sound(double tol = 1e-8) const {
        if (!supported()) return false;
        double norm = matrix.max_abs();
        if (norm == 0.0) return false;
        auto [lmin, v] = min_eigenvalue_and_vector(matrix);
        (void)v;
        if (lmin < -tol * norm) return false;
        return std::abs(matrix.trace() - 1.0) <= 1e-8;
    }
};

/// <M, P>_F = sum_i M_ii p_ii + 2 sum_edges M_ij p_ij; non-positive pairing of
/// a sound certificate rules out a positive definite completion of p.
inline double pairing(const CertificateMatrix& cert, const GPartialMatrix& p) {
    double s = 0.0;
    for (int i = 0; i < p.graph.num_vertices(); ++i) s += cert.matrix.at(i, i) * p.diag[i];
    for (const auto& [e, val] : p.edge_vals) s += 2.0 * cert.matrix.at(e.first - 1, e.second - 1) * val;
    return s;
}

inline nlohmann::json to_json(const CertificateMatrix& c) {
    nlohmann::json support = nlohmann::json::array();
    for (auto [u, v] : c.graph.edges()) support.push_back({u, v});
    return {{"n", c.graph.num_vertices()}, {"support", support}, {"matrix", sym_to_json(c.matrix)}};
}

enum class ExistenceStatus { Exists, NotExists, Undetermined };

inline std::string to_string(ExistenceStatus s) {
    switch (s) {
        case ExistenceStatus::Exists: return "Exists";
        case ExistenceStatus::NotExists: return "NotExists";
        default: return "Undetermined";
    }
}

struct ExistenceVerdict {
    ExistenceStatus status = ExistenceStatus::Undetermined;
    std::optional<SymMatrix> witness;             // PD completion when Exists
    std::optional<CertificateMatrix> certificate; // when NotExists
    double pairing_value = 0.0;
    double lambda_min = 0.0;  // best achieved over the ascent
    int iterations = 0;
};

inline nlohmann::json to_json(const ExistenceVerdict& v) {
    nlohmann::json j{{"status", to_string(v.status)},
                     {"lambda_min", v.lambda_min},
                     {"iterations", v.iterations}};
    if (v.witness) j["witness"] = sym_to_json(*v.witness);
    if (v.certificate) {
        j["certificate"] = to_json(*v.certificate);
        j["pairing"] = v.pairing_value;
    }
    return j;
}

/// Searches for a boundary certificate: M in L_G, PSD, trace 1, with
/// <M, p> <= tol. Dykstra alternating projections between the PSD cone, the
/// support-and-trace affine set, and the pairing half-space. Semi-decision:
/// nullopt means none was found, not that none exists.
inline std::optional<CertificateMatrix> boundary_certificate_search(const GPartialMatrix& p, std::uint64_t seed = 0,
                                                                    int iter_cap = 4000, double tol = 1e-6) {
    int n = p.graph.num_vertices();
    if (n == 0) return std::nullopt;
    double scale = std::max(1.0, p.scale());

    // the pairing functional as a matrix in L_G
    SymMatrix pmat(n);
    for (int i = 0; i < n; ++i) pmat.at(i, i) = p.diag[i];
    for (const auto& [e, val] : p.edge_vals) pmat.at(e.first - 1, e.second - 1) = val;
    double pnorm2 = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) pnorm2 += pmat.at(i, j) * pmat.at(i, j);
    if (pnorm2 == 0.0) return std::nullopt;

    auto project_support_trace = [&](SymMatrix m) {
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j)
                if (!p.graph.has_edge(i, j)) m.at(i - 1, j - 1) = 0.0;
        double shift = (1.0 - m.trace()) / n;
        for (int i = 0; i < n; ++i) m.at(i, i) += shift;
        return m;
    };
    auto project_psd = [&](const SymMatrix& m) {
        auto d = sym_eigen(m);
        SymMatrix out(n);
        for (int k = 0; k < n; ++k) {
            if (d.values[k] <= 0.0) continue;
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j) out.at(i, j) += d.values[k] * d.vectors[k][i] * d.vectors[k][j];
        }
        return out;
    };
    auto project_halfspace = [&](SymMatrix m) {
        double ip = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) ip += m.at(i, j) * pmat.at(i, j);
        if (ip <= 0.0) return m;
        double f = ip / pnorm2;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) m.at(i, j) -= f * pmat.at(i, j);
        return m;
    };

    auto rng = make_rng(seed, 0x63657274);
    std::normal_distribution<double> gauss(0.0, 1.0);
    SymMatrix x(n);
    for (int i = 0; i < n; ++i) x.at(i, i) = 1.0 / n + 0.1 * std::abs(gauss(rng));
    for (auto [u, v] : p.graph.edges()) x.at(u - 1, v - 1) = 0.1 * gauss(rng) / n;

    // Dykstra over the three sets
    std::vector<SymMatrix> incr(3, SymMatrix(n));
    auto add = [&](SymMatrix a, const SymMatrix& b, double sgn) {
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) a.at(i, j) += sgn * b.at(i, j);
        return a;
    };
    for (int it = 0; it < iter_cap; ++it) {
        SymMatrix prev = x;
        for (int s = 0; s < 3; ++s) {
            SymMatrix y = add(x, incr[s], 1.0);
            SymMatrix z = s == 0 ? project_psd(y) : (s == 1 ? project_support_trace(y) : project_halfspace(y));
            incr[s] = add(y, z, -1.0);
            x = z;
        }
        double delta = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) delta = std::max(delta, std::abs(x.at(i, j) - prev.at(i, j)));
        if (delta < 1e-12 && it > 10) break;
    }

    // clean up and validate
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!p.graph.has_edge(i, j)) x.at(i - 1, j - 1) = 0.0;
    double tr = x.trace();
    if (tr <= 1e-12) return std::nullopt;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) x.at(i, j) /= tr;
    CertificateMatrix cert{p.graph, x};
    double norm = x.max_abs();
    auto [lmin, v] = min_eigenvalue_and_vector(x);
    (void)v;
    if (norm == 0.0 || lmin < -1e-8 * norm) return std::nullopt;
    if (pairing(cert, p) > tol * scale) return std::nullopt;
    return cert;
}

/// Dempster's criterion: the MLE exists iff p has a positive definite
/// completion. Maximizes lambda_min over the free (non-edge) entries by
/// subgradient ascent; falls back to a boundary-certificate search.
inline ExistenceVerdict pd_completion_exists(const GPartialMatrix& p, double tol = 1e-6, int iter_cap = 20000,
                                             std::uint64_t seed = 0) {
    p.validate();
    int n = p.graph.num_vertices();
    ExistenceVerdict out;
    if (n == 0) {
        out.status = ExistenceStatus::Exists;
        out.witness = SymMatrix(0);
        return out;
    }
    double scale = std::max(1.0, p.scale());

    std::vector<std::pair<int, int>> free_entries;  // 0-based, i < j
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!p.graph.has_edge(i, j)) free_entries.emplace_back(i - 1, j - 1);

    SymMatrix x(n);
    for (int i = 0; i < n; ++i) x.at(i, i) = p.diag[i];
    for (const auto& [e, val] : p.edge_vals) x.at(e.first - 1, e.second - 1) = val;

    // maximum-determinant completion by iterative proportional fitting over
    // the edge blocks: starting from the diagonal, each update matches one
    // 2x2 specified block while preserving the conditionals of the rest.
    // When a strictly PD completion exists this converges to it, so it
    // certifies Exists far more accurately than the ascent below, which
    // struggles in the narrow feasible tube left by a tiny diagonal entry.
    if (!free_entries.empty() && std::all_of(p.diag.begin(), p.diag.end(), [](double d) { return d > 0.0; })) {
        bool blocks_pd = true;
        for (const auto& [e, val] : p.edge_vals)
            if (p.diag[e.first - 1] * p.diag[e.second - 1] - val * val <= 0.0) blocks_pd = false;
        if (blocks_pd) {
            SymMatrix y(n);
            for (int i = 0; i < n; ++i) y.at(i, i) = p.diag[i];
            auto edges = p.graph.edges();
            double resid = 0.0;
            for (int sweep = 0; sweep < 500; ++sweep) {
                for (auto [u, v] : edges) {
                    int a = u - 1, b = v - 1;
                    double x00 = y.at(a, a), x11 = y.at(b, b), x01 = y.at(a, b);
                    double det = x00 * x11 - x01 * x01;
                    if (det <= 0.0) break;
                    std::vector<double> q0(n), q1(n);
                    for (int i = 0; i < n; ++i) {
                        double xa = y.at(i, a), xb = y.at(i, b);
                        q0[i] = (xa * x11 - xb * x01) / det;
                        q1[i] = (-xa * x01 + xb * x00) / det;
                    }
                    double d00 = p.diag[a] - x00, d01 = p.edge(u, v) - x01, d11 = p.diag[b] - x11;
                    for (int i = 0; i < n; ++i)
                        for (int j = i; j < n; ++j)
                            y.at(i, j) += q0[i] * d00 * q0[j] + q0[i] * d01 * q1[j] + q1[i] * d01 * q0[j] +
                                          q1[i] * d11 * q1[j];
                }
                resid = 0.0;
                for (int i = 0; i < n; ++i) resid = std::max(resid, std::abs(y.at(i, i) - p.diag[i]));
                for (auto [u, v] : edges) resid = std::max(resid, std::abs(y.at(u - 1, v - 1) - p.edge(u, v)));
                out.iterations = sweep + 1;
                if (resid <= 1e-13 * scale) break;
            }
            if (resid <= 1e-9 * scale) {
                auto [lm, vv] = min_eigenvalue_and_vector(y);
                (void)vv;
                if (lm > tol * scale) {
                    out.lambda_min = lm;
                    out.status = ExistenceStatus::Exists;
                    out.witness = y;
                    return out;
                }
            }
        }
    }

    SymMatrix best = x;
    double best_l = -1e300;
    double c = 0.1 * scale;
    int stall = 0;
    int local = 0;  // iterations since the last step-size reset
    int it = 0;
    for (; it < iter_cap; ++it) {
        auto [lmin, v] = min_eigenvalue_and_vector(x);
        if (lmin > best_l + 1e-9 * scale) {
            stall = 0;
        } else {
            ++stall;
        }
        if (lmin > best_l) {
            best_l = lmin;
            best = x;
        }
        if (best_l > tol * scale) break;                   // strictly PD reached
        if (stall > 1500 && best_l < -tol * scale) break;  // converged to a negative optimum
        if (free_entries.empty()) break;                   // nothing to optimize
        double step = c / std::sqrt(static_cast<double>(++local));
        for (auto [i, j] : free_entries) x.at(i, j) += step * 2.0 * v[i] * v[j];
    }
    out.iterations = it;
    out.lambda_min = best_l;
    if (best_l > tol * scale) {
        out.status = ExistenceStatus::Exists;
        out.witness = best;
        return out;
    }
    auto cert = boundary_certificate_search(p, seed);
    if (cert) {
        out.certificate = cert;
        out.pairing_value = pairing(*cert, p);
        // boundary tie: both tolerances met at once is genuinely ambiguous
        out.status = std::abs(best_l) <= tol * scale ? ExistenceStatus::Undetermined : ExistenceStatus::NotExists;
    } else {
        out.status = ExistenceStatus::Undetermined;
    }
    return out;
}

/// Closed form for K_{m,n}, n >= m >= 2: min(M, m+1) where M is the smallest k
/// with k(k+1)/2 >= m+n.
inline int mlt_bipartite(int m, int n) {
    if (m < 2 || n < m) throw std::invalid_argument("mlt_bipartite: need n >= m >= 2");
    int k = 1;
    while (static_cast<long long>(k) * (k + 1) / 2 < m + n) ++k;
    return std::min(k, m + 1);
}

/// The clique / treewidth squeeze: omega(g) <= mlt(g) <= tw(g) + 1.
inline std::pair<int, int> buhl_bounds(const Graph& g) {
    return {clique_number(g), treewidth_upper_bound(g) + 1};
}

/// PSD kernel certificate for the bipartite lower bound mlt(K_{m,n}) > k.
/// M has the block form [[Dm^2, -Dm B^T Dn], [-Dn B Dm, Dn^2]] for diagonal
/// Dm, Dn and an isometry B: R^m -> R^n, and kills the sampled k-dimensional
/// subspace W.
struct BipartiteCertificate {
    CertificateMatrix cert;
    Dense w;  // (m+n) x k basis of the killed subspace
};

inline BipartiteCertificate bipartite_certificate(int m, int n, int k, std::uint64_t seed = 0, int max_tries = 1000) {
    if (!(k <= m && m <= n)) throw std::invalid_argument("bipartite_certificate: need k <= m <= n");
    if (static_cast<long long>(k) * (k + 1) / 2 >= m + n)
        throw std::invalid_argument("bipartite_certificate: need k(k+1)/2 < m+n");

    std::normal_distribution<double> gauss(0.0, 1.0);
    std::string last = "no attempt";
    for (int attempt = 0; attempt < max_tries; ++attempt) {
        auto rng = make_rng(seed, static_cast<std::uint64_t>(attempt));
        Dense v(m, k), w(n, k);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) v.at(i, j) = gauss(rng);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) w.at(i, j) = gauss(rng);

        // homogeneous system in the m+n squared diagonals:
        // sum_s alpha_s v_si v_sj = sum_t beta_t w_ti w_tj for i <= j
        int rows = k * (k + 1) / 2;
        Dense sys(rows, m + n);
        int row = 0;
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j, ++row) {
                for (int s = 0; s < m; ++s) sys.at(row, s) = v.at(s, i) * v.at(s, j);
                for (int t = 0; t < n; ++t) sys.at(row, m + t) = -w.at(t, i) * w.at(t, j);
            }
        auto kernel = null_space(sys);
        if (kernel.empty()) {
            last = "no kernel";
            continue;
        }
        // hunt for an all-positive kernel vector
        std::vector<double> d;
        auto positive = [&](const std::vector<double>& cand) {
            double mx = 0.0, mn = 1e300;
            for (double x : cand) {
                mx = std::max(mx, std::abs(x));
                mn = std::min(mn, x);
            }
            return mx > 0.0 && mn > 1e-4 * mx;
        };
        for (const auto& b : kernel) {
            std::vector<double> neg(b.size());
            for (size_t i = 0; i < b.size(); ++i) neg[i] = -b[i];
            if (positive(b)) d = b;
            else if (positive(neg)) d = neg;
            if (!d.empty()) break;
        }
        if (d.empty() && kernel.size() > 1) {
            for (int probe = 0; probe < 200 && d.empty(); ++probe) {
                std::vector<double> cand(m + n, 0.0);
                for (const auto& b : kernel) {
                    double coef = gauss(rng);
                    for (int i = 0; i < m + n; ++i) cand[i] += coef * b[i];
                }
                std::vector<double> neg(cand.size());
                for (size_t i = 0; i < cand.size(); ++i) neg[i] = -cand[i];
                if (positive(cand)) d = cand;
                else if (positive(neg)) d = neg;
            }
        }
        if (d.empty()) {
            last = "no positive kernel vector";
            continue;
        }
        std::vector<double> dm(m), dn(n);
        for (int i = 0; i < m; ++i) dm[i] = std::sqrt(d[i]);
        for (int i = 0; i < n; ++i) dn[i] = std::sqrt(d[m + i]);

        // frames P = Dm V, Q = Dn W share the same Gram matrix; align them
        Dense pf(m, k), qf(n, k);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) pf.at(i, j) = dm[i] * v.at(i, j);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) qf.at(i, j) = dn[i] * w.at(i, j);
        SymMatrix gram(k);
        for (int i = 0; i < k; ++i)
            for (int j = i; j < k; ++j) {
                double s = 0.0;
                for (int t = 0; t < m; ++t) s += pf.at(t, i) * pf.at(t, j);
                gram.at(i, j) = s;
            }
        auto gd = sym_eigen(gram);
        if (gd.values[k - 1] <= 1e-10 * std::max(1.0, gd.values[0])) {
            last = "degenerate frame";
            continue;
        }
        Dense ghalf(k, k);  // gram^{-1/2}
        for (int a = 0; a < k; ++a)
            for (int b = 0; b < k; ++b)
                for (int t = 0; t < k; ++t)
                    ghalf.at(a, b) += gd.vectors[t][a] * gd.vectors[t][b] / std::sqrt(gd.values[t]);
        Dense up = matmul(pf, ghalf), uq = matmul(qf, ghalf);  // orthonormal k-frames

        // complete each frame to a full orthonormal basis by Gram-Schmidt
        auto complete_basis = [&](const Dense& u, int dim) {
            std::vector<std::vector<double>> cols;
            for (int j = 0; j < k; ++j) {
                std::vector<double> col(dim);
                for (int i = 0; i < dim; ++i) col[i] = u.at(i, j);
                cols.push_back(col);
            }
            for (int e = 0; e < dim && static_cast<int>(cols.size()) < dim; ++e) {
                std::vector<double> col(dim, 0.0);
                col[e] = 1.0;
                for (const auto& c : cols) {
                    double ip = 0.0;
                    for (int i = 0; i < dim; ++i) ip += c[i] * col[i];
                    for (int i = 0; i < dim; ++i) col[i] -= ip * c[i];
                }
                double nrm = 0.0;
                for (double x : col) nrm += x * x;
                nrm = std::sqrt(nrm);
                if (nrm < 1e-8) continue;
                for (double& x : col) x /= nrm;
                cols.push_back(col);
            }
            Dense full(dim, dim);
            for (int j = 0; j < dim; ++j)
                for (int i = 0; i < dim; ++i) full.at(i, j) = cols[j][i];
            return full;
        };
        Dense upf = complete_basis(up, m), uqf = complete_basis(uq, n);
        // B = Uq_full [I_m; 0] Up_full^T: an n x m isometry with B Dm v_i = Dn w_i
        Dense bmat(n, m);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                double s = 0.0;
                for (int t = 0; t < m; ++t) s += uqf.at(i, t) * upf.at(j, t);
                bmat.at(i, j) = s;
            }

        SymMatrix mm(m + n);
        for (int i = 0; i < m; ++i) mm.at(i, i) = dm[i] * dm[i];
        for (int i = 0; i < n; ++i) mm.at(m + i, m + i) = dn[i] * dn[i];
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) mm.at(i, m + j) = -dm[i] * bmat.at(j, i) * dn[j];

        Dense wbasis(m + n, k);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < k; ++j) wbasis.at(i, j) = v.at(i, j);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < k; ++j) wbasis.at(m + i, j) = w.at(i, j);

        double norm = mm.max_abs();
        double mw_max = 0.0;
        for (int j = 0; j < k; ++j) {
            std::vector<double> col(m + n);
            for (int i = 0; i < m + n; ++i) col[i] = wbasis.at(i, j);
            auto res = mm.apply(col);
            for (double x : res) mw_max = std::max(mw_max, std::abs(x));
        }
        if (mw_max > 1e-8 * std::max(1.0, norm)) {
            last = "kernel residual too large";
            continue;
        }
        auto [lmin, vec] = min_eigenvalue_and_vector(mm);
        (void)vec;
        if (lmin < -1e-8 * norm) {
            last = "not PSD";
            continue;
        }
        double tr = mm.trace();
        for (int i = 0; i < m + n; ++i)
            for (int j = i; j < m + n; ++j) mm.at(i, j) /= tr;
        return {CertificateMatrix{complete_bipartite(m, n), mm}, wbasis};
    }
    throw std::runtime_error("bipartite_certificate: exhausted retries (" + last + ")");
}

/// MLT bounds and, where a closed form or a squeeze applies, the exact value.
struct MltReport {
    int n = 0, num_edges = 0;
    int lower = 0, upper = 0;
    std::string lower_method, upper_method;
    std::optional<int> exact;
    std::string method;  // closed-form | clique-sum | bounds
    std::map<int, double> frequencies;  // per-rank Monte Carlo existence rates
    int trials = 0;
    std::uint64_t seed = 0;
};

inline nlohmann::json to_json(const MltReport& r) {
    nlohmann::json j{{"n", r.n},
                     {"edges", r.num_edges},
                     {"lower", {{"value", r.lower}, {"method", r.lower_method}}},
                     {"upper", {{"value", r.upper}, {"method", r.upper_method}}},
                     {"method", r.method},
                     {"trials", r.trials},
                     {"seed", r.seed}};
    if (r.exact) j["value"] = *r.exact;
    if (!r.frequencies.empty()) {
        nlohmann::json f = nlohmann::json::object();
        for (auto [rk, fq] : r.frequencies) f[std::to_string(rk)] = fq;
        j["frequencies"] = f;
    }
    return j;
}

struct MonteCarloResult {
    std::map<int, double> exists_frequency;
    std::map<int, double> undetermined_frequency;
    std::optional<int> estimate;  // smallest r with all Exists, none Undetermined
};

/// Empirical existence rates: fraction of rank-r Wishart samples whose partial
/// matrix has a PD completion. An estimate, never an exact value.
inline MonteCarloResult mlt_monte_carlo(const Graph& g, int trials, std::uint64_t seed = 0, int r_lo = 1, int r_hi = -1,
                                        double tol = 1e-6, int iter_cap = 20000) {
    if (trials < 1) throw std::invalid_argument("mlt_monte_carlo: trials must be >= 1");
    int n = g.num_vertices();
    if (r_hi < 0) r_hi = n;
    MonteCarloResult out;
    for (int r = r_lo; r <= r_hi; ++r) {
        int exists = 0, undet = 0;
        for (int t = 0; t < trials; ++t) {
            auto p = wishart_partial(g, r, derive_seed(seed, static_cast<std::uint64_t>(r) * 100003 + t));
            auto verdict = pd_completion_exists(p, tol, iter_cap, seed);
            if (verdict.status == ExistenceStatus::Exists) ++exists;
            if (verdict.status == ExistenceStatus::Undetermined) ++undet;
        }
        out.exists_frequency[r] = static_cast<double>(exists) / trials;
        out.undetermined_frequency[r] = static_cast<double>(undet) / trials;
        if (!out.estimate && exists == trials) out.estimate = r;
    }
    return out;
}

namespace detail {

/// (value-or-bounds, exact?) for one atom: complete, complete bipartite and
/// chordal atoms have closed forms; treewidth <= 2 atoms equal their gcr.
struct AtomMlt {
    int lower = 0, upper = 0;
    bool exact = false;
    std::string lower_method, upper_method;
};

inline AtomMlt atom_mlt(const Graph& atom, int trials, std::uint64_t seed) {
    AtomMlt r;
    int n = atom.num_vertices();
    if (n == 0) return {0, 0, true, "closed-form", "closed-form"};
    if (atom.num_edges() == static_cast<long long>(n) * (n - 1) / 2) {
        r.lower = r.upper = n;
        r.exact = true;
        r.lower_method = r.upper_method = "closed-form";
        return r;
    }
    if (auto parts = complete_bipartite_parts(atom); parts && parts->first.size() >= 2) {
        int v = mlt_bipartite(static_cast<int>(parts->first.size()), static_cast<int>(parts->second.size()));
        return {v, v, true, "closed-form", "closed-form"};
    }
    if (is_chordal(atom)) {
        int w = clique_number(atom);
        return {w, w, true, "omega", "tau+1"};
    }
    if (treewidth_at_most_2(atom)) {
        int v = gcr_randomized(atom, trials, seed);
        return {v, v, true, "gcr", "gcr"};
    }
    auto [lo, hi] = buhl_bounds(atom);
    int gcr = gcr_randomized(atom, trials, seed);
    r.lower = lo;
    r.lower_method = "omega";
    if (gcr < hi) {
        r.upper = gcr;
        r.upper_method = "gcr";
    } else {
        r.upper = hi;
        r.upper_method = "tau+1";
    }
    r.exact = r.lower == r.upper;
    return r;
}

}  // namespace detail

/// MLT by clique-separator decomposition: both invariants combine by maximum
/// over atoms. Unrecognized atoms contribute bounds only.
inline MltReport mlt_dispatch(const Graph& g, int trials = 5, std::uint64_t seed = 0) {
    MltReport rep;
    rep.n = g.num_vertices();
    rep.num_edges = g.num_edges();
    rep.trials = trials;
    rep.seed = seed;
    if (g.num_vertices() == 0) {
        rep.exact = 0;
        rep.method = "closed-form";
        return rep;
    }
    auto tree = clique_separator_decomposition(g);
    bool all_exact = true;
    for (const auto& atom : tree.atoms) {
        auto a = detail::atom_mlt(atom.graph, trials, seed);
        if (a.lower > rep.lower) {
            rep.lower = a.lower;
            rep.lower_method = a.lower_method;
        }
        if (a.upper > rep.upper) {
            rep.upper = a.upper;
            rep.upper_method = a.upper_method;
        }
        all_exact = all_exact && a.exact;
    }
    if (all_exact) rep.exact = rep.upper;
    rep.method = !all_exact ? "bounds" : (tree.atoms.size() > 1 ? "clique-sum" : "closed-form");
    return rep;
}

/// Sparsity order of K_{m,n} (largest rank of an extreme ray of the dual cone):
/// n while n <= C(m,2)+1, then C(m,2)+1.
inline int sparsity_order_bipartite(int m, int n) {
    if (m < 2 || n < m) throw std::invalid_argument("sparsity_order_bipartite: need n >= m >= 2");
    int cap = m * (m - 1) / 2 + 1;
    return n <= cap ? n : cap;
}

/// gcr + order <= m + n + 1, with equality exactly at n = C(m,2) + 1.
inline bool check_order_inequality(int m, int n) {
    int sum = gcr_bipartite(m, n) + sparsity_order_bipartite(m, n);
    bool boundary = n == m * (m - 1) / 2 + 1;
    if (sum > m + n + 1) return false;
    return (sum == m + n + 1) == boundary;
}

}  // namespace psdrank
