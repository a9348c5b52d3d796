#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <stdexcept>
#include <vector>

namespace psdrank {

/// Dense symmetric matrix; only the upper triangle is stored, so symmetry
/// is exact by construction.
class SymMatrix {
public:
    SymMatrix() : n_(0) {}
    explicit SymMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * (n + 1) / 2, 0.0) {
        if (n < 0) throw std::invalid_argument("SymMatrix: dimension must be >= 0");
    }

    int dim() const { return n_; }

    double& at(int i, int j) { return a_[index(i, j)]; }
    double at(int i, int j) const { return a_[index(i, j)]; }

    double max_abs() const {
        double m = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) m = std::max(m, std::abs(at(i, j)));
        return m;
    }

    double trace() const {
        double t = 0.0;
        for (int i = 0; i < n_; ++i) t += at(i, i);
        return t;
    }

    std::vector<double> apply(const std::vector<double>& x) const {
        std::vector<double> y(n_, 0.0);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) y[i] += at(i, j) * x[j];
        return y;
    }

    static SymMatrix outer(const std::vector<double>& v) {
        SymMatrix s(static_cast<int>(v.size()));
        for (int i = 0; i < s.dim(); ++i)
            for (int j = i; j < s.dim(); ++j) s.at(i, j) = v[i] * v[j];
        return s;
    }

private:
    size_t index(int i, int j) const {
        if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("SymMatrix::at");
        if (i > j) std::swap(i, j);
        // row-major upper triangle: row i starts after i full-and-shrinking rows
        return static_cast<size_t>(i) * n_ - static_cast<size_t>(i) * (i + 1) / 2 + i + (j - i);
    }

    int n_;
    std::vector<double> a_;
};

struct EigenDecomposition {
    std::vector<double> values;               // descending
    std::vector<std::vector<double>> vectors; // vectors[k] is the unit eigenvector for values[k]
};

/// Cyclic Jacobi eigensolver for symmetric matrices.
/// Reconstruction and orthogonality residuals are ~1e-12 relative; throws on
/// non-convergence after the sweep cap.
inline EigenDecomposition sym_eigen(const SymMatrix& s) {
    int n = s.dim();
    std::vector<std::vector<double>> a(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a[i][j] = s.at(i, j);
    std::vector<std::vector<double>> q(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) q[i][i] = 1.0;

    const int max_sweeps = 100;
    double scale = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) scale = std::max(scale, std::abs(a[i][j]));
    if (scale == 0.0) scale = 1.0;

    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off = std::max(off, std::abs(a[i][j]));
        if (off <= 1e-14 * scale) break;
        for (int p = 0; p < n - 1; ++p)
            for (int qq = p + 1; qq < n; ++qq) {
                double apq = a[p][qq];
                if (std::abs(apq) <= 1e-300) continue;
                double theta = (a[qq][qq] - a[p][p]) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                for (int k = 0; k < n; ++k) {
                    double akp = a[k][p], akq = a[k][qq];
                    a[k][p] = c * akp - sn * akq;
                    a[k][qq] = sn * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[p][k], aqk = a[qq][k];
                    a[p][k] = c * apk - sn * aqk;
                    a[qq][k] = sn * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    double qkp = q[k][p], qkq = q[k][qq];
                    q[k][p] = c * qkp - sn * qkq;
                    q[k][qq] = sn * qkp + c * qkq;
                }
            }
    }
    if (sweep == max_sweeps) throw std::runtime_error("sym_eigen: Jacobi iteration did not converge");

    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int x, int y) { return a[x][x] > a[y][y]; });
    EigenDecomposition d;
    d.values.resize(n);
    d.vectors.assign(n, std::vector<double>(n));
    for (int k = 0; k < n; ++k) {
        d.values[k] = a[idx[k]][idx[k]];
        for (int i = 0; i < n; ++i) d.vectors[k][i] = q[i][idx[k]];
    }
    return d;
}

/// Count of eigenvalues with |lambda| > tol * max(1, |lambda|_max).
inline int float_rank(const SymMatrix& s, double tol) {
    if (tol <= 0) throw std::invalid_argument("float_rank: tol must be positive");
    if (s.dim() == 0) return 0;
    auto d = sym_eigen(s);
    double big = 0.0;
    for (double v : d.values) big = std::max(big, std::abs(v));
    double cut = tol * std::max(1.0, big);
    int r = 0;
    for (double v : d.values)
        if (std::abs(v) > cut) ++r;
    return r;
}

inline std::pair<double, std::vector<double>> min_eigenvalue_and_vector(const SymMatrix& s) {
    auto d = sym_eigen(s);
    int n = s.dim();
    return {d.values[n - 1], d.vectors[n - 1]};
}

// ---- small dense helpers used by the completion and certificate code ----

struct Dense {
    int rows = 0, cols = 0;
    std::vector<double> data;

    Dense() = default;
    Dense(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0.0) {}

    double& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    double at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }

    Dense transposed() const {
        Dense t(cols, rows);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
        return t;
    }
};

inline Dense matmul(const Dense& a, const Dense& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    Dense c(a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            double aik = a.at(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < b.cols; ++j) c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

/// Minimum-norm least-squares solve A x = b via eigen-decomposition of A^T A.
inline std::vector<double> least_squares(const Dense& a, const std::vector<double>& b, double rel_tol = 1e-10) {
    if (static_cast<int>(b.size()) != a.rows) throw std::invalid_argument("least_squares: dimension mismatch");
    SymMatrix ata(a.cols);
    for (int i = 0; i < a.cols; ++i)
        for (int j = i; j < a.cols; ++j) {
            double s = 0.0;
            for (int k = 0; k < a.rows; ++k) s += a.at(k, i) * a.at(k, j);
            ata.at(i, j) = s;
        }
    std::vector<double> atb(a.cols, 0.0);
    for (int i = 0; i < a.cols; ++i)
        for (int k = 0; k < a.rows; ++k) atb[i] += a.at(k, i) * b[k];
    auto d = sym_eigen(ata);
    double big = d.values.empty() ? 0.0 : std::abs(d.values[0]);
    std::vector<double> x(a.cols, 0.0);
    for (int k = 0; k < a.cols; ++k) {
        if (std::abs(d.values[k]) <= rel_tol * std::max(1e-300, big)) continue;
        double coef = 0.0;
        for (int i = 0; i < a.cols; ++i) coef += d.vectors[k][i] * atb[i];
        coef /= d.values[k];
        for (int i = 0; i < a.cols; ++i) x[i] += coef * d.vectors[k][i];
    }
    return x;
}

/// Orthonormal basis of the null space of A (right null vectors), via A^T A.
inline std::vector<std::vector<double>> null_space(const Dense& a, double rel_tol = 1e-9) {
    SymMatrix ata(a.cols);
    for (int i = 0; i < a.cols; ++i)
        for (int j = i; j < a.cols; ++j) {
            double s = 0.0;
            for (int k = 0; k < a.rows; ++k) s += a.at(k, i) * a.at(k, j);
            ata.at(i, j) = s;
        }
    auto d = sym_eigen(ata);
    double big = d.values.empty() ? 0.0 : std::abs(d.values[0]);
    std::vector<std::vector<double>> out;
    for (int k = 0; k < a.cols; ++k)
        if (std::abs(d.values[k]) <= rel_tol * std::max(1.0, big)) out.push_back(d.vectors[k]);
    return out;
}

}  // namespace psdrank
