#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace psdrank {

/// Arithmetic and dense rank computation over GF(p), p = 2^31 - 1.
/// Products of residues fit in 64-bit intermediates.
inline constexpr std::uint64_t kPrime = 2147483647ull;

struct GfMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint32_t> data;  // row-major residues in [0, p)

    GfMatrix() = default;
    GfMatrix(int r, int c) : rows(r), cols(c), data(static_cast<size_t>(r) * c, 0) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("GfMatrix: dimensions must be positive");
    }

    std::uint32_t& at(int i, int j) { return data[static_cast<size_t>(i) * cols + j]; }
    std::uint32_t at(int i, int j) const { return data[static_cast<size_t>(i) * cols + j]; }
};

namespace gf {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b) {
    std::uint64_t s = static_cast<std::uint64_t>(a) + b;
    return static_cast<std::uint32_t>(s >= kPrime ? s - kPrime : s);
}

inline std::uint32_t sub(std::uint32_t a, std::uint32_t b) {
    return a >= b ? a - b : static_cast<std::uint32_t>(a + kPrime - b);
}

inline std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
    return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % kPrime);
}

inline std::uint32_t pow(std::uint32_t a, std::uint64_t e) {
    std::uint32_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

inline std::uint32_t inv(std::uint32_t a) {
    if (a == 0) throw std::domain_error("gf::inv of zero");
    return pow(a, kPrime - 2);
}

/// Residue of a (possibly negative) integer.
inline std::uint32_t from_int(long long x) {
    long long r = x % static_cast<long long>(kPrime);
    if (r < 0) r += static_cast<long long>(kPrime);
    return static_cast<std::uint32_t>(r);
}

inline std::uint32_t uniform(std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint32_t> d(0, static_cast<std::uint32_t>(kPrime - 1));
    return d(rng);
}

}  // namespace gf

/// Exact rank over GF(p) by Gaussian elimination.
inline int gf_rank(GfMatrix m) {
    int rank = 0;
    for (int col = 0; col < m.cols && rank < m.rows; ++col) {
        int pivot = -1;
        for (int r = rank; r < m.rows; ++r)
            if (m.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) continue;
        if (pivot != rank)
            for (int c = col; c < m.cols; ++c) std::swap(m.at(pivot, c), m.at(rank, c));
        std::uint32_t piv_inv = gf::inv(m.at(rank, col));
        for (int r = rank + 1; r < m.rows; ++r) {
            std::uint32_t f = m.at(r, col);
            if (f == 0) continue;
            f = gf::mul(f, piv_inv);
            for (int c = col; c < m.cols; ++c) m.at(r, c) = gf::sub(m.at(r, c), gf::mul(f, m.at(rank, c)));
        }
        ++rank;
    }
    return rank;
}

}  // namespace psdrank
