// Test-only reference implementations, deliberately independent of the
// library's lookup tables and transforms.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace oracles {

// Schoolbook carry-less multiply followed by reduction modulo the primitive
// polynomial (bitmask includes the leading term).
inline unsigned poly_mul_mod(unsigned a, unsigned b, unsigned poly, int p) {
    unsigned r = 0;
    while (b) {
        if (b & 1u) r ^= a;
        b >>= 1;
        a <<= 1;
    }
    for (int bit = 2 * p - 2; bit >= p; --bit)
        if (r & (1u << bit)) r ^= poly << (bit - p);
    return r;
}

// Multiplicative inverse by exhaustive search for the unit.
inline unsigned poly_inv(unsigned a, unsigned poly, int p, int q) {
    for (unsigned b = 1; b < static_cast<unsigned>(q); ++b)
        if (poly_mul_mod(a, b, poly, p) == 1) return b;
    return 0;
}

// Direct check-node convolution: for each edge t, the distribution of the
// symbol that satisfies sum_t coeff_t * v_t = 0 given the other edges'
// distributions. Pairwise XOR-convolutions of the coefficient-permuted
// messages; O(deg * q^2), no transforms.
inline std::vector<std::vector<double>> direct_check_node(
    int q, unsigned poly, int p, std::span<const unsigned> coeffs,
    const std::vector<std::vector<double>>& incoming) {
    const int deg = static_cast<int>(incoming.size());
    // permuted pmfs over w = coeff * v
    std::vector<std::vector<double>> w(deg, std::vector<double>(q, 0.0));
    for (int t = 0; t < deg; ++t)
        for (int a = 0; a < q; ++a)
            w[t][poly_mul_mod(coeffs[t], static_cast<unsigned>(a), poly, p)] += incoming[t][a];

    std::vector<std::vector<double>> out(deg, std::vector<double>(q, 0.0));
    for (int t = 0; t < deg; ++t) {
        std::vector<double> acc(q, 0.0);
        bool first = true;
        for (int s = 0; s < deg; ++s) {
            if (s == t) continue;
            if (first) {
                acc = w[s];
                first = false;
                continue;
            }
            std::vector<double> next(q, 0.0);
            for (int a = 0; a < q; ++a)
                for (int b = 0; b < q; ++b) next[a ^ b] += acc[a] * w[s][b];
            acc = std::move(next);
        }
        if (first) acc.assign(q, 0.0), acc[0] = 1.0;  // empty sum is the zero symbol
        // w_t must equal the sum of the others (characteristic 2)
        for (int a = 0; a < q; ++a)
            out[t][a] = acc[poly_mul_mod(coeffs[t], static_cast<unsigned>(a), poly, p)];
        double sum = 0.0;
        for (double x : out[t]) sum += x;
        if (sum > 0.0)
            for (double& x : out[t]) x /= sum;
    }
    return out;
}

// All length-n vectors over GF(q) whose syndrome under the dense matrix
// `rows` (built with the polynomial oracle) is zero.
inline std::vector<std::vector<unsigned>> enumerate_codewords(
    int n, int q, unsigned poly, int p, const std::vector<std::vector<unsigned>>& rows) {
    std::vector<std::vector<unsigned>> words;
    std::vector<unsigned> v(n, 0);
    while (true) {
        bool ok = true;
        for (const auto& row : rows) {
            unsigned s = 0;
            for (int j = 0; j < n; ++j) s ^= poly_mul_mod(row[j], v[j], poly, p);
            if (s != 0) {
                ok = false;
                break;
            }
        }
        if (ok) words.push_back(v);
        int j = 0;
        for (; j < n; ++j) {
            if (++v[j] < static_cast<unsigned>(q)) break;
            v[j] = 0;
        }
        if (j == n) break;
    }
    return words;
}

// Maximum-likelihood codeword: minimum total squared Euclidean distance.
inline std::vector<unsigned> ml_decode(const std::vector<std::vector<unsigned>>& codewords,
                                       std::span<const std::complex<double>> y,
                                       std::span<const std::complex<double>> points) {
    double best = HUGE_VAL;
    std::vector<unsigned> best_w;
    for (const auto& w : codewords) {
        double d = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) d += std::norm(y[j] - points[w[j]]);
        if (d < best) {
            best = d;
            best_w = w;
        }
    }
    return best_w;
}

inline double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

// Exact symbol error rate of Gray-labeled square M-QAM with ML detection on
// AWGN, as a function of Es/N0 (linear).
inline double square_qam_ser(int m_points, double es_over_n0) {
    const double root_m = std::sqrt(static_cast<double>(m_points));
    const double p_axis = 2.0 * (1.0 - 1.0 / root_m) *
                          q_function(std::sqrt(3.0 * es_over_n0 / (m_points - 1)));
    return 1.0 - (1.0 - p_axis) * (1.0 - p_axis);
}

}  // namespace oracles
