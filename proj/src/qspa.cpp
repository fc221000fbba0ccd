#include "nbldpc/qspa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nbldpc {

namespace {

// normalize to sum 1; degenerate (all-zero / underflowed) messages fall back
// to uniform so later products stay well defined
void normalize(std::span<double> v) {
    double sum = 0.0;
    for (double& x : v) {
        if (x < 0.0) x = 0.0;  // WHT round-off can leave tiny negatives
        sum += x;
    }
    if (sum <= 0.0) {
        const double u = 1.0 / static_cast<double>(v.size());
        for (double& x : v) x = u;
        return;
    }
    for (double& x : v) x /= sum;
}

}  // namespace

std::vector<std::vector<double>> channel_likelihoods(const Constellation& c,
                                                     std::span<const cplx> y, double n0) {
    if (n0 <= 0.0) throw std::invalid_argument("channel_likelihoods: n0 must be > 0");
    const int q = c.q();
    std::vector<std::vector<double>> out(y.size(), std::vector<double>(q));
    std::vector<double> ll(q);
    for (std::size_t j = 0; j < y.size(); ++j) {
        double max_ll = -HUGE_VAL;
        for (int a = 0; a < q; ++a) {
            ll[a] = -std::norm(y[j] - c.point(static_cast<Symbol>(a))) / n0;
            max_ll = std::max(max_ll, ll[a]);
        }
        for (int a = 0; a < q; ++a) out[j][a] = std::exp(ll[a] - max_ll);
        normalize(out[j]);
    }
    return out;
}

void wht_inplace(std::span<double> v) {
    const std::size_t n = v.size();
    if (n == 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("wht_inplace: length must be a power of two");
    for (std::size_t half = 1; half < n; half <<= 1)
        for (std::size_t base = 0; base < n; base += half << 1)
            for (std::size_t t = base; t < base + half; ++t) {
                const double a = v[t], b = v[t + half];
                v[t] = a + b;
                v[t + half] = a - b;
            }
}

namespace {

// scatter m (indexed by symbol value) into w indexed by coeff * value
void permute_by_coeff(const Field& f, Symbol coeff, std::span<const double> m,
                      std::span<double> w) {
    const int q = static_cast<int>(m.size());
    for (int a = 0; a < q; ++a) w[f.mul(coeff, static_cast<Symbol>(a))] = m[a];
}

void unpermute_by_coeff(const Field& f, Symbol coeff, std::span<const double> w,
                        std::span<double> m) {
    const int q = static_cast<int>(w.size());
    for (int a = 0; a < q; ++a) m[a] = w[f.mul(coeff, static_cast<Symbol>(a))];
}

}  // namespace

std::vector<std::vector<double>> qspa_check_node(const Field& f, std::span<const Symbol> coeffs,
                                                 const std::vector<std::vector<double>>& incoming) {
    const int deg = static_cast<int>(incoming.size());
    const int q = f.q();
    if (static_cast<int>(coeffs.size()) != deg)
        throw std::invalid_argument("qspa_check_node: one coefficient per incoming message");

    // transformed, coefficient-permuted copies of every incoming message
    std::vector<std::vector<double>> spec(deg, std::vector<double>(q));
    for (int t = 0; t < deg; ++t) {
        permute_by_coeff(f, coeffs[t], incoming[t], spec[t]);
        wht_inplace(spec[t]);
    }

    // leave-one-out products via prefix/suffix passes
    std::vector<std::vector<double>> prefix(deg + 1, std::vector<double>(q, 1.0));
    std::vector<double> suffix(q, 1.0);
    for (int t = 0; t < deg; ++t)
        for (int a = 0; a < q; ++a) prefix[t + 1][a] = prefix[t][a] * spec[t][a];

    std::vector<std::vector<double>> out(deg, std::vector<double>(q));
    std::vector<double> scratch(q);
    for (int t = deg - 1; t >= 0; --t) {
        for (int a = 0; a < q; ++a) scratch[a] = prefix[t][a] * suffix[a];
        wht_inplace(scratch);
        const double inv_q = 1.0 / q;
        for (int a = 0; a < q; ++a) scratch[a] *= inv_q;
        unpermute_by_coeff(f, coeffs[t], scratch, out[t]);
        normalize(out[t]);
        for (int a = 0; a < q; ++a) suffix[a] *= spec[t][a];
    }
    return out;
}

DecodeResult fft_qspa_decode(const ParityCheckMatrix& h,
                             const std::vector<std::vector<double>>& priors,
                             const QspaParams& params) {
    const int n = h.n(), m = h.m(), q = h.q();
    const Field& f = h.field();
    if (static_cast<int>(priors.size()) != n)
        throw std::invalid_argument("fft_qspa_decode: one prior per code symbol");
    for (const auto& p : priors)
        if (static_cast<int>(p.size()) != q)
            throw std::invalid_argument("fft_qspa_decode: prior length must equal q");
    if (params.max_iterations < 1)
        throw std::invalid_argument("fft_qspa_decode: max_iterations must be >= 1");

    // edge ids are assigned row-major; columns keep the ids of their edges
    std::vector<int> row_off(m + 1, 0);
    for (int i = 0; i < m; ++i) row_off[i + 1] = row_off[i] + static_cast<int>(h.rows()[i].size());
    const int edges = row_off[m];
    std::vector<Symbol> edge_coeff(edges);
    std::vector<int> edge_col(edges);
    std::vector<std::vector<int>> col_edges(n);
    for (int i = 0; i < m; ++i) {
        int e = row_off[i];
        for (const auto& entry : h.rows()[i]) {
            edge_coeff[e] = entry.coeff;
            edge_col[e] = entry.index;
            col_edges[entry.index].push_back(e);
            ++e;
        }
    }

    auto argmax_symbol = [q](std::span<const double> v) {
        Symbol best = 0;
        double best_v = v[0];
        for (int a = 1; a < q; ++a)
            if (v[a] > best_v) {
                best_v = v[a];
                best = static_cast<Symbol>(a);
            }
        return best;
    };

    auto check_syndrome = [&](const std::vector<Symbol>& z) {
        for (int i = 0; i < m; ++i) {
            Symbol acc = 0;
            for (const auto& e : h.rows()[i]) acc = f.add(acc, f.mul(e.coeff, z[e.index]));
            if (acc != 0) return false;
        }
        return true;
    };

    DecodeResult res;
    std::vector<Symbol> z(n);
    for (int j = 0; j < n; ++j) z[j] = argmax_symbol(priors[j]);
    if (check_syndrome(z)) {
        res.status = DecodeStatus::Success;
        res.codeword = z;
        res.iterations = 0;
        return res;
    }

    std::vector<double> v2c(static_cast<std::size_t>(edges) * q);
    std::vector<double> c2v(static_cast<std::size_t>(edges) * q);
    for (int e = 0; e < edges; ++e)
        std::copy(priors[edge_col[e]].begin(), priors[edge_col[e]].end(),
                  v2c.begin() + static_cast<std::size_t>(e) * q);

    std::vector<double> spec;
    std::vector<double> prefix, suffix, scratch(q);
    std::vector<double> posterior(q);

    for (int it = 1; it <= params.max_iterations; ++it) {
        // check-node update, FFT domain with leave-one-out products
        for (int i = 0; i < m; ++i) {
            const int deg = row_off[i + 1] - row_off[i];
            spec.assign(static_cast<std::size_t>(deg) * q, 0.0);
            for (int t = 0; t < deg; ++t) {
                const int e = row_off[i] + t;
                permute_by_coeff(f, edge_coeff[e],
                                 std::span<const double>(v2c).subspan(
                                     static_cast<std::size_t>(e) * q, q),
                                 std::span<double>(spec).subspan(static_cast<std::size_t>(t) * q, q));
                wht_inplace(std::span<double>(spec).subspan(static_cast<std::size_t>(t) * q, q));
            }
            prefix.assign(static_cast<std::size_t>(deg + 1) * q, 1.0);
            for (int t = 0; t < deg; ++t)
                for (int a = 0; a < q; ++a)
                    prefix[static_cast<std::size_t>(t + 1) * q + a] =
                        prefix[static_cast<std::size_t>(t) * q + a] *
                        spec[static_cast<std::size_t>(t) * q + a];
            suffix.assign(q, 1.0);
            for (int t = deg - 1; t >= 0; --t) {
                const int e = row_off[i] + t;
                for (int a = 0; a < q; ++a)
                    scratch[a] = prefix[static_cast<std::size_t>(t) * q + a] * suffix[a];
                wht_inplace(scratch);
                const double inv_q = 1.0 / q;
                for (int a = 0; a < q; ++a) scratch[a] *= inv_q;
                auto out = std::span<double>(c2v).subspan(static_cast<std::size_t>(e) * q, q);
                unpermute_by_coeff(f, edge_coeff[e], scratch, out);
                normalize(out);
                for (int a = 0; a < q; ++a)
                    suffix[a] *= spec[static_cast<std::size_t>(t) * q + a];
            }
        }

        // variable-node update: leave-one-out products of prior and c2v
        for (int j = 0; j < n; ++j) {
            const auto& es = col_edges[j];
            const int deg = static_cast<int>(es.size());
            prefix.assign(static_cast<std::size_t>(deg + 1) * q, 0.0);
            for (int a = 0; a < q; ++a) prefix[a] = priors[j][a];
            for (int t = 0; t < deg; ++t)
                for (int a = 0; a < q; ++a)
                    prefix[static_cast<std::size_t>(t + 1) * q + a] =
                        prefix[static_cast<std::size_t>(t) * q + a] *
                        c2v[static_cast<std::size_t>(es[t]) * q + a];
            std::copy(prefix.begin() + static_cast<std::size_t>(deg) * q,
                      prefix.begin() + static_cast<std::size_t>(deg + 1) * q, posterior.begin());
            normalize(posterior);
            z[j] = argmax_symbol(posterior);

            suffix.assign(q, 1.0);
            for (int t = deg - 1; t >= 0; --t) {
                auto out = std::span<double>(v2c).subspan(static_cast<std::size_t>(es[t]) * q, q);
                for (int a = 0; a < q; ++a)
                    out[a] = prefix[static_cast<std::size_t>(t) * q + a] * suffix[a];
                normalize(out);
                for (int a = 0; a < q; ++a)
                    suffix[a] *= c2v[static_cast<std::size_t>(es[t]) * q + a];
            }
        }

        if (check_syndrome(z)) {
            res.status = DecodeStatus::Success;
            res.codeword = z;
            res.iterations = it;
            return res;
        }
    }

    res.status = DecodeStatus::Failure;
    res.codeword = z;
    res.iterations = params.max_iterations;
    return res;
}

}  // namespace nbldpc
