#include "nbldpc/ijdd.hpp"

#include <stdexcept>

namespace nbldpc {

std::vector<std::vector<Symbol>> check_node_update(const ParityCheckMatrix& h,
                                                   std::span<const Symbol> z) {
    const std::vector<Symbol> s = syndrome(h, z);
    const Field& f = h.field();
    std::vector<std::vector<Symbol>> out(h.n());
    for (int j = 0; j < h.n(); ++j) {
        const auto& col = h.cols()[j];
        out[j].reserve(col.size());
        for (const auto& e : col) {
            // row sum minus own term, re-scaled by the edge coefficient
            const Symbol rest = f.add(s[e.index], f.mul(e.coeff, z[j]));
            out[j].push_back(f.mul(f.inv(e.coeff), rest));
        }
    }
    return out;
}

VoteTally tally_votes(std::span<const Symbol> estimates, int q) {
    int counts[256] = {0};
    for (Symbol a : estimates) ++counts[a];
    VoteTally t;
    int second = 0;
    for (int a = 0; a < q; ++a) {
        if (counts[a] > t.top_count) {
            second = t.top_count;
            t.top_count = counts[a];
            t.winner = static_cast<Symbol>(a);
        } else if (counts[a] > second) {
            second = counts[a];
        }
    }
    t.margin = t.top_count - second;
    return t;
}

cplx correct_signal(cplx y, cplx x_hat, const VoteTally& vote, const Constellation& c,
                    const IjddParams& params, int col_degree) {
    const cplx voted = c.point(vote.winner);
    const double r = params.radius_factor * c.dmin();
    if (std::norm(voted - y) > r * r) return y;  // voted point outside the search sphere

    const cplx l = (voted == x_hat) ? x_hat - y : voted - x_hat;
    const int steps = vote.margin >= params.vote_threshold ? vote.top_count : vote.margin;
    const double xi = static_cast<double>(steps) / static_cast<double>(col_degree);
    return y + xi * l;
}

DecodeResult ijdd_decode(const ParityCheckMatrix& h, const Constellation& c,
                         std::span<const cplx> y, const IjddParams& params) {
    const int n = h.n(), m = h.m();
    if (static_cast<int>(y.size()) != n)
        throw std::invalid_argument("ijdd_decode: received vector length does not match code");
    if (c.q() != h.q())
        throw std::invalid_argument("ijdd_decode: constellation size differs from field size");
    for (const auto& col : h.cols())
        if (col.empty()) throw std::invalid_argument("ijdd_decode: matrix has an empty column");
    if (params.max_iterations < 1 || params.radius_factor <= 0.0 || params.vote_threshold < 1)
        throw std::invalid_argument("ijdd_decode: invalid parameters");

    const Field& f = h.field();
    const double r2 = params.radius_factor * c.dmin() * params.radius_factor * c.dmin();

    // flattened column adjacency with precomputed inverse coefficients
    std::vector<int> col_off(n + 1, 0);
    for (int j = 0; j < n; ++j) col_off[j + 1] = col_off[j] + static_cast<int>(h.cols()[j].size());
    const int edges = col_off[n];
    std::vector<int> edge_row(edges);
    std::vector<Symbol> edge_coeff(edges), edge_coeff_inv(edges);
    for (int j = 0; j < n; ++j) {
        int t = col_off[j];
        for (const auto& e : h.cols()[j]) {
            edge_row[t] = e.index;
            edge_coeff[t] = e.coeff;
            edge_coeff_inv[t] = f.inv(e.coeff);
            ++t;
        }
    }

    DecodeResult res;
    std::vector<cplx> cur(y.begin(), y.end());
    std::vector<cplx> x_hat(n);
    std::vector<Symbol> z(n);
    std::vector<Symbol> s(m);
    std::vector<Symbol> votes;

    if (params.record_trajectory) res.trajectory.push_back(cur);

    for (int k = 0; k < params.max_iterations; ++k) {
        // 1) signal detection
        for (int j = 0; j < n; ++j) {
            const DetectResult d = c.detect(cur[j]);
            x_hat[j] = d.point;
            z[j] = d.label;
        }

        // 2) syndrome; terminate on a codeword
        bool zero = true;
        std::fill(s.begin(), s.end(), 0);
        for (int i = 0; i < m; ++i) {
            Symbol acc = 0;
            for (const auto& e : h.rows()[i]) acc = f.add(acc, f.mul(e.coeff, z[e.index]));
            s[i] = acc;
            zero = zero && acc == 0;
        }
        if (zero) {
            res.status = DecodeStatus::Success;
            res.codeword = z;
            res.iterations = k;
            return res;
        }

        // 3) per-column vote over the check estimates, then signal correction
        for (int j = 0; j < n; ++j) {
            const int deg = col_off[j + 1] - col_off[j];
            votes.resize(deg);
            for (int t = 0; t < deg; ++t) {
                const int e = col_off[j] + t;
                const Symbol rest = f.add(s[edge_row[e]], f.mul(edge_coeff[e], z[j]));
                votes[t] = f.mul(edge_coeff_inv[e], rest);
            }
            const VoteTally vote = tally_votes(votes, h.q());
            const cplx voted = c.point(vote.winner);
            if (std::norm(voted - cur[j]) > r2) continue;
            const cplx l = (vote.winner == z[j]) ? x_hat[j] - cur[j] : voted - x_hat[j];
            const int steps = vote.margin >= params.vote_threshold ? vote.top_count : vote.margin;
            cur[j] += (static_cast<double>(steps) / deg) * l;
        }

        if (params.record_trajectory) res.trajectory.push_back(cur);
    }

    res.status = DecodeStatus::Failure;
    res.codeword = z;  // hard decisions of the last checked iteration
    res.iterations = params.max_iterations;
    return res;
}

}  // namespace nbldpc
