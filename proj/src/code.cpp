#include "nbldpc/code.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "nbldpc/rng.hpp"

namespace nbldpc {

namespace {

int degree_for_q(int q) {
    for (int p = 2; p <= 8; ++p)
        if ((1 << p) == q) return p;
    throw std::invalid_argument("field size must be 2^p with p in [2, 8], got " +
                                std::to_string(q));
}

}  // namespace

ParityCheckMatrix::ParityCheckMatrix(int n, int m, int q,
                                     std::span<const std::tuple<int, int, Symbol>> entries)
    : n_(n), m_(m), field_(degree_for_q(q)), rows_(m), cols_(n) {
    if (n < 1 || m < 1) throw std::invalid_argument("parity-check matrix needs n >= 1, m >= 1");
    for (const auto& [i, j, h] : entries) {
        if (i < 0 || i >= m) throw std::invalid_argument("row index out of range");
        if (j < 0 || j >= n) throw std::invalid_argument("column index out of range");
        if (h == 0 || h >= q) throw std::invalid_argument("coefficient must be in [1, q-1]");
        rows_[i].push_back({j, h});
        cols_[j].push_back({i, h});
        ++edges_;
    }
    auto by_index = [](const CodeEntry& a, const CodeEntry& b) { return a.index < b.index; };
    for (auto& r : rows_) {
        std::sort(r.begin(), r.end(), by_index);
        for (std::size_t t = 1; t < r.size(); ++t)
            if (r[t].index == r[t - 1].index)
                throw std::invalid_argument("duplicate (row, column) pair in parity-check matrix");
    }
    for (auto& c : cols_) std::sort(c.begin(), c.end(), by_index);
}

int ParityCheckMatrix::max_row_degree() const {
    std::size_t d = 0;
    for (const auto& r : rows_) d = std::max(d, r.size());
    return static_cast<int>(d);
}

int ParityCheckMatrix::max_col_degree() const {
    std::size_t d = 0;
    for (const auto& c : cols_) d = std::max(d, c.size());
    return static_cast<int>(d);
}

// ---------------------------------------------------------------------------
// alist I/O
// ---------------------------------------------------------------------------

namespace {

struct LineReader {
    std::istream& in;
    std::string name;
    int lineno = 0;

    [[noreturn]] void fail(const std::string& what) const {
        throw std::runtime_error(name + ":" + std::to_string(lineno) + ": " + what);
    }

    std::vector<long long> next_ints() {
        std::string line;
        if (!std::getline(in, line)) {
            ++lineno;
            fail("unexpected end of file");
        }
        ++lineno;
        std::istringstream ss(line);
        std::vector<long long> vals;
        std::string tok;
        while (ss >> tok) {
            try {
                std::size_t pos = 0;
                long long v = std::stoll(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                vals.push_back(v);
            } catch (const std::exception&) {
                fail("expected integer, got '" + tok + "'");
            }
        }
        return vals;
    }
};

}  // namespace

ParityCheckMatrix parse_alist(std::istream& in, const std::string& name) {
    LineReader r{in, name};

    auto header = r.next_ints();
    if (header.size() != 3) r.fail("header must be 'N M q'");
    const long long n = header[0], m = header[1], q = header[2];
    if (n < 1 || m < 1) r.fail("N and M must be positive");
    if (q < 4 || q > 256 || (q & (q - 1)) != 0) r.fail("q must be a power of two in [4, 256]");

    auto maxdeg = r.next_ints();
    if (maxdeg.size() != 2) r.fail("expected 'max_col_degree max_row_degree'");

    auto col_deg = r.next_ints();
    if (static_cast<long long>(col_deg.size()) != n) r.fail("expected N column degrees");
    auto row_deg = r.next_ints();
    if (static_cast<long long>(row_deg.size()) != m) r.fail("expected M row degrees");

    long long max_cd = 0, max_rd = 0;
    for (auto d : col_deg) {
        if (d < 0) r.fail("negative column degree");
        max_cd = std::max(max_cd, d);
    }
    for (auto d : row_deg) {
        if (d < 0) r.fail("negative row degree");
        max_rd = std::max(max_rd, d);
    }
    if (max_cd != maxdeg[0]) r.fail("declared max column degree does not match degree list");
    if (max_rd != maxdeg[1]) r.fail("declared max row degree does not match degree list");

    std::vector<std::tuple<int, int, Symbol>> entries;
    // column blocks define the matrix
    for (long long j = 0; j < n; ++j) {
        auto vals = r.next_ints();
        if (static_cast<long long>(vals.size()) != 2 * col_deg[j])
            r.fail("column block " + std::to_string(j) + " must hold exactly " +
                   std::to_string(col_deg[j]) + " (row coefficient) pairs");
        std::set<long long> seen;
        for (std::size_t t = 0; t < vals.size(); t += 2) {
            const long long row1 = vals[t], coeff = vals[t + 1];
            if (row1 < 1 || row1 > m) r.fail("row index out of range (1-based)");
            if (coeff < 1 || coeff >= q) r.fail("coefficient must be in [1, q-1]");
            if (!seen.insert(row1).second) r.fail("duplicate row index within a column block");
            entries.emplace_back(static_cast<int>(row1 - 1), static_cast<int>(j),
                                 static_cast<Symbol>(coeff));
        }
    }

    // row blocks must agree with the transpose of the column blocks
    std::vector<std::vector<std::pair<long long, long long>>> row_pairs(m);
    for (const auto& [i, j, h] : entries) row_pairs[i].emplace_back(j + 1, h);
    for (auto& rp : row_pairs) std::sort(rp.begin(), rp.end());

    for (long long i = 0; i < m; ++i) {
        auto vals = r.next_ints();
        if (static_cast<long long>(vals.size()) != 2 * row_deg[i])
            r.fail("row block " + std::to_string(i) + " must hold exactly " +
                   std::to_string(row_deg[i]) + " (column coefficient) pairs");
        std::vector<std::pair<long long, long long>> pairs;
        std::set<long long> seen;
        for (std::size_t t = 0; t < vals.size(); t += 2) {
            const long long col1 = vals[t], coeff = vals[t + 1];
            if (col1 < 1 || col1 > n) r.fail("column index out of range (1-based)");
            if (coeff < 1 || coeff >= q) r.fail("coefficient must be in [1, q-1]");
            if (!seen.insert(col1).second) r.fail("duplicate column index within a row block");
            pairs.emplace_back(col1, coeff);
        }
        std::sort(pairs.begin(), pairs.end());
        if (pairs != row_pairs[i])
            r.fail("row block " + std::to_string(i) + " is inconsistent with the column blocks");
    }

    try {
        return ParityCheckMatrix(static_cast<int>(n), static_cast<int>(m), static_cast<int>(q),
                                 entries);
    } catch (const std::exception& e) {
        throw std::runtime_error(name + ": " + e.what());
    }
}

ParityCheckMatrix load_alist(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    return parse_alist(in, path);
}

std::string alist_string(const ParityCheckMatrix& h) {
    std::string out;
    auto line = [&out](const std::vector<long long>& vals) {
        for (std::size_t t = 0; t < vals.size(); ++t) {
            if (t) out += ' ';
            out += std::to_string(vals[t]);
        }
        out += '\n';
    };

    line({h.n(), h.m(), h.q()});
    line({h.max_col_degree(), h.max_row_degree()});

    std::vector<long long> degs;
    for (const auto& c : h.cols()) degs.push_back(static_cast<long long>(c.size()));
    line(degs);
    degs.clear();
    for (const auto& r : h.rows()) degs.push_back(static_cast<long long>(r.size()));
    line(degs);

    std::vector<long long> vals;
    for (const auto& c : h.cols()) {
        vals.clear();
        for (const auto& e : c) {
            vals.push_back(e.index + 1);
            vals.push_back(e.coeff);
        }
        line(vals);
    }
    for (const auto& r : h.rows()) {
        vals.clear();
        for (const auto& e : r) {
            vals.push_back(e.index + 1);
            vals.push_back(e.coeff);
        }
        line(vals);
    }
    return out;
}

void save_alist(const ParityCheckMatrix& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << alist_string(h);
    if (!out) throw std::runtime_error(path + ": write failed");
}

// ---------------------------------------------------------------------------
// random regular construction
// ---------------------------------------------------------------------------

ParityCheckMatrix random_regular(int n, int dv, int dc, int q, std::uint64_t seed) {
    if (dv < 2) throw std::invalid_argument("random_regular: dv must be >= 2");
    if (dc < 1 || n < dc) throw std::invalid_argument("random_regular: need 1 <= dc <= n");
    if ((static_cast<long long>(n) * dv) % dc != 0)
        throw std::invalid_argument("random_regular: n*dv must be divisible by dc");
    const int m = static_cast<int>(static_cast<long long>(n) * dv / dc);

    SplitMix64 rng = SplitMix64::substream(seed, {0x5E6D});
    const int total = n * dv;
    std::vector<int> stub(total);
    for (int j = 0; j < n; ++j)
        for (int t = 0; t < dv; ++t) stub[j * dv + t] = j;

    // Fisher-Yates, hand rolled so the layout does not depend on the stdlib
    for (int t = total - 1; t > 0; --t) {
        const int s = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(t) + 1));
        std::swap(stub[t], stub[s]);
    }

    // slot t belongs to row t/dc; repair parallel edges by random swaps
    auto row_of = [dc](int slot) { return slot / dc; };
    auto row_has = [&](int row, int col, int skip_slot) {
        for (int t = row * dc; t < (row + 1) * dc; ++t)
            if (t != skip_slot && stub[t] == col) return true;
        return false;
    };

    const int max_passes = 1000;
    for (int pass = 0;; ++pass) {
        std::vector<int> bad;
        for (int t = 0; t < total; ++t)
            if (row_has(row_of(t), stub[t], t) &&
                // flag only the later duplicate slots within the row
                [&] {
                    for (int s = row_of(t) * dc; s < t; ++s)
                        if (stub[s] == stub[t]) return true;
                    return false;
                }())
                bad.push_back(t);
        if (bad.empty()) break;
        if (pass >= max_passes)
            throw std::runtime_error("random_regular: edge assignment failed; "
                                     "degree profile too dense for this size");
        for (int t : bad) {
            for (int tries = 0;; ++tries) {
                if (tries > 100 * total)
                    throw std::runtime_error("random_regular: edge repair stalled");
                const int s = static_cast<int>(rng.bounded(total));
                if (row_of(s) == row_of(t)) continue;
                if (row_has(row_of(t), stub[s], t)) continue;
                if (row_has(row_of(s), stub[t], s)) continue;
                std::swap(stub[t], stub[s]);
                break;
            }
        }
    }

    std::vector<std::tuple<int, int, Symbol>> entries;
    entries.reserve(total);
    for (int i = 0; i < m; ++i) {
        std::vector<int> cols(stub.begin() + static_cast<std::size_t>(i) * dc,
                              stub.begin() + static_cast<std::size_t>(i + 1) * dc);
        std::sort(cols.begin(), cols.end());
        for (int j : cols)
            entries.emplace_back(i, j, static_cast<Symbol>(1 + rng.bounded(q - 1)));
    }
    return ParityCheckMatrix(n, m, q, entries);
}

// ---------------------------------------------------------------------------
// syndrome and encoder
// ---------------------------------------------------------------------------

std::vector<Symbol> syndrome(const ParityCheckMatrix& h, std::span<const Symbol> z) {
    if (static_cast<int>(z.size()) != h.n())
        throw std::invalid_argument("syndrome: vector length does not match code length");
    const Field& f = h.field();
    std::vector<Symbol> s(h.m(), 0);
    for (int i = 0; i < h.m(); ++i) {
        Symbol acc = 0;
        for (const auto& e : h.rows()[i]) acc = f.add(acc, f.mul(e.coeff, z[e.index]));
        s[i] = acc;
    }
    return s;
}

SystematicEncoder::SystematicEncoder(const ParityCheckMatrix& h)
    : n_(h.n()), field_(h.field()) {
    const int m = h.m(), n = h.n();
    const Field& f = field_;
    std::vector<Symbol> d(static_cast<std::size_t>(m) * n, 0);
    for (int i = 0; i < m; ++i)
        for (const auto& e : h.rows()[i]) d[static_cast<std::size_t>(i) * n + e.index] = e.coeff;

    auto at = [&d, n](int i, int j) -> Symbol& { return d[static_cast<std::size_t>(i) * n + j]; };

    // reduced row echelon form, sweeping columns right to left so the free
    // (information) columns land at the front
    int r = 0;
    std::vector<char> is_pivot(n, 0);
    for (int col = n - 1; col >= 0 && r < m; --col) {
        int pr = -1;
        for (int i = r; i < m; ++i)
            if (at(i, col) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        if (pr != r)
            for (int j = 0; j < n; ++j) std::swap(at(pr, j), at(r, j));
        const Symbol scale = f.inv(at(r, col));
        if (scale != 1)
            for (int j = 0; j < n; ++j) at(r, j) = f.mul(scale, at(r, j));
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const Symbol fac = at(i, col);
            if (fac == 0) continue;
            for (int j = 0; j < n; ++j) at(i, j) = f.add(at(i, j), f.mul(fac, at(r, j)));
        }
        pivot_cols_.push_back(col);
        is_pivot[col] = 1;
        ++r;
    }

    for (int j = 0; j < n; ++j)
        if (!is_pivot[j]) free_cols_.push_back(j);

    std::vector<int> info_index(n, -1);
    for (std::size_t t = 0; t < free_cols_.size(); ++t) info_index[free_cols_[t]] = static_cast<int>(t);

    pivot_terms_.resize(pivot_cols_.size());
    for (std::size_t t = 0; t < pivot_cols_.size(); ++t) {
        for (int j = 0; j < n; ++j) {
            const Symbol c = at(static_cast<int>(t), j);
            if (c != 0 && info_index[j] >= 0) pivot_terms_[t].emplace_back(info_index[j], c);
        }
    }
}

std::vector<Symbol> SystematicEncoder::encode(std::span<const Symbol> u) const {
    if (static_cast<int>(u.size()) != k())
        throw std::invalid_argument("encode: information vector must have length " +
                                    std::to_string(k()));
    std::vector<Symbol> v(n_, 0);
    for (std::size_t t = 0; t < free_cols_.size(); ++t) v[free_cols_[t]] = u[t];
    for (std::size_t t = 0; t < pivot_cols_.size(); ++t) {
        Symbol acc = 0;
        for (const auto& [ui, c] : pivot_terms_[t]) acc = field_.add(acc, field_.mul(c, u[ui]));
        v[pivot_cols_[t]] = acc;
    }
    return v;
}

std::vector<Symbol> SystematicEncoder::extract_information(std::span<const Symbol> codeword) const {
    if (static_cast<int>(codeword.size()) != n_)
        throw std::invalid_argument("extract_information: codeword length mismatch");
    std::vector<Symbol> u(free_cols_.size());
    for (std::size_t t = 0; t < free_cols_.size(); ++t) u[t] = codeword[free_cols_[t]];
    return u;
}

}  // namespace nbldpc
