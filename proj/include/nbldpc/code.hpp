#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "nbldpc/gf.hpp"

namespace nbldpc {

/// One nonzero of H seen from a row (index = column) or a column (index = row).
struct CodeEntry {
    int index;
    Symbol coeff;
};

/// Sparse M x N parity-check matrix over GF(q).
///
/// Both the per-row and per-column adjacency lists are stored, since the
/// decoders walk checks and variables in turn. Entries are kept sorted by
/// index and every stored coefficient is nonzero. Immutable once built.
class ParityCheckMatrix {
public:
    /// Builds from (row, col, coeff) triples. Throws std::invalid_argument on
    /// out-of-range indices, zero coefficients, or duplicate (row, col) pairs.
    ParityCheckMatrix(int n, int m, int q, std::span<const std::tuple<int, int, Symbol>> entries);

    int n() const { return n_; }
    int m() const { return m_; }
    int q() const { return field_.q(); }
    const Field& field() const { return field_; }

    const std::vector<std::vector<CodeEntry>>& rows() const { return rows_; }
    const std::vector<std::vector<CodeEntry>>& cols() const { return cols_; }

    std::size_t edge_count() const { return edges_; }
    int max_row_degree() const;
    int max_col_degree() const;

private:
    int n_, m_;
    Field field_;
    std::size_t edges_ = 0;
    std::vector<std::vector<CodeEntry>> rows_;
    std::vector<std::vector<CodeEntry>> cols_;
};

/// Reads the extended nonbinary alist format (see save_alist for the exact
/// layout). Parse errors carry the offending line number.
ParityCheckMatrix load_alist(const std::string& path);
ParityCheckMatrix parse_alist(std::istream& in, const std::string& name);

/// Canonical serialization: `N M q`, `max_col_deg max_row_deg`, the N column
/// degrees, the M row degrees, then one line per column of 1-based
/// `row_index coefficient` pairs and one line per row of 1-based
/// `col_index coefficient` pairs. Single spaces, LF endings, entries sorted
/// ascending, no padding. Loading then saving a canonical file is the
/// identity on bytes.
void save_alist(const ParityCheckMatrix& h, const std::string& path);
std::string alist_string(const ParityCheckMatrix& h);

/// Random (dv, dc)-regular matrix with m = n*dv/dc rows, built from a stub
/// pairing whose parallel edges are repaired by bounded random swaps.
/// Coefficients are uniform over GF(q)\{0}. Deterministic for a fixed seed.
ParityCheckMatrix random_regular(int n, int dv, int dc, int q, std::uint64_t seed);

/// s_i = sum_{j in N_c(i)} h_ij * z_j over GF(q). All-zero iff z is a codeword.
std::vector<Symbol> syndrome(const ParityCheckMatrix& h, std::span<const Symbol> z);

/// Row reduction of H over GF(q) with the pivot/free column split recorded.
///
/// Pivots are chosen from the last columns backwards so information symbols
/// occupy the earliest free positions. Handles rank-deficient H (redundant
/// check rows are the normal case for the codes this targets); the code
/// dimension is k = n - rank.
class SystematicEncoder {
public:
    explicit SystematicEncoder(const ParityCheckMatrix& h);

    int n() const { return n_; }
    int k() const { return static_cast<int>(free_cols_.size()); }
    int rank() const { return static_cast<int>(pivot_cols_.size()); }
    double rate() const { return static_cast<double>(k()) / n_; }

    /// Information positions (free columns), ascending.
    const std::vector<int>& information_positions() const { return free_cols_; }
    const std::vector<int>& pivot_positions() const { return pivot_cols_; }

    /// Maps a length-k information vector to a codeword with zero syndrome.
    std::vector<Symbol> encode(std::span<const Symbol> u) const;

    /// Reads the information symbols back out of a codeword.
    std::vector<Symbol> extract_information(std::span<const Symbol> codeword) const;

private:
    int n_;
    Field field_;
    std::vector<int> pivot_cols_;
    std::vector<int> free_cols_;
    // per pivot row: the (information index, coefficient) terms whose sum
    // gives the pivot symbol (characteristic 2, so no sign)
    std::vector<std::vector<std::pair<int, Symbol>>> pivot_terms_;
};

}  // namespace nbldpc
