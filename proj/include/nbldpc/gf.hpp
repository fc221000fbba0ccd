#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace nbldpc {

/// Symbol value in GF(q), q <= 256. Stored as the coefficient bitmask of a
/// polynomial over GF(2) in the field's primitive-polynomial basis.
using Symbol = std::uint8_t;

/// Arithmetic over GF(2^p), 2 <= p <= 8.
///
/// Addition is bitwise XOR (characteristic 2, so every element is its own
/// additive inverse). Multiplication and inversion go through log/antilog
/// tables built once from a fixed primitive polynomial per extension degree;
/// the antilog table is stored doubled so products need no modulo reduction.
/// Immutable after construction and safe to share across threads.
class Field {
public:
    explicit Field(int p);

    int p() const { return p_; }
    int q() const { return q_; }
    unsigned primitive_poly() const { return poly_; }

    Symbol add(Symbol a, Symbol b) const { return a ^ b; }
    Symbol sub(Symbol a, Symbol b) const { return a ^ b; }
    Symbol neg(Symbol a) const { return a; }

    Symbol mul(Symbol a, Symbol b) const {
        if (a == 0 || b == 0) return 0;
        return antilog_[static_cast<unsigned>(log_[a]) + log_[b]];
    }

    /// Multiplicative inverse; throws std::domain_error at 0.
    Symbol inv(Symbol a) const;

    /// Discrete log base alpha; throws std::domain_error at 0.
    int log(Symbol a) const;

    /// alpha^e, defined for any e >= 0 (period q-1).
    Symbol antilog(unsigned e) const { return antilog_[e % (q_ - 1u)]; }

    /// The conventional primitive polynomial used for extension degree p.
    static unsigned primitive_poly_for(int p);

private:
    int p_ = 0;
    int q_ = 0;
    unsigned poly_ = 0;
    std::array<std::uint16_t, 256> log_{};
    std::array<Symbol, 510> antilog_{};
};

/// Exercises the field axioms (exhaustive for q <= 16, randomized with a
/// fixed seed above) plus the log/antilog round trip. Returns true on
/// success; on failure appends a description to `message` if given.
bool field_self_test(const Field& f, std::string* message = nullptr);

}  // namespace nbldpc
