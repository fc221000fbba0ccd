#include "nbldpc/gf.hpp"

#include <stdexcept>

#include "nbldpc/rng.hpp"

namespace nbldpc {

unsigned Field::primitive_poly_for(int p) {
    switch (p) {
        case 2: return 0x7;    // x^2 + x + 1
        case 3: return 0xB;    // x^3 + x + 1
        case 4: return 0x13;   // x^4 + x + 1
        case 5: return 0x25;   // x^5 + x^2 + 1
        case 6: return 0x43;   // x^6 + x + 1
        case 7: return 0x89;   // x^7 + x^3 + 1
        case 8: return 0x11D;  // x^8 + x^4 + x^3 + x^2 + 1
        default:
            throw std::invalid_argument("Field: extension degree must be in [2, 8], got " +
                                        std::to_string(p));
    }
}

Field::Field(int p) : p_(p), q_(0), poly_(primitive_poly_for(p)) {
    q_ = 1 << p_;
    // alpha = x is a root of the primitive polynomial, so successive shifts
    // with reduction enumerate all q-1 nonzero elements.
    unsigned cur = 1;
    for (int i = 0; i < q_ - 1; ++i) {
        antilog_[i] = static_cast<Symbol>(cur);
        antilog_[i + q_ - 1] = static_cast<Symbol>(cur);
        log_[cur] = static_cast<std::uint16_t>(i);
        cur <<= 1;
        if (cur & static_cast<unsigned>(q_)) cur ^= poly_;
    }
    if (cur != 1)
        throw std::logic_error("Field: primitive polynomial did not generate the unit group");
}

Symbol Field::inv(Symbol a) const {
    if (a == 0) throw std::domain_error("Field::inv: zero has no multiplicative inverse");
    return antilog_[static_cast<unsigned>(q_ - 1) - log_[a]];
}

int Field::log(Symbol a) const {
    if (a == 0) throw std::domain_error("Field::log: undefined at zero");
    return log_[a];
}

namespace {

bool fail(std::string* message, const std::string& what) {
    if (message) *message += what + "\n";
    return false;
}

bool check_triple(const Field& f, Symbol a, Symbol b, Symbol c, std::string* message) {
    if (f.add(a, b) != f.add(b, a)) return fail(message, "add not commutative");
    if (f.mul(a, b) != f.mul(b, a)) return fail(message, "mul not commutative");
    if (f.add(f.add(a, b), c) != f.add(a, f.add(b, c))) return fail(message, "add not associative");
    if (f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))) return fail(message, "mul not associative");
    if (f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c)))
        return fail(message, "mul does not distribute over add");
    return true;
}

bool check_element(const Field& f, Symbol a, std::string* message) {
    if (f.add(a, 0) != a) return fail(message, "0 is not the additive identity");
    if (f.mul(a, 1) != a) return fail(message, "1 is not the multiplicative identity");
    if (f.mul(a, 0) != 0) return fail(message, "0 is not absorbing");
    if (f.add(a, f.neg(a)) != 0) return fail(message, "neg is not the additive inverse");
    if (a != 0) {
        if (f.mul(a, f.inv(a)) != 1) return fail(message, "inv is not the multiplicative inverse");
        if (f.antilog(static_cast<unsigned>(f.log(a))) != a)
            return fail(message, "log/antilog round trip broken");
    }
    return true;
}

}  // namespace

bool field_self_test(const Field& f, std::string* message) {
    const int q = f.q();
    bool ok = true;
    for (int a = 0; a < q; ++a) ok = check_element(f, static_cast<Symbol>(a), message) && ok;
    if (q <= 16) {
        for (int a = 0; a < q; ++a)
            for (int b = 0; b < q; ++b)
                for (int c = 0; c < q; ++c)
                    ok = check_triple(f, static_cast<Symbol>(a), static_cast<Symbol>(b),
                                      static_cast<Symbol>(c), message) &&
                         ok;
    } else {
        SplitMix64 rng = SplitMix64::substream(0xF1E1D5E1Fu, {static_cast<std::uint64_t>(q)});
        for (int t = 0; t < 100000; ++t) {
            const auto a = static_cast<Symbol>(rng.bounded(q));
            const auto b = static_cast<Symbol>(rng.bounded(q));
            const auto c = static_cast<Symbol>(rng.bounded(q));
            if (!check_triple(f, a, b, c, message)) {
                ok = false;
                break;
            }
        }
    }
    return ok;
}

}  // namespace nbldpc
