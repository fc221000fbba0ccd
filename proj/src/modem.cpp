#include "nbldpc/modem.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace nbldpc {

namespace {

unsigned gray_decode(unsigned g) {
    unsigned b = 0;
    for (; g; g >>= 1) b ^= g;
    return b;
}

std::vector<cplx> square_grid(int q) {
    int side = 1;
    while (side * side < q) ++side;
    const int bits = [side] {
        int b = 0;
        while ((1 << b) < side) ++b;
        return b;
    }();
    std::vector<cplx> pts(q);
    for (int a = 0; a < q; ++a) {
        // high label bits pick the in-phase level, low bits the quadrature
        // level; Gray decoding makes adjacent levels differ in one bit
        const unsigned ki = gray_decode(static_cast<unsigned>(a) >> bits);
        const unsigned kq = gray_decode(static_cast<unsigned>(a) & (side - 1u));
        pts[a] = {static_cast<double>(2 * static_cast<int>(ki) - (side - 1)),
                  static_cast<double>(2 * static_cast<int>(kq) - (side - 1))};
    }
    return pts;
}

std::vector<cplx> cross_grid_32() {
    std::vector<cplx> pts;
    pts.reserve(32);
    for (int row = 5; row >= -5; row -= 2)
        for (int col = -5; col <= 5; col += 2) {
            if (std::abs(row) == 5 && std::abs(col) == 5) continue;
            pts.emplace_back(col, row);
        }
    return pts;
}

}  // namespace

Constellation::Constellation(std::vector<cplx> pts) : points_(std::move(pts)) {
    double energy = 0.0;
    for (const cplx& x : points_) energy += std::norm(x);
    const double scale = std::sqrt(energy / static_cast<double>(points_.size()));
    for (cplx& x : points_) x /= scale;

    es_ = 0.0;
    for (const cplx& x : points_) es_ += std::norm(x);
    es_ /= static_cast<double>(points_.size());

    dmin_ = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < points_.size(); ++a)
        for (std::size_t b = a + 1; b < points_.size(); ++b)
            dmin_ = std::min(dmin_, std::abs(points_[a] - points_[b]));
}

Constellation Constellation::qam(int q) {
    switch (q) {
        case 4:
        case 16:
        case 64:
        case 256: return Constellation(square_grid(q));
        case 32: return Constellation(cross_grid_32());
        default:
            throw std::invalid_argument("qam: supported sizes are 4, 16, 32, 64, 256; got " +
                                        std::to_string(q));
    }
}

DetectResult Constellation::detect(cplx y) const {
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag()))
        throw std::domain_error("detect: received point is not finite");
    Symbol best = 0;
    double best_d = std::norm(y - points_[0]);
    for (std::size_t a = 1; a < points_.size(); ++a) {
        const double d = std::norm(y - points_[a]);
        if (d < best_d) {
            best_d = d;
            best = static_cast<Symbol>(a);
        }
    }
    return {points_[best], best};
}

std::vector<cplx> Constellation::map_symbols(std::span<const Symbol> v) const {
    std::vector<cplx> x;
    x.reserve(v.size());
    for (Symbol a : v) x.push_back(points_[a]);
    return x;
}

std::vector<Symbol> Constellation::demap_points(std::span<const cplx> x) const {
    std::vector<Symbol> v;
    v.reserve(x.size());
    for (const cplx& y : x) v.push_back(detect(y).label);
    return v;
}

}  // namespace nbldpc
