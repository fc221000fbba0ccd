#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nbldpc/gf.hpp"

namespace nbldpc {

using cplx = std::complex<double>;

struct DetectResult {
    cplx point;    // nearest constellation point
    Symbol label;  // its field label
};

/// Two-dimensional signal set of size q with a fixed label <-> point
/// bijection, normalized to unit average symbol energy.
///
/// Square sizes (4, 16, 64, 256) use a grid with Gray labeling per axis;
/// 32 is the standard cross layout (6x6 grid minus the four corner points)
/// with labels assigned in row-major order over the kept points.
class Constellation {
public:
    static Constellation qam(int q);

    int q() const { return static_cast<int>(points_.size()); }
    double dmin() const { return dmin_; }
    double es() const { return es_; }

    cplx point(Symbol label) const { return points_[label]; }
    const std::vector<cplx>& points() const { return points_; }

    /// Maximum-likelihood decision: the point minimizing Euclidean distance
    /// to y, ties broken toward the smallest label. Throws std::domain_error
    /// on non-finite input.
    DetectResult detect(cplx y) const;

    std::vector<cplx> map_symbols(std::span<const Symbol> v) const;
    std::vector<Symbol> demap_points(std::span<const cplx> x) const;

private:
    explicit Constellation(std::vector<cplx> pts);

    std::vector<cplx> points_;
    double dmin_ = 0.0;
    double es_ = 0.0;
};

}  // namespace nbldpc
