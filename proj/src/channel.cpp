#include "nbldpc/channel.hpp"

#include <cmath>
#include <stdexcept>

#include "nbldpc/rng.hpp"

namespace nbldpc {

namespace {
// domain tag separating channel noise from other consumers of the seed
constexpr std::uint64_t kNoiseDomain = 0xA6'57'00'01;
}  // namespace

std::vector<cplx> awgn(std::span<const cplx> x, const NoiseSpec& spec) {
    if (spec.n0 < 0.0) throw std::invalid_argument("awgn: n0 must be >= 0");
    std::vector<cplx> y(x.begin(), x.end());
    for (const cplx& v : y)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw std::domain_error("awgn: input signal is not finite");
    if (spec.n0 == 0.0) return y;

    const double sigma = std::sqrt(spec.n0 / 2.0);
    for (std::size_t j = 0; j < y.size(); ++j) {
        SplitMix64 rng = SplitMix64::substream(spec.seed, {kNoiseDomain, spec.stream, j});
        const auto [g_re, g_im] = rng.next_gaussian_pair();
        y[j] += cplx(sigma * g_re, sigma * g_im);
    }
    return y;
}

double ebn0_to_n0(double ebn0_db, double code_rate, int q, double es) {
    if (code_rate <= 0.0 || code_rate > 1.0)
        throw std::invalid_argument("ebn0_to_n0: code rate must be in (0, 1]");
    if (q < 2) throw std::invalid_argument("ebn0_to_n0: constellation size must be >= 2");
    const double rho = code_rate * std::log2(static_cast<double>(q));
    return es / (rho * std::pow(10.0, ebn0_db / 10.0));
}

}  // namespace nbldpc
