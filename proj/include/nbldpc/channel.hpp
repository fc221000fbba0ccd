#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nbldpc/modem.hpp"

namespace nbldpc {

/// Complex AWGN with spectral density n0 (variance n0/2 per dimension).
///
/// Noise for channel use j is drawn from the substream (seed; stream, j), so
/// a frame's noise is reproducible no matter how trials are scheduled across
/// workers. `stream` is the trial index in Monte Carlo use.
struct NoiseSpec {
    double n0 = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

/// y_j = x_j + n_j with i.i.d. circular complex Gaussian noise.
/// n0 = 0 returns x exactly. Throws on negative n0 or non-finite input.
std::vector<cplx> awgn(std::span<const cplx> x, const NoiseSpec& spec);

/// Converts Eb/N0 in dB to N0 via the spectral efficiency rho =
/// code_rate * log2(q) bits/signal: N0 = es / (rho * 10^(ebn0_db/10)).
double ebn0_to_n0(double ebn0_db, double code_rate, int q, double es = 1.0);

}  // namespace nbldpc
