#pragma once

#include <span>
#include <vector>

#include "nbldpc/code.hpp"
#include "nbldpc/ijdd.hpp"
#include "nbldpc/modem.hpp"

namespace nbldpc {

/// AWGN symbol posteriors: P(a | y_j) proportional to exp(-|y_j - M(a)|^2 / n0),
/// normalized per symbol, evaluated with max-subtraction in the log domain.
std::vector<std::vector<double>> channel_likelihoods(const Constellation& c,
                                                     std::span<const cplx> y, double n0);

/// In-place unnormalized Walsh-Hadamard transform; length must be a power of
/// two. Applying it twice multiplies the input by its length.
void wht_inplace(std::span<double> v);

/// Check-node convolution for one row: incoming[t] pairs with coeffs[t];
/// returns the outgoing message on each edge, normalized to sum 1. Messages
/// are permuted by their coefficient, transformed, multiplied (leave-one-out)
/// and transformed back.
std::vector<std::vector<double>> qspa_check_node(const Field& f, std::span<const Symbol> coeffs,
                                                 const std::vector<std::vector<double>>& incoming);

struct QspaParams {
    int max_iterations = 50;
};

/// Flooding-schedule sum-product decoding over GF(2^p) with FFT (Walsh-
/// Hadamard) check nodes, probability domain with per-message normalization,
/// tentative hard decision by max posterior and early exit on zero syndrome.
DecodeResult fft_qspa_decode(const ParityCheckMatrix& h,
                             const std::vector<std::vector<double>>& priors,
                             const QspaParams& params = {});

}  // namespace nbldpc
