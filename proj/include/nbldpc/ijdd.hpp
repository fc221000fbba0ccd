#pragma once

#include <span>
#include <vector>

#include "nbldpc/code.hpp"
#include "nbldpc/modem.hpp"

namespace nbldpc {

/// Knobs for the iterative joint detection-decoding loop.
struct IjddParams {
    int max_iterations = 50;      // k_max
    double radius_factor = 1.415; // search sphere radius r = radius_factor * dmin
    int vote_threshold = 3;       // T, vote-gap threshold switching the step size
    bool record_trajectory = false;
};

enum class DecodeStatus { Success, Failure };

struct DecodeResult {
    DecodeStatus status = DecodeStatus::Failure;
    std::vector<Symbol> codeword;  // hard decisions of the last checked iteration
    int iterations = 0;            // correction rounds performed before termination
    // snapshots of the detector input, y^(0) .. y^(final), when recorded
    std::vector<std::vector<cplx>> trajectory;

    bool ok() const { return status == DecodeStatus::Success; }
};

/// Check-to-variable estimates: for every edge (i, j),
/// sigma_ij = h_ij^{-1} * sum_{j' != j} h_ij' * z_j', computed as the whole
/// row sum minus the own term (characteristic 2 makes the sign vanish).
/// Result is aligned with H.cols(): out[j][t] pairs with H.cols()[j][t].
std::vector<std::vector<Symbol>> check_node_update(const ParityCheckMatrix& h,
                                                   std::span<const Symbol> z);

/// Plurality vote over a column's incoming estimates.
struct VoteTally {
    Symbol winner = 0;  // highest-voted symbol, ties toward the smallest label
    int top_count = 0;  // f(a_max)
    int margin = 0;     // delta f: votes ahead of the runner-up (0 on a tie)
};

VoteTally tally_votes(std::span<const Symbol> estimates, int q);

/// One received-sample correction. If the voted point lies within the search
/// sphere of radius params.radius_factor * dmin around y, moves y by
/// xi * L where L points at the detected point (agreement) or along the
/// voted-vs-detected direction (disagreement) and xi is the vote-derived
/// fraction; otherwise returns y unchanged.
cplx correct_signal(cplx y, cplx x_hat, const VoteTally& vote, const Constellation& c,
                    const IjddParams& params, int col_degree);

/// Iterative joint detection-decoding over hard messages: detect, check the
/// syndrome, vote, shift the received samples, repeat. Success means the
/// returned codeword has zero syndrome; failure carries the last hard
/// decisions after max_iterations rounds.
DecodeResult ijdd_decode(const ParityCheckMatrix& h, const Constellation& c,
                         std::span<const cplx> y, const IjddParams& params = {});

}  // namespace nbldpc
