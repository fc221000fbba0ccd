#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "nbldpc/channel.hpp"
#include "nbldpc/code.hpp"
#include "nbldpc/ijdd.hpp"
#include "nbldpc/modem.hpp"
#include "nbldpc/qspa.hpp"

namespace nbldpc {

enum class DecoderKind { Ijdd, FftQspa, Uncoded };
enum class SourceMode { RandomInformation, AllZero };

struct RandomCodeSpec {
    int n = 0, dv = 0, dc = 0;
    std::uint64_t seed = 0;
};

/// Everything a sweep needs. Mirrors the config file keys one-to-one.
struct SimConfig {
    std::string code_path;                      // alist file, or
    std::optional<RandomCodeSpec> code_random;  // generated code
    int q = 0;                                  // constellation size (= field size)
    DecoderKind decoder = DecoderKind::Ijdd;
    int max_iterations = 50;       // decoder iteration cap (kmax)
    double radius_factor = 1.415;  // ijdd only
    int vote_threshold = 3;        // ijdd only
    std::vector<double> ebn0_db;   // strictly increasing sweep points
    std::uint64_t min_word_errors = 100;
    std::uint64_t max_frames = 1000000;
    std::uint64_t seed = 1;
    SourceMode source = SourceMode::RandomInformation;
    // Nominal rate for the Eb/N0 axis. Defaults to the encoder's k/n (1.0
    // for the uncoded reference); needed when a near-full-rank matrix leaves
    // k = 0 and the actual rate is unusable for SNR bookkeeping.
    std::optional<double> rate_override;

    void validate() const;  // throws std::invalid_argument on bad settings
};

/// Tallies for one Eb/N0 point. All counters are exact integers so merging
/// partial results is associative and order-free.
struct ErrorStats {
    std::uint64_t frames = 0;
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t word_errors = 0;
    std::uint64_t info_bit_errors = 0;
    std::uint64_t total_iterations = 0;
    std::uint64_t decode_failures = 0;
    std::vector<std::uint64_t> iteration_histogram;  // index = iterations used

    std::uint64_t frame_symbols = 0;  // n, fixed per run
    int bits_per_symbol = 0;          // p, fixed per run

    double ser() const;
    double ber() const;
    double wer() const;
    double avg_iterations() const;

    ErrorStats& operator+=(const ErrorStats& other);
    bool operator==(const ErrorStats& other) const = default;
};

/// 95% Wilson score interval for e successes in n trials.
struct Interval {
    double lo = 0.0, hi = 1.0;
};
Interval wilson_interval(std::uint64_t errors, std::uint64_t trials);

struct PointResult {
    double ebn0_db = 0.0;
    double n0 = 0.0;
    ErrorStats stats;
};

/// Immutable per-run state shared by every frame worker.
class SimContext {
public:
    explicit SimContext(const SimConfig& cfg);

    const SimConfig& config() const { return cfg_; }
    const ParityCheckMatrix& matrix() const { return *h_; }
    const SystematicEncoder& encoder() const { return *enc_; }
    const Constellation& constellation() const { return c_; }
    /// Rate used on the Eb/N0 axis (override, else encoder rate, else 1.0
    /// for the uncoded reference).
    double nominal_rate() const { return rate_; }

private:
    SimConfig cfg_;
    std::unique_ptr<ParityCheckMatrix> h_;
    std::unique_ptr<SystematicEncoder> enc_;
    Constellation c_;
    double rate_;
};

/// Runs frames at one Eb/N0 point until the stop rule fires (min word
/// errors or max frames, checked between fixed-size batches so the frame
/// set never depends on scheduling). OpenMP-parallel across frames inside
/// a batch; byte-identical to the serial reference for any worker count.
ErrorStats run_point(const SimContext& ctx, double ebn0_db, int workers);

/// Plain serial loop over the same batches, kept as the reference the
/// parallel kernel is tested and benchmarked against.
ErrorStats run_point_reference(const SimContext& ctx, double ebn0_db);

std::vector<PointResult> run_sweep(const SimContext& ctx, int workers);

/// Scatter data for the detector input before and after decoding: for each
/// frame, every symbol of y^(0) at iter 0 and of the final y at the final
/// iteration count. CSV columns: iter,symbol_index,re,im. IJDD only.
void scatter_dump(const SimContext& ctx, double ebn0_db, int frames, std::ostream& out);

/// Curve CSV, one row per point:
/// ebn0_db,frames,ser,ber,wer,ser_lo,ser_hi,ber_lo,ber_hi,wer_lo,wer_hi,avg_iters
std::string curve_csv(const std::vector<PointResult>& points);

/// Flat key = value config format; '#' starts a comment. Unknown keys fail.
SimConfig parse_config(std::istream& in, const std::string& name);
SimConfig load_config(const std::string& path);

}  // namespace nbldpc
