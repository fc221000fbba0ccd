#include "nbldpc/sim.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "nbldpc/rng.hpp"

namespace nbldpc {

namespace {

constexpr std::uint64_t kSourceDomain = 0xA6'57'00'02;
// frames per stop-rule check; fixed so the processed frame set is a pure
// function of the config, not of the worker count
constexpr std::uint64_t kBatchFrames = 256;

}  // namespace

void SimConfig::validate() const {
    if (code_path.empty() == !code_random.has_value())
        throw std::invalid_argument("config: exactly one of code file / random code spec");
    if (q < 2) throw std::invalid_argument("config: constellation size missing");
    if (ebn0_db.empty()) throw std::invalid_argument("config: ebn0_db list is empty");
    for (std::size_t t = 1; t < ebn0_db.size(); ++t)
        if (ebn0_db[t] <= ebn0_db[t - 1])
            throw std::invalid_argument("config: ebn0_db must be strictly increasing");
    if (min_word_errors < 1) throw std::invalid_argument("config: min_word_errors must be >= 1");
    if (max_frames < 1) throw std::invalid_argument("config: max_frames must be >= 1");
    if (max_iterations < 1) throw std::invalid_argument("config: kmax must be >= 1");
    if (radius_factor <= 0.0) throw std::invalid_argument("config: r_factor must be > 0");
    if (vote_threshold < 1) throw std::invalid_argument("config: vote_threshold must be >= 1");
    if (rate_override && (*rate_override <= 0.0 || *rate_override > 1.0))
        throw std::invalid_argument("config: rate_override must be in (0, 1]");
}

double ErrorStats::ser() const {
    return frames ? static_cast<double>(symbol_errors) /
                        (static_cast<double>(frames) * frame_symbols)
                  : 0.0;
}
double ErrorStats::ber() const {
    return frames ? static_cast<double>(bit_errors) /
                        (static_cast<double>(frames) * frame_symbols * bits_per_symbol)
                  : 0.0;
}
double ErrorStats::wer() const {
    return frames ? static_cast<double>(word_errors) / static_cast<double>(frames) : 0.0;
}
double ErrorStats::avg_iterations() const {
    return frames ? static_cast<double>(total_iterations) / static_cast<double>(frames) : 0.0;
}

ErrorStats& ErrorStats::operator+=(const ErrorStats& other) {
    frames += other.frames;
    symbol_errors += other.symbol_errors;
    bit_errors += other.bit_errors;
    word_errors += other.word_errors;
    info_bit_errors += other.info_bit_errors;
    total_iterations += other.total_iterations;
    decode_failures += other.decode_failures;
    if (iteration_histogram.size() < other.iteration_histogram.size())
        iteration_histogram.resize(other.iteration_histogram.size(), 0);
    for (std::size_t t = 0; t < other.iteration_histogram.size(); ++t)
        iteration_histogram[t] += other.iteration_histogram[t];
    if (frame_symbols == 0) frame_symbols = other.frame_symbols;
    if (bits_per_symbol == 0) bits_per_symbol = other.bits_per_symbol;
    return *this;
}

Interval wilson_interval(std::uint64_t errors, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    if (errors > trials) throw std::invalid_argument("wilson_interval: errors > trials");
    const double z = 1.959963984540054;  // 97.5th percentile of N(0, 1)
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double den = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / den;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / den;
    Interval iv{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (errors == 0) iv.lo = 0.0;          // exact endpoints, no rounding dust
    if (errors == trials) iv.hi = 1.0;
    return iv;
}

SimContext::SimContext(const SimConfig& cfg)
    : cfg_(cfg),
      h_(nullptr),
      enc_(nullptr),
      c_(Constellation::qam(cfg.q)),
      rate_(1.0) {
    cfg_.validate();
    if (!cfg_.code_path.empty()) {
        h_ = std::make_unique<ParityCheckMatrix>(load_alist(cfg_.code_path));
    } else {
        const auto& rc = *cfg_.code_random;
        h_ = std::make_unique<ParityCheckMatrix>(random_regular(rc.n, rc.dv, rc.dc, cfg_.q, rc.seed));
    }
    if (h_->q() != cfg_.q)
        throw std::invalid_argument("config: constellation size " + std::to_string(cfg_.q) +
                                    " differs from code field size " + std::to_string(h_->q()));
    enc_ = std::make_unique<SystematicEncoder>(*h_);

    if (cfg_.rate_override) {
        rate_ = *cfg_.rate_override;
    } else if (cfg_.decoder == DecoderKind::Uncoded) {
        rate_ = 1.0;
    } else {
        rate_ = enc_->rate();
        if (rate_ <= 0.0)
            throw std::invalid_argument(
                "config: code has no information symbols (rank n); set rate_override "
                "to pin the Eb/N0 axis");
    }
}

namespace {

struct FrameOutcome {
    std::uint64_t symbol_errors = 0;
    std::uint64_t bit_errors = 0;
    std::uint64_t info_bit_errors = 0;
    int iterations = 0;
    bool word_error = false;
    bool decode_failure = false;
};

std::vector<Symbol> draw_symbols(std::uint64_t seed, std::uint64_t frame, std::size_t count,
                                 int q) {
    SplitMix64 rng = SplitMix64::substream(seed, {kSourceDomain, frame});
    std::vector<Symbol> u(count);
    for (auto& s : u) s = static_cast<Symbol>(rng.bounded(static_cast<std::uint64_t>(q)));
    return u;
}

FrameOutcome run_frame(const SimContext& ctx, double n0, std::uint64_t frame) {
    const SimConfig& cfg = ctx.config();
    const ParityCheckMatrix& h = ctx.matrix();
    const Constellation& c = ctx.constellation();
    const int n = h.n();

    // transmitted symbols
    std::vector<Symbol> v;
    if (cfg.decoder == DecoderKind::Uncoded) {
        v = cfg.source == SourceMode::RandomInformation
                ? draw_symbols(cfg.seed, frame, static_cast<std::size_t>(n), h.q())
                : std::vector<Symbol>(n, 0);
    } else if (cfg.source == SourceMode::RandomInformation) {
        const auto u = draw_symbols(cfg.seed, frame, static_cast<std::size_t>(ctx.encoder().k()),
                                    h.q());
        v = ctx.encoder().encode(u);
    } else {
        v.assign(n, 0);
    }

    const std::vector<cplx> x = c.map_symbols(v);
    const std::vector<cplx> y = awgn(x, NoiseSpec{n0, cfg.seed, frame});

    std::vector<Symbol> z;
    FrameOutcome out;
    switch (cfg.decoder) {
        case DecoderKind::Uncoded: {
            z = c.demap_points(y);
            break;
        }
        case DecoderKind::Ijdd: {
            IjddParams params;
            params.max_iterations = cfg.max_iterations;
            params.radius_factor = cfg.radius_factor;
            params.vote_threshold = cfg.vote_threshold;
            DecodeResult res = ijdd_decode(h, c, y, params);
            z = std::move(res.codeword);
            out.iterations = res.iterations;
            out.decode_failure = !res.ok();
            break;
        }
        case DecoderKind::FftQspa: {
            const auto priors = channel_likelihoods(c, y, n0);
            DecodeResult res = fft_qspa_decode(h, priors, QspaParams{cfg.max_iterations});
            z = std::move(res.codeword);
            out.iterations = res.iterations;
            out.decode_failure = !res.ok();
            break;
        }
    }

    for (int j = 0; j < n; ++j) {
        const Symbol diff = static_cast<Symbol>(z[j] ^ v[j]);
        if (diff) {
            ++out.symbol_errors;
            out.bit_errors += static_cast<std::uint64_t>(std::popcount(diff));
        }
    }
    out.word_error = out.symbol_errors > 0;

    if (cfg.decoder != DecoderKind::Uncoded && out.word_error) {
        for (int col : ctx.encoder().information_positions()) {
            const Symbol diff = static_cast<Symbol>(z[col] ^ v[col]);
            out.info_bit_errors += static_cast<std::uint64_t>(std::popcount(diff));
        }
    }
    return out;
}

void absorb(ErrorStats& stats, const FrameOutcome& f) {
    ++stats.frames;
    stats.symbol_errors += f.symbol_errors;
    stats.bit_errors += f.bit_errors;
    stats.info_bit_errors += f.info_bit_errors;
    stats.word_errors += f.word_error ? 1 : 0;
    stats.decode_failures += f.decode_failure ? 1 : 0;
    stats.total_iterations += static_cast<std::uint64_t>(f.iterations);
    if (stats.iteration_histogram.size() <= static_cast<std::size_t>(f.iterations))
        stats.iteration_histogram.resize(static_cast<std::size_t>(f.iterations) + 1, 0);
    ++stats.iteration_histogram[static_cast<std::size_t>(f.iterations)];
}

ErrorStats fresh_stats(const SimContext& ctx) {
    ErrorStats stats;
    stats.frame_symbols = static_cast<std::uint64_t>(ctx.matrix().n());
    stats.bits_per_symbol = ctx.matrix().field().p();
    stats.iteration_histogram.assign(static_cast<std::size_t>(ctx.config().max_iterations) + 1, 0);
    return stats;
}

}  // namespace

ErrorStats run_point_reference(const SimContext& ctx, double ebn0_db) {
    const SimConfig& cfg = ctx.config();
    const double n0 = ebn0_to_n0(ebn0_db, ctx.nominal_rate(), cfg.q, ctx.constellation().es());
    ErrorStats stats = fresh_stats(ctx);
    std::uint64_t done = 0;
    while (done < cfg.max_frames && stats.word_errors < cfg.min_word_errors) {
        const std::uint64_t batch = std::min(kBatchFrames, cfg.max_frames - done);
        for (std::uint64_t t = 0; t < batch; ++t)
            absorb(stats, run_frame(ctx, n0, done + t));
        done += batch;
    }
    return stats;
}

ErrorStats run_point(const SimContext& ctx, double ebn0_db, int workers) {
    if (workers < 1) throw std::invalid_argument("run_point: workers must be >= 1");
    const SimConfig& cfg = ctx.config();
    const double n0 = ebn0_to_n0(ebn0_db, ctx.nominal_rate(), cfg.q, ctx.constellation().es());
    ErrorStats stats = fresh_stats(ctx);
    std::uint64_t done = 0;
    std::exception_ptr error;

    while (done < cfg.max_frames && stats.word_errors < cfg.min_word_errors) {
        const std::uint64_t batch = std::min(kBatchFrames, cfg.max_frames - done);
        std::vector<ErrorStats> partial(static_cast<std::size_t>(workers), fresh_stats(ctx));

#pragma omp parallel for schedule(static) num_threads(workers)
        for (std::int64_t t = 0; t < static_cast<std::int64_t>(batch); ++t) {
            try {
                const FrameOutcome f = run_frame(ctx, n0, done + static_cast<std::uint64_t>(t));
                absorb(partial[static_cast<std::size_t>(omp_get_thread_num())], f);
            } catch (...) {
#pragma omp critical
                if (!error) error = std::current_exception();
            }
        }
        if (error) std::rethrow_exception(error);

        // merge in fixed order; counters are integers so this matches any
        // other order, including the serial reference
        for (const ErrorStats& part : partial) stats += part;
        done += batch;
    }
    return stats;
}

std::vector<PointResult> run_sweep(const SimContext& ctx, int workers) {
    std::vector<PointResult> out;
    for (double ebn0 : ctx.config().ebn0_db) {
        PointResult pr;
        pr.ebn0_db = ebn0;
        pr.n0 = ebn0_to_n0(ebn0, ctx.nominal_rate(), ctx.config().q, ctx.constellation().es());
        pr.stats = run_point(ctx, ebn0, workers);
        out.push_back(std::move(pr));
    }
    return out;
}

void scatter_dump(const SimContext& ctx, double ebn0_db, int frames, std::ostream& out) {
    const SimConfig& cfg = ctx.config();
    if (cfg.decoder != DecoderKind::Ijdd)
        throw std::invalid_argument("scatter_dump: only the ijdd decoder evolves the signal");
    const double n0 = ebn0_to_n0(ebn0_db, ctx.nominal_rate(), cfg.q, ctx.constellation().es());
    const ParityCheckMatrix& h = ctx.matrix();
    const Constellation& c = ctx.constellation();

    IjddParams params;
    params.max_iterations = cfg.max_iterations;
    params.radius_factor = cfg.radius_factor;
    params.vote_threshold = cfg.vote_threshold;
    params.record_trajectory = true;

    out << "iter,symbol_index,re,im\n";
    char buf[128];
    for (int t = 0; t < frames; ++t) {
        std::vector<Symbol> v;
        if (cfg.source == SourceMode::RandomInformation) {
            const auto u = draw_symbols(cfg.seed, static_cast<std::uint64_t>(t),
                                        static_cast<std::size_t>(ctx.encoder().k()), h.q());
            v = ctx.encoder().encode(u);
        } else {
            v.assign(h.n(), 0);
        }
        const auto x = c.map_symbols(v);
        const auto y = awgn(x, NoiseSpec{n0, cfg.seed, static_cast<std::uint64_t>(t)});
        const DecodeResult res = ijdd_decode(h, c, y, params);

        const auto& first = res.trajectory.front();
        const auto& last = res.trajectory.back();
        for (int j = 0; j < h.n(); ++j) {
            std::snprintf(buf, sizeof buf, "0,%d,%.9g,%.9g\n", j, first[j].real(), first[j].imag());
            out << buf;
        }
        for (int j = 0; j < h.n(); ++j) {
            std::snprintf(buf, sizeof buf, "%d,%d,%.9g,%.9g\n", res.iterations, j, last[j].real(),
                          last[j].imag());
            out << buf;
        }
    }
}

std::string curve_csv(const std::vector<PointResult>& points) {
    std::string csv = "ebn0_db,frames,ser,ber,wer,ser_lo,ser_hi,ber_lo,ber_hi,wer_lo,wer_hi,avg_iters\n";
    char buf[512];
    for (const PointResult& p : points) {
        const ErrorStats& s = p.stats;
        const std::uint64_t symbols = s.frames * s.frame_symbols;
        const std::uint64_t bits = symbols * static_cast<std::uint64_t>(s.bits_per_symbol);
        const Interval ser = wilson_interval(s.symbol_errors, symbols);
        const Interval ber = wilson_interval(s.bit_errors, bits);
        const Interval wer = wilson_interval(s.word_errors, s.frames);
        std::snprintf(buf, sizeof buf,
                      "%.6g,%llu,%.8g,%.8g,%.8g,%.8g,%.8g,%.8g,%.8g,%.8g,%.8g,%.6g\n", p.ebn0_db,
                      static_cast<unsigned long long>(s.frames), s.ser(), s.ber(), s.wer(), ser.lo,
                      ser.hi, ber.lo, ber.hi, wer.lo, wer.hi, s.avg_iterations());
        csv += buf;
    }
    return csv;
}

// ---------------------------------------------------------------------------
// config file
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::istringstream ss(s);
    std::vector<std::string> toks;
    std::string t;
    while (ss >> t) toks.push_back(t);
    return toks;
}

[[noreturn]] void cfg_fail(const std::string& name, int lineno, const std::string& what) {
    throw std::invalid_argument(name + ":" + std::to_string(lineno) + ": " + what);
}

}  // namespace

SimConfig parse_config(std::istream& in, const std::string& name) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    bool have_ebn0 = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string key = toks[0];
        std::vector<std::string> vals(toks.begin() + 1, toks.end());
        if (!vals.empty() && vals[0] == "=") vals.erase(vals.begin());
        if (vals.empty()) cfg_fail(name, lineno, "missing value for key '" + key + "'");

        auto as_u64 = [&](const std::string& s) -> std::uint64_t {
            try {
                return std::stoull(s);
            } catch (...) {
                cfg_fail(name, lineno, "expected integer, got '" + s + "'");
            }
        };
        auto as_double = [&](const std::string& s) -> double {
            try {
                return std::stod(s);
            } catch (...) {
                cfg_fail(name, lineno, "expected number, got '" + s + "'");
            }
        };

        if (key == "code") {
            cfg.code_path = vals[0];
        } else if (key == "code_random") {
            if (vals.size() != 4) cfg_fail(name, lineno, "code_random needs: n dv dc seed");
            cfg.code_random = RandomCodeSpec{static_cast<int>(as_u64(vals[0])),
                                             static_cast<int>(as_u64(vals[1])),
                                             static_cast<int>(as_u64(vals[2])), as_u64(vals[3])};
        } else if (key == "q") {
            cfg.q = static_cast<int>(as_u64(vals[0]));
        } else if (key == "decoder") {
            if (vals[0] == "ijdd") cfg.decoder = DecoderKind::Ijdd;
            else if (vals[0] == "fft-qspa") cfg.decoder = DecoderKind::FftQspa;
            else if (vals[0] == "uncoded") cfg.decoder = DecoderKind::Uncoded;
            else cfg_fail(name, lineno, "decoder must be ijdd, fft-qspa or uncoded");
        } else if (key == "kmax") {
            cfg.max_iterations = static_cast<int>(as_u64(vals[0]));
        } else if (key == "r_factor") {
            cfg.radius_factor = as_double(vals[0]);
        } else if (key == "vote_threshold") {
            cfg.vote_threshold = static_cast<int>(as_u64(vals[0]));
        } else if (key == "ebn0_db") {
            cfg.ebn0_db.clear();
            for (const auto& v : vals) cfg.ebn0_db.push_back(as_double(v));
            have_ebn0 = true;
        } else if (key == "min_word_errors") {
            cfg.min_word_errors = as_u64(vals[0]);
        } else if (key == "max_frames") {
            cfg.max_frames = as_u64(vals[0]);
        } else if (key == "seed") {
            cfg.seed = as_u64(vals[0]);
        } else if (key == "source") {
            if (vals[0] == "random-information" || vals[0] == "random")
                cfg.source = SourceMode::RandomInformation;
            else if (vals[0] == "all-zero") cfg.source = SourceMode::AllZero;
            else cfg_fail(name, lineno, "source must be random-information or all-zero");
        } else if (key == "rate_override") {
            cfg.rate_override = as_double(vals[0]);
        } else {
            cfg_fail(name, lineno, "unknown key '" + key + "'");
        }
    }
    if (!have_ebn0) throw std::invalid_argument(name + ": missing ebn0_db");
    cfg.validate();
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument(path + ": cannot open for reading");
    return parse_config(in, path);
}

}  // namespace nbldpc
