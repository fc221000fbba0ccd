#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "nbldpc/sim.hpp"
#include "oracles.hpp"

using namespace nbldpc;

namespace {

SimConfig base_config() {
    SimConfig cfg;
    cfg.code_random = RandomCodeSpec{60, 4, 6, 31};
    cfg.q = 16;
    cfg.decoder = DecoderKind::Ijdd;
    cfg.ebn0_db = {6.0};
    cfg.min_word_errors = 20;
    cfg.max_frames = 400;
    cfg.seed = 17;
    return cfg;
}

}  // namespace

TEST_CASE("noiseless point: all error rates are zero") {
    SimConfig cfg = base_config();
    cfg.ebn0_db = {100.0};
    cfg.max_frames = 64;
    SimContext ctx(cfg);
    const ErrorStats s = run_point(ctx, 100.0, 1);
    CHECK(s.frames == 64);
    CHECK(s.symbol_errors == 0);
    CHECK(s.bit_errors == 0);
    CHECK(s.word_errors == 0);
    CHECK(s.ser() == 0.0);
    CHECK(s.wer() == 0.0);
}

TEST_CASE("parallel kernel matches the serial reference exactly") {
    SimConfig cfg = base_config();
    SimContext ctx(cfg);
    const ErrorStats ref = run_point_reference(ctx, 6.0);
    const ErrorStats w1 = run_point(ctx, 6.0, 1);
    const ErrorStats w3 = run_point(ctx, 6.0, 3);
    const ErrorStats w8 = run_point(ctx, 6.0, 8);
    CHECK(ref == w1);
    CHECK(ref == w3);
    CHECK(ref == w8);
    CHECK(ref.frames > 0);
}

TEST_CASE("sweep CSV is byte-identical across worker counts") {
    SimConfig cfg = base_config();
    cfg.ebn0_db = {5.0, 6.0};
    SimContext ctx(cfg);
    const auto sweep1 = run_sweep(ctx, 1);
    const auto sweep4 = run_sweep(ctx, 4);
    CHECK(curve_csv(sweep1) == curve_csv(sweep4));
}

TEST_CASE("sweep over one point equals run_point") {
    SimConfig cfg = base_config();
    SimContext ctx(cfg);
    const auto sweep = run_sweep(ctx, 2);
    REQUIRE(sweep.size() == 1);
    CHECK(sweep[0].stats == run_point(ctx, 6.0, 2));
}

TEST_CASE("uncoded 16-qam SER matches the closed-form Q-function expression") {
    SimConfig cfg;
    cfg.code_random = RandomCodeSpec{64, 2, 8, 1};
    cfg.q = 16;
    cfg.decoder = DecoderKind::Uncoded;
    // rate defaults to 1 for the uncoded reference: Es/N0 = 4 * Eb/N0
    const double es_over_n0_db = 10.0;
    const double ebn0 = es_over_n0_db - 10.0 * std::log10(4.0);
    cfg.ebn0_db = {ebn0};
    cfg.min_word_errors = 1u << 30;
    cfg.max_frames = 4096;
    cfg.seed = 404;
    SimContext ctx(cfg);
    CHECK(ctx.nominal_rate() == 1.0);

    const ErrorStats s = run_point(ctx, ebn0, 2);
    const double expected = oracles::square_qam_ser(16, std::pow(10.0, es_over_n0_db / 10.0));
    const double n = static_cast<double>(s.frames * s.frame_symbols);
    const double sigma = std::sqrt(expected * (1.0 - expected) / n);
    CHECK(std::abs(s.ser() - expected) < 3.0 * sigma);
}

TEST_CASE("counting consistency: word errors vs symbol errors vs bits") {
    SimConfig cfg = base_config();
    cfg.ebn0_db = {4.0};
    cfg.max_frames = 300;
    cfg.min_word_errors = 1u << 30;
    SimContext ctx(cfg);
    const ErrorStats s = run_point(ctx, 4.0, 2);
    CHECK(s.word_errors <= s.frames);
    CHECK(s.symbol_errors <= s.frames * s.frame_symbols);
    CHECK(s.bit_errors <= static_cast<std::uint64_t>(s.bits_per_symbol) * s.symbol_errors);
    CHECK(s.bit_errors >= s.symbol_errors);  // a wrong symbol has at least one wrong bit
    std::uint64_t hist_frames = 0;
    for (auto h : s.iteration_histogram) hist_frames += h;
    CHECK(hist_frames == s.frames);
}

TEST_CASE("stop rule: min word errors ends the run on a batch boundary") {
    SimConfig cfg = base_config();
    cfg.ebn0_db = {0.0};  // very noisy; every frame fails
    cfg.min_word_errors = 5;
    cfg.max_frames = 100000;
    cfg.max_iterations = 5;
    SimContext ctx(cfg);
    const ErrorStats s = run_point(ctx, 0.0, 2);
    CHECK(s.word_errors >= 5);
    CHECK(s.frames == 256);  // one batch
}

TEST_CASE("wilson interval sanity") {
    const Interval i0 = wilson_interval(0, 1000);
    CHECK(i0.lo == 0.0);
    CHECK(i0.hi > 0.0);
    CHECK(i0.hi < 0.01);
    const Interval ih = wilson_interval(500, 1000);
    CHECK(ih.lo < 0.5);
    CHECK(ih.hi > 0.5);
    CHECK(ih.hi - ih.lo < 0.07);
    const Interval all = wilson_interval(1000, 1000);
    CHECK(all.hi == 1.0);
    CHECK(all.lo > 0.99);
}

TEST_CASE("config parsing: full round trip of keys") {
    std::istringstream in(
        "# comment line\n"
        "code_random = 60 4 6 31\n"
        "q = 16\n"
        "decoder = ijdd\n"
        "kmax = 25\n"
        "r_factor = 1.415\n"
        "vote_threshold = 3\n"
        "ebn0_db = 5.0 6.0 7.0\n"
        "min_word_errors = 50\n"
        "max_frames = 5000\n"
        "seed = 99\n"
        "source = random-information\n"
        "rate_override = 0.686\n");
    const SimConfig cfg = parse_config(in, "test");
    CHECK(cfg.code_random->n == 60);
    CHECK(cfg.q == 16);
    CHECK(cfg.max_iterations == 25);
    CHECK(cfg.ebn0_db == std::vector<double>{5.0, 6.0, 7.0});
    CHECK(cfg.seed == 99);
    CHECK(cfg.rate_override == 0.686);
}

TEST_CASE("config parsing: errors carry line numbers") {
    std::istringstream unknown("q = 16\nbogus_key = 3\n");
    try {
        parse_config(unknown, "cfg");
        FAIL("expected failure");
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("cfg:2") != std::string::npos);
    }

    std::istringstream nonmono(
        "code_random = 60 4 6 31\nq = 16\nebn0_db = 5.0 5.0\n");
    CHECK_THROWS_AS(parse_config(nonmono, "cfg"), std::invalid_argument);

    // a loaded code whose field disagrees with the configured constellation
    const std::string alist_path = "test_sim_q16.alist";
    save_alist(random_regular(24, 2, 6, 16, 8), alist_path);
    SimConfig cfg;
    cfg.code_path = alist_path;
    cfg.q = 32;
    cfg.ebn0_db = {5.0};
    CHECK_THROWS_AS(SimContext{cfg}, std::invalid_argument);
    std::remove(alist_path.c_str());
}

TEST_CASE("scatter dump: noiseless frames sit exactly on constellation points") {
    SimConfig cfg = base_config();
    cfg.ebn0_db = {200.0};  // extreme SNR: noise amplitude far below 1e-9
    SimContext ctx(cfg);
    std::ostringstream out;
    scatter_dump(ctx, 200.0, 3, out);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "iter,symbol_index,re,im");
    const Constellation& c = ctx.constellation();
    std::string line;
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        double re = 0, im = 0;
        int iter = 0, idx = 0;
        CHECK(std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &iter, &idx, &re, &im) == 4);
        const auto det = c.detect(cplx(re, im));
        CHECK(std::abs(det.point - cplx(re, im)) < 1e-9);
    }
    CHECK(rows == 2 * 3 * 60);  // initial + final per frame
}

TEST_CASE("scatter dump: moderate noise, final samples sit closer than initial") {
    SimConfig cfg;
    cfg.code_random = RandomCodeSpec{255, 16, 16, 7};
    cfg.q = 16;
    cfg.decoder = DecoderKind::Ijdd;
    cfg.ebn0_db = {7.0};
    cfg.seed = 99;
    cfg.rate_override = 175.0 / 255.0;
    SimContext ctx(cfg);
    std::ostringstream out;
    scatter_dump(ctx, 7.0, 20, out);

    const Constellation& c = ctx.constellation();
    std::istringstream lines(out.str());
    std::string line;
    std::getline(lines, line);  // header
    double d_initial = 0.0, d_final = 0.0;
    std::uint64_t n_initial = 0, n_final = 0;
    while (std::getline(lines, line)) {
        double re = 0, im = 0;
        int iter = 0, idx = 0;
        REQUIRE(std::sscanf(line.c_str(), "%d,%d,%lf,%lf", &iter, &idx, &re, &im) == 4);
        const double d = std::abs(cplx(re, im) - c.detect(cplx(re, im)).point);
        if (iter == 0) {
            d_initial += d;
            ++n_initial;
        } else {
            d_final += d;
            ++n_final;
        }
    }
    CHECK(n_initial == 20 * 255);
    CHECK(n_final > 0);
    CHECK(d_final / n_final < d_initial / n_initial);
}

TEST_CASE("scatter dump rejects non-ijdd decoders") {
    SimConfig cfg = base_config();
    cfg.decoder = DecoderKind::Uncoded;
    cfg.rate_override = 0.5;
    SimContext ctx(cfg);
    std::ostringstream out;
    CHECK_THROWS_AS(scatter_dump(ctx, 6.0, 1, out), std::invalid_argument);
}
