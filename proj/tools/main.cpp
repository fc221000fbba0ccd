// Command-line front end: Monte Carlo sweeps, single-vector decoding, code
// generation, scatter export and field self-tests.
//
// Exit codes: 0 success, 1 decode/self-test failure, 2 usage or config error.

#include <CLI11.hpp>
#include <omp.h>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "nbldpc/sim.hpp"

namespace {

using namespace nbldpc;

std::vector<cplx> read_received_vector(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(path + ": cannot open for reading");
    std::vector<cplx> y;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ss(line);
        double re, im;
        if (!(ss >> re)) continue;  // blank line
        if (!(ss >> im))
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 're im' per line");
        y.emplace_back(re, im);
    }
    return y;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error(path + ": cannot open for writing");
    out << text;
    if (!out) throw std::runtime_error(path + ": write failed");
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed, int workers) {
    SimConfig cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    SimContext ctx(cfg);
    const auto points = run_sweep(ctx, workers);
    const std::string csv = curve_csv(points);
    if (out_path.empty() || out_path == "-") {
        std::cout << csv;
    } else {
        write_text(out_path, csv);
    }
    return 0;
}

int cmd_decode(const std::string& code_path, const std::string& in_path,
               const std::string& decoder, int kmax, double r_factor, int threshold, double n0,
               const std::string& out_path, const std::string& trajectory_path) {
    ParityCheckMatrix h = load_alist(code_path);
    Constellation c = Constellation::qam(h.q());
    const auto y = read_received_vector(in_path);

    DecodeResult res;
    if (decoder == "ijdd") {
        IjddParams params;
        params.max_iterations = kmax;
        params.radius_factor = r_factor;
        params.vote_threshold = threshold;
        params.record_trajectory = !trajectory_path.empty();
        res = ijdd_decode(h, c, y, params);
        if (!trajectory_path.empty()) {
            std::string csv = "iter,symbol_index,re,im\n";
            char buf[128];
            for (std::size_t k = 0; k < res.trajectory.size(); ++k)
                for (int j = 0; j < h.n(); ++j) {
                    std::snprintf(buf, sizeof buf, "%zu,%d,%.9g,%.9g\n", k, j,
                                  res.trajectory[k][j].real(), res.trajectory[k][j].imag());
                    csv += buf;
                }
            write_text(trajectory_path, csv);
        }
    } else if (decoder == "fft-qspa") {
        if (n0 <= 0.0)
            throw CLI::ValidationError("--n0 must be set to a positive value for fft-qspa");
        const auto priors = channel_likelihoods(c, y, n0);
        res = fft_qspa_decode(h, priors, QspaParams{kmax});
    } else {
        throw CLI::ValidationError("decoder must be ijdd or fft-qspa");
    }

    std::string text;
    for (std::size_t j = 0; j < res.codeword.size(); ++j) {
        if (j) text += ' ';
        text += std::to_string(res.codeword[j]);
    }
    text += '\n';
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
    } else {
        write_text(out_path, text);
    }
    std::cerr << (res.ok() ? "decoded" : "decoding failure") << " after " << res.iterations
              << " iterations\n";
    return res.ok() ? 0 : 1;
}

int cmd_make_code(int n, int dv, int dc, int q, std::uint64_t seed, const std::string& out_path) {
    const ParityCheckMatrix h = random_regular(n, dv, dc, q, seed);
    save_alist(h, out_path);
    std::cerr << "wrote " << h.m() << "x" << h.n() << " matrix over GF(" << q << ") to "
              << out_path << "\n";
    return 0;
}

int cmd_scatter(const std::string& config_path, double ebn0, int frames,
                std::optional<std::uint64_t> seed, const std::string& out_path) {
    SimConfig cfg = load_config(config_path);
    if (seed) cfg.seed = *seed;
    SimContext ctx(cfg);
    if (out_path.empty() || out_path == "-") {
        scatter_dump(ctx, ebn0, frames, std::cout);
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::runtime_error(out_path + ": cannot open for writing");
        scatter_dump(ctx, ebn0, frames, out);
    }
    return 0;
}

int cmd_field_check() {
    bool all_ok = true;
    for (int p = 2; p <= 8; ++p) {
        Field f(p);
        std::string msg;
        const bool ok = field_self_test(f, &msg);
        std::cout << "GF(" << f.q() << ") poly=0x" << std::hex << f.primitive_poly() << std::dec
                  << ": " << (ok ? "ok" : "FAILED") << "\n";
        if (!ok) std::cerr << msg;
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonbinary LDPC coded-modulation simulator"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run a Monte Carlo Eb/N0 sweep from a config file");
    std::string sim_config, sim_out;
    std::optional<std::uint64_t> sim_seed;
    int workers = omp_get_max_threads();
    sim->add_option("--config", sim_config, "config file")->required();
    sim->add_option("--out", sim_out, "curve CSV path (default stdout)");
    sim->add_option("--seed", sim_seed, "override the config seed");
    sim->add_option("--workers", workers, "parallel frame workers")->check(CLI::PositiveNumber);

    // decode
    auto* dec = app.add_subcommand("decode", "decode one received vector file");
    std::string dec_code, dec_in, dec_out, dec_traj, dec_kind = "ijdd";
    int dec_kmax = 50, dec_threshold = 3;
    double dec_rfactor = 1.415, dec_n0 = 0.0;
    dec->add_option("--code", dec_code, "alist file")->required();
    dec->add_option("--in", dec_in, "received vector file, one 're im' pair per line")->required();
    dec->add_option("--decoder", dec_kind, "ijdd | fft-qspa");
    dec->add_option("--kmax", dec_kmax, "iteration cap");
    dec->add_option("--r-factor", dec_rfactor, "search sphere radius multiplier");
    dec->add_option("--threshold", dec_threshold, "vote-gap threshold");
    dec->add_option("--n0", dec_n0, "noise density (required for fft-qspa)");
    dec->add_option("--out", dec_out, "decoded symbols path (default stdout)");
    dec->add_option("--trajectory", dec_traj, "per-iteration signal snapshot CSV (ijdd)");

    // make-code
    auto* mk = app.add_subcommand("make-code", "generate a random regular code");
    int mk_n = 0, mk_dv = 0, mk_dc = 0, mk_q = 0;
    std::uint64_t mk_seed = 1;
    std::string mk_out;
    mk->add_option("--n", mk_n, "code length")->required();
    mk->add_option("--dv", mk_dv, "column weight")->required();
    mk->add_option("--dc", mk_dc, "row weight")->required();
    mk->add_option("--q", mk_q, "field size")->required();
    mk->add_option("--seed", mk_seed, "construction seed");
    mk->add_option("--out", mk_out, "output alist path")->required();

    // scatter
    auto* sc = app.add_subcommand("scatter", "dump before/after signal-space scatter data");
    std::string sc_config, sc_out;
    double sc_ebn0 = 8.0;
    int sc_frames = 100;
    std::optional<std::uint64_t> sc_seed;
    sc->add_option("--config", sc_config, "config file")->required();
    sc->add_option("--ebn0", sc_ebn0, "operating point in dB")->required();
    sc->add_option("--frames", sc_frames, "frames to dump")->check(CLI::PositiveNumber);
    sc->add_option("--seed", sc_seed, "override the config seed");
    sc->add_option("--out", sc_out, "scatter CSV path (default stdout)");

    // field-check
    app.add_subcommand("field-check", "run the finite-field self-tests");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand("simulate"))
            return cmd_simulate(sim_config, sim_out, sim_seed, workers);
        if (app.got_subcommand("decode"))
            return cmd_decode(dec_code, dec_in, dec_kind, dec_kmax, dec_rfactor, dec_threshold,
                              dec_n0, dec_out, dec_traj);
        if (app.got_subcommand("make-code"))
            return cmd_make_code(mk_n, mk_dv, mk_dc, mk_q, mk_seed, mk_out);
        if (app.got_subcommand("scatter"))
            return cmd_scatter(sc_config, sc_ebn0, sc_frames, sc_seed, sc_out);
        if (app.got_subcommand("field-check")) return cmd_field_check();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
