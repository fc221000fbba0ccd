// Times the OpenMP frame kernel against the serial reference on the same
// workload and reports throughput, plus single-decoder-call rates.

#include <omp.h>

#include <chrono>
#include <cstdio>

#include "nbldpc/sim.hpp"

using namespace nbldpc;
using clock_type = std::chrono::steady_clock;

namespace {

double seconds_since(clock_type::time_point t0) {
    return std::chrono::duration<double>(clock_type::now() - t0).count();
}

SimConfig workload(DecoderKind kind, std::uint64_t frames) {
    SimConfig cfg;
    cfg.code_random = RandomCodeSpec{255, 16, 16, 7};
    cfg.q = 16;
    cfg.decoder = kind;
    cfg.ebn0_db = {9.0};
    cfg.min_word_errors = UINT64_MAX;
    cfg.max_frames = frames;
    cfg.seed = 1;
    cfg.rate_override = 175.0 / 255.0;
    return cfg;
}

void bench_point(const char* name, DecoderKind kind, std::uint64_t frames) {
    SimContext ctx(workload(kind, frames));

    auto t0 = clock_type::now();
    const ErrorStats serial = run_point_reference(ctx, 9.0);
    const double t_serial = seconds_since(t0);

    const int workers = omp_get_max_threads();
    t0 = clock_type::now();
    const ErrorStats parallel = run_point(ctx, 9.0, workers);
    const double t_parallel = seconds_since(t0);

    if (!(serial == parallel)) {
        std::printf("%s: MISMATCH between serial reference and parallel kernel\n", name);
        return;
    }
    std::printf("%-10s %6llu frames | serial %8.3f s (%8.1f fps) | omp x%d %8.3f s (%8.1f fps) | speedup %.2f\n",
                name, static_cast<unsigned long long>(serial.frames), t_serial,
                serial.frames / t_serial, workers, t_parallel, parallel.frames / t_parallel,
                t_serial / t_parallel);
}

}  // namespace

int main(int argc, char** argv) {
    std::uint64_t frames = 2000;
    if (argc > 1) frames = std::strtoull(argv[1], nullptr, 10);

    std::printf("code: random regular (255, 16, 16) over GF(16), 16-QAM, Eb/N0 = 9 dB\n");
    bench_point("ijdd", DecoderKind::Ijdd, frames);
    bench_point("fft-qspa", DecoderKind::FftQspa, frames / 10 + 1);
    bench_point("uncoded", DecoderKind::Uncoded, frames * 4);
    return 0;
}
