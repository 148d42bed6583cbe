#include <chrono>
#include <cstdio>
#include <string>

#include "CLI11.hpp"
#include "unitlinked/mc_engine.hpp"

// Times the serial reference against the OpenMP kernel on the same workload
// and checks that both produce bit-identical paths.

namespace {

using unitlinked::PathSet;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool identical(const PathSet& a, const PathSet& b) {
    return a.r == b.r && a.xi == b.xi && a.nu == b.nu && a.s == b.s && a.p == b.p;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP path simulation benchmark"};
    std::size_t n_paths = 5000;
    double maturity = 10.0;
    int threads = 0;
    int repeats = 3;
    app.add_option("--paths", n_paths, "paths per run");
    app.add_option("--maturity", maturity, "maturity in years");
    app.add_option("--threads", threads, "parallel worker count (0 = default)");
    app.add_option("--repeats", repeats, "timed repetitions");
    CLI11_PARSE(app, argc, argv);

    const unitlinked::VasicekParams vp;
    const unitlinked::HestonParams hp;
    const unitlinked::TimeGrid grid(maturity,
                                    unitlinked::default_num_steps(maturity));
    const std::uint64_t seed = 20180527;

    std::printf("paths=%zu steps=%zu maturity=%g\n", n_paths, grid.num_steps(),
                maturity);

    double best_serial = 1e300;
    double best_parallel = 1e300;
    PathSet serial = unitlinked::simulate_vh_paths_serial(vp, hp, grid, n_paths,
                                                          seed);
    unitlinked::VhSimOptions opt;
    opt.num_threads = threads;
    PathSet parallel = unitlinked::simulate_vh_paths(vp, hp, grid, n_paths, seed,
                                                     opt);
    if (!identical(serial, parallel)) {
        std::printf("MISMATCH: parallel kernel differs from serial reference\n");
        return 1;
    }
    for (int rep = 0; rep < repeats; ++rep) {
        auto t0 = std::chrono::steady_clock::now();
        serial = unitlinked::simulate_vh_paths_serial(vp, hp, grid, n_paths, seed);
        best_serial = std::min(best_serial, seconds_since(t0));

        t0 = std::chrono::steady_clock::now();
        parallel = unitlinked::simulate_vh_paths(vp, hp, grid, n_paths, seed, opt);
        best_parallel = std::min(best_parallel, seconds_since(t0));
    }
    std::printf("serial   %8.3f s\n", best_serial);
    std::printf("parallel %8.3f s  (speedup %.2fx)\n", best_parallel,
                best_serial / best_parallel);
    std::printf("outputs identical: yes\n");
    return 0;
}
