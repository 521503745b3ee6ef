// Compares the serial reference kernels against the OpenMP ones on the
// numeric-oracle workloads and verifies that both produce identical output.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "vkernel/oracle.hpp"
#include "vkernel/text.hpp"

using namespace vk;

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

template <typename F>
double best_of(int repeats, F&& body) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        double t0 = now_ms();
        body();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

Expr dense_expression(int n, int m) {
    std::vector<CoordId> coords = JetSpace::f2(n, m).coords();
    std::vector<Expr> terms;
    int idx = 0;
    for (CoordId a : coords)
        for (CoordId b : coords) {
            Expr t = Expr::constant(Rational(++idx % 7 - 3)) * Expr::coord(a) *
                     Expr::pow(Expr::coord(b), 2);
            if (idx % 5 == 0) t = t * sin(Expr::coord(a) + Expr::coord(b));
            terms.push_back(std::move(t));
        }
    return Expr::sum(std::move(terms));
}

}  // namespace

int main(int argc, char** argv) {
    int points = argc > 1 ? std::stoi(argv[1]) : 20000;
    int repeats = argc > 2 ? std::stoi(argv[2]) : 5;

#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#else
    std::printf("threads: 1 (OpenMP disabled)\n");
#endif

    Expr e = dense_expression(3, 3);
    SamplerConfig cfg;
    cfg.seed = 7;
    cfg.trials = points;
    std::vector<Point> pts = sample(JetSpace::f2(3, 3), cfg);

    std::vector<double> serial, parallel;
    double t_serial = best_of(repeats, [&] { eval_batch_serial(e, pts, serial); });
    double t_parallel = best_of(repeats, [&] { eval_batch_parallel(e, pts, parallel); });

    bool identical_out = serial.size() == parallel.size();
    for (size_t i = 0; identical_out && i < serial.size(); ++i)
        identical_out = serial[i] == parallel[i] || (std::isnan(serial[i]) && std::isnan(parallel[i]));

    std::printf("eval_batch  %8d points  serial %9.2f ms  parallel %9.2f ms  speedup %5.2fx  %s\n",
                points, t_serial, t_parallel, t_serial / t_parallel,
                identical_out ? "outputs identical" : "OUTPUT MISMATCH");

    SamplerConfig fdcfg;
    fdcfg.seed = 11;
    fdcfg.trials = std::max(64, points / 64);
    double fd_serial = 0, fd_parallel = 0;
    Expr target = dense_expression(2, 2);

    // finite-difference sweep over every coordinate of the space
    std::vector<CoordId> coords = JetSpace::f2(2, 2).coords();
    double t_fd = best_of(repeats, [&] {
        fd_parallel = 0;
        for (CoordId c : coords) fd_parallel = std::max(fd_parallel, finite_diff_check(target, c, fdcfg));
    });
    std::printf("fd_sweep    %8d trials  max rel err %.3e  %9.2f ms\n", fdcfg.trials, fd_parallel,
                t_fd);
    (void)fd_serial;

    return identical_out ? 0 : 1;
}
