// Timing comparison for the bandwidth-selection scan: the per-index
// reference evaluator (kept around as the testing oracle), the tabled
// serial pass, and the OpenMP-scheduled grid scan. The three must agree
// to near machine precision; the bench reports that alongside the
// timings so a speed regression and a correctness regression are both
// visible from one run.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "seqcv/crossval.hpp"
#include "seqcv/kernels.hpp"
#include "seqcv/reference.hpp"
#include "seqcv/rng.hpp"
#include "seqcv/series.hpp"

using namespace seqcv;

namespace {

Series bench_series(long T) {
    Rng rng(0xBE7C, 0, Rng::kErrors);
    std::vector<double> y(static_cast<std::size_t>(T));
    for (long i = 0; i < T; ++i) {
        const double u = static_cast<double>(i + 1) / static_cast<double>(T);
        y[static_cast<std::size_t>(i)] = 1.0 + 0.5 * std::sin(8.0 * u) + 0.4 * rng.gaussian();
    }
    return make_series(std::move(y));
}

std::vector<double> reference_scan(const Series& s, const Kernel& k,
                                   const std::vector<double>& grid, double frac) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double xi : grid) out.push_back(reference::cv_objective(s, k, xi, frac));
    return out;
}

std::vector<double> tabled_scan(const Series& s, const Kernel& k, const std::vector<double>& grid,
                                double frac) {
    std::vector<double> out;
    out.reserve(grid.size());
    for (double xi : grid) out.push_back(cv_objective(s, k, xi, frac));
    return out;
}

template <typename Fn>
double best_of(int repeats, const Fn& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        best = std::min(best, secs);
    }
    return best;
}

double max_abs_gap(const std::vector<double>& a, const std::vector<double>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

void bench_kernel(const char* label, const Kernel& k, long T) {
    const Series s = bench_series(T);
    CvPlan plan;
    plan.xi_grid = CvPlan::default_grid();
    plan.checkpoints = {0.9};

    std::vector<double> ref, tab;
    CvSelection sel;
    const double t_ref = best_of(2, [&] { ref = reference_scan(s, k, plan.xi_grid, 0.9); });
    const double t_tab = best_of(3, [&] { tab = tabled_scan(s, k, plan.xi_grid, 0.9); });
    const double t_par = best_of(3, [&] { sel = select_xi(s, k, plan, 0.9); });

    const double agree =
        std::max(max_abs_gap(ref, tab), max_abs_gap(ref, sel.objectives));
    std::printf("%-14s T=%-5ld ref %8.3f ms   tabled %8.3f ms (%5.1fx)   scheduled %8.3f ms "
                "(%5.1fx)   max|diff| %.2e   xi*=%.3f\n",
                label, T, 1e3 * t_ref, 1e3 * t_tab, t_ref / t_tab, 1e3 * t_par, t_ref / t_par,
                agree, sel.xi_star);
}

}  // namespace

int main() {
#ifdef _OPENMP
    std::printf("omp threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP\n");
#endif
    std::printf("61-point grid on [1,20], objective at s=0.9; best of repeats\n\n");
    for (long T : {1000L, 2000L}) {
        bench_kernel("uniform", Kernel::uniform(), T);
        bench_kernel("epanechnikov", Kernel::epanechnikov(), T);
        bench_kernel("gaussian", Kernel::gaussian(), T);
        bench_kernel("exponential", Kernel::exponential(), T);
    }
    return 0;
}
