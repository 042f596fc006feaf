#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "seqcv/kernels.hpp"
#include "seqcv/series.hpp"

namespace seqcv {

// Bandwidths are searched through the reparameterization h = T / xi with
// xi on a fixed ascending grid in [1, xi_max]. Working in xi keeps the
// search domain compact and T-free; the default is 61 equispaced points
// on [1, 20].
struct CvPlan {
    std::vector<double> xi_grid;
    double s0 = 0.1;                   // burn-in fraction; first checkpoint must exceed it
    std::vector<double> checkpoints;   // ascending fractions in (s0, 1]
    bool refine = false;               // optional golden-section polish (diagnostic only)

    static std::vector<double> default_grid(double xi_min = 1.0, double xi_max = 20.0,
                                            int points = 61);
    void validate() const;
};

// CV_s(h): mean squared one-step prediction error up to floor(T*s),
// normalized by the design horizon T.
double cv_criterion(const Series& s, const Kernel& k, double h, double s_frac);

// Reduced objective C_{T,s}(T/xi). Differs from CV_s by the h-free term
// T^{-1} sum Y_i^2, so both have the same argmin in xi.
double cv_objective(const Series& s, const Kernel& k, double xi, double s_frac);

struct CvSelection {
    double s = 0.0;                  // checkpoint fraction
    long index = 0;                  // floor(T*s)
    std::vector<double> objectives;  // per grid point
    std::size_t argmin = 0;
    double xi_star = 0.0;
    double h_star = 0.0;
    bool tie = false;                        // several grid points share the exact minimum
    std::optional<double> refined_xi;        // golden-section polish, if requested
};

// Grid argmin of the reduced objective at one checkpoint. Ties resolve to
// the smallest xi (heaviest smoothing).
CvSelection select_xi(const Series& s, const Kernel& k, const CvPlan& plan, double s_frac);

// Full checkpoint schedule in one pass per grid point: each xi column is
// an independent prediction stream whose objective partial sums are
// snapshotted at every checkpoint (so scanning N checkpoints costs the
// same as scanning the last one). Columns run in parallel; assembly is
// in fixed grid order, so results do not depend on thread count.
struct ScheduleResult {
    std::vector<CvSelection> checkpoints;
    double pre_checkpoint_xi = 1.0;  // bandwidth used before the first checkpoint
    long horizon = 0;

    // Piecewise-constant, right-continuous bandwidth path: index i uses the
    // selection from the latest checkpoint index <= i, and the smallest grid
    // xi before the first checkpoint.
    double xi_at(long i) const;
    double bandwidth_at(long i) const;
};

ScheduleResult run_schedule(const Series& s, const Kernel& k, const CvPlan& plan);

}  // namespace seqcv
