#pragma once

#include <vector>

#include "seqcv/kernels.hpp"
#include "seqcv/series.hpp"

// Serial reference implementations: line-by-line transcriptions of the
// defining sums, evaluated freshly for every index (O(T^2) per pass, no
// sliding windows, no recursions, no weight tables). They exist to check
// the optimized streaming/tabled paths and as the baseline leg of the
// benchmark; they are deliberately naive and must stay that way.
namespace seqcv::reference {

// out[i] = loo prediction for index i, i = 2..i_max (1-based, slot 0/1 unused).
std::vector<double> loo_predictions(const Series& s, const Kernel& k, double h, long i_max);

// Normed smoother for every index 1..i_max.
std::vector<double> smoother_path(const Series& s, const Kernel& k, double h, long i_max);

// CV_s(h)  = T^{-1} sum_{i=2..floor(Ts)} (Y_i - loo_i)^2
double cv_criterion(const Series& s, const Kernel& k, double h, double s_frac);

// C_{T,s}(h) = -(2/T) sum Y_i loo_i + (1/T) sum loo_i^2, same index range,
// evaluated at h = horizon / xi.
double cv_objective(const Series& s, const Kernel& k, double xi, double s_frac);

}  // namespace seqcv::reference
