#pragma once

#include <optional>
#include <vector>

#include "seqcv/kernels.hpp"
#include "seqcv/series.hpp"

namespace seqcv {

// All statistics below are one-sided weighted sums over the observed past.
// With bandwidth h > 0 and 1-based index i:
//
//   raw_i    = (1/h) * sum_{j=1..i}   K((i-j)/h) Y_j
//   normed_i =        sum_{j=1..i}   K((i-j)/h) Y_j / sum_{j=1..i}   K((i-j)/h)
//   loo_i    =        sum_{j=1..i-1} K((i-j)/h) Y_j / sum_{j=1..i-1} K((i-j)/h)
//
// loo_i depends on Y_1..Y_{i-1} only, so it is a genuine one-step-ahead
// prediction of Y_i; normed_i additionally folds Y_i in (lag 0).

double smoother_raw(const Series& s, const Kernel& k, double h, long i);
double smoother_normed(const Series& s, const Kernel& k, double h, long i);
double loo_predict(const Series& s, const Kernel& k, double h, long i);  // i >= 2

// Lag-weight table w[d] = K(d/h). For compact kernels the table ends at
// floor(h * support_bound); beyond that every weight is exactly zero.
// prefix_loo[d] and prefix_all[d] are the running weight sums used as
// prediction / smoother denominators.
struct WeightTable {
    double h = 0.0;
    std::vector<double> w;
    std::vector<double> prefix_loo;  // w[1] + ... + w[d]   (prefix_loo[0] = 0)
    std::vector<double> prefix_all;  // w[0] + ... + w[d]
    long max_lag() const { return static_cast<long>(w.size()) - 1; }
};

WeightTable make_weight_table(const Kernel& k, double h, long max_lag_needed);

// Batch one-step-ahead predictions out[i] = loo_i for i = 2..i_max
// (out is 1-based with out.size() == i_max + 1; out[0], out[1] unused).
// This is the hot inner kernel of the cross-validation scan.
void loo_predictions_tabled(const std::vector<double>& y, long i_max, const WeightTable& t,
                            std::vector<double>& out);

// Normed smoother at index i (1-based) from a weight table.
double smoother_normed_tabled(const std::vector<double>& y, long i, const WeightTable& t);

// Normed smoother for every i in [i_first, i_last] at fixed bandwidth.
std::vector<double> smoother_path(const Series& s, const Kernel& k, double h, long i_first,
                                  long i_last);

// Streaming one-step-ahead predictor. step(y) first emits the prediction
// for the incoming observation (nullopt for the very first one, which has
// no past), then absorbs y. Matches the batch loo values:
//   compact kernels   - sliding window of the last floor(h*bound) points,
//   exponential       - exact geometric recursion (the normalizing ratio
//                       cancels the common factor, one multiply per step),
//   other unbounded   - full-history recomputation.
class SequentialPredictor {
  public:
    enum class Strategy { window, recursive, full_history };

    SequentialPredictor(const Kernel& k, double h);

    std::optional<double> step(double y);
    long count() const { return count_; }
    Strategy strategy() const { return strategy_; }

  private:
    double predict_next() const;

    Kernel kernel_;
    double h_;
    Strategy strategy_;
    WeightTable table_;       // window strategy
    std::vector<double> history_;
    double rho_ = 0.0;        // recursive strategy
    double num_ = 0.0;
    double den_ = 0.0;
    long count_ = 0;
};

}  // namespace seqcv
