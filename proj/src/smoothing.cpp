#include "seqcv/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace seqcv {

namespace {

void check_bandwidth(double h) {
    if (!(h > 0.0) || !std::isfinite(h))
        throw DomainError("bandwidth must be positive and finite, got " + std::to_string(h));
}

void check_index(const Series& s, long i, long lowest) {
    if (i < lowest || i > s.length())
        throw IndexError("index " + std::to_string(i) + " outside [" + std::to_string(lowest) +
                         ", " + std::to_string(s.length()) + "]");
}

[[noreturn]] void throw_degenerate(const char* what, double h, const Kernel& k, long i) {
    throw DegenerateWindowError(std::string(what) + " at index " + std::to_string(i) +
                                " has zero weight sum (kernel=" + k.name() +
                                ", h=" + std::to_string(h) + ")");
}

}  // namespace

double smoother_raw(const Series& s, const Kernel& k, double h, long i) {
    check_bandwidth(h);
    check_index(s, i, 1);
    double acc = 0.0;
    for (long j = 1; j <= i; ++j) acc += k(static_cast<double>(i - j) / h) * s.values[j - 1];
    return acc / h;
}

double smoother_normed(const Series& s, const Kernel& k, double h, long i) {
    check_bandwidth(h);
    check_index(s, i, 1);
    double num = 0.0, den = 0.0;
    for (long j = 1; j <= i; ++j) {
        const double w = k(static_cast<double>(i - j) / h);
        num += w * s.values[j - 1];
        den += w;
    }
    if (den == 0.0) throw_degenerate("smoother window", h, k, i);
    return num / den;
}

double loo_predict(const Series& s, const Kernel& k, double h, long i) {
    check_bandwidth(h);
    check_index(s, i, 2);
    double num = 0.0, den = 0.0;
    for (long j = 1; j < i; ++j) {
        const double w = k(static_cast<double>(i - j) / h);
        num += w * s.values[j - 1];
        den += w;
    }
    if (den == 0.0) throw_degenerate("prediction window", h, k, i);
    return num / den;
}

WeightTable make_weight_table(const Kernel& k, double h, long max_lag_needed) {
    check_bandwidth(h);
    long max_lag = std::max<long>(0, max_lag_needed);
    if (k.compact()) {
        const double cutoff = h * k.support_bound();
        if (cutoff < static_cast<double>(max_lag))
            max_lag = static_cast<long>(std::floor(cutoff));
    }
    WeightTable t;
    t.h = h;
    t.w.resize(max_lag + 1);
    t.prefix_loo.resize(max_lag + 1);
    t.prefix_all.resize(max_lag + 1);
    for (long d = 0; d <= max_lag; ++d) t.w[d] = k(static_cast<double>(d) / h);
    t.prefix_loo[0] = 0.0;
    t.prefix_all[0] = t.w[0];
    for (long d = 1; d <= max_lag; ++d) {
        t.prefix_loo[d] = t.prefix_loo[d - 1] + t.w[d];
        t.prefix_all[d] = t.prefix_all[d - 1] + t.w[d];
    }
    return t;
}

void loo_predictions_tabled(const std::vector<double>& y, long i_max, const WeightTable& t,
                            std::vector<double>& out) {
    const long n = static_cast<long>(y.size());
    if (i_max > n) throw IndexError("loo_predictions_tabled: i_max exceeds sample length");
    out.assign(static_cast<std::size_t>(std::max<long>(i_max + 1, 2)), 0.0);
    const long W = t.max_lag();
    const double* yv = y.data();
    const double* wv = t.w.data();
    for (long i = 2; i <= i_max; ++i) {
        const long dmax = std::min<long>(W, i - 1);
        double num = 0.0;
        for (long d = 1; d <= dmax; ++d) num += wv[d] * yv[i - 1 - d];
        const double den = t.prefix_loo[dmax];
        if (den == 0.0)
            throw DegenerateWindowError("prediction window at index " + std::to_string(i) +
                                        " has zero weight sum (h=" + std::to_string(t.h) + ")");
        out[i] = num / den;
    }
}

double smoother_normed_tabled(const std::vector<double>& y, long i, const WeightTable& t) {
    if (i < 1 || i > static_cast<long>(y.size()))
        throw IndexError("smoother index " + std::to_string(i) + " outside sample");
    const long dmax = std::min<long>(t.max_lag(), i - 1);
    double num = 0.0;
    const double* yv = y.data();
    const double* wv = t.w.data();
    for (long d = 0; d <= dmax; ++d) num += wv[d] * yv[i - 1 - d];
    const double den = t.prefix_all[dmax];
    if (den == 0.0)
        throw DegenerateWindowError("smoother window at index " + std::to_string(i) +
                                    " has zero weight sum (h=" + std::to_string(t.h) + ")");
    return num / den;
}

std::vector<double> smoother_path(const Series& s, const Kernel& k, double h, long i_first,
                                  long i_last) {
    check_bandwidth(h);
    check_index(s, i_first, 1);
    check_index(s, i_last, i_first);
    const WeightTable t = make_weight_table(k, h, i_last - 1);
    std::vector<double> path;
    path.reserve(i_last - i_first + 1);
    for (long i = i_first; i <= i_last; ++i) path.push_back(smoother_normed_tabled(s.values, i, t));
    return path;
}

SequentialPredictor::SequentialPredictor(const Kernel& k, double h) : kernel_(k), h_(h) {
    check_bandwidth(h);
    if (k.name() == "exponential" && !k.compact()) {
        strategy_ = Strategy::recursive;
        rho_ = std::exp(-1.0 / h);
    } else if (k.compact()) {
        strategy_ = Strategy::window;
    } else {
        strategy_ = Strategy::full_history;
    }
    if (strategy_ != Strategy::recursive) {
        // Tables cover every lag the caller can reach; grown on demand.
        table_ = make_weight_table(kernel_, h_, k.compact() ? std::numeric_limits<long>::max() / 2 : 1024);
    }
}

double SequentialPredictor::predict_next() const {
    const long n = count_;  // incoming index is n + 1
    if (strategy_ == Strategy::recursive) {
        // Weights for index n+1 are rho * (weights for index n); the common
        // factor cancels in the ratio, so num_/den_ is already the prediction.
        return num_ / den_;
    }
    const long dmax = std::min<long>(table_.max_lag(), n);
    double num = 0.0;
    for (long d = 1; d <= dmax; ++d) num += table_.w[d] * history_[n - d];
    const double den = table_.prefix_loo[dmax];
    if (den == 0.0)
        throw DegenerateWindowError("prediction window at index " + std::to_string(n + 1) +
                                    " has zero weight sum (kernel=" + kernel_.name() +
                                    ", h=" + std::to_string(h_) + ")");
    return num / den;
}

std::optional<double> SequentialPredictor::step(double y) {
    std::optional<double> prediction;
    if (count_ >= 1) prediction = predict_next();
    if (strategy_ == Strategy::recursive) {
        num_ = rho_ * num_ + y;
        den_ = rho_ * den_ + 1.0;
    } else {
        if (strategy_ == Strategy::full_history &&
            count_ >= table_.max_lag())  // grow the unbounded-support table
            table_ = make_weight_table(kernel_, h_, 2 * table_.max_lag() + 1);
        history_.push_back(y);
    }
    ++count_;
    return prediction;
}

}  // namespace seqcv
