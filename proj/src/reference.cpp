#include "seqcv/reference.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqcv/errors.hpp"

namespace seqcv::reference {

namespace {

double loo_at(const Series& s, const Kernel& k, double h, long i) {
    double num = 0.0, den = 0.0;
    for (long j = 1; j < i; ++j) {
        const double w = k(static_cast<double>(i - j) / h);
        num += w * s.values[j - 1];
        den += w;
    }
    if (den == 0.0)
        throw DegenerateWindowError("reference prediction window at index " + std::to_string(i) +
                                    " has zero weight sum");
    return num / den;
}

long upper_index(const Series& s, double s_frac) {
    if (!(s_frac > 0.0) || s_frac > 1.0)
        throw DomainError("monitoring fraction must lie in (0, 1], got " + std::to_string(s_frac));
    const long up = static_cast<long>(std::floor(static_cast<double>(s.horizon) * s_frac));
    if (up > s.length())
        throw IndexError("monitoring fraction needs " + std::to_string(up) +
                         " observations, sample has " + std::to_string(s.length()));
    return up;
}

}  // namespace

std::vector<double> loo_predictions(const Series& s, const Kernel& k, double h, long i_max) {
    std::vector<double> out(static_cast<std::size_t>(std::max<long>(i_max + 1, 2)), 0.0);
    for (long i = 2; i <= i_max; ++i) out[i] = loo_at(s, k, h, i);
    return out;
}

std::vector<double> smoother_path(const Series& s, const Kernel& k, double h, long i_max) {
    std::vector<double> out(static_cast<std::size_t>(i_max + 1), 0.0);
    for (long i = 1; i <= i_max; ++i) {
        double num = 0.0, den = 0.0;
        for (long j = 1; j <= i; ++j) {
            const double w = k(static_cast<double>(i - j) / h);
            num += w * s.values[j - 1];
            den += w;
        }
        if (den == 0.0)
            throw DegenerateWindowError("reference smoother window at index " + std::to_string(i) +
                                        " has zero weight sum");
        out[i] = num / den;
    }
    return out;
}

double cv_criterion(const Series& s, const Kernel& k, double h, double s_frac) {
    const long up = upper_index(s, s_frac);
    double acc = 0.0;
    for (long i = 2; i <= up; ++i) {
        const double e = s.values[i - 1] - loo_at(s, k, h, i);
        acc += e * e;
    }
    return acc / static_cast<double>(s.horizon);
}

double cv_objective(const Series& s, const Kernel& k, double xi, double s_frac) {
    if (!(xi >= 1.0) || !std::isfinite(xi))
        throw DomainError("xi must be >= 1 and finite, got " + std::to_string(xi));
    const double h = static_cast<double>(s.horizon) / xi;
    const long up = upper_index(s, s_frac);
    double cross = 0.0, sq = 0.0;
    for (long i = 2; i <= up; ++i) {
        const double p = loo_at(s, k, h, i);
        cross += s.values[i - 1] * p;
        sq += p * p;
    }
    const double T = static_cast<double>(s.horizon);
    return -2.0 * cross / T + sq / T;
}

}  // namespace seqcv::reference
