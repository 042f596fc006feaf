#include "seqcv/crossval.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "seqcv/smoothing.hpp"

namespace seqcv {

namespace {

void check_fraction(double s_frac) {
    if (!(s_frac > 0.0) || s_frac > 1.0)
        throw DomainError("monitoring fraction must lie in (0, 1], got " + std::to_string(s_frac));
}

long fraction_index(const Series& s, double s_frac) {
    check_fraction(s_frac);
    const long up = static_cast<long>(std::floor(static_cast<double>(s.horizon) * s_frac));
    if (up > s.length())
        throw IndexError("monitoring fraction needs " + std::to_string(up) +
                         " observations, sample has " + std::to_string(s.length()));
    return up;
}

// One cross-validation column: objective partial sums for a single xi,
// snapshotted at each checkpoint index (ascending; indices below 2
// produce the empty-sum value 0).
void column_pass(const std::vector<double>& y, double T, const Kernel& k, double xi,
                 const std::vector<long>& chk_idx, double* out_obj) {
    const double h = T / xi;
    const long last = chk_idx.back();
    std::vector<double> pred;
    if (last >= 2) {
        const WeightTable table = make_weight_table(k, h, last - 1);
        loo_predictions_tabled(y, last, table, pred);
    }
    double cross = 0.0, sq = 0.0;
    long i = 2;
    for (std::size_t c = 0; c < chk_idx.size(); ++c) {
        for (; i <= chk_idx[c]; ++i) {
            const double p = pred[i];
            cross += y[i - 1] * p;
            sq += p * p;
        }
        out_obj[c] = (-2.0 * cross + sq) / T;
    }
}

double check_xi(double xi) {
    if (!(xi >= 1.0) || !std::isfinite(xi))
        throw DomainError("xi must be >= 1 and finite, got " + std::to_string(xi));
    return xi;
}

// Golden-section polish inside [a, b]; the objective need not be exactly
// unimodal there, the result is diagnostic only.
double golden_section(const Series& s, const Kernel& k, double s_frac, double a, double b) {
    constexpr double invphi = 0.6180339887498948482;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = cv_objective(s, k, x1, s_frac);
    double f2 = cv_objective(s, k, x2, s_frac);
    while (b - a > 1e-6) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = cv_objective(s, k, x1, s_frac);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = cv_objective(s, k, x2, s_frac);
        }
    }
    return 0.5 * (a + b);
}

CvSelection pick(const Series& s, const Kernel& k, const CvPlan& plan, double s_frac, long index,
                 std::vector<double> objectives) {
    CvSelection sel;
    sel.s = s_frac;
    sel.index = index;
    sel.objectives = std::move(objectives);
    std::size_t best = 0;
    for (std::size_t g = 1; g < sel.objectives.size(); ++g)
        if (sel.objectives[g] < sel.objectives[best]) best = g;  // ties keep the smaller xi
    sel.argmin = best;
    sel.xi_star = plan.xi_grid[best];
    sel.h_star = static_cast<double>(s.horizon) / sel.xi_star;
    std::size_t hits = 0;
    for (double v : sel.objectives)
        if (v == sel.objectives[best]) ++hits;
    sel.tie = hits > 1;
    if (plan.refine) {
        const std::size_t lo = best > 0 ? best - 1 : best;
        const std::size_t hi = best + 1 < plan.xi_grid.size() ? best + 1 : best;
        if (lo < hi)
            sel.refined_xi = golden_section(s, k, s_frac, plan.xi_grid[lo], plan.xi_grid[hi]);
        else
            sel.refined_xi = sel.xi_star;
    }
    return sel;
}

}  // namespace

std::vector<double> CvPlan::default_grid(double xi_min, double xi_max, int points) {
    if (!(xi_min >= 1.0) || !(xi_max > xi_min) || points < 2)
        throw ConfigError("xi grid needs xi_min >= 1, xi_max > xi_min and at least 2 points");
    std::vector<double> g(points);
    for (int i = 0; i < points; ++i)
        g[i] = xi_min + (xi_max - xi_min) * static_cast<double>(i) / (points - 1);
    return g;
}

void CvPlan::validate() const {
    if (xi_grid.empty()) throw ConfigError("xi grid is empty");
    for (double x : xi_grid)
        if (!(x >= 1.0) || !std::isfinite(x))
            throw ConfigError("xi grid values must be finite and >= 1");
    for (std::size_t i = 1; i < xi_grid.size(); ++i)
        if (!(xi_grid[i] > xi_grid[i - 1])) throw ConfigError("xi grid must be strictly ascending");
    if (!(s0 > 0.0) || !(s0 < 1.0)) throw ConfigError("s0 must lie in (0, 1)");
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        const double c = checkpoints[i];
        if (!(c > s0) || c > 1.0)
            throw ConfigError("checkpoints must lie in (s0, 1], got " + std::to_string(c));
        if (i > 0 && !(c > checkpoints[i - 1]))
            throw ConfigError("checkpoints must be strictly ascending");
    }
}

double cv_criterion(const Series& s, const Kernel& k, double h, double s_frac) {
    const long up = fraction_index(s, s_frac);
    if (up < 2) return 0.0;
    const WeightTable table = make_weight_table(k, h, up - 1);
    std::vector<double> pred;
    loo_predictions_tabled(s.values, up, table, pred);
    double acc = 0.0;
    for (long i = 2; i <= up; ++i) {
        const double e = s.values[i - 1] - pred[i];
        acc += e * e;
    }
    return acc / static_cast<double>(s.horizon);
}

double cv_objective(const Series& s, const Kernel& k, double xi, double s_frac) {
    check_xi(xi);
    const long up = fraction_index(s, s_frac);
    std::vector<long> chk{up};
    double obj = 0.0;
    if (up >= 2) column_pass(s.values, static_cast<double>(s.horizon), k, xi, chk, &obj);
    return obj;
}

CvSelection select_xi(const Series& s, const Kernel& k, const CvPlan& plan, double s_frac) {
    plan.validate();
    const long up = fraction_index(s, s_frac);
    const std::size_t n = plan.xi_grid.size();
    std::vector<double> obj(n, 0.0);
    const std::vector<long> chk{up};
    if (up >= 2) {
#pragma omp parallel for schedule(dynamic)
        for (long g = 0; g < static_cast<long>(n); ++g)
            column_pass(s.values, static_cast<double>(s.horizon), k, plan.xi_grid[g], chk,
                        &obj[g]);
    }
    return pick(s, k, plan, s_frac, up, std::move(obj));
}

double ScheduleResult::xi_at(long i) const {
    double xi = pre_checkpoint_xi;
    for (const CvSelection& c : checkpoints) {
        if (c.index <= i) xi = c.xi_star;
        else break;
    }
    return xi;
}

double ScheduleResult::bandwidth_at(long i) const {
    return static_cast<double>(horizon) / xi_at(i);
}

ScheduleResult run_schedule(const Series& s, const Kernel& k, const CvPlan& plan) {
    plan.validate();
    if (plan.checkpoints.empty()) throw ConfigError("schedule needs at least one checkpoint");
    std::vector<long> chk_idx;
    chk_idx.reserve(plan.checkpoints.size());
    for (double c : plan.checkpoints) chk_idx.push_back(fraction_index(s, c));

    const std::size_t n = plan.xi_grid.size();
    const std::size_t m = chk_idx.size();
    std::vector<double> obj(n * m);  // row per xi, column per checkpoint
#pragma omp parallel for schedule(dynamic)
    for (long g = 0; g < static_cast<long>(n); ++g)
        column_pass(s.values, static_cast<double>(s.horizon), k, plan.xi_grid[g], chk_idx,
                    &obj[g * m]);

    ScheduleResult res;
    res.pre_checkpoint_xi = plan.xi_grid.front();
    res.horizon = s.horizon;
    res.checkpoints.reserve(m);
    for (std::size_t c = 0; c < m; ++c) {
        std::vector<double> col(n);
        for (std::size_t g = 0; g < n; ++g) col[g] = obj[g * m + c];
        res.checkpoints.push_back(pick(s, k, plan, plan.checkpoints[c], chk_idx[c], std::move(col)));
    }
    return res;
}

}  // namespace seqcv
