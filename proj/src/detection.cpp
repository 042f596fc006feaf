#include "seqcv/detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "seqcv/smoothing.hpp"

namespace seqcv {

namespace {

// Statistic path of one monitored series: normalized smoother values,
// the bandwidth in force at each index and the resolved start index.
struct StatPath {
    std::vector<double> values;
    std::vector<double> bandwidths;
    long start = 2;
};

const WeightTable& table_for(std::vector<std::pair<double, WeightTable>>& cache, const Kernel& k,
                             double h, long max_lag) {
    for (const auto& entry : cache)
        if (entry.first == h) return entry.second;
    cache.emplace_back(h, make_weight_table(k, h, max_lag));
    return cache.back().second;
}

StatPath compute_path(const Series& s, const DetectorSpec& spec) {
    const long n = s.length();
    StatPath out;
    out.values.resize(static_cast<std::size_t>(n));
    out.bandwidths.resize(static_cast<std::size_t>(n));

    double first_checkpoint_h = spec.bandwidth.fixed_h;
    if (spec.bandwidth.source == BandwidthSpec::Source::fixed) {
        const double h = spec.bandwidth.fixed_h;
        const WeightTable table = make_weight_table(spec.kernel, h, n - 1);
        for (long i = 1; i <= n; ++i) {
            out.values[i - 1] = smoother_normed_tabled(s.values, i, table);
            out.bandwidths[i - 1] = h;
        }
    } else {
        // Checkpoints lying beyond the observed length are still in the
        // future; drop them so a truncated series schedules exactly like
        // the full one did up to the truncation point.
        CvPlan plan = spec.bandwidth.plan;
        std::vector<double> reachable;
        for (double c : plan.checkpoints) {
            const double idx = std::floor(static_cast<double>(s.horizon) * c);
            if (idx <= static_cast<double>(n)) reachable.push_back(c);
        }
        ScheduleResult sched;
        bool scheduled = false;
        if (!reachable.empty()) {
            plan.checkpoints = std::move(reachable);
            sched = run_schedule(s, spec.kernel, plan);
            scheduled = true;
        }
        const double horizon = static_cast<double>(s.horizon);
        first_checkpoint_h = scheduled ? horizon / sched.checkpoints.front().xi_star
                                       : horizon / plan.xi_grid.front();
        std::vector<std::pair<double, WeightTable>> cache;
        for (long i = 1; i <= n; ++i) {
            const double h = scheduled ? sched.bandwidth_at(i) : horizon / plan.xi_grid.front();
            out.values[i - 1] = smoother_normed_tabled(s.values, i, table_for(cache, spec.kernel, h, n - 1));
            out.bandwidths[i - 1] = h;
        }
    }

    if (spec.start.kind == StartRule::Kind::fixed_index) {
        out.start = spec.start.index;
    } else {
        out.start = std::min(spec.start.cap, static_cast<long>(std::llround(first_checkpoint_h)));
        if (out.start < 2) out.start = 2;
    }
    return out;
}

bool crosses(Direction d, double value, double c) {
    return d == Direction::lower_crossing ? value < c : value > c;
}

std::optional<long> first_crossing(const StatPath& p, Direction d, double c) {
    const long n = static_cast<long>(p.values.size());
    for (long i = p.start; i <= n; ++i)
        if (crosses(d, p.values[i - 1], c)) return i;
    return std::nullopt;
}

struct ArlEstimate {
    double arl = 0.0;
    double se = 0.0;
    double censored = 0.0;
};

ArlEstimate arl_at(const std::vector<StatPath>& paths, long horizon, Direction d, double c) {
    ArlEstimate est;
    double sum = 0.0, sumsq = 0.0;
    long censored = 0;
    for (const StatPath& p : paths) {
        const std::optional<long> sig = first_crossing(p, d, c);
        const double rl = static_cast<double>(sig ? *sig : horizon);
        if (!sig) ++censored;
        sum += rl;
        sumsq += rl * rl;
    }
    const double r = static_cast<double>(paths.size());
    est.arl = sum / r;
    const double var = std::max(0.0, (sumsq - r * est.arl * est.arl) / (r - 1.0));
    est.se = std::sqrt(var / r);
    est.censored = static_cast<double>(censored) / r;
    return est;
}

}  // namespace

BandwidthSpec BandwidthSpec::fixed(double h) {
    BandwidthSpec b;
    b.source = Source::fixed;
    b.fixed_h = h;
    return b;
}

BandwidthSpec BandwidthSpec::cv_driven(CvPlan plan) {
    BandwidthSpec b;
    b.source = Source::cv_path;
    b.plan = std::move(plan);
    return b;
}

StartRule StartRule::fixed(long index) {
    StartRule r;
    r.kind = Kind::fixed_index;
    r.index = index;
    return r;
}

StartRule StartRule::capped_first_bandwidth(long cap) {
    StartRule r;
    r.kind = Kind::capped_first_bandwidth;
    r.cap = cap;
    return r;
}

void DetectorSpec::validate() const {
    if (!std::isfinite(control_limit)) throw ConfigError("control limit must be finite");
    if (bandwidth.source == BandwidthSpec::Source::fixed) {
        if (!(bandwidth.fixed_h > 0.0) || !std::isfinite(bandwidth.fixed_h))
            throw ConfigError("fixed bandwidth must be positive and finite");
    } else {
        bandwidth.plan.validate();
        if (bandwidth.plan.checkpoints.empty())
            throw ConfigError("cv-driven bandwidth needs at least one checkpoint");
    }
    if (start.kind == StartRule::Kind::fixed_index) {
        if (start.index < 2) throw ConfigError("start index must be at least 2");
    } else {
        if (start.cap < 2) throw ConfigError("start cap must be at least 2");
    }
}

RunResult run_detector(const Series& series, const DetectorSpec& spec) {
    spec.validate();
    StatPath p = compute_path(series, spec);
    if (series.length() < p.start)
        throw IndexError("series of length " + std::to_string(series.length()) +
                         " ends before monitoring starts at " + std::to_string(p.start));
    RunResult res;
    res.signal_index = first_crossing(p, spec.direction, spec.control_limit);
    res.path = std::move(p.values);
    res.bandwidth_path = std::move(p.bandwidths);
    res.start_index = p.start;
    return res;
}

Calibration calibrate_control_limit(const ScenarioParams& null_params, const ErrorModel& model,
                                    const DetectorSpec& spec, double target_arl0,
                                    int replications, std::uint64_t seed) {
    spec.validate();
    null_params.validate();
    model.validate();
    if (!(target_arl0 > 0.0) || !std::isfinite(target_arl0))
        throw ConfigError("target average run length must be positive and finite");
    if (replications < 2) throw ConfigError("calibration needs at least 2 replications");

    // The statistic paths do not depend on c, so simulate them once and
    // rescan cheaply per bisection step.
    std::vector<StatPath> paths(static_cast<std::size_t>(replications));
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < replications; ++rep) {
        const Series s = simulate_scenario(null_params, model, seed,
                                           static_cast<std::uint64_t>(rep));
        paths[static_cast<std::size_t>(rep)] = compute_path(s, spec);
    }

    double lo_val = std::numeric_limits<double>::infinity();
    double hi_val = -std::numeric_limits<double>::infinity();
    for (const StatPath& p : paths)
        for (long i = p.start; i <= static_cast<long>(p.values.size()); ++i) {
            lo_val = std::min(lo_val, p.values[i - 1]);
            hi_val = std::max(hi_val, p.values[i - 1]);
        }

    const long horizon = null_params.horizon;
    // Orient the bracket so the end named ca always has ARL >= target:
    // the no-signal end (ARL = horizon by censoring) for each direction.
    double ca, cb;
    if (spec.direction == Direction::lower_crossing) {
        ca = lo_val;
        cb = std::nextafter(hi_val, std::numeric_limits<double>::infinity());
    } else {
        ca = hi_val;
        cb = std::nextafter(lo_val, -std::numeric_limits<double>::infinity());
    }
    const ArlEstimate at_ca = arl_at(paths, horizon, spec.direction, ca);
    const ArlEstimate at_cb = arl_at(paths, horizon, spec.direction, cb);
    if (at_ca.arl < target_arl0 || at_cb.arl > target_arl0)
        throw CalibrationError(
            "no control limit brackets the target: ARL ranges from " + std::to_string(at_cb.arl) +
            " to " + std::to_string(at_ca.arl) + " but the target is " +
            std::to_string(target_arl0) + " (run lengths are censored at " +
            std::to_string(horizon) + ")");

    Calibration cal;
    cal.replications = replications;
    double c = 0.5 * (ca + cb);
    ArlEstimate est = arl_at(paths, horizon, spec.direction, c);
    for (int step = 1; step <= 200; ++step) {
        cal.bisection_steps = step;
        if (std::fabs(est.arl - target_arl0) <= 2.0 * est.se || std::fabs(cb - ca) < 1e-3) break;
        if (est.arl >= target_arl0) ca = c;
        else cb = c;
        c = 0.5 * (ca + cb);
        est = arl_at(paths, horizon, spec.direction, c);
    }
    cal.control_limit = c;
    cal.achieved_arl = est.arl;
    cal.standard_error = est.se;
    cal.censored_frac = est.censored;
    return cal;
}

DelayEstimate mean_delay(const ScenarioParams& alt_params, const ErrorModel& model,
                         const DetectorSpec& spec, int replications, std::uint64_t seed) {
    spec.validate();
    alt_params.validate();
    model.validate();
    if (replications < 2) throw ConfigError("delay estimation needs at least 2 replications");

    std::vector<double> delays(static_cast<std::size_t>(replications));
    std::vector<unsigned char> censored(static_cast<std::size_t>(replications), 0);
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < replications; ++rep) {
        const Series s = simulate_scenario(alt_params, model, seed,
                                           static_cast<std::uint64_t>(rep));
        const StatPath p = compute_path(s, spec);
        const std::optional<long> sig = first_crossing(p, spec.direction, spec.control_limit);
        const long run = sig ? *sig : alt_params.horizon;
        if (!sig) censored[static_cast<std::size_t>(rep)] = 1;
        delays[static_cast<std::size_t>(rep)] =
            std::max(0.0, static_cast<double>(run - alt_params.q2));
    }

    DelayEstimate est;
    est.replications = replications;
    double sum = 0.0;
    long ncens = 0;
    for (int rep = 0; rep < replications; ++rep) {
        sum += delays[static_cast<std::size_t>(rep)];
        ncens += censored[static_cast<std::size_t>(rep)];
    }
    est.mean_delay = sum / replications;
    double ss = 0.0;
    for (double d : delays) {
        const double dev = d - est.mean_delay;
        ss += dev * dev;
    }
    est.standard_error = std::sqrt(ss / (replications - 1.0) / replications);
    est.censored_frac = static_cast<double>(ncens) / replications;
    return est;
}

}  // namespace seqcv
