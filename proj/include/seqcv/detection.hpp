#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqcv/crossval.hpp"
#include "seqcv/errors.hpp"
#include "seqcv/kernels.hpp"
#include "seqcv/series.hpp"
#include "seqcv/simulation.hpp"

namespace seqcv {

// Which crossing of the control limit raises the signal. The historical
// +/- naming for one-sided charts is ambiguous, so the comparison is
// spelled out: upper_crossing signals when the statistic exceeds c,
// lower_crossing when it falls below c.
enum class Direction {
    upper_crossing,
    lower_crossing,
};

// Where the monitoring bandwidth comes from: a fixed value, or the
// cross-validation schedule re-selected at the plan's checkpoints. In the
// schedule case the bandwidth before the first checkpoint uses the
// smallest grid value of xi (the widest window on the grid).
struct BandwidthSpec {
    enum class Source { fixed, cv_path };
    Source source = Source::fixed;
    double fixed_h = 1.0;
    CvPlan plan;

    static BandwidthSpec fixed(double h);
    static BandwidthSpec cv_driven(CvPlan plan);
};

// First monitored index. fixed_index uses the given value. The
// capped_first_bandwidth preset takes the bandwidth active at the first
// checkpoint, rounds it, and caps it (a quoted operational rule, odd as
// it reads); the result is clamped to at least 2.
struct StartRule {
    enum class Kind { fixed_index, capped_first_bandwidth };
    Kind kind = Kind::fixed_index;
    long index = 2;
    long cap = 25;

    static StartRule fixed(long index);
    static StartRule capped_first_bandwidth(long cap = 25);
};

struct DetectorSpec {
    Direction direction = Direction::lower_crossing;
    double control_limit = 0.0;
    Kernel kernel = Kernel::gaussian();
    BandwidthSpec bandwidth;
    StartRule start;

    void validate() const;
};

// One monitored pass. path[i-1] is the normalized smoother at time i,
// computed from Y_1..Y_i only; bandwidth_path[i-1] is the h in force
// there. signal_index is the first i >= start_index whose crossing
// holds, absent when none occurs by the end.
struct RunResult {
    std::optional<long> signal_index;
    std::vector<double> path;
    std::vector<double> bandwidth_path;
    long start_index = 0;

    bool censored() const { return !signal_index.has_value(); }
    long run_length(long horizon) const { return signal_index ? *signal_index : horizon; }
};

RunResult run_detector(const Series& series, const DetectorSpec& spec);

// Monte Carlo calibration of c to a target in-control average run
// length. Replication paths under the null are simulated once; bisection
// then moves c until the ARL estimate is within two standard errors of
// the target or the bracket is narrower than 1e-3. Runs without a signal
// count as run length T (the censoring fraction is reported), so the
// estimate is the censored ARL. Throws CalibrationError when no bracket
// straddles the target.
struct Calibration {
    double control_limit = 0.0;
    double achieved_arl = 0.0;
    double standard_error = 0.0;
    double censored_frac = 0.0;
    int bisection_steps = 0;
    int replications = 0;
};

Calibration calibrate_control_limit(const ScenarioParams& null_params, const ErrorModel& model,
                                    const DetectorSpec& spec, double target_arl0,
                                    int replications, std::uint64_t seed);

// Detection-delay estimate E max(0, S - q2) under an alternative.
// Censored replications contribute horizon - q2.
struct DelayEstimate {
    double mean_delay = 0.0;
    double standard_error = 0.0;
    double censored_frac = 0.0;
    int replications = 0;
};

DelayEstimate mean_delay(const ScenarioParams& alt_params, const ErrorModel& model,
                         const DetectorSpec& spec, int replications, std::uint64_t seed);

}  // namespace seqcv
