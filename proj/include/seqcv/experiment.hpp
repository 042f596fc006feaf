#pragma once

#include <cstdint>
#include <vector>

#include "seqcv/detection.hpp"
#include "seqcv/simulation.hpp"

namespace seqcv {

// One row of the delay table produced by run_experiment.
struct DelayRow {
    double delta = 0.0;
    double mean_delay = 0.0;
    double standard_error = 0.0;
    double censored_frac = 0.0;
};

// Mean detection delay across a grid of jump sizes. Rows come back in
// the order the deltas were given. Every row reuses the same root seed,
// so the jump sizes are compared under common random numbers and the
// delay differences are not washed out by independent noise.
std::vector<DelayRow> run_experiment(const std::vector<double>& deltas,
                                     const ScenarioParams& base, const ErrorModel& model,
                                     const DetectorSpec& spec, int replications,
                                     std::uint64_t seed);

}  // namespace seqcv
