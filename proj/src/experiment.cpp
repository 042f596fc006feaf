#include "seqcv/experiment.hpp"

#include <cmath>

namespace seqcv {

std::vector<DelayRow> run_experiment(const std::vector<double>& deltas,
                                     const ScenarioParams& base, const ErrorModel& model,
                                     const DetectorSpec& spec, int replications,
                                     std::uint64_t seed) {
    if (deltas.empty()) throw ConfigError("experiment needs at least one jump size");
    for (double d : deltas)
        if (!std::isfinite(d)) throw ConfigError("jump sizes must be finite");

    std::vector<DelayRow> rows;
    rows.reserve(deltas.size());
    for (double d : deltas) {
        ScenarioParams params = base;
        params.jump = d;
        const DelayEstimate est = mean_delay(params, model, spec, replications, seed);
        rows.push_back({d, est.mean_delay, est.standard_error, est.censored_frac});
    }
    return rows;
}

}  // namespace seqcv
