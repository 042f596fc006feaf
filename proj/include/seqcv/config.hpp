#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqcv/crossval.hpp"
#include "seqcv/detection.hpp"
#include "seqcv/errors.hpp"
#include "seqcv/kernels.hpp"
#include "seqcv/limit_oracle.hpp"
#include "seqcv/simulation.hpp"

namespace seqcv {

// Parsed run configuration (JSON, schema version 1). Every subcommand
// pulls the blocks it needs; a missing block is a configuration error
// raised by the command, not here. A run is reproducible from the
// (config, seed) pair alone.
struct SmoothSettings {
    std::optional<double> bandwidth;  // exactly one of the two is set
    std::optional<double> xi;
};

struct LimitSettings {
    LimitSpec spec;                // kernel filled from the top-level kernel
    std::vector<double> xi_values;
    std::vector<double> s_values;
    std::string mean_description;  // echoed into reports
};

struct CalibrateSettings {
    double target_arl0 = 0.0;
    int replications = 0;
};

struct SimulateSettings {
    int replications = 1;
    std::vector<double> deltas;  // nonempty switches simulate to the delay experiment
};

struct Config {
    std::uint64_t seed = 0;
    Kernel kernel = Kernel::gaussian();
    std::optional<SmoothSettings> smooth;
    std::optional<CvPlan> cv;
    std::optional<LimitSettings> limit;
    std::optional<ScenarioParams> scenario;
    std::optional<ErrorModel> errors;
    std::optional<DetectorSpec> detector;
    std::optional<CalibrateSettings> calibrate;
    std::optional<SimulateSettings> simulate;
};

// Loads and validates a config file. Schema violations, unknown keys and
// version mismatches raise ConfigError; an unreadable file raises
// DataError. Paths inside the config (resampling pools) are resolved
// relative to the current working directory and loaded here.
Config load_config(const std::string& path);

// Named trend functions available to limit specs. kind "constant" takes
// {value}; "linear" takes {intercept, slope}; "sinusoid" takes
// {level, amplitude, frequency} for level + amplitude*sin(2*pi*f*u).
MeanFn make_mean(const std::string& kind, const std::vector<double>& params);

}  // namespace seqcv
