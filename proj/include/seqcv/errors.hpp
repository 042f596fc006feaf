#pragma once

#include <stdexcept>
#include <string>

namespace seqcv {

// Process exit codes used by the CLI. Library code throws the typed errors
// below; the CLI maps each category to one code.
enum class ExitCode : int {
    ok = 0,
    failure = 1,      // unexpected (bug, bad_alloc, ...)
    config = 2,       // invalid configuration / arguments
    data = 3,         // unreadable or malformed input data
    numeric = 4,      // numeric degeneracy (empty windows, zero normalizations, domain)
    calibration = 5,  // calibration bracket does not straddle the target
};

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error("E_CONFIG: " + msg) {}
};

struct DataError : Error {
    explicit DataError(const std::string& msg) : Error("E_DATA: " + msg) {}
};

// Base for everything that maps to ExitCode::numeric.
struct NumericError : Error {
    explicit NumericError(const std::string& msg) : Error("E_NUMERIC: " + msg) {}
};

// Weight sum over an empty or fully zero-weighted prediction window.
struct DegenerateWindowError : NumericError {
    explicit DegenerateWindowError(const std::string& msg) : NumericError(msg) {}
};

// Norming constant at or below the resolvable tolerance.
struct DegenerateNormalizationError : NumericError {
    explicit DegenerateNormalizationError(const std::string& msg) : NumericError(msg) {}
};

// Argument outside the mathematical domain of an operation (z < 0, h <= 0, ...).
struct DomainError : NumericError {
    explicit DomainError(const std::string& msg) : NumericError(msg) {}
};

// 1-based index outside the available sample.
struct IndexError : NumericError {
    explicit IndexError(const std::string& msg) : NumericError(msg) {}
};

struct CalibrationError : Error {
    explicit CalibrationError(const std::string& msg) : Error("E_CALIBRATION: " + msg) {}
};

}  // namespace seqcv
