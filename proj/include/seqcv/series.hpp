#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "seqcv/errors.hpp"

namespace seqcv {

// Observed prefix Y_1..Y_n of a process observed on a design horizon of
// T sampling points. Statistical formulas are 1-based (index i denotes
// rescaled time i/T); storage is 0-based. The horizon, not the current
// length, fixes the bandwidth rule h = T / xi.
struct Series {
    std::vector<double> values;
    long horizon = 0;

    long length() const { return static_cast<long>(values.size()); }

    // 1-based access.
    double at1(long i) const {
        if (i < 1 || i > length())
            throw IndexError("series index " + std::to_string(i) + " outside [1, " +
                             std::to_string(length()) + "]");
        return values[static_cast<std::size_t>(i - 1)];
    }
};

inline Series make_series(std::vector<double> values, long horizon) {
    Series s{std::move(values), horizon};
    if (s.horizon < s.length())
        throw ConfigError("series horizon " + std::to_string(s.horizon) +
                          " is shorter than the sample (" + std::to_string(s.length()) + ")");
    if (s.horizon < 1) throw ConfigError("series horizon must be >= 1");
    return s;
}

inline Series make_series(std::vector<double> values) {
    const long n = static_cast<long>(values.size());
    return make_series(std::move(values), n);
}

}  // namespace seqcv
