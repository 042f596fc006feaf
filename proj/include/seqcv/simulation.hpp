#pragma once

#include <cstdint>
#include <vector>

#include "seqcv/errors.hpp"
#include "seqcv/series.hpp"

namespace seqcv {

// Change-point scenario: level mu0 until q1, linear drift of delta1 per
// step on [q1, q2), then a level shift of size jump that holds to the end.
struct ScenarioParams {
    double mu0 = 0.0;
    double delta1 = 0.0;
    double jump = 0.0;
    long q1 = 1;
    long q2 = 2;
    long horizon = 2;

    void validate() const;  // requires 1 <= q1 < q2 <= horizon
};

// Mean at time t (1-based):
//   mu0                            for t <  q1
//   mu0 + (t - q1) * delta1        for q1 <= t < q2
//   mu0 + (q2 - q1) * delta1 + jump for t >= q2
double mean_path(const ScenarioParams& params, long t);

// Mean-zero error process. Innovations are standard gaussians from the
// counter-based stream (seed, replication, role), so replications are
// independent and order-insensitive.
struct ErrorModel {
    enum class Kind {
        iid_gaussian,    // sigma * z_t
        iid_resample,    // draws with replacement from a centered pool
        ar1,             // X_t = phi X_{t-1} + sigma z_t, stationary start
        ma,              // sigma * sum_k coeffs[k] z_{t-k}
        linear_process,  // two-sided truncated filter sum_{|i|<=L} theta_i z_{t-i}
    };

    Kind kind = Kind::iid_gaussian;
    double sigma = 1.0;
    double phi = 0.0;
    std::vector<double> pool;    // iid_resample only
    std::vector<double> coeffs;  // ma only, lag 0 first
    std::vector<double> theta;   // linear_process only, theta_{-L}..theta_{+L}
    long truncation = 0;         // linear_process half-width L
    double tail_bound = 0.0;     // reported mass of the dropped filter tail

    static ErrorModel iid_gaussian(double sigma);
    // The pool is centered here (its mean subtracted) so the resampled
    // process is mean zero, matching the other kinds.
    static ErrorModel iid_resample(std::vector<double> residuals);
    static ErrorModel ar1(double phi, double sigma);
    static ErrorModel ma(std::vector<double> coeffs, double sigma);
    static ErrorModel linear_process(std::vector<double> theta_two_sided, long truncation,
                                     double tail_bound);
    // Geometric filter theta_i = rho^|i| truncated at L, with the exact
    // dropped-tail mass 2 rho^{L+1} / (1 - rho). |rho| must be < 1, else
    // the filter is not summable.
    static ErrorModel linear_geometric(double rho, long truncation);

    void validate() const;
};

std::vector<double> generate_errors(const ErrorModel& model, long length, std::uint64_t seed,
                                    std::uint64_t replication = 0);

// mean_path plus generated errors, packaged with horizon = params.horizon.
Series simulate_scenario(const ScenarioParams& params, const ErrorModel& model,
                         std::uint64_t seed, std::uint64_t replication = 0);

}  // namespace seqcv
