#include "seqcv/simulation.hpp"

#include <cmath>
#include <string>

#include "seqcv/rng.hpp"

namespace seqcv {

namespace {

// Truncated filters with more tail mass than this are rejected as a
// configuration error; the truncation no longer approximates the process.
constexpr double kTailThreshold = 1e-3;

void require_finite(const std::vector<double>& v, const char* what) {
    for (double x : v)
        if (!std::isfinite(x)) throw ConfigError(std::string(what) + " contains a non-finite value");
}

}  // namespace

void ScenarioParams::validate() const {
    if (horizon < 2) throw ConfigError("scenario horizon must be at least 2");
    if (q1 < 1 || q1 >= q2 || q2 > horizon)
        throw ConfigError("change points must satisfy 1 <= q1 < q2 <= horizon, got q1=" +
                          std::to_string(q1) + " q2=" + std::to_string(q2) + " horizon=" +
                          std::to_string(horizon));
    if (!std::isfinite(mu0) || !std::isfinite(delta1) || !std::isfinite(jump))
        throw ConfigError("scenario parameters must be finite");
}

double mean_path(const ScenarioParams& params, long t) {
    params.validate();
    if (t < 1 || t > params.horizon)
        throw IndexError("time " + std::to_string(t) + " outside 1.." +
                         std::to_string(params.horizon));
    if (t < params.q1) return params.mu0;
    if (t < params.q2) return params.mu0 + static_cast<double>(t - params.q1) * params.delta1;
    return params.mu0 + static_cast<double>(params.q2 - params.q1) * params.delta1 + params.jump;
}

ErrorModel ErrorModel::iid_gaussian(double sigma) {
    ErrorModel m;
    m.kind = Kind::iid_gaussian;
    m.sigma = sigma;
    m.validate();
    return m;
}

ErrorModel ErrorModel::iid_resample(std::vector<double> residuals) {
    ErrorModel m;
    m.kind = Kind::iid_resample;
    m.sigma = 0.0;
    if (residuals.empty()) throw ConfigError("resampling pool is empty");
    require_finite(residuals, "resampling pool");
    double mean = 0.0;
    for (double x : residuals) mean += x;
    mean /= static_cast<double>(residuals.size());
    for (double& x : residuals) x -= mean;
    m.pool = std::move(residuals);
    m.validate();
    return m;
}

ErrorModel ErrorModel::ar1(double phi, double sigma) {
    ErrorModel m;
    m.kind = Kind::ar1;
    m.phi = phi;
    m.sigma = sigma;
    m.validate();
    return m;
}

ErrorModel ErrorModel::ma(std::vector<double> coeffs, double sigma) {
    ErrorModel m;
    m.kind = Kind::ma;
    m.coeffs = std::move(coeffs);
    m.sigma = sigma;
    m.validate();
    return m;
}

ErrorModel ErrorModel::linear_process(std::vector<double> theta_two_sided, long truncation,
                                      double tail_bound) {
    ErrorModel m;
    m.kind = Kind::linear_process;
    m.theta = std::move(theta_two_sided);
    m.truncation = truncation;
    m.tail_bound = tail_bound;
    m.validate();
    return m;
}

ErrorModel ErrorModel::linear_geometric(double rho, long truncation) {
    if (!(std::fabs(rho) < 1.0))
        throw ConfigError("geometric filter needs |rho| < 1, the coefficients are not summable");
    if (truncation < 0) throw ConfigError("filter truncation must be nonnegative");
    std::vector<double> theta(static_cast<std::size_t>(2 * truncation + 1));
    for (long i = -truncation; i <= truncation; ++i)
        theta[static_cast<std::size_t>(i + truncation)] = std::pow(rho, std::labs(i));
    const double tail =
        2.0 * std::pow(std::fabs(rho), static_cast<double>(truncation + 1)) / (1.0 - std::fabs(rho));
    return linear_process(std::move(theta), truncation, tail);
}

void ErrorModel::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw ConfigError("error scale sigma must be nonnegative and finite");
    switch (kind) {
        case Kind::iid_gaussian:
            break;
        case Kind::iid_resample:
            if (pool.empty()) throw ConfigError("resampling pool is empty");
            require_finite(pool, "resampling pool");
            break;
        case Kind::ar1:
            if (!(std::fabs(phi) < 1.0)) throw ConfigError("ar1 needs |phi| < 1");
            break;
        case Kind::ma:
            if (coeffs.empty()) throw ConfigError("ma filter has no coefficients");
            require_finite(coeffs, "ma filter");
            break;
        case Kind::linear_process: {
            if (truncation < 0) throw ConfigError("filter truncation must be nonnegative");
            if (theta.size() != static_cast<std::size_t>(2 * truncation + 1))
                throw ConfigError("two-sided filter needs exactly 2L+1 coefficients");
            require_finite(theta, "linear filter");
            if (!(tail_bound >= 0.0) || !std::isfinite(tail_bound))
                throw ConfigError("filter tail bound must be nonnegative and finite");
            if (tail_bound > kTailThreshold)
                throw ConfigError("filter tail mass " + std::to_string(tail_bound) +
                                  " exceeds " + std::to_string(kTailThreshold) +
                                  "; increase the truncation");
            break;
        }
    }
}

std::vector<double> generate_errors(const ErrorModel& model, long length, std::uint64_t seed,
                                    std::uint64_t replication) {
    model.validate();
    if (length < 1) throw ConfigError("error series length must be positive");
    const std::size_t n = static_cast<std::size_t>(length);
    std::vector<double> e(n);
    Rng rng(seed, replication, Rng::kErrors);

    switch (model.kind) {
        case ErrorModel::Kind::iid_gaussian:
            for (double& x : e) x = model.sigma * rng.gaussian();
            break;
        case ErrorModel::Kind::iid_resample:
            for (double& x : e) x = model.pool[rng.below(model.pool.size())];
            break;
        case ErrorModel::Kind::ar1: {
            // Stationary start, so the whole path has variance
            // sigma^2 / (1 - phi^2) rather than a transient.
            double x = model.sigma / std::sqrt(1.0 - model.phi * model.phi) * rng.gaussian();
            e[0] = x;
            for (std::size_t t = 1; t < n; ++t) {
                x = model.phi * x + model.sigma * rng.gaussian();
                e[t] = x;
            }
            break;
        }
        case ErrorModel::Kind::ma: {
            // Pre-samples cover the filter's look-back at t = 1.
            const std::size_t q = model.coeffs.size() - 1;
            std::vector<double> z(n + q);
            for (double& v : z) v = rng.gaussian();
            for (std::size_t t = 0; t < n; ++t) {
                double acc = 0.0;
                for (std::size_t k = 0; k <= q; ++k) acc += model.coeffs[k] * z[t + q - k];
                e[t] = model.sigma * acc;
            }
            break;
        }
        case ErrorModel::Kind::linear_process: {
            // Innovations extend L steps beyond both ends so every output
            // index sees the full two-sided filter.
            const std::size_t L = static_cast<std::size_t>(model.truncation);
            std::vector<double> z(n + 2 * L);
            for (double& v : z) v = rng.gaussian();
            // theta[k] is the coefficient of z_{t-(k-L)}, so it multiplies
            // the innovation at offset 2L - k in the padded stream.
            for (std::size_t t = 0; t < n; ++t) {
                double acc = 0.0;
                for (std::size_t k = 0; k < model.theta.size(); ++k)
                    acc += model.theta[k] * z[t + 2 * L - k];
                e[t] = acc;
            }
            break;
        }
    }
    return e;
}

Series simulate_scenario(const ScenarioParams& params, const ErrorModel& model,
                         std::uint64_t seed, std::uint64_t replication) {
    params.validate();
    std::vector<double> e = generate_errors(model, params.horizon, seed, replication);
    for (long t = 1; t <= params.horizon; ++t)
        e[static_cast<std::size_t>(t - 1)] += mean_path(params, t);
    return make_series(std::move(e));
}

}  // namespace seqcv
