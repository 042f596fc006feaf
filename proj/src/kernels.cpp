#include "seqcv/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "seqcv/errors.hpp"

namespace seqcv {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kGaussAtZero = 1.0 / std::sqrt(2.0 * 3.14159265358979323846);
}  // namespace

Kernel Kernel::uniform() {
    static const auto impl = std::make_shared<const Impl>(
        Impl{"uniform", [](double z) { return z <= 1.0 ? 1.0 : 0.0; }, 1.0, false, 1.0});
    return Kernel(impl);
}

Kernel Kernel::epanechnikov() {
    static const auto impl = std::make_shared<const Impl>(
        Impl{"epanechnikov", [](double z) { return z <= 1.0 ? 0.75 * (1.0 - z * z) : 0.0; }, 1.0,
             true, 0.75});
    return Kernel(impl);
}

Kernel Kernel::gaussian() {
    static const auto impl = std::make_shared<const Impl>(
        Impl{"gaussian", [](double z) { return kGaussAtZero * std::exp(-0.5 * z * z); }, kInf,
             true, kGaussAtZero});
    return Kernel(impl);
}

Kernel Kernel::exponential() {
    static const auto impl = std::make_shared<const Impl>(
        Impl{"exponential", [](double z) { return std::exp(-z); }, kInf, true, 1.0});
    return Kernel(impl);
}

Kernel Kernel::from_name(std::string_view name) {
    if (name == "uniform") return uniform();
    if (name == "epanechnikov") return epanechnikov();
    if (name == "gaussian") return gaussian();
    if (name == "exponential") return exponential();
    throw ConfigError("unknown kernel '" + std::string(name) +
                      "' (expected uniform, epanechnikov, gaussian or exponential)");
}

Kernel Kernel::custom(std::string name, Fn eval, double support_bound, bool lipschitz,
                      double sup_norm) {
    if (!eval) throw ConfigError("custom kernel '" + name + "' has no evaluation function");
    if (!(support_bound > 0.0)) throw ConfigError("kernel support bound must be positive");
    if (!(sup_norm > 0.0) || !std::isfinite(sup_norm))
        throw ConfigError("kernel sup norm must be positive and finite");
    return Kernel(std::make_shared<const Impl>(
        Impl{std::move(name), std::move(eval), support_bound, lipschitz, sup_norm}));
}

Kernel Kernel::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("kernel scale factor must be positive and finite");
    auto base = impl_;
    return Kernel(std::make_shared<const Impl>(
        Impl{base->name + "*" + std::to_string(c), [base, c](double z) { return c * base->eval(z); },
             base->support_bound, base->lipschitz, c * base->sup_norm}));
}

double Kernel::operator()(double z) const {
    if (!(z >= 0.0)) throw DomainError("kernel argument must be >= 0, got " + std::to_string(z));
    return impl_->eval(z);
}

bool Kernel::compact() const { return std::isfinite(impl_->support_bound); }

AssumptionReport validate_assumptions(const Kernel& kernel) {
    constexpr double step = 1e-4;
    AssumptionReport rep;
    rep.lipschitz_bound = 10.0 * kernel.sup_norm();

    // Sample out to well past the unit interval; for unbounded kernels an
    // 8-unit window is enough to witness nonzero mass beyond [0,1].
    const double zmax = kernel.compact() ? std::max(2.0, kernel.support_bound() + 0.5) : 8.0;
    const long n = static_cast<long>(zmax / step);

    bool zero_beyond_one = true;
    bool positive_inside = true;
    bool bounded = std::isfinite(kernel.sup_norm());
    double max_quot = 0.0;

    double prev = kernel(0.0);
    if (prev > kernel.sup_norm() * (1.0 + 1e-12)) bounded = false;
    for (long k = 1; k <= n; ++k) {
        const double z = k * step;
        const double v = kernel(z);
        if (v > kernel.sup_norm() * (1.0 + 1e-12)) bounded = false;
        if (z > 1.0 && v != 0.0) zero_beyond_one = false;
        if (z < 1.0 && v <= 0.0) positive_inside = false;
        max_quot = std::max(max_quot, std::fabs(v - prev) / step);
        prev = v;
    }

    rep.compact_unit_support = kernel.compact() && kernel.support_bound() <= 1.0 && zero_beyond_one;
    rep.positive_on_unit = positive_inside;
    rep.bounded = bounded;
    rep.max_difference_quotient = max_quot;
    rep.lipschitz = kernel.lipschitz_declared() && max_quot <= rep.lipschitz_bound;
    return rep;
}

}  // namespace seqcv
