#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace seqcv {

// One-sided smoothing kernel K: [0, inf) -> [0, inf). Only nonnegative
// arguments are meaningful (weights are indexed by nonnegative lags);
// evaluation at z < 0 is a domain error by contract, not an extension.
//
// Immutable value type; copies share the implementation.
class Kernel {
  public:
    using Fn = std::function<double(double)>;

    // Built-ins.
    static Kernel uniform();        // 1 on [0,1]
    static Kernel epanechnikov();   // (3/4)(1-z^2) on [0,1]
    static Kernel gaussian();       // exp(-z^2/2)/sqrt(2*pi)
    static Kernel exponential();    // exp(-z)

    // Lookup by name ("uniform", "epanechnikov", "gaussian", "exponential").
    static Kernel from_name(std::string_view name);

    // User-supplied kernel. support_bound is the smallest b with K = 0 on
    // (b, inf), or +inf for unbounded support. lipschitz is a declaration,
    // audited by validate_assumptions. sup_norm must bound K from above.
    static Kernel custom(std::string name, Fn eval, double support_bound, bool lipschitz,
                         double sup_norm);

    // This kernel multiplied by c > 0. Normalized statistics are invariant
    // under this (the constant cancels in every weight ratio).
    Kernel scaled(double c) const;

    // Evaluate at z >= 0; throws DomainError for negative or NaN z.
    double operator()(double z) const;

    const std::string& name() const { return impl_->name; }
    double support_bound() const { return impl_->support_bound; }
    bool compact() const;            // support_bound finite
    bool lipschitz_declared() const { return impl_->lipschitz; }
    double sup_norm() const { return impl_->sup_norm; }

  private:
    struct Impl {
        std::string name;
        Fn eval;
        double support_bound;
        bool lipschitz;
        double sup_norm;
    };
    explicit Kernel(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

// Clause-by-clause audit of the smoothing assumptions. The full set
// (compact unit support + positivity + boundedness + Lipschitz) is what
// the uniform-convergence statements ask for; boundedness alone is the
// weaker admissibility condition that the dependent-error results and
// the gaussian/exponential kernels rely on.
struct AssumptionReport {
    bool compact_unit_support = false;  // declared bound <= 1 and sampled zero beyond it
    bool positive_on_unit = false;      // K > 0 sampled on (0,1)
    bool bounded = false;               // finite sup_norm, respected on the sample grid
    bool lipschitz = false;             // declared and finite-difference audit passed
    double max_difference_quotient = 0.0;  // observed max |K(z+d)-K(z)|/d
    double lipschitz_bound = 0.0;          // audit bound (10 * sup_norm)

    bool all() const { return compact_unit_support && positive_on_unit && bounded && lipschitz; }
    bool bounded_only() const { return bounded; }
};

// Samples the kernel on a step-1e-4 grid: support/positivity checks plus a
// finite-difference Lipschitz audit against the bound 10 * sup_norm.
AssumptionReport validate_assumptions(const Kernel& kernel);

}  // namespace seqcv
