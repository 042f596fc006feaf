#pragma once

#include <functional>

#include "seqcv/errors.hpp"

namespace seqcv {

// Result of one definite integral: the Richardson-extrapolated value, the
// accumulated panel error estimate and the number of distinct integrand
// evaluations actually performed.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evaluations = 0;
};

// Adaptive Simpson integrator. Each panel is accepted once the classic
// |S_fine - S_coarse| <= 15 * tol test holds and contributes the /15
// Richardson correction; otherwise the panel splits and each half gets
// half the budget. Integrand values are memoized on the exact abscissa
// bit pattern, so shared panel endpoints and midpoints are computed once.
class Integrator {
public:
    explicit Integrator(double tol = 1e-8);

    QuadratureResult integrate(const std::function<double(double)>& f, double a, double b) const;

    double tolerance() const { return tol_; }

private:
    double tol_;
};

}  // namespace seqcv
