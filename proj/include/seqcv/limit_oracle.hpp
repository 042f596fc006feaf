#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "seqcv/errors.hpp"
#include "seqcv/kernels.hpp"

namespace seqcv {

// Trend function on [0, 1]. Must be bounded and strictly one-signed; see
// LimitSpec::validate.
using MeanFn = std::function<double(double)>;

// The long-run prediction objective exists in two published-looking forms
// that do not agree for non-constant trends. self_consistent is the form
// obtained by taking expectations of the finite-sample objective,
//
//   C(xi, s) = \int_0^s [ Mbar(r)^2 - 2 m(r) Mbar(r) ] dr,
//   Mbar(r)  = ( \int_0^{xi r} K(t) m(r - t/xi) dt ) / N(xi, r),
//
// with N(xi, r) = \int_0^{xi r} K(t) dt the one-sided normalizing mass.
// as_printed keeps the single s-level normalization of the displayed
// formula instead,
//
//   C(xi, s) = ( -2 \int_0^s A(r) dr + \int_0^s A(r)^2 dr ) / N(xi, s),
//
// where A(r) is the unnormalized weighted trend above. The two coincide
// for constant trends up to the per-r weighting. Which one matches finite
// samples is decided empirically by limit_vs_montecarlo, not hard-coded.
enum class LimitMode {
    self_consistent,
    as_printed,
};

struct LimitSpec {
    Kernel kernel = Kernel::gaussian();
    MeanFn mean;
    LimitMode mode = LimitMode::self_consistent;
    double tol = 1e-8;

    // Checks the trend on a 1000-point sample: finite everywhere and
    // strictly one-signed (all positive or all negative). Also requires a
    // positive finite tolerance.
    void validate() const;
};

// Normalizing mass N(xi, r) of the one-sided window at relative time r.
// Throws DegenerateNormalizationError when the mass does not exceed the
// quadrature tolerance, since downstream ratios are meaningless then.
double norming(const LimitSpec& spec, double xi, double r);

// Evaluates the objective in the requested mode. Self-consistent mode works
// with the deviation D(r) = Mbar(r) - m(r), whose integrand vanishes
// identically for constant trends, and integrates D^2 - m^2; near r = 0,
// where the window mass falls below the tolerance, D is replaced by its
// continuity limit 0. The outer integral splits at the radius where the
// window stops growing (kernel support edge), the only kink of the
// integrand.
double limit_objective(const LimitSpec& spec, double xi, double s);

// Grid minimization of the objective together with a separation
// diagnostic: for each epsilon the worst objective gap among grid points
// at distance >= epsilon from the argmin. All gaps above the quadrature
// tolerance means the minimum is well separated at these scales.
struct SeparationReport {
    std::vector<double> xi_grid;
    std::vector<double> objectives;
    std::size_t argmin = 0;
    double xi_star = 0.0;
    struct Margin {
        double epsilon;
        double margin;
    };
    std::array<Margin, 3> margins{};
    bool well_separated = false;
};

SeparationReport limit_argmin(const LimitSpec& spec, const std::vector<double>& xi_grid, double s);

// Monte Carlo adjudication between the two modes: simulates replications
// of Y_i = m(i/T) + sigma * e_i with i.i.d. gaussian errors, averages the
// finite-sample objective at bandwidth T/xi, and reports the gap to the
// quadrature value of each mode.
struct McComparison {
    double mc_mean = 0.0;
    double mc_se = 0.0;
    double self_consistent_value = 0.0;
    double as_printed_value = 0.0;
    double gap_self_consistent = 0.0;
    double gap_as_printed = 0.0;
    long horizon = 0;
    int replications = 0;
};

McComparison limit_vs_montecarlo(const LimitSpec& spec, double xi, double s, long T,
                                 int replications, std::uint64_t seed, double sigma);

}  // namespace seqcv
