#include "seqcv/limit_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "seqcv/crossval.hpp"
#include "seqcv/quadrature.hpp"
#include "seqcv/rng.hpp"
#include "seqcv/series.hpp"

namespace seqcv {

namespace {

void check_xi(double xi) {
    if (!(xi >= 1.0) || !std::isfinite(xi))
        throw DomainError("xi must be >= 1 and finite, got " + std::to_string(xi));
}

// Upper end of the t-integration: where the kernel genuinely stops. For
// compact kernels that is the declared support edge; otherwise scan
// outward until the tail is far below the working precision.
double kernel_cut(const Kernel& k) {
    if (k.compact()) return k.support_bound();
    const double floor = 1e-18 * k.sup_norm();
    for (double t = 8.0; t <= 512.0; t += 4.0)
        if (k(t) <= floor) return t;
    throw NumericError("kernel tail does not decay fast enough for quadrature");
}

struct Layers {
    Integrator outer;
    Integrator inner;
    double cut;
};

// Two quadrature layers split the budget evenly.
Layers make_layers(const LimitSpec& spec) {
    return Layers{Integrator(0.5 * spec.tol), Integrator(0.5 * spec.tol), kernel_cut(spec.kernel)};
}

double window_mass(const Layers& ly, const Kernel& k, double xi, double r) {
    const double up = std::min(xi * r, ly.cut);
    if (up <= 0.0) return 0.0;
    return ly.inner.integrate([&](double t) { return k(t); }, 0.0, up).value;
}

// Weighted trend deviation A'(r) = int_0^{up} K(t) (m(r - t/xi) - m(r)) dt.
// Identically zero for constant trends, which keeps the self-consistent
// integrand exact in that case.
double weighted_deviation(const Layers& ly, const LimitSpec& spec, double xi, double r) {
    const double up = std::min(xi * r, ly.cut);
    if (up <= 0.0) return 0.0;
    const double mr = spec.mean(r);
    return ly.inner
        .integrate([&](double t) { return spec.kernel(t) * (spec.mean(r - t / xi) - mr); }, 0.0, up)
        .value;
}

// Unnormalized weighted trend A(r) = int_0^{up} K(t) m(r - t/xi) dt.
double weighted_trend(const Layers& ly, const LimitSpec& spec, double xi, double r) {
    const double up = std::min(xi * r, ly.cut);
    if (up <= 0.0) return 0.0;
    return ly.inner.integrate([&](double t) { return spec.kernel(t) * spec.mean(r - t / xi); },
                              0.0, up)
        .value;
}

// Integrates f over [0, s], splitting at the radius where the window
// stops growing. Beyond cut/xi the upper t-limit is constant and the
// integrand is smooth; at the split itself it has a kink.
double integrate_with_edge(const Layers& ly, const std::function<double(double)>& f, double xi,
                           double s) {
    const double edge = ly.cut / xi;
    if (edge < s)
        return ly.outer.integrate(f, 0.0, edge).value + ly.outer.integrate(f, edge, s).value;
    return ly.outer.integrate(f, 0.0, s).value;
}

void check_s(double s) {
    if (!(s > 0.0) || s > 1.0)
        throw DomainError("s must lie in (0, 1], got " + std::to_string(s));
}

}  // namespace

void LimitSpec::validate() const {
    if (!mean) throw ConfigError("limit spec has no mean function");
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw ConfigError("quadrature tolerance must be positive and finite");
    int sign = 0;
    for (int j = 0; j < 1000; ++j) {
        const double u = (j + 0.5) / 1000.0;
        const double v = mean(u);
        if (!std::isfinite(v)) throw ConfigError("mean function is not finite on [0, 1]");
        const int sv = v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
        if (sv == 0) throw ConfigError("mean function must be strictly one-signed, hit zero");
        if (sign == 0) sign = sv;
        else if (sv != sign)
            throw ConfigError("mean function must be strictly one-signed, found a sign change");
    }
}

double norming(const LimitSpec& spec, double xi, double r) {
    check_xi(xi);
    if (!(r > 0.0)) throw DomainError("norming needs r > 0, got " + std::to_string(r));
    const Layers ly = make_layers(spec);
    const double mass = window_mass(ly, spec.kernel, xi, r);
    if (mass <= spec.tol)
        throw DegenerateNormalizationError("window mass " + std::to_string(mass) +
                                           " is below the quadrature tolerance");
    return mass;
}

double limit_objective(const LimitSpec& spec, double xi, double s) {
    spec.validate();
    check_xi(xi);
    check_s(s);
    const Layers ly = make_layers(spec);

    if (spec.mode == LimitMode::self_consistent) {
        // Mbar = m + D with D = A'/N; the integrand Mbar^2 - 2 m Mbar
        // rearranges to D^2 - m^2. Windows with mass at or below the
        // tolerance take the continuity limit D = 0.
        auto f = [&](double r) {
            const double mass = window_mass(ly, spec.kernel, xi, r);
            double d = 0.0;
            if (mass > spec.tol) d = weighted_deviation(ly, spec, xi, r) / mass;
            const double mr = spec.mean(r);
            return d * d - mr * mr;
        };
        return integrate_with_edge(ly, f, xi, s);
    }

    const double mass_s = window_mass(ly, spec.kernel, xi, s);
    if (mass_s <= spec.tol)
        throw DegenerateNormalizationError("window mass at s is below the quadrature tolerance");
    auto g = [&](double r) {
        const double a = weighted_trend(ly, spec, xi, r);
        return a * a - 2.0 * a;
    };
    return integrate_with_edge(ly, g, xi, s) / mass_s;
}

SeparationReport limit_argmin(const LimitSpec& spec, const std::vector<double>& xi_grid,
                              double s) {
    if (xi_grid.empty()) throw ConfigError("xi grid is empty");
    SeparationReport rep;
    rep.xi_grid = xi_grid;
    rep.objectives.resize(xi_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long g = 0; g < static_cast<long>(xi_grid.size()); ++g)
        rep.objectives[g] = limit_objective(spec, xi_grid[g], s);
    for (std::size_t g = 1; g < rep.objectives.size(); ++g)
        if (rep.objectives[g] < rep.objectives[rep.argmin]) rep.argmin = g;
    rep.xi_star = xi_grid[rep.argmin];

    const double best = rep.objectives[rep.argmin];
    const std::array<double, 3> eps{0.5, 1.0, 2.0};
    rep.well_separated = true;
    for (std::size_t e = 0; e < eps.size(); ++e) {
        double worst = std::numeric_limits<double>::infinity();
        for (std::size_t g = 0; g < xi_grid.size(); ++g)
            if (std::fabs(xi_grid[g] - rep.xi_star) >= eps[e])
                worst = std::min(worst, rep.objectives[g] - best);
        rep.margins[e] = {eps[e], worst};
        if (!(worst > spec.tol)) rep.well_separated = false;
    }
    return rep;
}

McComparison limit_vs_montecarlo(const LimitSpec& spec, double xi, double s, long T,
                                 int replications, std::uint64_t seed, double sigma) {
    spec.validate();
    check_xi(xi);
    check_s(s);
    if (T < 100) throw ConfigError("monte carlo comparison needs T >= 100");
    if (replications < 50) throw ConfigError("monte carlo comparison needs at least 50 replications");
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw ConfigError("sigma must be nonnegative and finite");

    std::vector<double> values(replications);
#pragma omp parallel for schedule(dynamic)
    for (int rep = 0; rep < replications; ++rep) {
        Rng rng(seed, static_cast<std::uint64_t>(rep), Rng::kErrors);
        std::vector<double> y(static_cast<std::size_t>(T));
        for (long i = 1; i <= T; ++i)
            y[i - 1] = spec.mean(static_cast<double>(i) / static_cast<double>(T)) +
                       sigma * rng.gaussian();
        const Series series = make_series(std::move(y));
        values[rep] = cv_objective(series, spec.kernel, xi, s);
    }

    McComparison cmp;
    cmp.horizon = T;
    cmp.replications = replications;
    double sum = 0.0;
    for (double v : values) sum += v;
    cmp.mc_mean = sum / replications;
    double ss = 0.0;
    for (double v : values) {
        const double d = v - cmp.mc_mean;
        ss += d * d;
    }
    cmp.mc_se = std::sqrt(ss / (replications - 1.0) / replications);

    LimitSpec sc = spec;
    sc.mode = LimitMode::self_consistent;
    cmp.self_consistent_value = limit_objective(sc, xi, s);
    LimitSpec ap = spec;
    ap.mode = LimitMode::as_printed;
    cmp.as_printed_value = limit_objective(ap, xi, s);
    cmp.gap_self_consistent = std::fabs(cmp.mc_mean - cmp.self_consistent_value);
    cmp.gap_as_printed = std::fabs(cmp.mc_mean - cmp.as_printed_value);
    return cmp;
}

}  // namespace seqcv
