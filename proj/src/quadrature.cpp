#include "seqcv/quadrature.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>

namespace seqcv {

namespace {

struct MemoFn {
    const std::function<double(double)>& f;
    std::unordered_map<std::uint64_t, double> cache;
    long evaluations = 0;

    double operator()(double x) {
        const std::uint64_t key = std::bit_cast<std::uint64_t>(x);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        const double v = f(x);
        if (!std::isfinite(v))
            throw NumericError("integrand returned a non-finite value at x = " + std::to_string(x));
        ++evaluations;
        cache.emplace(key, v);
        return v;
    }
};

struct Panel {
    double a, b;
    double fa, fm, fb;
    double coarse;  // Simpson estimate over [a, b]
};

double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

// Recursive refinement. `tol` is this panel's budget; children each get
// half of it so the accepted-panel errors sum below the global target.
double refine(MemoFn& f, const Panel& p, double tol, int depth, double& err_acc) {
    const double m = 0.5 * (p.a + p.b);
    const double lm = 0.5 * (p.a + m);
    const double rm = 0.5 * (m + p.b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson(p.a, m, p.fa, flm, p.fm);
    const double right = simpson(m, p.b, p.fm, frm, p.fb);
    const double fine = left + right;
    const double diff = fine - p.coarse;
    if (std::fabs(diff) <= 15.0 * tol || depth >= 60) {
        err_acc += std::fabs(diff) / 15.0;
        return fine + diff / 15.0;
    }
    const Panel pl{p.a, m, p.fa, flm, p.fm, left};
    const Panel pr{m, p.b, p.fm, frm, p.fb, right};
    return refine(f, pl, 0.5 * tol, depth + 1, err_acc) +
           refine(f, pr, 0.5 * tol, depth + 1, err_acc);
}

}  // namespace

Integrator::Integrator(double tol) : tol_(tol) {
    if (!(tol > 0.0) || !std::isfinite(tol))
        throw DomainError("integration tolerance must be positive and finite");
}

QuadratureResult Integrator::integrate(const std::function<double(double)>& f, double a,
                                       double b) const {
    if (!std::isfinite(a) || !std::isfinite(b))
        throw DomainError("integration limits must be finite");
    QuadratureResult res;
    if (a == b) return res;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }
    MemoFn mf{f, {}, 0};
    const double m = 0.5 * (a + b);
    const double fa = mf(a);
    const double fm = mf(m);
    const double fb = mf(b);
    const Panel root{a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)};
    double err = 0.0;
    res.value = sign * refine(mf, root, tol_, 0, err);
    res.error_estimate = err;
    res.evaluations = mf.evaluations;
    return res;
}

}  // namespace seqcv
