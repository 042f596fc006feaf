#include "seqcv/rng.hpp"

#include <cmath>

#include "seqcv/errors.hpp"

namespace seqcv {

namespace {

// Horner evaluation; coefficients ordered from degree 0 upward.
template <int N>
double poly(const double (&c)[N], double x) {
    double r = c[N - 1];
    for (int i = N - 2; i >= 0; --i) r = r * x + c[i];
    return r;
}

}  // namespace

// AS 241 algorithm PPND16 (Wichura 1988). Three rational regions:
// central |p-1/2| <= 0.425 and two tail regimes in r = sqrt(-log(min(p,1-p))).
double inverse_normal_cdf(double p) {
    if (!(p > 0.0) || !(p < 1.0)) throw DomainError("inverse_normal_cdf: p must lie in (0,1)");

    static const double A[8] = {3.3871328727963666080, 133.14166789178437745,
                                1971.5909503065514427, 13731.693765509461125,
                                45921.953931549871457, 67265.770927008700853,
                                33430.575583588128105, 2509.0809287301226727};
    static const double B[8] = {1.0, 42.313330701600911252, 687.18700749205790830,
                                5394.1960214247511077, 21213.794301586595867,
                                39307.895800092710610, 28729.085735721942674,
                                5226.4952788528545610};
    static const double C[8] = {1.42343711074968357734, 4.63033784615654529590,
                                5.76949722146069140550, 3.64784832476320460504,
                                1.27045825245236838258, 0.24178072517745061177,
                                0.0227238449892691845833, 7.7454501427834140764e-4};
    static const double D[8] = {1.0, 2.05319162663775882187, 1.67638483018380384940,
                                0.68976733498510000455, 0.14810397642748007459,
                                0.0151986665636164571966, 5.475938084995344946e-4,
                                1.05075007164441684324e-9};
    static const double E[8] = {6.65790464350110377720, 5.46378491116411436990,
                                1.78482653991729133580, 0.29656057182850489123,
                                0.026532189526576123093, 0.0012426609473880784386,
                                2.71155556874348757815e-5, 2.01033439929228813265e-7};
    static const double F[8] = {1.0, 0.59983220655588793769, 0.13692988092273580531,
                                0.0148753612908506148525, 7.868691311456132591e-4,
                                1.8463183175100546818e-5, 1.4215117583164458887e-7,
                                2.04426310338993978564e-15};

    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q * poly(A, r) / poly(B, r);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double v;
    if (r <= 5.0) {
        r -= 1.6;
        v = poly(C, r) / poly(D, r);
    } else {
        r -= 5.0;
        v = poly(E, r) / poly(F, r);
    }
    return (q < 0.0) ? -v : v;
}

}  // namespace seqcv
