#include "gpylab/threshold.hpp"

#include "gpylab/error.hpp"

#include <cmath>

namespace gpylab::threshold {

namespace {

template <class T>
T poly(const Rational (&c)[3], T u) {
    auto v = [](Rational r) { return static_cast<T>(r.num) / static_cast<T>(r.den); };
    return v(c[0]) + u * (v(c[1]) + u * v(c[2]));
}

long double theta_root_ld(long double u) { return poly(kWeightSide, u) / poly(kPrimeSide, u); }

}  // namespace

double prime_side(double u) { return poly(kPrimeSide, u); }
double weight_side(double u) { return poly(kWeightSide, u); }

double g(double u, double theta) { return theta * prime_side(u) - weight_side(u); }

double theta_root(double u) {
    const double den = prime_side(u);
    if (!(den > 0.0)) fail(ErrorKind::invalid_argument, "prime-side polynomial is not positive at this u");
    return weight_side(u) / den;
}

double stationarity(double u) { return 27.0 * u * u + 12.0 * u - 10.0; }

double optimal_u_closed_form() { return (std::sqrt(34.0) - 2.0) / 9.0; }

double optimal_u_golden_section(double lo, double hi, double tolerance) {
    // Extended precision: theta_root is flat at its minimum, so double
    // evaluations would limit the location to ~1e-8.
    const long double inv_phi = (std::sqrt(5.0L) - 1.0L) / 2.0L;
    long double a = lo, b = hi;
    long double c = b - inv_phi * (b - a);
    long double d = a + inv_phi * (b - a);
    long double fc = theta_root_ld(c), fd = theta_root_ld(d);
    for (int it = 0; it < 400 && b - a > tolerance; ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = theta_root_ld(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = theta_root_ld(d);
        }
    }
    return static_cast<double>((a + b) / 2.0L);
}

ThresholdResult optimize() {
    ThresholdResult r;
    r.u0 = optimal_u_closed_form();
    r.theta1 = theta_root(r.u0);
    r.g_at = g(r.u0, r.theta1);
    r.u0_numeric = optimal_u_golden_section(0.0, 2.0);
    for (int i = 0; i <= 20; ++i) {
        const double u = i / 10.0;
        r.curve.emplace_back(u, theta_root(u));
    }
    return r;
}

}  // namespace gpylab::threshold
