#pragma once

// Optimization of the mixed weight a'_n over the mixing parameter u:
//
//   g_u(theta) = theta (4/3 + 3u + 9u^2/5) - (1 + 2u + 3u^2/2)
//
// theta_root(u) is the zero of g_u; its minimum over u is the threshold
// theta_1, attained at u_0 = (sqrt(34) - 2) / 9.

#include <utility>
#include <vector>

namespace gpylab::threshold {

struct Rational {
    long long num;
    long long den;
    constexpr double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

// Coefficients of the two quadratics, lowest degree first.
inline constexpr Rational kPrimeSide[3] = {{4, 3}, {3, 1}, {9, 5}};
inline constexpr Rational kWeightSide[3] = {{1, 1}, {2, 1}, {3, 2}};

struct ThresholdResult {
    double u0 = 0.0;          // closed form
    double theta1 = 0.0;      // theta_root(u0)
    double g_at = 0.0;        // g(u0, theta1)
    double u0_numeric = 0.0;  // golden-section minimizer
    std::vector<std::pair<double, double>> curve;  // (u, theta_root(u))
};

double prime_side(double u);   // 4/3 + 3u + 9u^2/5
double weight_side(double u);  // 1 + 2u + 3u^2/2
double g(double u, double theta);
// Throws when the prime-side polynomial is not positive.
double theta_root(double u);
// d/du of theta_root vanishes where 27u^2 + 12u - 10 = 0.
double stationarity(double u);
double optimal_u_closed_form();
// Derivative-free minimization of theta_root on [lo, hi].
double optimal_u_golden_section(double lo, double hi, double tolerance = 1e-12);

ThresholdResult optimize();

}  // namespace gpylab::threshold
