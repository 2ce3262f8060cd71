#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>

namespace gpylab {

// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double x) noexcept {
        double t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    void add(const CompensatedSum& other) noexcept {
        add(other.sum_);
        add(other.comp_);
    }
    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// In-place compensated add on parallel value/compensation arrays.
inline void compensated_add(double& sum, double& comp, double x) noexcept {
    double t = sum + x;
    if (std::fabs(sum) >= std::fabs(x))
        comp += (sum - t) + x;
    else
        comp += (x - t) + sum;
    sum = t;
}

inline std::uint64_t isqrt(std::uint64_t n) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
    while (b) {
        std::uint64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

inline double factorial(unsigned m) {
    double f = 1.0;
    for (unsigned i = 2; i <= m; ++i) f *= i;
    return f;
}

inline double binomial(unsigned n, unsigned k) {
    if (k > n) return 0.0;
    double b = 1.0;
    for (unsigned i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
}

// 15 significant digits, the serialization precision of every report.
inline std::string format_number(double x) {
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

inline double round15(double x) {
    if (!std::isfinite(x)) return x;
    return std::stod(format_number(x));
}

}  // namespace gpylab
