#pragma once

// Brute-force reference implementations used only by tests. Nothing here
// shares code with the library's sieve or weight paths.

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace oracle {

inline std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> f;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        unsigned e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        if (e) f.emplace_back(p, e);
    }
    if (n > 1) f.emplace_back(n, 1);
    return f;
}

inline int liouville(std::uint64_t n) {
    unsigned omega = 0;
    for (auto [p, e] : factor(n)) omega += e;
    return omega % 2 ? -1 : 1;
}

inline int mobius(std::uint64_t n) {
    int m = 1;
    for (auto [p, e] : factor(n)) {
        if (e > 1) return 0;
        m = -m;
    }
    return m;
}

inline std::uint64_t smallest_factor(std::uint64_t n) {
    if (n < 2) return n;
    auto f = factor(n);
    return f.front().first;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

// Deterministic Miller-Rabin for 64-bit n.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (n % p == 0) return n == p;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

inline double theta(std::uint64_t n) { return is_prime(n) ? std::log(static_cast<double>(n)) : 0.0; }

// Sum over every d <= R: mu(d) log(R/d)^(k+l) / (k+l)! when d | prod(n + h_i).
inline double lambda_r(std::uint64_t n, const std::vector<std::uint64_t>& H, std::uint64_t R, unsigned l) {
    const unsigned power = static_cast<unsigned>(H.size()) + l;
    double fact = 1.0;
    for (unsigned i = 2; i <= power; ++i) fact *= i;
    double s = 0.0;
    for (std::uint64_t d = 1; d <= R; ++d) {
        int m = mobius(d);
        if (m == 0) continue;
        std::uint64_t prod = 1 % d;
        for (auto h : H) prod = mulmod(prod, (n + h) % d, d);
        if (prod != 0) continue;
        s += m * std::pow(std::log(static_cast<double>(R) / static_cast<double>(d)), power) / fact;
    }
    return s;
}

// Number of n in [0, m) with m | prod(n + h_i).
inline std::uint64_t count_roots(const std::vector<std::uint64_t>& H, std::uint64_t m) {
    std::uint64_t c = 0;
    for (std::uint64_t n = 0; n < m; ++n) {
        std::uint64_t prod = 1 % m;
        for (auto h : H) prod = mulmod(prod, (n + h) % m, m);
        c += prod == 0;
    }
    return c;
}

// (1/N) sum_{n in [N, 2N)} Lambda_R(n; l1) Lambda_R(n; l2) f(n)
template <class F>
double weighted_mean(std::uint64_t N, std::uint64_t R, const std::vector<std::uint64_t>& H, unsigned l1,
                     unsigned l2, F f) {
    double s = 0.0;
    for (std::uint64_t n = N; n < 2 * N; ++n) s += lambda_r(n, H, R, l1) * lambda_r(n, H, R, l2) * f(n);
    return s / static_cast<double>(N);
}

struct PairSums {
    double B = 0, P = 0, B_filtered = 0, P_filtered = 0;
};

// b'_n sums for H = {0, h}; u = 0 gives the unmixed b_n.
inline PairSums pair_sums(std::uint64_t N, std::uint64_t R, std::uint64_t h, double u) {
    PairSums s;
    const double mix = u * 3.0 / std::log(static_cast<double>(R));
    for (std::uint64_t n = N; n < 2 * N; ++n) {
        const double w = lambda_r(n, {0, h}, R, 0) + mix * lambda_r(n, {0, h}, R, 1);
        const double a = w * w;
        const double b = a * (1 - liouville(n)) * (1 - liouville(n + h));
        const double th = theta(n) + theta(n + h);
        s.B += b;
        s.P += b * th;
        s.B_filtered += a;
        s.P_filtered += 2 * a * th;
    }
    const double d = static_cast<double>(N);
    s.B /= d;
    s.P /= d;
    s.B_filtered /= d;
    s.P_filtered /= d;
    return s;
}

inline bool rel_close(double a, double b, double rel) {
    return std::fabs(a - b) <= rel * std::max(1.0, std::max(std::fabs(a), std::fabs(b)));
}

}  // namespace oracle
