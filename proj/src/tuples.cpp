#include "gpylab/tuples.hpp"

#include "gpylab/arith_tables.hpp"
#include "gpylab/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

namespace gpylab {

KTuple::KTuple(std::vector<std::uint64_t> offsets) : offsets_(std::move(offsets)) {
    if (offsets_.empty()) fail(ErrorKind::invalid_argument, "tuple must have at least one offset");
    for (std::size_t i = 1; i < offsets_.size(); ++i)
        if (offsets_[i] <= offsets_[i - 1])
            fail(ErrorKind::invalid_argument, "tuple offsets must be strictly increasing");
}

KTuple KTuple::parse(std::string_view csv) {
    std::vector<std::uint64_t> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string_view::npos) comma = csv.size();
        std::string_view item = csv.substr(pos, comma - pos);
        while (!item.empty() && item.front() == ' ') item.remove_prefix(1);
        while (!item.empty() && item.back() == ' ') item.remove_suffix(1);
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
        if (item.empty() || ec != std::errc{} || ptr != item.data() + item.size())
            fail(ErrorKind::invalid_argument, "bad tuple offset '" + std::string(item) + "'");
        out.push_back(v);
        pos = comma + 1;
    }
    return KTuple(std::move(out));
}

std::string KTuple::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < offsets_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(offsets_[i]);
    }
    return s;
}

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t p : {2u, 3u, 5u})
        if (n % p == 0) return n == p;
    for (std::uint64_t d = 7; d <= n / d; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> squarefree_factors(std::uint64_t m) {
    if (m == 0) fail(ErrorKind::invalid_argument, "modulus must be >= 1");
    std::vector<std::uint64_t> ps;
    std::uint64_t r = m;
    for (std::uint64_t p = 2; p <= r / p; p += (p == 2 ? 1 : 2)) {
        if (r % p) continue;
        r /= p;
        if (r % p == 0) fail(ErrorKind::invalid_argument, std::to_string(m) + " is not squarefree");
        ps.push_back(p);
    }
    if (r > 1) ps.push_back(r);
    return ps;
}

namespace {

std::vector<std::uint64_t> occupied_residues(const KTuple& H, std::uint64_t p) {
    std::vector<std::uint64_t> rs;
    rs.reserve(H.k());
    for (std::uint64_t h : H.offsets()) rs.push_back(h % p);
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    return rs;
}

unsigned nu_p_unchecked(const KTuple& H, std::uint64_t p) {
    if (p > H.span_width()) return static_cast<unsigned>(H.k());
    return static_cast<unsigned>(occupied_residues(H, p).size());
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

// Inverse of a mod m, gcd(a, m) = 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    __int128 t = 0, nt = 1, r = m, nr = a % m;
    while (nr) {
        __int128 q = r / nr;
        std::tie(t, nt) = std::pair{nt, t - q * nt};
        std::tie(r, nr) = std::pair{nr, r - q * nr};
    }
    if (t < 0) t += m;
    return static_cast<std::uint64_t>(t);
}

}  // namespace

unsigned nu_p(const KTuple& H, std::uint64_t p) {
    if (!is_prime_u64(p)) fail(ErrorKind::invalid_argument, std::to_string(p) + " is not prime");
    return nu_p_unchecked(H, p);
}

bool is_admissible(const KTuple& H) {
    for (std::uint64_t p = 2; p <= H.k(); ++p)
        if (is_prime_u64(p) && nu_p_unchecked(H, p) >= p) return false;
    return true;
}

std::uint64_t nu_m(const KTuple& H, std::uint64_t m) {
    std::uint64_t v = 1;
    for (std::uint64_t p : squarefree_factors(m)) v *= nu_p_unchecked(H, p);
    return v;
}

std::vector<std::uint64_t> residue_roots(const KTuple& H, std::uint64_t d) {
    // Mixed-radix CRT: fold in one prime at a time.
    std::vector<std::uint64_t> roots{0};
    std::uint64_t modulus = 1;
    for (std::uint64_t p : squarefree_factors(d)) {
        // Roots of prod(n + h_i) mod p are n = -h_i mod p.
        std::vector<std::uint64_t> local;
        for (std::uint64_t r : occupied_residues(H, p)) local.push_back((p - r) % p);
        const std::uint64_t inv = inv_mod(modulus % p, p);
        std::vector<std::uint64_t> next;
        next.reserve(roots.size() * local.size());
        for (std::uint64_t a : roots) {
            for (std::uint64_t b : local) {
                // x = a + modulus * t with t = (b - a) / modulus mod p
                std::uint64_t t = mul_mod((b + p - a % p) % p, inv, p);
                next.push_back(a + modulus * t);
            }
        }
        roots = std::move(next);
        modulus *= p;
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

SingularSeriesValue singular_series(const KTuple& H, std::uint64_t truncation_prime) {
    const std::uint64_t k = H.k();
    if (truncation_prime < 2 * k + 1)
        fail(ErrorKind::invalid_argument, "truncation prime must be at least 2k + 1");
    if (!is_admissible(H)) return {0.0, truncation_prime, 0.0};

    const std::uint64_t cut = std::max({truncation_prime, H.span_width(), 2 * k});
    double value = 1.0;
    for (std::uint64_t p : primes_up_to(cut)) {
        const double pd = static_cast<double>(p);
        const double nu = nu_p_unchecked(H, p);
        double denom = 1.0;
        for (std::uint64_t i = 0; i < k; ++i) denom *= 1.0 - 1.0 / pd;
        value *= (1.0 - nu / pd) / denom;
    }
    // For p > 2k with nu_p = k the log of each factor is at most k(k+1)/p^2 in
    // absolute value; sum_{p > T} 1/p^2 <= 1/T.
    const double delta = static_cast<double>(k * (k + 1)) / static_cast<double>(cut);
    return {value, cut, std::expm1(delta)};
}

double pair_singular_series(std::uint64_t h, std::uint64_t truncation_prime) {
    if (h % 2) return 0.0;
    double value = 1.0;
    for (std::uint64_t p : primes_up_to(truncation_prime)) {
        const double pd = static_cast<double>(p);
        if (h % p == 0)
            value *= 1.0 / (1.0 - 1.0 / pd);
        else
            value *= 1.0 - 1.0 / ((pd - 1.0) * (pd - 1.0));
    }
    return value;
}

}  // namespace gpylab
