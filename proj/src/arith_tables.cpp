#include "gpylab/arith_tables.hpp"

#include "binary_io.hpp"
#include "gpylab/error.hpp"
#include "gpylab/numeric.hpp"
#include "gpylab/parallel.hpp"

#include <cmath>
#include <fstream>
#include <string>

namespace gpylab {

std::size_t SieveTable::index(std::uint64_t n) const {
    if (!contains(n))
        fail(ErrorKind::out_of_range, "n = " + std::to_string(n) + " outside sieve table [" +
                                          std::to_string(n0_) + ", " + std::to_string(end()) + ")");
    return static_cast<std::size_t>(n - n0_);
}

std::uint64_t SieveTable::spf(std::uint64_t n) const {
    std::size_t i = index(n);
    if (prime_bit(i) || n == 1) return n;
    return spf_[i];
}

double theta(const SieveTable& table, std::uint64_t n) {
    return table.is_prime(n) ? std::log(static_cast<double>(n)) : 0.0;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t limit) {
    std::vector<std::uint64_t> primes;
    if (limit < 2) return primes;
    std::vector<char> composite(limit + 1, 0);
    for (std::uint64_t i = 2; i * i <= limit; ++i)
        if (!composite[i])
            for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
    for (std::uint64_t i = 2; i <= limit; ++i)
        if (!composite[i]) primes.push_back(i);
    return primes;
}

namespace {

struct SegmentScratch {
    std::vector<std::uint64_t> rest;
    std::vector<std::uint8_t> omega;
};

// Sieves [lo, hi) into the table arrays at offset lo - n0.
void sieve_segment(std::uint64_t lo, std::uint64_t hi, std::uint64_t n0,
                   const std::vector<std::uint64_t>& base_primes, std::uint32_t* spf, std::int8_t* lambda,
                   std::int8_t* mu, std::uint64_t* prime_words) {
    const std::size_t n = static_cast<std::size_t>(hi - lo);
    SegmentScratch s;
    s.rest.resize(n);
    s.omega.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        s.rest[i] = lo + i;
        spf[i] = 0;
        mu[i] = 1;
    }

    const std::uint64_t top = hi - 1;
    for (std::uint64_t p : base_primes) {
        if (p > top / p) break;
        std::uint64_t first = (lo + p - 1) / p * p;
        for (std::uint64_t m = first; m < hi; m += p) {
            std::size_t i = static_cast<std::size_t>(m - lo);
            if (spf[i] == 0) spf[i] = static_cast<std::uint32_t>(p);
            std::uint64_t r = s.rest[i] / p;
            unsigned e = 1;
            while (r % p == 0) {
                r /= p;
                ++e;
            }
            s.rest[i] = r;
            s.omega[i] = static_cast<std::uint8_t>(s.omega[i] + e);
            mu[i] = e > 1 ? 0 : static_cast<std::int8_t>(-mu[i]);
        }
    }

    const std::size_t base = static_cast<std::size_t>(lo - n0);
    for (std::size_t i = 0; i < n; ++i) {
        if (s.rest[i] > 1) {
            ++s.omega[i];
            mu[i] = static_cast<std::int8_t>(-mu[i]);
        }
        bool prime = s.omega[i] == 1;
        if (prime) {
            spf[i] = 0;
            std::size_t bit = base + i;
            prime_words[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
        lambda[i] = (s.omega[i] & 1) ? -1 : 1;
    }
}

}  // namespace

SieveTable build_table(std::uint64_t n0, std::uint64_t len, const SieveOptions& options) {
    if (n0 < 1) fail(ErrorKind::invalid_argument, "sieve range must start at n0 >= 1");
    if (len > kMaxSieveValue || n0 - 1 > kMaxSieveValue - len)
        fail(ErrorKind::out_of_range, "sieve range exceeds 2^63 - 1");
    if (options.segment_size == 0) fail(ErrorKind::invalid_argument, "segment size must be positive");

    // Segments start on 64-entry boundaries so each owns whole prime words.
    const std::uint64_t seg = (options.segment_size + 63) / 64 * 64;
    const std::uint64_t top = len == 0 ? n0 : n0 + len - 1;
    const std::uint64_t root = isqrt(top);
    const unsigned threads = std::max(1u, options.threads);

    const double table_bytes = static_cast<double>(len) * 6.125;
    const double base_bytes = static_cast<double>(root) + 8.0 * static_cast<double>(root) / 2.0;
    const double scratch_bytes = static_cast<double>(threads) * static_cast<double>(std::min(seg, len)) * 9.0;
    const double need = table_bytes + base_bytes + scratch_bytes;
    if (need > static_cast<double>(options.memory_budget))
        fail(ErrorKind::budget_exceeded, "sieve of " + std::to_string(len) + " entries needs ~" +
                                             std::to_string(static_cast<std::uint64_t>(need)) +
                                             " bytes, over budget of " + std::to_string(options.memory_budget));

    SieveTable t;
    t.n0_ = n0;
    t.len_ = len;
    t.spf_.resize(len);
    t.lambda_.resize(len);
    t.mu_.resize(len);
    t.prime_.assign((len + 63) / 64, 0);
    if (len == 0) return t;

    const auto base_primes = primes_up_to(root);
    const std::size_t segments = static_cast<std::size_t>((len + seg - 1) / seg);
    parallel_for(segments, threads, [&](std::size_t s) {
        std::uint64_t off = s * seg;
        std::uint64_t lo = n0 + off;
        std::uint64_t hi = lo + std::min(seg, len - off);
        sieve_segment(lo, hi, n0, base_primes, t.spf_.data() + off, t.lambda_.data() + off, t.mu_.data() + off,
                      t.prime_.data());
    });
    return t;
}

void write_table(const SieveTable& table, std::ostream& out) {
    detail::BinaryWriter w(out);
    w.magic("GPYT");
    w.put<std::uint32_t>(kTableFormatVersion);
    w.put<std::uint64_t>(table.n0());
    w.put<std::uint64_t>(table.len());
    for (std::uint32_t v : table.spf_raw()) w.put(v);
    for (std::int8_t v : table.lambda_raw()) w.put(v);
    for (std::int8_t v : table.mu_raw()) w.put(v);
    const std::size_t nbytes = static_cast<std::size_t>((table.len() + 7) / 8);
    auto words = table.prime_words();
    for (std::size_t b = 0; b < nbytes; ++b) w.put(static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8))));
    w.finish();
}

SieveTable read_table(std::istream& in) {
    detail::BinaryReader r(in);
    r.expect_magic("GPYT");
    auto version = r.get<std::uint32_t>();
    if (version != kTableFormatVersion)
        fail(ErrorKind::cache_corrupt, "unsupported GPYT version " + std::to_string(version));
    SieveTable t;
    t.n0_ = r.get<std::uint64_t>();
    t.len_ = r.get<std::uint64_t>();
    if (t.n0_ < 1 || t.len_ > kMaxSieveValue || t.n0_ - 1 > kMaxSieveValue - t.len_)
        fail(ErrorKind::cache_corrupt, "GPYT header describes an invalid range");
    t.spf_.resize(t.len_);
    t.lambda_.resize(t.len_);
    t.mu_.resize(t.len_);
    t.prime_.assign((t.len_ + 63) / 64, 0);
    for (auto& v : t.spf_) v = r.get<std::uint32_t>();
    for (auto& v : t.lambda_) v = r.get<std::int8_t>();
    for (auto& v : t.mu_) v = r.get<std::int8_t>();
    const std::size_t nbytes = static_cast<std::size_t>((t.len_ + 7) / 8);
    for (std::size_t b = 0; b < nbytes; ++b)
        t.prime_[b / 8] |= std::uint64_t{r.get<std::uint8_t>()} << (8 * (b % 8));
    r.verify();
    return t;
}

void save_table(const SieveTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot open " + path.string() + " for writing");
    write_table(table, out);
}

SieveTable load_table(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path.string());
    return read_table(in);
}

}  // namespace gpylab
