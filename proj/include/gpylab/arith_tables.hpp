#pragma once

// Segmented sieve tables: smallest prime factor, Liouville lambda, Moebius mu
// and a primality bitmap for every integer in [n0, n0 + len).
//
// Storage per entry:
//   spf     uint32   smallest prime factor of composite n; 0 for primes and 1
//   lambda  int8     (-1)^Omega(n)
//   mu      int8     Moebius function
//   prime   1 bit    packed little-endian into 64-bit words
//
// A composite n < 2^64 has spf(n) <= sqrt(n) < 2^32, so 32 bits suffice once
// primes are flagged separately.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

namespace gpylab {

inline constexpr std::uint64_t kMaxSieveValue = (std::uint64_t{1} << 63) - 1;
inline constexpr std::uint32_t kTableFormatVersion = 1;

struct SieveOptions {
    std::uint64_t segment_size = std::uint64_t{1} << 20;
    unsigned threads = 1;
    std::uint64_t memory_budget = std::uint64_t{8} << 30;  // bytes
};

class SieveTable {
public:
    SieveTable() = default;

    std::uint64_t n0() const noexcept { return n0_; }
    std::uint64_t len() const noexcept { return len_; }
    std::uint64_t end() const noexcept { return n0_ + len_; }

    bool contains(std::uint64_t n) const noexcept { return n >= n0_ && n - n0_ < len_; }
    // true when [lo, hi) lies inside the table
    bool covers(std::uint64_t lo, std::uint64_t hi) const noexcept {
        return lo >= n0_ && hi <= end() && lo <= hi;
    }

    // Checked accessors; throw Error(out_of_range) outside the table.
    int lambda(std::uint64_t n) const { return lambda_[index(n)]; }
    int mu(std::uint64_t n) const { return mu_[index(n)]; }
    bool is_prime(std::uint64_t n) const { return prime_bit(index(n)); }
    // Smallest prime factor; n itself for primes, 1 for n = 1.
    std::uint64_t spf(std::uint64_t n) const;

    // Unchecked offset access for hot loops: i = n - n0.
    int lambda_at(std::size_t i) const noexcept { return lambda_[i]; }
    int mu_at(std::size_t i) const noexcept { return mu_[i]; }
    bool prime_at(std::size_t i) const noexcept { return prime_bit(i); }

    std::span<const std::uint32_t> spf_raw() const noexcept { return spf_; }
    std::span<const std::int8_t> lambda_raw() const noexcept { return lambda_; }
    std::span<const std::int8_t> mu_raw() const noexcept { return mu_; }
    std::span<const std::uint64_t> prime_words() const noexcept { return prime_; }

    bool operator==(const SieveTable&) const = default;

private:
    friend SieveTable build_table(std::uint64_t, std::uint64_t, const SieveOptions&);
    friend SieveTable read_table(std::istream&);

    std::size_t index(std::uint64_t n) const;
    bool prime_bit(std::size_t i) const noexcept { return (prime_[i >> 6] >> (i & 63)) & 1u; }

    std::uint64_t n0_ = 1;
    std::uint64_t len_ = 0;
    std::vector<std::uint32_t> spf_;
    std::vector<std::int8_t> lambda_;
    std::vector<std::int8_t> mu_;
    std::vector<std::uint64_t> prime_;
};

// Sieve [n0, n0 + len). Output does not depend on segment size or thread count.
SieveTable build_table(std::uint64_t n0, std::uint64_t len, const SieveOptions& options = {});

// Natural log of n if n is prime, else 0.
double theta(const SieveTable& table, std::uint64_t n);

// Plain sieve of Eratosthenes.
std::vector<std::uint64_t> primes_up_to(std::uint64_t limit);

// "GPYT" cache format: magic, u32 version, u64 n0, u64 len, spf[len] (u32),
// lambda[len] (i8), mu[len] (i8), prime bits (ceil(len/8) bytes, LSB first),
// then a u64 FNV-1a checksum of every preceding byte. All little-endian.
void write_table(const SieveTable& table, std::ostream& out);
SieveTable read_table(std::istream& in);
void save_table(const SieveTable& table, const std::filesystem::path& path);
SieveTable load_table(const std::filesystem::path& path);

}  // namespace gpylab
