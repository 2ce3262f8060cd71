#pragma once

// Unconditional measurements over p <= N (not n ~ N): prime-pair counts against
// the Hardy-Littlewood prediction, Chowla-type correlation sums, Liouville
// signs at shifted primes, and progressions among prime-pair starters.

#include "gpylab/arith_tables.hpp"

#include <cstdint>
#include <vector>

namespace gpylab {

struct TwinCountReport {
    std::uint64_t N = 0;
    std::uint64_t h = 0;
    std::uint64_t count = 0;
    double singular_series = 0.0;  // pair constant for h
    double hl_prediction = 0.0;    // singular_series * N / log^2 N
    double ratio = 0.0;            // count / hl_prediction
};

struct DiagnosticsOptions {
    unsigned threads = 1;
    std::uint64_t block_size = std::uint64_t{1} << 20;
    std::uint64_t truncation_prime = 1'000'000;
};

// Bitmap scan of the table; needs [2, N + h] covered.
TwinCountReport twin_count(std::uint64_t N, std::uint64_t h, const SieveTable& table,
                           const DiagnosticsOptions& options = {});
// Second count: intersect the sorted prime list with itself shifted by h.
std::uint64_t twin_count_by_prime_list(std::uint64_t N, std::uint64_t h, const SieveTable& table);

// sum_{n <= x} lambda(n) lambda(n + h)
std::int64_t chowla_sum(std::uint64_t x, std::uint64_t h, const SieveTable& table,
                        const DiagnosticsOptions& options = {});

struct ShiftedLiouvilleCounts {
    std::uint64_t count_minus = 0;  // primes p <= x with lambda(p + d) = -1
    std::uint64_t count_plus = 0;
};
ShiftedLiouvilleCounts liouville_at_shifted_primes(std::uint64_t x, std::uint64_t d, const SieveTable& table);

struct TwinProgression {
    std::uint64_t length = 0;
    std::uint64_t first_term = 0;
    std::uint64_t common_difference = 0;
};

// {p <= N : p, p + h prime}, ascending.
std::vector<std::uint64_t> twin_starters(std::uint64_t N, std::uint64_t h, const SieveTable& table);

// Longest arithmetic progression inside the starter set; ties go to the
// smallest first term, then the smallest difference. With fewer than three
// starters the length is the starter count.
TwinProgression longest_twin_ap(std::uint64_t N, std::uint64_t h, const SieveTable& table);

}  // namespace gpylab
