#pragma once

// Admissible k-tuples H = {h_1 < ... < h_k}, their residue counts and the
// Hardy-Littlewood singular series.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpylab {

class KTuple {
public:
    // Offsets must be strictly increasing and non-empty.
    explicit KTuple(std::vector<std::uint64_t> offsets);
    // "0,2" or "0,4,6,10,12,16"
    static KTuple parse(std::string_view csv);
    static KTuple pair(std::uint64_t h) { return KTuple({0, h}); }

    std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
    std::size_t k() const noexcept { return offsets_.size(); }
    std::uint64_t front() const noexcept { return offsets_.front(); }
    std::uint64_t back() const noexcept { return offsets_.back(); }
    std::uint64_t span_width() const noexcept { return offsets_.back() - offsets_.front(); }
    std::string to_string() const;

    bool operator==(const KTuple&) const = default;

private:
    std::vector<std::uint64_t> offsets_;
};

bool is_prime_u64(std::uint64_t n);

// Distinct prime factors of m, ascending. Throws if m is not squarefree.
std::vector<std::uint64_t> squarefree_factors(std::uint64_t m);

// Number of residue classes mod p occupied by H. p must be prime.
unsigned nu_p(const KTuple& H, std::uint64_t p);

// nu_p(H) < p for every prime p (only p <= k can fail).
bool is_admissible(const KTuple& H);

// Number of n mod m with m | prod(n + h_i); m squarefree.
std::uint64_t nu_m(const KTuple& H, std::uint64_t m);

// The nu_m(H, d) residues r mod d with d | prod(r + h_i), ascending.
std::vector<std::uint64_t> residue_roots(const KTuple& H, std::uint64_t d);

struct SingularSeriesValue {
    double value = 0.0;
    std::uint64_t truncation_prime = 0;  // product runs over all p <= this
    double tail_bound = 0.0;             // bound on |true/value - 1|
};

// prod_p (1 - nu_p/p)(1 - 1/p)^(-k) over p <= truncation, with a certified
// relative bound for the omitted tail. The cut is raised to the tuple width
// (and 2k) when needed so that every omitted factor has nu_p = k.
SingularSeriesValue singular_series(const KTuple& H, std::uint64_t truncation_prime);

// Pair form for H = {0, h}:
//   prod_{p | h} (1 - 1/p)^(-1) * prod_{p !| h} (1 - 1/(p-1)^2)
// over p <= truncation. Zero for odd h.
double pair_singular_series(std::uint64_t h, std::uint64_t truncation_prime);

}  // namespace gpylab
