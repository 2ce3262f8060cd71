#pragma once

// Selberg-type sieve weights
//
//   Lambda_R(n; H, l) = 1/(k+l)! * sum_{d <= R, d | P_H(n)} mu(d) log(R/d)^(k+l),
//   P_H(n) = prod_i (n + h_i),
//
// evaluated two independent ways: per n from the factorization of each n + h_i
// ("direct"), and by scattering every squarefree d over the residues r mod d
// with d | P_H(r) ("scatter"). Derived weights:
//
//   a_n  = Lambda_R(n; H, l)^2
//   b_n  = a_n (1 - lambda(n)) (1 - lambda(n + h))                H = {0, h}
//   a'_n = (Lambda_R(n; H, 0) + u (k+1) / log R * Lambda_R(n; H, 1))^2
//   b'_n = a'_n (1 - lambda(n)) (1 - lambda(n + h))

#include "gpylab/arith_tables.hpp"
#include "gpylab/tuples.hpp"

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace gpylab {

inline constexpr unsigned kMaxWeightDegree = 8;
inline constexpr std::uint32_t kWeightFormatVersion = 1;

struct WeightParams {
    KTuple H = KTuple::pair(2);
    std::uint64_t R = 1;
    unsigned l = 0;
    std::optional<double> u;

    // R >= 1, l <= 8, u > -1 when present.
    void validate() const;
    bool operator==(const WeightParams&) const = default;
};

enum class WeightKind { lambda_r, a, b, a_prime, b_prime };
enum class WeightAlgorithm { direct, scatter };

std::string_view to_string(WeightKind kind);
std::string_view to_string(WeightAlgorithm algorithm);
WeightKind parse_weight_kind(std::string_view name);

struct WeightTable {
    std::uint64_t n0 = 0;
    std::uint64_t len = 0;
    std::vector<double> values;
    WeightKind kind = WeightKind::lambda_r;
    WeightParams params;
    WeightAlgorithm algorithm = WeightAlgorithm::scatter;

    double at(std::uint64_t n) const { return values.at(static_cast<std::size_t>(n - n0)); }
};

struct RangeOptions {
    unsigned threads = 1;
    std::uint64_t segment_size = std::uint64_t{1} << 16;
};

// mu(d) log(R/d)^power / power!
inline double weight_term(int mu, std::uint64_t R, std::uint64_t d, unsigned power) {
    const double lg = std::log(static_cast<double>(R) / static_cast<double>(d));
    double f = 1.0;
    for (unsigned i = 2; i <= power; ++i) f *= i;
    return mu * std::pow(lg, static_cast<int>(power)) / f;
}

// Squarefree d <= R and mu(d), from one sieve over [1, R].
class DivisorPlan {
public:
    explicit DivisorPlan(std::uint64_t R);

    std::uint64_t R() const noexcept { return R_; }
    std::span<const std::uint64_t> divisors() const noexcept { return divisors_; }
    std::span<const std::int8_t> mu() const noexcept { return mu_; }

private:
    std::uint64_t R_;
    std::vector<std::uint64_t> divisors_;
    std::vector<std::int8_t> mu_;
};

// Scatter evaluator for several degrees l at once. Root lists are generated
// per d and discarded, so memory is O(window) regardless of R.
class LambdaScatter {
public:
    LambdaScatter(KTuple H, std::uint64_t R, std::vector<unsigned> degrees);

    std::span<const unsigned> degrees() const noexcept { return degrees_; }
    const KTuple& tuple() const noexcept { return H_; }
    std::uint64_t R() const noexcept { return plan_.R(); }

    // out[j][i] = Lambda_R(lo + i; H, degrees[j]); every out[j] has the window length.
    void fill(std::uint64_t lo, std::span<const std::span<double>> out) const;

private:
    KTuple H_;
    DivisorPlan plan_;
    std::vector<unsigned> degrees_;
};

// Direct evaluation at one n; n + h_i must lie in the table.
double lambda_r_direct(std::uint64_t n, const WeightParams& params, const SieveTable& table);

WeightTable lambda_r_range(std::uint64_t n0, std::uint64_t len, const WeightParams& params,
                           const RangeOptions& options = {});
WeightTable lambda_r_range_direct(std::uint64_t n0, std::uint64_t len, const WeightParams& params,
                                  const SieveTable& table, const RangeOptions& options = {});

// inputs: one lambda_r table for a / b; the l = 0 and l = 1 tables (same H, R,
// range, u set on at least one) for a_prime / b_prime.
WeightTable derive_weights(WeightKind kind, std::span<const WeightTable> inputs, const SieveTable& table);

// Warnings when R exceeds the square-root level the lemmas assume.
std::vector<std::string> level_warnings(std::uint64_t N, std::uint64_t R);

// "GPYW" cache format: magic, u32 version, u64 n0, u64 len, u8 kind,
// u8 algorithm, u32 k, k x u64 offsets, u64 R, u32 l, u8 has_u, f64 u,
// len x f64 values, u64 FNV-1a checksum. Little-endian throughout.
void write_weights(const WeightTable& table, std::ostream& out);
WeightTable read_weights(std::istream& in);
void save_weights(const WeightTable& table, const std::filesystem::path& path);
WeightTable load_weights(const std::filesystem::path& path);
void write_weights_csv(const WeightTable& table, std::ostream& out);

}  // namespace gpylab
