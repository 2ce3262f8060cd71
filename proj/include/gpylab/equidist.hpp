#pragma once

// Empirical distribution in residue classes over n ~ N = [N, 2N):
//
//   E_N(q) = max_a | sum_{n ~ N, n = a (q)} f(n) |
//
// For f = theta the maximum runs over reduced classes and each class is
// compared with (theta mass of the range) / phi(q). Other sequences have no
// main term and use all q classes.

#include "gpylab/arith_tables.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gpylab {

enum class SequenceTag {
    theta,                  // log p
    liouville,              // lambda(n)
    liouville_pair,         // lambda(n) lambda(n + h)
    liouville_shift_theta,  // lambda(p + h) log p
    theta_shift_liouville,  // lambda(p - h) log p
};

struct SequenceKind {
    SequenceTag tag = SequenceTag::liouville;
    std::uint64_t h = 0;  // even and positive for the shifted kinds

    void validate() const;
    std::string name() const;
    static SequenceKind parse(std::string_view name, std::uint64_t h);
    bool shifted() const noexcept { return tag != SequenceTag::theta && tag != SequenceTag::liouville; }
    bool operator==(const SequenceKind&) const = default;
};

struct EquidistReport {
    SequenceKind kind;
    std::uint64_t N = 0;
    std::uint64_t Q = 0;  // largest q actually swept
    std::vector<std::pair<std::uint64_t, double>> rows;
    double total = 0.0;       // sum of E_N(q) over the rows
    double normalized = 0.0;  // total * log^2 N / N
    bool truncated = false;   // stopped early by the time budget
    std::vector<std::string> warnings;
};

struct SweepOptions {
    unsigned threads = 1;
    double time_budget_seconds = 0.0;  // 0 = unlimited
};

// f(n) for n in [N, 2N), as doubles (exact integers for the lambda kinds).
std::vector<double> sequence_values(const SequenceKind& kind, std::uint64_t N, const SieveTable& table);

double residue_error(const SequenceKind& kind, std::uint64_t N, std::uint64_t q, const SieveTable& table);

EquidistReport level_sweep(const SequenceKind& kind, std::uint64_t N, std::uint64_t Q, const SieveTable& table,
                           const SweepOptions& options = {});

std::uint64_t euler_phi(std::uint64_t q);

}  // namespace gpylab
