#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gpylab::cli {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kUsage = 2,
    kBudget = 3,
    kCacheRecovered = 4,
};

// Parses "1000000", "1e6" or "10^6" into an exact unsigned integer.
std::uint64_t parse_count(const std::string& text);

// R = floor(N^exponent), guarded against pow() landing just below an integer.
std::uint64_t resolve_r_exponent(std::uint64_t N, double exponent);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gpylab::cli
