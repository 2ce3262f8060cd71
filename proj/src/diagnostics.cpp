#include "gpylab/diagnostics.hpp"

#include "gpylab/error.hpp"
#include "gpylab/parallel.hpp"
#include "gpylab/tuples.hpp"

#include <algorithm>
#include <cmath>

namespace gpylab {

namespace {

void require_even_shift(std::uint64_t h, const char* what) {
    if (h == 0 || h % 2) fail(ErrorKind::invalid_argument, std::string(what) + " must be even and positive");
}

void require_covers(const SieveTable& table, std::uint64_t lo, std::uint64_t hi_inclusive) {
    if (!table.covers(lo, hi_inclusive + 1))
        fail(ErrorKind::out_of_range, "sieve table does not cover [" + std::to_string(lo) + ", " +
                                          std::to_string(hi_inclusive) + "]");
}

}  // namespace

TwinCountReport twin_count(std::uint64_t N, std::uint64_t h, const SieveTable& table,
                           const DiagnosticsOptions& options) {
    require_even_shift(h, "h");
    TwinCountReport rep;
    rep.N = N;
    rep.h = h;
    if (N >= 2) {
        require_covers(table, 2, N + h);
        const std::uint64_t base = table.n0();
        const std::uint64_t len = N - 1;  // p in [2, N]
        const std::uint64_t block = std::max<std::uint64_t>(1, options.block_size);
        const std::size_t blocks = static_cast<std::size_t>((len + block - 1) / block);
        std::vector<std::uint64_t> partial(blocks, 0);
        parallel_for(blocks, options.threads, [&](std::size_t b) {
            const std::uint64_t lo = 2 + b * block;
            const std::uint64_t hi = std::min(N + 1, lo + block);
            std::uint64_t c = 0;
            for (std::uint64_t p = lo; p < hi; ++p)
                c += table.prime_at(p - base) && table.prime_at(p + h - base);
            partial[b] = c;
        });
        for (auto c : partial) rep.count += c;
    }
    rep.singular_series = pair_singular_series(h, options.truncation_prime);
    if (N >= 3) {
        const double lg = std::log(static_cast<double>(N));
        rep.hl_prediction = rep.singular_series * static_cast<double>(N) / (lg * lg);
        rep.ratio = static_cast<double>(rep.count) / rep.hl_prediction;
    }
    return rep;
}

std::uint64_t twin_count_by_prime_list(std::uint64_t N, std::uint64_t h, const SieveTable& table) {
    require_even_shift(h, "h");
    if (N < 2) return 0;
    require_covers(table, 2, N + h);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= N + h; ++n)
        if (table.prime_at(n - table.n0())) primes.push_back(n);
    std::uint64_t count = 0;
    std::size_t j = 0;
    for (std::size_t i = 0; i < primes.size() && primes[i] <= N; ++i) {
        const std::uint64_t target = primes[i] + h;
        while (j < primes.size() && primes[j] < target) ++j;
        if (j < primes.size() && primes[j] == target) ++count;
    }
    return count;
}

std::int64_t chowla_sum(std::uint64_t x, std::uint64_t h, const SieveTable& table,
                        const DiagnosticsOptions& options) {
    if (x == 0) return 0;
    require_covers(table, 1, x + h);
    const std::uint64_t base = table.n0();
    const std::uint64_t block = std::max<std::uint64_t>(1, options.block_size);
    const std::size_t blocks = static_cast<std::size_t>((x + block - 1) / block);
    std::vector<std::int64_t> partial(blocks, 0);
    parallel_for(blocks, options.threads, [&](std::size_t b) {
        const std::uint64_t lo = 1 + b * block;
        const std::uint64_t hi = std::min(x + 1, lo + block);
        std::int64_t s = 0;
        for (std::uint64_t n = lo; n < hi; ++n) s += table.lambda_at(n - base) * table.lambda_at(n + h - base);
        partial[b] = s;
    });
    std::int64_t total = 0;
    for (auto s : partial) total += s;
    return total;
}

ShiftedLiouvilleCounts liouville_at_shifted_primes(std::uint64_t x, std::uint64_t d, const SieveTable& table) {
    require_even_shift(d, "d");
    ShiftedLiouvilleCounts c;
    if (x < 2) return c;
    require_covers(table, 2, x + d);
    const std::uint64_t base = table.n0();
    for (std::uint64_t p = 2; p <= x; ++p) {
        if (!table.prime_at(p - base)) continue;
        if (table.lambda_at(p + d - base) < 0)
            ++c.count_minus;
        else
            ++c.count_plus;
    }
    return c;
}

std::vector<std::uint64_t> twin_starters(std::uint64_t N, std::uint64_t h, const SieveTable& table) {
    require_even_shift(h, "h");
    std::vector<std::uint64_t> s;
    if (N < 2) return s;
    require_covers(table, 2, N + h);
    const std::uint64_t base = table.n0();
    for (std::uint64_t p = 2; p <= N; ++p)
        if (table.prime_at(p - base) && table.prime_at(p + h - base)) s.push_back(p);
    return s;
}

TwinProgression longest_twin_ap(std::uint64_t N, std::uint64_t h, const SieveTable& table) {
    const auto s = twin_starters(N, h, table);
    const std::uint64_t base = table.n0();
    auto is_starter = [&](std::uint64_t n) {
        return n <= N && table.prime_at(n - base) && table.prime_at(n + h - base);
    };

    TwinProgression best;
    best.length = s.size();
    if (!s.empty()) best.first_term = s[0];
    if (s.size() >= 2) best.common_difference = s[1] - s[0];
    if (s.size() < 3) return best;

    best.length = 2;
    for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) {
            const std::uint64_t diff = s[j] - s[i];
            // Longest progression that could still fit below N; differences only grow with j.
            if ((N - s[i]) / diff + 1 <= best.length) break;
            // Only count maximal progressions from their first term.
            if (s[i] >= diff + 2 && is_starter(s[i] - diff)) continue;
            std::uint64_t len = 2;
            for (std::uint64_t next = s[j] + diff; next <= N && is_starter(next); next += diff) ++len;
            if (len > best.length) best = {len, s[i], diff};
        }
    }
    return best;
}

}  // namespace gpylab
