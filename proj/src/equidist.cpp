#include "gpylab/equidist.hpp"

#include "gpylab/error.hpp"
#include "gpylab/numeric.hpp"
#include "gpylab/parallel.hpp"

#include <atomic>
#include <chrono>
#include <cmath>

namespace gpylab {

namespace {

constexpr std::pair<SequenceTag, std::string_view> kNames[] = {
    {SequenceTag::theta, "theta"},
    {SequenceTag::liouville, "liouville"},
    {SequenceTag::liouville_pair, "liouville_pair"},
    {SequenceTag::liouville_shift_theta, "liouville_shift_theta"},
    {SequenceTag::theta_shift_liouville, "theta_shift_liouville"},
};

}  // namespace

void SequenceKind::validate() const {
    if (shifted() && (h == 0 || h % 2))
        fail(ErrorKind::invalid_argument, "shifted sequences need an even h > 0");
}

std::string SequenceKind::name() const {
    for (auto [tag_, name_] : kNames)
        if (tag_ == tag) return std::string(name_);
    return "?";
}

SequenceKind SequenceKind::parse(std::string_view name, std::uint64_t h) {
    for (auto [tag_, name_] : kNames) {
        if (name_ == name) {
            SequenceKind k{tag_, h};
            if (!k.shifted()) k.h = 0;
            k.validate();
            return k;
        }
    }
    fail(ErrorKind::invalid_argument, "unknown sequence kind '" + std::string(name) + "'");
}

std::uint64_t euler_phi(std::uint64_t q) {
    std::uint64_t phi = q, r = q;
    for (std::uint64_t p = 2; p <= r / p; ++p) {
        if (r % p) continue;
        while (r % p == 0) r /= p;
        phi -= phi / p;
    }
    if (r > 1) phi -= phi / r;
    return phi;
}

std::vector<double> sequence_values(const SequenceKind& kind, std::uint64_t N, const SieveTable& table) {
    kind.validate();
    if (N < 1) fail(ErrorKind::invalid_argument, "N must be >= 1");
    const bool back = kind.tag == SequenceTag::theta_shift_liouville;
    if (back && N <= kind.h) fail(ErrorKind::invalid_argument, "lambda(p - h) needs N > h");
    const std::uint64_t lo = back ? N - kind.h : N;
    const std::uint64_t hi = 2 * N + (kind.shifted() && !back ? kind.h : 0);
    if (!table.covers(lo, hi))
        fail(ErrorKind::out_of_range, "sieve table does not cover [" + std::to_string(lo) + ", " +
                                          std::to_string(hi) + ")");

    auto idx = [&](std::uint64_t n) { return static_cast<std::size_t>(n - table.n0()); };
    auto th = [&](std::uint64_t n) { return table.prime_at(idx(n)) ? std::log(static_cast<double>(n)) : 0.0; };
    std::vector<double> f(N);
    for (std::uint64_t i = 0; i < N; ++i) {
        const std::uint64_t n = N + i;
        switch (kind.tag) {
            case SequenceTag::theta: f[i] = th(n); break;
            case SequenceTag::liouville: f[i] = table.lambda_at(idx(n)); break;
            case SequenceTag::liouville_pair:
                f[i] = table.lambda_at(idx(n)) * table.lambda_at(idx(n + kind.h));
                break;
            case SequenceTag::liouville_shift_theta: f[i] = th(n) * table.lambda_at(idx(n + kind.h)); break;
            case SequenceTag::theta_shift_liouville: f[i] = th(n) * table.lambda_at(idx(n - kind.h)); break;
        }
    }
    return f;
}

namespace {

// E_N(q) from precomputed values f[i] = f(N + i).
double class_error(const SequenceKind& kind, std::uint64_t N, std::uint64_t q, const std::vector<double>& f,
                   double theta_mass) {
    std::vector<double> sum(q, 0.0), comp(q, 0.0);
    std::uint64_t a = N % q;
    for (double v : f) {
        if (v != 0.0) compensated_add(sum[a], comp[a], v);
        if (++a == q) a = 0;
    }
    double best = 0.0;
    if (kind.tag == SequenceTag::theta) {
        const double main = theta_mass / static_cast<double>(euler_phi(q));
        for (std::uint64_t c = 0; c < q; ++c)
            if (gcd_u64(c, q) == 1) best = std::max(best, std::fabs(sum[c] + comp[c] - main));
    } else {
        for (std::uint64_t c = 0; c < q; ++c) best = std::max(best, std::fabs(sum[c] + comp[c]));
    }
    return best;
}

double theta_mass_of(const std::vector<double>& f) {
    CompensatedSum s;
    for (double v : f) s.add(v);
    return s.value();
}

}  // namespace

double residue_error(const SequenceKind& kind, std::uint64_t N, std::uint64_t q, const SieveTable& table) {
    if (q < 1) fail(ErrorKind::invalid_argument, "q must be >= 1");
    const auto f = sequence_values(kind, N, table);
    return class_error(kind, N, q, f, kind.tag == SequenceTag::theta ? theta_mass_of(f) : 0.0);
}

EquidistReport level_sweep(const SequenceKind& kind, std::uint64_t N, std::uint64_t Q, const SieveTable& table,
                           const SweepOptions& options) {
    if (Q < 1) fail(ErrorKind::invalid_argument, "Q must be >= 1");
    EquidistReport rep;
    rep.kind = kind;
    rep.N = N;
    if (Q > N) rep.warnings.push_back("Q exceeds N; some residue classes are empty");

    const auto f = sequence_values(kind, N, table);
    const double mass = kind.tag == SequenceTag::theta ? theta_mass_of(f) : 0.0;

    std::vector<double> errors(Q, 0.0);
    std::vector<char> done(Q, 0);
    const auto start = std::chrono::steady_clock::now();
    std::atomic<bool> out_of_time{false};
    parallel_for(static_cast<std::size_t>(Q), options.threads, [&](std::size_t i) {
        if (out_of_time.load()) return;
        if (options.time_budget_seconds > 0.0) {
            std::chrono::duration<double> spent = std::chrono::steady_clock::now() - start;
            if (spent.count() > options.time_budget_seconds) {
                out_of_time.store(true);
                return;
            }
        }
        errors[i] = class_error(kind, N, i + 1, f, mass);
        done[i] = 1;
    });

    // Keep the completed prefix so rows stay contiguous in q.
    CompensatedSum total;
    for (std::uint64_t i = 0; i < Q; ++i) {
        if (!done[i]) {
            rep.truncated = true;
            break;
        }
        rep.rows.emplace_back(i + 1, errors[i]);
        total.add(errors[i]);
    }
    rep.Q = rep.rows.empty() ? 0 : rep.rows.back().first;
    rep.total = total.value();
    const double lg = std::log(static_cast<double>(N));
    rep.normalized = rep.total * lg * lg / static_cast<double>(N);
    if (rep.truncated) rep.warnings.push_back("time budget exceeded; sweep truncated at q = " + std::to_string(rep.Q));
    return rep;
}

}  // namespace gpylab
