#include "gpylab/correlations.hpp"

#include "gpylab/error.hpp"
#include "gpylab/numeric.hpp"
#include "gpylab/parallel.hpp"

#include <cmath>
#include <limits>

namespace gpylab {

std::string_view to_string(Functional f) {
    switch (f) {
        case Functional::lemma1: return "lemma1";
        case Functional::lemma2: return "lemma2";
        case Functional::lemma3: return "lemma3";
        case Functional::theorem1: return "theorem1";
        case Functional::theorem2: return "theorem2";
    }
    return "?";
}

std::string_view to_string(LemmaSelector s) {
    switch (s) {
        case LemmaSelector::one: return "one";
        case LemmaSelector::liouville: return "liouville";
        case LemmaSelector::liouville_pair: return "liouville_pair";
        case LemmaSelector::theta_liouville_shift: return "theta_liouville_shift";
        case LemmaSelector::liouville_theta_shift: return "liouville_theta_shift";
    }
    return "?";
}

LemmaSelector parse_lemma_selector(std::string_view name) {
    for (auto s : {LemmaSelector::one, LemmaSelector::liouville, LemmaSelector::liouville_pair,
                   LemmaSelector::theta_liouville_shift, LemmaSelector::liouville_theta_shift})
        if (to_string(s) == name) return s;
    fail(ErrorKind::invalid_argument, "unknown lemma3 selector '" + std::string(name) + "'");
}

double CorrelationReport::detail(std::string_view name) const {
    for (const auto& [key, value] : details)
        if (key == name) return value;
    fail(ErrorKind::invalid_argument, "report has no detail '" + std::string(name) + "'");
}

double lemma1_main_term(double singular, double log_r, unsigned k, unsigned l1, unsigned l2) {
    const unsigned m = k + l1 + l2;
    return singular * binomial(l1 + l2, l1) * std::pow(log_r, static_cast<int>(m)) / factorial(m);
}

double lemma2_main_term(double singular, double log_r, unsigned k, unsigned l1, unsigned l2) {
    const unsigned m = k + l1 + l2 + 1;
    return singular * binomial(l1 + l2 + 2, l1 + 1) * std::pow(log_r, static_cast<int>(m)) / factorial(m);
}

double theorem1_predicted_margin(std::uint64_t N, std::uint64_t R) {
    return (8.0 / 3.0) * std::log(static_cast<double>(R)) / std::log(3.0 * static_cast<double>(N)) - 1.0;
}

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double safe_ratio(double num, double den) { return den != 0.0 ? num / den : kNaN; }

void require_range(std::uint64_t N, const KTuple& H, const SieveTable& table, std::uint64_t extra_low = 0) {
    if (N < 1) fail(ErrorKind::invalid_argument, "N must be >= 1");
    const std::uint64_t lo = N - std::min(N, extra_low);
    const std::uint64_t hi = 2 * N + H.back();
    if (!table.covers(lo, hi))
        fail(ErrorKind::out_of_range, "sieve table [" + std::to_string(table.n0()) + ", " +
                                          std::to_string(table.end()) + ") does not cover [" + std::to_string(lo) +
                                          ", " + std::to_string(hi) + ")");
}

// Runs kernel(n, offset, lambdas, sums) over n in [N, 2N) in fixed segments and
// combines per-segment compensated sums in segment order.
template <class Kernel>
std::vector<double> reduce(std::uint64_t N, const LambdaScatter& scatter, std::size_t nsums,
                           const ReductionOptions& options, Kernel kernel) {
    const std::uint64_t len = N;
    const std::uint64_t seg = std::max<std::uint64_t>(1, options.segment_size);
    const std::size_t segments = static_cast<std::size_t>((len + seg - 1) / seg);
    const std::size_t J = scatter.degrees().size();
    std::vector<std::vector<CompensatedSum>> partial(segments, std::vector<CompensatedSum>(nsums));

    parallel_for(segments, options.threads, [&](std::size_t s) {
        const std::uint64_t off = s * seg;
        const std::size_t n = static_cast<std::size_t>(std::min(seg, len - off));
        std::vector<double> buf(n * J);
        std::vector<std::span<double>> windows;
        for (std::size_t j = 0; j < J; ++j) windows.emplace_back(buf.data() + j * n, n);
        scatter.fill(N + off, windows);
        std::vector<double> lambdas(J);
        auto& sums = partial[s];
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < J; ++j) lambdas[j] = buf[j * n + i];
            kernel(N + off + i, lambdas, sums);
        }
    });

    std::vector<double> out(nsums);
    for (std::size_t k = 0; k < nsums; ++k) {
        CompensatedSum total;
        for (const auto& p : partial) total.add(p[k]);
        out[k] = total.value() / static_cast<double>(N);
    }
    return out;
}

double theta_of(const SieveTable& table, std::uint64_t n) {
    return table.prime_at(static_cast<std::size_t>(n - table.n0())) ? std::log(static_cast<double>(n)) : 0.0;
}

int lambda_of(const SieveTable& table, std::uint64_t n) {
    return table.lambda_at(static_cast<std::size_t>(n - table.n0()));
}

CorrelationReport base_report(Functional f, std::uint64_t N, std::uint64_t R, const KTuple& H, unsigned l1,
                              unsigned l2) {
    CorrelationReport rep;
    rep.functional = f;
    rep.N = N;
    rep.R = R;
    rep.params.H = H;
    rep.params.R = R;
    rep.params.l = l1;
    rep.l1 = l1;
    rep.l2 = l2;
    rep.params.validate();
    WeightParams second = rep.params;
    second.l = l2;
    second.validate();
    rep.warnings = level_warnings(N, R);
    return rep;
}

std::vector<unsigned> degree_list(unsigned l1, unsigned l2) {
    return l1 == l2 ? std::vector<unsigned>{l1} : std::vector<unsigned>{l1, l2};
}

}  // namespace

CorrelationReport lemma1_check(std::uint64_t N, std::uint64_t R, const KTuple& H, unsigned l1, unsigned l2,
                               const SieveTable& table, const ReductionOptions& options) {
    auto rep = base_report(Functional::lemma1, N, R, H, l1, l2);
    require_range(N, H, table);
    const LambdaScatter scatter(H, R, degree_list(l1, l2));
    const std::size_t second = l1 == l2 ? 0 : 1;
    auto sums = reduce(N, scatter, 1, options, [&](std::uint64_t, const std::vector<double>& lam, auto& acc) {
        acc[0].add(lam[0] * lam[second]);
    });
    const double sing = singular_series(H, std::max<std::uint64_t>(options.truncation_prime, 2 * H.k() + 1)).value;
    rep.computed = sums[0];
    rep.main_term = lemma1_main_term(sing, std::log(static_cast<double>(R)), static_cast<unsigned>(H.k()), l1, l2);
    rep.ratio = safe_ratio(rep.computed, rep.main_term);
    rep.details = {{"singular_series", sing}};
    return rep;
}

CorrelationReport lemma2_check(std::uint64_t N, std::uint64_t R, const KTuple& H, unsigned l1, unsigned l2,
                               std::size_t h_index, const SieveTable& table, const ReductionOptions& options) {
    if (h_index >= H.k()) fail(ErrorKind::invalid_argument, "h_index out of range for the tuple");
    auto rep = base_report(Functional::lemma2, N, R, H, l1, l2);
    require_range(N, H, table);
    const std::uint64_t h = H.offsets()[h_index];
    const LambdaScatter scatter(H, R, degree_list(l1, l2));
    const std::size_t second = l1 == l2 ? 0 : 1;
    auto sums = reduce(N, scatter, 1, options, [&](std::uint64_t n, const std::vector<double>& lam, auto& acc) {
        const double t = theta_of(table, n + h);
        if (t != 0.0) acc[0].add(lam[0] * lam[second] * t);
    });
    const double sing = singular_series(H, std::max<std::uint64_t>(options.truncation_prime, 2 * H.k() + 1)).value;
    rep.computed = sums[0];
    rep.main_term = lemma2_main_term(sing, std::log(static_cast<double>(R)), static_cast<unsigned>(H.k()), l1, l2);
    rep.ratio = safe_ratio(rep.computed, rep.main_term);
    rep.details = {{"singular_series", sing}, {"h", static_cast<double>(h)}};
    return rep;
}

CorrelationReport lemma3_sum(std::uint64_t N, std::uint64_t R, const KTuple& H, unsigned l1, unsigned l2,
                             LemmaSelector f, const SieveTable& table, const ReductionOptions& options,
                             std::optional<std::uint64_t> h_override) {
    auto rep = base_report(Functional::lemma3, N, R, H, l1, l2);
    const std::uint64_t h = h_override.value_or(H.span_width());
    if (f != LemmaSelector::one && f != LemmaSelector::liouville && h == 0)
        fail(ErrorKind::invalid_argument, "shifted lemma3 selectors need h > 0");
    require_range(N, KTuple({0, std::max(H.back(), h)}), table);
    const LambdaScatter scatter(H, R, degree_list(l1, l2));
    const std::size_t second = l1 == l2 ? 0 : 1;

    auto value = [&](std::uint64_t n) -> double {
        switch (f) {
            case LemmaSelector::one: return 1.0;
            case LemmaSelector::liouville: return lambda_of(table, n);
            case LemmaSelector::liouville_pair: return lambda_of(table, n) * lambda_of(table, n + h);
            case LemmaSelector::theta_liouville_shift: return theta_of(table, n) * lambda_of(table, n + h);
            case LemmaSelector::liouville_theta_shift: return lambda_of(table, n) * theta_of(table, n + h);
        }
        return 0.0;
    };
    auto sums = reduce(N, scatter, 1, options, [&](std::uint64_t n, const std::vector<double>& lam, auto& acc) {
        const double fv = value(n);
        if (fv != 0.0) acc[0].add(lam[0] * lam[second] * fv);
    });
    const double sing = singular_series(H, std::max<std::uint64_t>(options.truncation_prime, 2 * H.k() + 1)).value;
    rep.computed = sums[0];
    rep.main_term = lemma1_main_term(sing, std::log(static_cast<double>(R)), static_cast<unsigned>(H.k()), l1, l2);
    rep.ratio = safe_ratio(rep.computed, rep.main_term);
    rep.details = {{"singular_series", sing}, {"h", static_cast<double>(h)}};
    return rep;
}

namespace {

CorrelationReport pair_report(Functional which, std::uint64_t N, std::uint64_t R, std::uint64_t h, double u,
                              const SieveTable& table, const ReductionOptions& options) {
    if (h == 0 || h % 2) fail(ErrorKind::invalid_argument, "h must be even and positive ({0, h} is inadmissible otherwise)");
    if (R < 2) fail(ErrorKind::invalid_argument, "theorem reports need R >= 2");
    if (!(u > -1.0)) fail(ErrorKind::invalid_argument, "mixing parameter u must be > -1");
    const KTuple H = KTuple::pair(h);
    auto rep = base_report(which, N, R, H, 0, 0);
    if (which == Functional::theorem2) rep.params.u = u;
    require_range(N, H, table);

    const double log_r = std::log(static_cast<double>(R));
    const double mix = u * 3.0 / log_r;  // u (k + 1) / log R with k = 2
    const bool mixed = which == Functional::theorem2;
    const LambdaScatter scatter(H, R, mixed ? std::vector<unsigned>{0, 1} : std::vector<unsigned>{0});

    // sums: a, b, a (theta_n + theta_{n+h}), b (theta_n + theta_{n+h})
    auto sums = reduce(N, scatter, 4, options, [&](std::uint64_t n, const std::vector<double>& lam, auto& acc) {
        const double w = mixed ? lam[0] + mix * lam[1] : lam[0];
        const double a = w * w;
        const double b = a * static_cast<double>((1 - lambda_of(table, n)) * (1 - lambda_of(table, n + h)));
        const double th = theta_of(table, n) + theta_of(table, n + h);
        acc[0].add(a);
        acc[1].add(b);
        if (th != 0.0) {
            acc[2].add(a * th);
            acc[3].add(b * th);
        }
    });

    const double sing = singular_series(H, std::max<std::uint64_t>(options.truncation_prime, 5)).value;
    const double log3n = std::log(3.0 * static_cast<double>(N));
    const double B0 = sing * log_r * log_r / 2.0;
    const double B_main = B0 * (1.0 + 2.0 * u + 1.5 * u * u);
    const double P_main = 4.0 * B0 * log_r * (2.0 / 3.0 + 1.5 * u + 0.9 * u * u);

    const double B_raw = sums[1];
    const double P_raw = sums[3];
    const double B_filtered = sums[0];
    const double P_filtered = 2.0 * sums[2];

    rep.computed = P_raw;
    rep.main_term = P_main;
    rep.ratio = safe_ratio(P_raw, P_main);
    rep.margin = P_raw - B_raw * log3n;
    rep.details = {
        {"singular_series", sing},
        {"log_3N", log3n},
        {"B0", B0},
        {"B", B_raw},
        {"B_main", B_main},
        {"B_ratio", safe_ratio(B_raw, B_main)},
        {"P_star", P_raw},
        {"P_main", P_main},
        {"B_filtered", B_filtered},
        {"P_star_filtered", P_filtered},
        {"P_cross_terms", P_raw - P_filtered},
        {"B_cross_terms", B_raw - B_filtered},
        {"margin_raw", P_raw - B_raw * log3n},
        {"margin_filtered", P_filtered - B_filtered * log3n},
        {"normalized_margin_raw", safe_ratio(P_raw, B_raw * log3n) - 1.0},
        {"normalized_margin_filtered", safe_ratio(P_filtered, B_filtered * log3n) - 1.0},
        {"normalized_margin_predicted", P_main / (B_main * log3n) - 1.0},
    };
    return rep;
}

}  // namespace

CorrelationReport theorem1_report(std::uint64_t N, std::uint64_t R, std::uint64_t h, const SieveTable& table,
                                  const ReductionOptions& options) {
    return pair_report(Functional::theorem1, N, R, h, 0.0, table, options);
}

CorrelationReport theorem2_report(std::uint64_t N, std::uint64_t R, std::uint64_t h, double u,
                                  const SieveTable& table, const ReductionOptions& options) {
    return pair_report(Functional::theorem2, N, R, h, u, table, options);
}

}  // namespace gpylab
