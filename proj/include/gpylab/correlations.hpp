#pragma once

// Lemma and theorem functionals over n ~ N, i.e. n in [N, 2N). Every computed
// quantity is a per-n average (divided by N). Reports carry the computed sum,
// the asymptotic main term and their ratio; no pass/fail is decided here.

#include "gpylab/arith_tables.hpp"
#include "gpylab/tuples.hpp"
#include "gpylab/weights.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gpylab {

enum class Functional { lemma1, lemma2, lemma3, theorem1, theorem2 };
std::string_view to_string(Functional f);

// Twisting sequences f(n) for lemma3. `one` is the f = 1 consistency hook.
enum class LemmaSelector { one, liouville, liouville_pair, theta_liouville_shift, liouville_theta_shift };
std::string_view to_string(LemmaSelector s);
LemmaSelector parse_lemma_selector(std::string_view name);

struct CorrelationReport {
    Functional functional = Functional::lemma1;
    std::uint64_t N = 0;
    std::uint64_t R = 0;
    WeightParams params;  // params.l holds l1
    unsigned l1 = 0;
    unsigned l2 = 0;
    double computed = 0.0;
    double main_term = 0.0;
    double ratio = 0.0;  // computed / main_term, NaN when main_term == 0
    std::optional<double> margin;
    std::vector<std::pair<std::string, double>> details;
    std::vector<std::string> warnings;

    // Throws if the named detail is absent.
    double detail(std::string_view name) const;
};

struct ReductionOptions {
    unsigned threads = 1;
    std::uint64_t segment_size = std::uint64_t{1} << 16;
    std::uint64_t truncation_prime = 1'000'000;  // for the singular series
};

// S(H) binom(l1+l2, l1) L^(k+l1+l2) / (k+l1+l2)!, L = log R.
double lemma1_main_term(double singular, double log_r, unsigned k, unsigned l1, unsigned l2);
// S(H) binom(l1+l2+2, l1+1) L^(k+l1+l2+1) / (k+l1+l2+1)!.
double lemma2_main_term(double singular, double log_r, unsigned k, unsigned l1, unsigned l2);

// (1/N) sum_{n~N} Lambda_R(n;H,l1) Lambda_R(n;H,l2)
CorrelationReport lemma1_check(std::uint64_t N, std::uint64_t R, const KTuple& H, unsigned l1, unsigned l2,
                               const SieveTable& table, const ReductionOptions& options = {});

// (1/N) sum_{n~N} Lambda_R Lambda_R theta(n + h), h = H[h_index]
CorrelationReport lemma2_check(std::uint64_t N, std::uint64_t R, const KTuple& H, unsigned l1, unsigned l2,
                               std::size_t h_index, const SieveTable& table, const ReductionOptions& options = {});

// S_f(N) = (1/N) sum_{n~N} Lambda_R Lambda_R f(n). The shift h defaults to the
// tuple width h_k - h_1.
CorrelationReport lemma3_sum(std::uint64_t N, std::uint64_t R, const KTuple& H, unsigned l1, unsigned l2,
                             LemmaSelector f, const SieveTable& table, const ReductionOptions& options = {},
                             std::optional<std::uint64_t> h = std::nullopt);

// B = sum b_n, P* = sum b_n (theta(n) + theta(n+h)), margin P* - B log(3N).
// Details also carry the hypothesis-filtered values with the lambda-twisted
// cross terms removed: B_f = sum a_n, P*_f = 2 sum a_n (theta(n) + theta(n+h)).
CorrelationReport theorem1_report(std::uint64_t N, std::uint64_t R, std::uint64_t h, const SieveTable& table,
                                  const ReductionOptions& options = {});

// As theorem1_report with b'_n in place of b_n.
CorrelationReport theorem2_report(std::uint64_t N, std::uint64_t R, std::uint64_t h, double u,
                                  const SieveTable& table, const ReductionOptions& options = {});

// Normalized positivity criterion at R: (8/3) log R / log(3N) - 1.
double theorem1_predicted_margin(std::uint64_t N, std::uint64_t R);

}  // namespace gpylab
