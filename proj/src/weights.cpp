#include "gpylab/weights.hpp"

#include "binary_io.hpp"
#include "gpylab/error.hpp"
#include "gpylab/numeric.hpp"
#include "gpylab/parallel.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

namespace gpylab {

void WeightParams::validate() const {
    if (R < 1) fail(ErrorKind::invalid_argument, "sieve level R must be >= 1");
    if (l > kMaxWeightDegree) fail(ErrorKind::invalid_argument, "weight degree l must be <= 8");
    if (u && !(*u > -1.0)) fail(ErrorKind::invalid_argument, "mixing parameter u must be > -1");
}

std::string_view to_string(WeightKind kind) {
    switch (kind) {
        case WeightKind::lambda_r: return "lambdaR";
        case WeightKind::a: return "a";
        case WeightKind::b: return "b";
        case WeightKind::a_prime: return "a_prime";
        case WeightKind::b_prime: return "b_prime";
    }
    return "?";
}

std::string_view to_string(WeightAlgorithm algorithm) {
    return algorithm == WeightAlgorithm::direct ? "direct" : "scatter";
}

WeightKind parse_weight_kind(std::string_view name) {
    for (auto k : {WeightKind::lambda_r, WeightKind::a, WeightKind::b, WeightKind::a_prime, WeightKind::b_prime})
        if (to_string(k) == name) return k;
    fail(ErrorKind::invalid_argument, "unknown weight kind '" + std::string(name) + "'");
}

DivisorPlan::DivisorPlan(std::uint64_t R) : R_(R) {
    if (R < 1) fail(ErrorKind::invalid_argument, "sieve level R must be >= 1");
    // Linear sieve for mu on [1, R].
    std::vector<std::int8_t> mu(R + 1, 1);
    std::vector<char> composite(R + 1, 0);
    std::vector<std::uint64_t> primes;
    for (std::uint64_t i = 2; i <= R; ++i) {
        if (!composite[i]) {
            primes.push_back(i);
            mu[i] = -1;
        }
        for (std::uint64_t p : primes) {
            if (p > R / i) break;
            composite[i * p] = 1;
            if (i % p == 0) {
                mu[i * p] = 0;
                break;
            }
            mu[i * p] = static_cast<std::int8_t>(-mu[i]);
        }
    }
    for (std::uint64_t d = 1; d <= R; ++d) {
        if (mu[d] == 0) continue;
        divisors_.push_back(d);
        mu_.push_back(mu[d]);
    }
}

LambdaScatter::LambdaScatter(KTuple H, std::uint64_t R, std::vector<unsigned> degrees)
    : H_(std::move(H)), plan_(R), degrees_(std::move(degrees)) {
    for (unsigned l : degrees_)
        if (l > kMaxWeightDegree) fail(ErrorKind::invalid_argument, "weight degree l must be <= 8");
}

void LambdaScatter::fill(std::uint64_t lo, std::span<const std::span<double>> out) const {
    const std::size_t J = degrees_.size();
    if (out.size() != J) fail(ErrorKind::invalid_argument, "one output window per degree required");
    if (J == 0) return;
    const std::size_t len = out[0].size();
    for (auto w : out) {
        if (w.size() != len) fail(ErrorKind::invalid_argument, "output windows differ in length");
        std::fill(w.begin(), w.end(), 0.0);
    }
    std::vector<double> comp(len * J, 0.0);
    std::vector<double> terms(J);
    const unsigned k = static_cast<unsigned>(H_.k());

    auto divisors = plan_.divisors();
    auto mus = plan_.mu();
    for (std::size_t idx = 0; idx < divisors.size(); ++idx) {
        const std::uint64_t d = divisors[idx];
        for (std::size_t j = 0; j < J; ++j) terms[j] = weight_term(mus[idx], plan_.R(), d, k + degrees_[j]);
        const std::uint64_t lo_mod = lo % d;
        for (std::uint64_t r : residue_roots(H_, d)) {
            std::uint64_t first = (r + d - lo_mod) % d;
            for (std::uint64_t i = first; i < len; i += d)
                for (std::size_t j = 0; j < J; ++j)
                    compensated_add(out[j][i], comp[j * len + i], terms[j]);
        }
    }
    for (std::size_t j = 0; j < J; ++j)
        for (std::size_t i = 0; i < len; ++i) out[j][i] += comp[j * len + i];
}

namespace {

// Appends the distinct primes p <= R dividing m, ascending. Uses the table's
// spf chain while the cofactor stays inside it, trial division afterwards.
void small_prime_divisors(std::uint64_t m, std::uint64_t R, const SieveTable& table,
                          std::vector<std::uint64_t>& out) {
    if (!table.contains(m))
        fail(ErrorKind::out_of_range, "factorization of " + std::to_string(m) + " is outside the sieve range");
    std::uint64_t trial = 2;
    while (m > 1) {
        std::uint64_t p = 0;
        if (table.contains(m)) {
            p = table.spf(m);
        } else {
            for (std::uint64_t q = trial;; q += (q == 2 ? 1 : 2)) {
                if (q > R) return;
                if (q > m / q) {
                    p = m;
                    break;
                }
                if (m % q == 0) {
                    p = q;
                    break;
                }
            }
        }
        if (p > R) return;
        out.push_back(p);
        while (m % p == 0) m /= p;
        trial = p + 1;
        if (trial > 2 && trial % 2 == 0) ++trial;
    }
}

}  // namespace

double lambda_r_direct(std::uint64_t n, const WeightParams& params, const SieveTable& table) {
    params.validate();
    const auto& H = params.H;
    std::vector<std::uint64_t> primes;
    for (std::uint64_t h : H.offsets()) {
        if (n + h < 1) fail(ErrorKind::invalid_argument, "n + h_1 must be >= 1");
        small_prime_divisors(n + h, params.R, table, primes);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    const unsigned power = static_cast<unsigned>(H.k()) + params.l;
    CompensatedSum sum;
    // Depth-first over squarefree products d <= R of the collected primes.
    auto visit = [&](auto&& self, std::size_t from, std::uint64_t d, int mu) -> void {
        sum.add(weight_term(mu, params.R, d, power));
        for (std::size_t i = from; i < primes.size(); ++i) {
            if (primes[i] > params.R / d) break;
            self(self, i + 1, d * primes[i], -mu);
        }
    };
    visit(visit, 0, 1, 1);
    return sum.value();
}

WeightTable lambda_r_range(std::uint64_t n0, std::uint64_t len, const WeightParams& params,
                           const RangeOptions& options) {
    params.validate();
    WeightTable w{n0, len, std::vector<double>(len), WeightKind::lambda_r, params, WeightAlgorithm::scatter};
    const LambdaScatter scatter(params.H, params.R, {params.l});
    const std::uint64_t seg = std::max<std::uint64_t>(1, options.segment_size);
    const std::size_t segments = static_cast<std::size_t>((len + seg - 1) / seg);
    parallel_for(segments, options.threads, [&](std::size_t s) {
        std::uint64_t off = s * seg;
        std::span<double> window(w.values.data() + off, static_cast<std::size_t>(std::min(seg, len - off)));
        const std::span<double> outs[1] = {window};
        scatter.fill(n0 + off, outs);
    });
    return w;
}

WeightTable lambda_r_range_direct(std::uint64_t n0, std::uint64_t len, const WeightParams& params,
                                  const SieveTable& table, const RangeOptions& options) {
    params.validate();
    WeightTable w{n0, len, std::vector<double>(len), WeightKind::lambda_r, params, WeightAlgorithm::direct};
    const std::uint64_t seg = std::max<std::uint64_t>(1, options.segment_size);
    const std::size_t segments = static_cast<std::size_t>((len + seg - 1) / seg);
    parallel_for(segments, options.threads, [&](std::size_t s) {
        std::uint64_t off = s * seg;
        std::uint64_t end = std::min(len, off + seg);
        for (std::uint64_t i = off; i < end; ++i) w.values[i] = lambda_r_direct(n0 + i, params, table);
    });
    return w;
}

namespace {

void require_pair(const KTuple& H) {
    if (H.k() != 2 || H.front() != 0)
        fail(ErrorKind::invalid_argument, "b-type weights need a pair tuple {0, h}, got {" + H.to_string() + "}");
}

// Product of the two Liouville factors (1 - lambda(n))(1 - lambda(n + h)).
double liouville_factor(const SieveTable& table, std::uint64_t n, std::uint64_t h) {
    return static_cast<double>((1 - table.lambda(n)) * (1 - table.lambda(n + h)));
}

}  // namespace

WeightTable derive_weights(WeightKind kind, std::span<const WeightTable> inputs, const SieveTable& table) {
    if (kind == WeightKind::lambda_r) fail(ErrorKind::invalid_argument, "lambdaR is not a derived kind");
    for (const auto& in : inputs)
        if (in.kind != WeightKind::lambda_r) fail(ErrorKind::invalid_argument, "derive_weights needs lambdaR inputs");

    const bool mixed = kind == WeightKind::a_prime || kind == WeightKind::b_prime;
    if (inputs.size() != (mixed ? 2u : 1u))
        fail(ErrorKind::invalid_argument, mixed ? "a_prime/b_prime need the l = 0 and l = 1 tables"
                                                : "a/b need exactly one lambdaR table");
    const WeightTable& base = inputs[0];
    WeightTable out{base.n0, base.len, std::vector<double>(base.len), kind, base.params, base.algorithm};

    if (!mixed) {
        for (std::size_t i = 0; i < base.len; ++i) out.values[i] = base.values[i] * base.values[i];
    } else {
        const WeightTable& one = inputs[1];
        if (base.params.H != one.params.H || base.params.R != one.params.R || base.n0 != one.n0 ||
            base.len != one.len)
            fail(ErrorKind::invalid_argument, "lambdaR inputs differ in tuple, R or range");
        if (base.params.l != 0 || one.params.l != 1)
            fail(ErrorKind::invalid_argument, "a_prime needs the l = 0 table first and the l = 1 table second");
        std::optional<double> u = base.params.u ? base.params.u : one.params.u;
        if (!u) fail(ErrorKind::invalid_argument, "a_prime needs a mixing parameter u");
        if (base.params.u && one.params.u && *base.params.u != *one.params.u)
            fail(ErrorKind::invalid_argument, "lambdaR inputs carry different u");
        if (base.params.R < 2) fail(ErrorKind::invalid_argument, "a_prime needs R >= 2 (log R > 0)");
        out.params.u = u;
        out.params.validate();
        const double mix = *u * static_cast<double>(base.params.H.k() + 1) / std::log(static_cast<double>(base.params.R));
        for (std::size_t i = 0; i < base.len; ++i) {
            double v = base.values[i] + mix * one.values[i];
            out.values[i] = v * v;
        }
    }

    if (kind == WeightKind::b || kind == WeightKind::b_prime) {
        require_pair(base.params.H);
        const std::uint64_t h = base.params.H.back();
        for (std::size_t i = 0; i < base.len; ++i) out.values[i] *= liouville_factor(table, base.n0 + i, h);
    }
    return out;
}

std::vector<std::string> level_warnings(std::uint64_t N, std::uint64_t R) {
    std::vector<std::string> w;
    if (R > isqrt(N))
        w.push_back("R = " + std::to_string(R) + " exceeds sqrt(N) = " + std::to_string(isqrt(N)) +
                    "; the asymptotic main terms are not expected to apply");
    return w;
}

void write_weights(const WeightTable& table, std::ostream& out) {
    detail::BinaryWriter w(out);
    w.magic("GPYW");
    w.put<std::uint32_t>(kWeightFormatVersion);
    w.put<std::uint64_t>(table.n0);
    w.put<std::uint64_t>(table.len);
    w.put<std::uint8_t>(static_cast<std::uint8_t>(table.kind));
    w.put<std::uint8_t>(static_cast<std::uint8_t>(table.algorithm));
    w.put<std::uint32_t>(static_cast<std::uint32_t>(table.params.H.k()));
    for (std::uint64_t h : table.params.H.offsets()) w.put(h);
    w.put<std::uint64_t>(table.params.R);
    w.put<std::uint32_t>(table.params.l);
    w.put<std::uint8_t>(table.params.u ? 1 : 0);
    w.put<double>(table.params.u.value_or(0.0));
    for (double v : table.values) w.put(v);
    w.finish();
}

WeightTable read_weights(std::istream& in) {
    detail::BinaryReader r(in);
    r.expect_magic("GPYW");
    auto version = r.get<std::uint32_t>();
    if (version != kWeightFormatVersion)
        fail(ErrorKind::cache_corrupt, "unsupported GPYW version " + std::to_string(version));
    WeightTable t;
    t.n0 = r.get<std::uint64_t>();
    t.len = r.get<std::uint64_t>();
    auto kind = r.get<std::uint8_t>();
    auto algorithm = r.get<std::uint8_t>();
    if (kind > static_cast<std::uint8_t>(WeightKind::b_prime) || algorithm > 1)
        fail(ErrorKind::cache_corrupt, "GPYW header has an unknown kind or algorithm tag");
    t.kind = static_cast<WeightKind>(kind);
    t.algorithm = static_cast<WeightAlgorithm>(algorithm);
    auto k = r.get<std::uint32_t>();
    if (k == 0 || k > 4096) fail(ErrorKind::cache_corrupt, "GPYW header has an implausible tuple length");
    std::vector<std::uint64_t> offsets(k);
    for (auto& h : offsets) h = r.get<std::uint64_t>();
    try {
        t.params.H = KTuple(std::move(offsets));
    } catch (const Error& e) {
        fail(ErrorKind::cache_corrupt, std::string("GPYW tuple: ") + e.what());
    }
    t.params.R = r.get<std::uint64_t>();
    t.params.l = r.get<std::uint32_t>();
    auto has_u = r.get<std::uint8_t>();
    auto u = r.get<double>();
    if (has_u) t.params.u = u;
    t.values.resize(t.len);
    for (auto& v : t.values) v = r.get<double>();
    r.verify();
    return t;
}

void save_weights(const WeightTable& table, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::io, "cannot open " + path.string() + " for writing");
    write_weights(table, out);
}

WeightTable load_weights(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path.string());
    return read_weights(in);
}

void write_weights_csv(const WeightTable& table, std::ostream& out) {
    out << "n,value\n";
    for (std::size_t i = 0; i < table.len; ++i) out << (table.n0 + i) << ',' << format_number(table.values[i]) << '\n';
}

}  // namespace gpylab
