#include "gpylab/cli.hpp"

#include "gpylab/arith_tables.hpp"
#include "gpylab/correlations.hpp"
#include "gpylab/diagnostics.hpp"
#include "gpylab/equidist.hpp"
#include "gpylab/numeric.hpp"
#include "gpylab/error.hpp"
#include "gpylab/report_io.hpp"
#include "gpylab/threshold.hpp"
#include "gpylab/tuples.hpp"
#include "gpylab/weights.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>

namespace gpylab::cli {

std::uint64_t parse_count(const std::string& text) {
    auto bad = [&]() -> std::uint64_t {
        fail(ErrorKind::invalid_argument, "expected a non-negative integer, got '" + text + "'");
    };
    if (text.empty()) return bad();
    if (text.find_first_not_of("0123456789") == std::string::npos) {
        try {
            return std::stoull(text);
        } catch (const std::exception&) {
            return bad();
        }
    }
    // mantissa e exponent, or base^exponent
    std::uint64_t mant = 0;
    unsigned exp = 0;
    std::uint64_t base = 10;
    auto caret = text.find('^');
    auto e = text.find_first_of("eE");
    try {
        std::size_t used = 0;
        if (caret != std::string::npos) {
            base = std::stoull(text.substr(0, caret), &used);
            if (used != caret) return bad();
            mant = 1;
            std::string ex = text.substr(caret + 1);
            exp = static_cast<unsigned>(std::stoul(ex, &used));
            if (used != ex.size()) return bad();
        } else if (e != std::string::npos) {
            std::string m = text.substr(0, e);
            mant = std::stoull(m, &used);
            if (used != m.size()) return bad();
            std::string ex = text.substr(e + 1);
            exp = static_cast<unsigned>(std::stoul(ex, &used));
            if (used != ex.size()) return bad();
        } else {
            return bad();
        }
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        return bad();
    }
    std::uint64_t v = mant;
    for (unsigned i = 0; i < exp; ++i) {
        if (v > UINT64_MAX / base) fail(ErrorKind::invalid_argument, "number too large: " + text);
        v *= base;
    }
    return v;
}

std::uint64_t resolve_r_exponent(std::uint64_t N, double exponent) {
    if (!(exponent >= 0.0) || exponent > 1.0)
        fail(ErrorKind::invalid_argument, "R exponent must lie in [0, 1]");
    const double r = std::pow(static_cast<double>(N), exponent);
    return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::floor(r * (1.0 + 1e-12))));
}

namespace {

struct Config {
    std::string N, n_start, n_length;
    std::optional<std::string> R;
    std::optional<double> R_exponent;
    std::string tuple = "0,2";
    std::uint64_t h = 2;
    unsigned l1 = 0, l2 = 0, l = 0;
    double u = 0.0;
    bool u_given = false;
    std::string Q = "100";
    unsigned threads = 1;
    std::string cache_dir;
    std::string format = "json";
    std::size_t h_index = 0;
    std::string selector = "liouville";
    std::string kind = "liouville";
    std::string weight_kind = "lambdaR";
    std::string algorithm = "scatter";
    std::string out_path;
    std::string action = "optimize";
    std::uint64_t truncation = 1'000'000;
    double time_budget = 0.0;
    std::uint64_t memory_mb = 8192;
    std::uint64_t segment = std::uint64_t{1} << 20;
};

class Runner {
public:
    Runner(const Config& c, std::ostream& out, std::ostream& err) : c_(c), out_(out), err_(err) {}

    bool cache_recovered() const { return recovered_; }

    SieveTable table(std::uint64_t lo, std::uint64_t hi) {
        SieveOptions opt;
        opt.threads = c_.threads;
        opt.memory_budget = c_.memory_mb << 20;
        opt.segment_size = c_.segment;
        const std::uint64_t len = hi - lo;
        std::filesystem::path path;
        if (!c_.cache_dir.empty()) {
            std::filesystem::create_directories(c_.cache_dir);
            path = std::filesystem::path(c_.cache_dir) /
                   ("gpyt_" + std::to_string(lo) + "_" + std::to_string(len) + ".bin");
            if (std::filesystem::exists(path)) {
                try {
                    SieveTable t = load_table(path);
                    if (t.n0() == lo && t.len() == len) return t;
                    err_ << "warning: cache file " << path.string() << " has a different range; rebuilding\n";
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::cache_corrupt) throw;
                    err_ << "warning: cache file " << path.string() << " is corrupt (" << e.what()
                         << "); rebuilding\n";
                    recovered_ = true;
                }
            }
        }
        SieveTable t = build_table(lo, len, opt);
        if (!path.empty()) save_table(t, path);
        return t;
    }

    std::uint64_t N() const {
        if (c_.N.empty()) fail(ErrorKind::invalid_argument, "--N is required");
        std::uint64_t n = parse_count(c_.N);
        if (n < 1) fail(ErrorKind::invalid_argument, "--N must be >= 1");
        return n;
    }

    std::uint64_t R(std::uint64_t N) const {
        if (c_.R.has_value() == c_.R_exponent.has_value())
            fail(ErrorKind::invalid_argument, "give exactly one of --R and --R-exponent");
        std::uint64_t r = c_.R ? parse_count(*c_.R) : resolve_r_exponent(N, *c_.R_exponent);
        if (r < 1) fail(ErrorKind::invalid_argument, "R must be >= 1");
        return r;
    }

    ReductionOptions reduction() const {
        ReductionOptions o;
        o.threads = c_.threads;
        o.truncation_prime = c_.truncation;
        return o;
    }

    void emit(const Json& j) {
        if (c_.format == "csv")
            out_ << json_object_csv(j);
        else
            out_ << j.dump(2) << '\n';
    }

    void emit(const CorrelationReport& r) {
        for (const auto& w : r.warnings) err_ << "warning: " << w << '\n';
        if (c_.format == "csv")
            out_ << csv_header(r) << csv_row(r);
        else
            out_ << to_json(r).dump(2) << '\n';
    }

    void sieve_build() {
        const std::uint64_t lo = c_.n_start.empty() ? 1 : parse_count(c_.n_start);
        if (c_.n_length.empty()) fail(ErrorKind::invalid_argument, "--n-length is required");
        const std::uint64_t len = parse_count(c_.n_length);
        if (lo < 1 || len > kMaxSieveValue || lo - 1 > kMaxSieveValue - len)
            fail(ErrorKind::out_of_range, "sieve range exceeds 2^63 - 1");
        SieveTable t = table(lo, lo + len);
        if (!c_.out_path.empty()) save_table(t, c_.out_path);
        emit(table_summary(t));
    }

    void lemma(int which) {
        const auto n = N();
        const auto r = R(n);
        const KTuple H = KTuple::parse(c_.tuple);
        std::uint64_t top = H.back();
        auto sel = LemmaSelector::one;
        if (which == 3) {
            sel = parse_lemma_selector(c_.selector);
            top = std::max(top, H.span_width());
        }
        SieveTable t = table(n, 2 * n + top);
        if (which == 1) emit(lemma1_check(n, r, H, c_.l1, c_.l2, t, reduction()));
        if (which == 2) emit(lemma2_check(n, r, H, c_.l1, c_.l2, c_.h_index, t, reduction()));
        if (which == 3) emit(lemma3_sum(n, r, H, c_.l1, c_.l2, sel, t, reduction()));
    }

    void theorem(int which) {
        const auto n = N();
        const auto r = R(n);
        if (c_.h == 0 || c_.h % 2) fail(ErrorKind::invalid_argument, "--h must be even and positive");
        SieveTable t = table(n, 2 * n + c_.h);
        if (which == 1)
            emit(theorem1_report(n, r, c_.h, t, reduction()));
        else
            emit(theorem2_report(n, r, c_.h, c_.u_given ? c_.u : threshold::optimal_u_closed_form(), t,
                                 reduction()));
    }

    void equidist() {
        const auto n = N();
        const auto kind = SequenceKind::parse(c_.kind, c_.h);
        const std::uint64_t Q = parse_count(c_.Q);
        const bool back = kind.tag == SequenceTag::theta_shift_liouville;
        if (back && n <= kind.h) fail(ErrorKind::invalid_argument, "lambda(p - h) needs N > h");
        const std::uint64_t lo = back ? n - kind.h : n;
        const std::uint64_t hi = 2 * n + (kind.shifted() && !back ? kind.h : 0);
        SieveTable t = table(lo, hi);
        SweepOptions o;
        o.threads = c_.threads;
        o.time_budget_seconds = c_.time_budget;
        auto rep = level_sweep(kind, n, Q, t, o);
        for (const auto& w : rep.warnings) err_ << "warning: " << w << '\n';
        if (c_.format == "csv")
            out_ << to_csv(rep);
        else
            out_ << to_json(rep).dump(2) << '\n';
        if (rep.truncated) budget_hit_ = true;
    }

    void threshold_cmd() {
        auto r = threshold::optimize();
        if (c_.action == "optimize") {
            if (c_.format == "csv")
                out_ << "u0,theta1,g_at,u0_numeric\n"
                     << format_number(r.u0) << ',' << format_number(r.theta1) << ',' << format_number(r.g_at)
                     << ',' << format_number(r.u0_numeric) << '\n';
            else
                out_ << to_json(r).dump(2) << '\n';
        } else if (c_.action == "curve") {
            out_ << curve_csv(r);
        } else {
            fail(ErrorKind::invalid_argument, "threshold action must be 'optimize' or 'curve'");
        }
    }

    void twin_count_cmd() {
        const auto n = N();
        DiagnosticsOptions o;
        o.threads = c_.threads;
        o.truncation_prime = c_.truncation;
        if (c_.h == 0 || c_.h % 2) fail(ErrorKind::invalid_argument, "--h must be even and positive");
        SieveTable t = table(1, n + c_.h + 1);
        auto rep = twin_count(n, c_.h, t, o);
        Json j = to_json(rep);
        j["count_prime_list"] = twin_count_by_prime_list(n, c_.h, t);
        emit(j);
    }

    void chowla_cmd() {
        const auto x = N();
        SieveTable t = table(1, x + c_.h + 1);
        DiagnosticsOptions o;
        o.threads = c_.threads;
        const auto s = chowla_sum(x, c_.h, t, o);
        Json j;
        j["x"] = x;
        j["h"] = c_.h;
        j["sum"] = s;
        j["normalized"] = number_json(static_cast<double>(s) / static_cast<double>(x));
        emit(j);
    }

    void shifted_cmd() {
        const auto x = N();
        if (c_.h == 0 || c_.h % 2) fail(ErrorKind::invalid_argument, "--h must be even and positive");
        SieveTable t = table(1, x + c_.h + 1);
        Json j;
        j["x"] = x;
        j["d"] = c_.h;
        auto counts = liouville_at_shifted_primes(x, c_.h, t);
        j["count_minus"] = counts.count_minus;
        j["count_plus"] = counts.count_plus;
        emit(j);
    }

    void twin_ap_cmd() {
        const auto n = N();
        if (c_.h == 0 || c_.h % 2) fail(ErrorKind::invalid_argument, "--h must be even and positive");
        SieveTable t = table(1, n + c_.h + 1);
        Json j;
        j["N"] = n;
        j["h"] = c_.h;
        auto ap = longest_twin_ap(n, c_.h, t);
        j["length"] = ap.length;
        j["first_term"] = ap.first_term;
        j["common_difference"] = ap.common_difference;
        emit(j);
    }

    void singular_cmd() {
        const KTuple H = KTuple::parse(c_.tuple);
        Json j;
        j["tuple"] = H.to_string();
        j["admissible"] = is_admissible(H);
        auto v = singular_series(H, c_.truncation);
        j["value"] = number_json(v.value);
        j["truncation_prime"] = v.truncation_prime;
        j["tail_bound"] = number_json(v.tail_bound);
        emit(j);
    }

    void weights_cmd() {
        const std::uint64_t lo = c_.n_start.empty() ? 1 : parse_count(c_.n_start);
        if (c_.n_length.empty()) fail(ErrorKind::invalid_argument, "--n-length is required");
        const std::uint64_t len = parse_count(c_.n_length);
        WeightParams p;
        p.H = KTuple::parse(c_.tuple);
        p.R = R(lo);
        p.l = c_.l;
        if (c_.u_given) p.u = c_.u;
        p.validate();
        const auto kind = parse_weight_kind(c_.weight_kind);
        const bool direct = c_.algorithm == "direct";
        if (!direct && c_.algorithm != "scatter")
            fail(ErrorKind::invalid_argument, "--algorithm must be 'direct' or 'scatter'");
        if (lo < 1) fail(ErrorKind::invalid_argument, "--n-start must be >= 1");
        SieveTable t = table(lo, lo + len + p.H.back());
        RangeOptions ro;
        ro.threads = c_.threads;
        auto eval = [&](unsigned l) {
            WeightParams q = p;
            q.l = l;
            return direct ? lambda_r_range_direct(lo, len, q, t, ro) : lambda_r_range(lo, len, q, ro);
        };
        WeightTable w;
        if (kind == WeightKind::lambda_r) {
            w = eval(p.l);
        } else if (kind == WeightKind::a || kind == WeightKind::b) {
            const WeightTable in[1] = {eval(p.l)};
            w = derive_weights(kind, in, t);
        } else {
            if (!p.u) p.u = threshold::optimal_u_closed_form();
            WeightTable in[2] = {eval(0), eval(1)};
            in[0].params.u = p.u;
            w = derive_weights(kind, in, t);
        }
        if (!c_.out_path.empty()) {
            save_weights(w, c_.out_path);
            Json j;
            j["path"] = c_.out_path;
            j["kind"] = std::string(to_string(w.kind));
            j["algorithm"] = std::string(to_string(w.algorithm));
            j["n0"] = w.n0;
            j["len"] = w.len;
            emit(j);
        } else {
            write_weights_csv(w, out_);
        }
    }

    bool budget_hit() const { return budget_hit_; }

private:
    const Config& c_;
    std::ostream& out_;
    std::ostream& err_;
    bool recovered_ = false;
    bool budget_hit_ = false;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gpylab: sieve-weight laboratory for prime-pair detecting weights"};
    app.set_help_flag("--help", "print help");
    app.require_subcommand(1);
    Config c;

    auto common = [&](CLI::App* s) {
        s->add_option("--threads", c.threads, "worker threads")->check(CLI::Range(1u, 1024u));
        s->add_option("--cache-dir", c.cache_dir, "directory for GPYT sieve caches");
        s->add_option("--format", c.format, "output format")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--memory-mb", c.memory_mb, "sieve memory budget in MiB");
        s->add_option("--segment-size", c.segment, "sieve segment length");
    };
    auto range = [&](CLI::App* s) {
        s->add_option("--N", c.N, "range parameter: n in [N, 2N) or p <= N");
    };
    auto level = [&](CLI::App* s) {
        auto* r = s->add_option("--R", c.R, "sieve level R");
        auto* e = s->add_option("--R-exponent", c.R_exponent, "R = floor(N^exponent)");
        r->excludes(e);
        s->add_option("--truncation", c.truncation, "singular series truncation prime");
    };
    auto degrees = [&](CLI::App* s) {
        s->add_option("--tuple", c.tuple, "comma-separated offsets, e.g. 0,2");
        s->add_option("--l1", c.l1)->check(CLI::Range(0u, kMaxWeightDegree));
        s->add_option("--l2", c.l2)->check(CLI::Range(0u, kMaxWeightDegree));
    };

    auto* sieve = app.add_subcommand("sieve-build", "build (and cache) a sieve table");
    sieve->add_option("--n-start", c.n_start);
    sieve->add_option("--n-length", c.n_length);
    sieve->add_option("--out", c.out_path, "also write the GPYT file here");
    common(sieve);

    auto* l1 = app.add_subcommand("lemma1", "mean of Lambda_R Lambda_R over n ~ N");
    auto* l2 = app.add_subcommand("lemma2", "mean of Lambda_R Lambda_R theta(n + h)");
    auto* l3 = app.add_subcommand("lemma3", "mean of Lambda_R Lambda_R f(n) for a twisting f");
    for (auto* s : {l1, l2, l3}) {
        range(s);
        level(s);
        degrees(s);
        common(s);
    }
    l2->add_option("--h-index", c.h_index, "which tuple offset carries theta");
    l3->add_option("--selector", c.selector, "f: one, liouville, liouville_pair, theta_liouville_shift, liouville_theta_shift");

    auto* t1 = app.add_subcommand("theorem1", "B, P* and the positivity margin for {0, h}");
    auto* t2 = app.add_subcommand("theorem2", "B', P' and the margin for the mixed weight");
    for (auto* s : {t1, t2}) {
        range(s);
        level(s);
        s->add_option("--h", c.h);
        common(s);
    }
    t2->add_option("--u", c.u, "mixing parameter (default u0)")->each([&](const std::string&) { c.u_given = true; });

    auto* eq = app.add_subcommand("equidist", "E_N(q) sweep for one of the five sequences");
    range(eq);
    eq->add_option("--kind", c.kind, "theta, liouville, liouville_pair, liouville_shift_theta, theta_shift_liouville");
    eq->add_option("--Q", c.Q);
    eq->add_option("--h", c.h);
    eq->add_option("--time-budget", c.time_budget, "seconds; 0 = unlimited");
    common(eq);

    auto* th = app.add_subcommand("threshold", "optimal mixing parameter and threshold");
    th->add_option("action", c.action, "optimize | curve");
    common(th);

    auto* tc = app.add_subcommand("twin-count", "#{p <= N : p, p + h prime}");
    auto* ch = app.add_subcommand("chowla", "sum_{n <= N} lambda(n) lambda(n + h)");
    auto* sl = app.add_subcommand("shifted-liouville", "signs of lambda(p + h) for p <= N");
    auto* ap = app.add_subcommand("twin-ap", "longest progression of prime-pair starters");
    for (auto* s : {tc, ch, sl, ap}) {
        range(s);
        s->add_option("--h", c.h);
        common(s);
    }
    tc->add_option("--truncation", c.truncation, "singular series truncation prime");

    auto* ss = app.add_subcommand("singular-series", "singular series of a tuple");
    ss->add_option("--tuple", c.tuple);
    ss->add_option("--truncation", c.truncation);
    common(ss);

    auto* wt = app.add_subcommand("weights", "dump Lambda_R or a derived weight as CSV or GPYW");
    wt->add_option("--n-start", c.n_start);
    wt->add_option("--n-length", c.n_length);
    wt->add_option("--tuple", c.tuple);
    level(wt);
    wt->add_option("--l", c.l)->check(CLI::Range(0u, kMaxWeightDegree));
    wt->add_option("--u", c.u)->each([&](const std::string&) { c.u_given = true; });
    wt->add_option("--kind", c.weight_kind, "lambdaR, a, b, a_prime, b_prime");
    wt->add_option("--algorithm", c.algorithm, "scatter | direct");
    wt->add_option("--out", c.out_path, "write a GPYW file instead of CSV");
    common(wt);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kUsage;
    }

    Runner r(c, out, err);
    try {
        if (sieve->parsed()) r.sieve_build();
        if (l1->parsed()) r.lemma(1);
        if (l2->parsed()) r.lemma(2);
        if (l3->parsed()) r.lemma(3);
        if (t1->parsed()) r.theorem(1);
        if (t2->parsed()) r.theorem(2);
        if (eq->parsed()) r.equidist();
        if (th->parsed()) r.threshold_cmd();
        if (tc->parsed()) r.twin_count_cmd();
        if (ch->parsed()) r.chowla_cmd();
        if (sl->parsed()) r.shifted_cmd();
        if (ap->parsed()) r.twin_ap_cmd();
        if (ss->parsed()) r.singular_cmd();
        if (wt->parsed()) r.weights_cmd();
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        switch (e.kind()) {
            case ErrorKind::invalid_argument:
            case ErrorKind::out_of_range: return kUsage;
            case ErrorKind::budget_exceeded: return kBudget;
            default: return kFailure;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kFailure;
    }
    if (r.budget_hit()) return kBudget;
    return r.cache_recovered() ? kCacheRecovered : kOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

}  // namespace gpylab::cli
