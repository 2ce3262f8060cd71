#include "gpylab/report_io.hpp"

#include "gpylab/numeric.hpp"

#include <bit>
#include <sstream>

namespace gpylab {

Json number_json(double x) {
    if (!std::isfinite(x)) return nullptr;
    return round15(x);
}

Json to_json(const CorrelationReport& r) {
    Json params;
    params["tuple"] = r.params.H.to_string();
    params["R"] = r.params.R;
    params["l1"] = r.l1;
    params["l2"] = r.l2;
    params["u"] = r.params.u ? number_json(*r.params.u) : Json(nullptr);

    Json j;
    j["functional"] = std::string(to_string(r.functional));
    j["N"] = r.N;
    j["R"] = r.R;
    j["params"] = params;
    j["computed"] = number_json(r.computed);
    j["main_term"] = number_json(r.main_term);
    j["ratio"] = number_json(r.ratio);
    j["margin"] = r.margin ? number_json(*r.margin) : Json(nullptr);
    Json details = Json::object();
    for (const auto& [k, v] : r.details) details[k] = number_json(v);
    j["details"] = details;
    j["warnings"] = r.warnings;
    return j;
}

std::string csv_header(const CorrelationReport& r) {
    std::string h = "functional,N,R,tuple,l1,l2,u,computed,main_term,ratio,margin";
    for (const auto& [k, v] : r.details) h += "," + k;
    return h + "\n";
}

std::string csv_row(const CorrelationReport& r) {
    std::ostringstream s;
    s << to_string(r.functional) << ',' << r.N << ',' << r.R << ",\"" << r.params.H.to_string() << "\"," << r.l1
      << ',' << r.l2 << ',' << (r.params.u ? format_number(*r.params.u) : "") << ',' << format_number(r.computed)
      << ',' << format_number(r.main_term) << ',' << format_number(r.ratio) << ','
      << (r.margin ? format_number(*r.margin) : "");
    for (const auto& [k, v] : r.details) s << ',' << format_number(v);
    s << '\n';
    return s.str();
}

Json to_json(const EquidistReport& r) {
    Json j;
    j["kind"] = r.kind.name();
    j["h"] = r.kind.h;
    j["N"] = r.N;
    j["Q"] = r.Q;
    j["total"] = number_json(r.total);
    j["normalized_total"] = number_json(r.normalized);
    j["truncated"] = r.truncated;
    Json rows = Json::array();
    for (const auto& [q, e] : r.rows) rows.push_back(Json::array({q, number_json(e)}));
    j["rows"] = rows;
    j["warnings"] = r.warnings;
    return j;
}

std::string to_csv(const EquidistReport& r) {
    std::ostringstream s;
    s << "q,E,cumulative_total\n";
    CompensatedSum running;
    for (const auto& [q, e] : r.rows) {
        running.add(e);
        s << q << ',' << format_number(e) << ',' << format_number(running.value()) << '\n';
    }
    if (r.truncated) s << "# truncated at q = " << r.Q << '\n';
    return s.str();
}

Json to_json(const threshold::ThresholdResult& r) {
    Json j;
    j["u0"] = number_json(r.u0);
    j["theta1"] = number_json(r.theta1);
    j["g_at"] = r.g_at;  // ~1e-17; keep full precision
    j["u0_numeric"] = number_json(r.u0_numeric);
    Json curve = Json::array();
    for (const auto& [u, t] : r.curve) curve.push_back(Json::array({number_json(u), number_json(t)}));
    j["curve"] = curve;
    return j;
}

std::string curve_csv(const threshold::ThresholdResult& r) {
    std::ostringstream s;
    s << "u,theta_root\n";
    for (const auto& [u, t] : r.curve) s << format_number(u) << ',' << format_number(t) << '\n';
    return s.str();
}

Json to_json(const TwinCountReport& r) {
    Json j;
    j["N"] = r.N;
    j["h"] = r.h;
    j["count"] = r.count;
    j["singular_series"] = number_json(r.singular_series);
    j["hl_prediction"] = number_json(r.hl_prediction);
    j["ratio"] = number_json(r.ratio);
    return j;
}

Json to_json(const SingularSeriesValue& v) {
    Json j;
    j["value"] = number_json(v.value);
    j["truncation_prime"] = v.truncation_prime;
    j["tail_bound"] = number_json(v.tail_bound);
    return j;
}

Json to_json(const TwinProgression& ap) {
    Json j;
    j["length"] = ap.length;
    j["first_term"] = ap.first_term;
    j["common_difference"] = ap.common_difference;
    return j;
}

Json to_json(const ShiftedLiouvilleCounts& c) {
    Json j;
    j["count_minus"] = c.count_minus;
    j["count_plus"] = c.count_plus;
    return j;
}

Json table_summary(const SieveTable& t) {
    std::uint64_t primes = 0;
    for (auto w : t.prime_words()) primes += static_cast<std::uint64_t>(std::popcount(w));
    std::int64_t lambda_sum = 0, mu_sum = 0;
    for (auto v : t.lambda_raw()) lambda_sum += v;
    for (auto v : t.mu_raw()) mu_sum += v;
    Json j;
    j["n0"] = t.n0();
    j["len"] = t.len();
    j["prime_count"] = primes;
    j["lambda_sum"] = lambda_sum;
    j["mu_sum"] = mu_sum;
    return j;
}

std::string json_object_csv(const Json& obj) {
    std::string header, row;
    bool first = true;
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!first) {
            header += ',';
            row += ',';
        }
        first = false;
        header += it.key();
        const Json& v = it.value();
        if (v.is_string()) {
            row += '"' + v.get<std::string>() + '"';
        } else if (v.is_structured()) {
            std::string dumped = v.dump();
            std::string escaped;
            for (char c : dumped) escaped += (c == '"') ? std::string("\"\"") : std::string(1, c);
            row += '"' + escaped + '"';
        } else {
            row += v.dump();
        }
    }
    return header + "\n" + row + "\n";
}

}  // namespace gpylab
