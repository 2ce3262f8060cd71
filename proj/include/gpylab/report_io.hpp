#pragma once

// JSON and CSV serialization of every report. Numbers are rounded to 15
// significant digits; field order is fixed so output is byte-stable.

#include "gpylab/arith_tables.hpp"
#include "gpylab/correlations.hpp"
#include "gpylab/diagnostics.hpp"
#include "gpylab/equidist.hpp"
#include "gpylab/threshold.hpp"
#include "gpylab/tuples.hpp"

#include "json.hpp"

#include <string>

namespace gpylab {

using Json = nlohmann::ordered_json;

Json number_json(double x);

Json to_json(const CorrelationReport& r);
std::string csv_header(const CorrelationReport& r);
std::string csv_row(const CorrelationReport& r);

Json to_json(const EquidistReport& r);
// Columns q, E, cumulative_total.
std::string to_csv(const EquidistReport& r);

Json to_json(const threshold::ThresholdResult& r);
// Columns u, theta_root.
std::string curve_csv(const threshold::ThresholdResult& r);

Json to_json(const TwinCountReport& r);
Json to_json(const SingularSeriesValue& v);
Json to_json(const TwinProgression& ap);
Json to_json(const ShiftedLiouvilleCounts& c);

// Summary of a table: range, prime count, sums of lambda and mu.
Json table_summary(const SieveTable& t);

// Flat key,value CSV (header + one row) from a JSON object; nested values are
// written as compact JSON strings.
std::string json_object_csv(const Json& obj);

}  // namespace gpylab
