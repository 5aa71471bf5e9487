/// @file report_io.hpp
/// @brief Deterministic CSV / JSON serialization of run diagnostics.
///
/// Floats are written with 17 significant digits (round-trip exact), LF line
/// endings, no timestamps: identical config and seed reproduce identical
/// bytes.

#pragma once

#include "axicyl/config.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace axicyl {

std::string format_double(double v);  // %.17g

/// One row per record: t, every history key (sorted), then X(t).
void write_series_csv(const std::string& path, const NormHistory& history,
                      const std::vector<double>& X);

/// (r, z, value) triples for a field snapshot.
void write_field_csv(const std::string& path, const ScalarField& f);

nlohmann::ordered_json constants_to_json(const Constants& c);
nlohmann::ordered_json report_to_json(const EstimateReport& r);
nlohmann::ordered_json config_to_json(const RunConfig& c);

void write_json(const std::string& path, const nlohmann::ordered_json& j);

}  // namespace axicyl
