#pragma once

// CSV/JSON serialization. Floats are written with 17 significant digits in
// scientific notation so identical runs produce byte-identical files.

#include <iosfwd>
#include <string>
#include <string_view>

#include "json.hpp"

#include "gardner5/experiment.hpp"
#include "gardner5/fourier.hpp"
#include "gardner5/residuals.hpp"

namespace gardner5 {

inline constexpr std::string_view kScanCsvHeader =
    "alpha,alpha1,alpha2,beta,T,norm0_1,norm0_2,dist0,distT,cross_T,separation_ratio";

std::string format_double(double value);

/// "x,value" rows, one per grid node.
void write_field_csv(std::ostream& out, const SampledField& field);

void write_scan_csv(std::ostream& out, const ScanResult& result);

nlohmann::json to_json(const ResidualReport& report);
nlohmann::json to_json(const ExperimentConfig& config);
nlohmann::json to_json(const ExperimentRow& row);
nlohmann::json to_json(const ScanResult& result);

/// Strict parse: unknown keys and wrongly typed values throw
/// InvalidParameter; missing keys keep their defaults.
ExperimentConfig experiment_config_from_json(const nlohmann::json& doc);

/// Rejects any key of `object` not listed in `allowed`.
void require_known_keys(const nlohmann::json& object,
                        std::initializer_list<std::string_view> allowed,
                        std::string_view context);

}  // namespace gardner5
