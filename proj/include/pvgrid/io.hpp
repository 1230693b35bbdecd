#pragma once

// Persistence: per-site meter CSVs, the JSON feeder configuration, and the
// report / plot-data writers.
//
// CSV schema (bit-exact): header
//   date,minute,net_power_kw,pcc_voltage_pu,pv_power_kw,pv_voltage_pu,irradiance_kw_m2
// with fixed 6-decimal formatting, rows sorted by (date, minute). Day 0 maps
// to 2024-01-01.

#include <filesystem>
#include <string>
#include <vector>

#include "pvgrid/analysis.hpp"
#include "pvgrid/model.hpp"

namespace pvgrid::io {

FeederConfig config_from_json(const std::string& json_text);
std::string config_to_json(const FeederConfig& config);
FeederConfig read_config(const std::filesystem::path& path);

// One CSV per site plus a feeder.json config echo for provenance.
void write_dataset(const Dataset& dataset, const std::filesystem::path& directory);

// Parses and validates. Throws ParseError (malformed file) or
// ValidationError (invariant violations, with count and first location)
// unless a collector is supplied, in which case violations are recorded as
// "file:line: field" strings and the samples kept.
Dataset read_dataset(const std::filesystem::path& directory,
                     std::vector<std::string>* violations = nullptr);

// Aligned-text tables (profile, daily stats, hourly stats, entropy) plus
// two-column plot-data files per site and figure.
void write_report(const AnalysisResults& results, const std::filesystem::path& directory);

// Machine-readable analysis results.
void write_analysis_json(const AnalysisResults& results, const std::filesystem::path& path);

}  // namespace pvgrid::io
