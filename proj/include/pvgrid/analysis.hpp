#pragma once

// Per-site analysis pipeline: overall fit, daily/per-minute series, summary
// statistics, densities, entropies and the PV-profile figures.

#include <optional>
#include <string>
#include <vector>

#include "pvgrid/model.hpp"

namespace pvgrid {

struct AnalysisOptions {
    std::size_t min_samples = 30;          // series threshold (daily and per-minute)
    std::size_t min_site_samples = 100;    // threshold for the all-data fit
    std::optional<std::string> site_filter;
};

struct SiteAnalysis {
    std::string site_id;
    double capacity_kw = 0.0;
    double impedance_ohm = 0.0;
    BetaFit overall;
    BetaSeries daily;
    BetaSeries hourly;
    std::optional<BetaSummary> daily_summary;
    std::optional<BetaSummary> hourly_summary;
    std::optional<Density> daily_density;
    std::optional<Density> hourly_density;
    std::optional<double> daily_entropy_bits;
    std::optional<double> hourly_entropy_bits;
    double energy_per_capacity_kwh = 0.0;
};

struct AnalysisResults {
    std::vector<SiteAnalysis> sites;  // ordered by descending impedance
    double irradiance_slope = 0.0;
    double mean_daylight_fraction = 0.0;
};

// Entropies use a bin width shared across sites (Freedman-Diaconis on the
// pooled beta values) so they are comparable between sites.
AnalysisResults analyze_dataset(const Dataset& dataset, const AnalysisOptions& options = {});

}  // namespace pvgrid
