#include "pvgrid/analysis.hpp"

#include <algorithm>

#include "pvgrid/beta_analysis.hpp"
#include "pvgrid/pv_profile.hpp"

namespace pvgrid {

namespace {

// Pooled Freedman-Diaconis width so per-site entropies share a scale.
std::optional<double> pooled_bin_width(const std::vector<std::vector<double>>& per_site) {
    std::vector<double> pooled;
    for (const auto& v : per_site) pooled.insert(pooled.end(), v.begin(), v.end());
    if (pooled.size() < 8) return std::nullopt;
    const double w = fd_bin_width(pooled);
    if (w <= 0.0) return std::nullopt;
    return w;
}

}  // namespace

AnalysisResults analyze_dataset(const Dataset& dataset, const AnalysisOptions& options) {
    AnalysisResults results;
    results.irradiance_slope = fit_irradiance_slope(dataset);
    results.mean_daylight_fraction = mean_daylight_output_fraction(dataset);

    std::vector<const SiteData*> sites;
    for (const SiteData& s : dataset.sites) {
        if (options.site_filter && s.spec.site_id != *options.site_filter) continue;
        sites.push_back(&s);
    }
    if (sites.empty()) {
        throw InputError(options.site_filter ? "unknown site: " + *options.site_filter
                                             : "dataset has no sites");
    }
    std::stable_sort(sites.begin(), sites.end(), [](const SiteData* a, const SiteData* b) {
        return a->spec.impedance_ohm > b->spec.impedance_ohm;
    });

    std::vector<std::vector<double>> daily_betas;
    std::vector<std::vector<double>> hourly_betas;
    for (const SiteData* site : sites) {
        SiteAnalysis a;
        a.site_id = site->spec.site_id;
        a.capacity_kw = site->spec.capacity_kw;
        a.impedance_ohm = site->spec.impedance_ohm;
        a.overall = fit_site_beta(dataset, a.site_id, options.min_site_samples);
        a.daily = daily_beta_series(dataset, a.site_id, options.min_samples);
        a.hourly = hourly_beta_series(dataset, a.site_id, options.min_samples);
        a.energy_per_capacity_kwh = daily_energy_per_capacity(dataset, a.site_id);
        daily_betas.push_back(a.daily.betas());
        hourly_betas.push_back(a.hourly.betas());
        results.sites.push_back(std::move(a));
    }

    const std::optional<double> daily_width = pooled_bin_width(daily_betas);
    const std::optional<double> hourly_width = pooled_bin_width(hourly_betas);

    for (std::size_t i = 0; i < results.sites.size(); ++i) {
        SiteAnalysis& a = results.sites[i];
        try {
            a.daily_density = kde(daily_betas[i]);
            a.daily_summary = summarize_betas(a.daily, *a.daily_density);
        } catch (const std::runtime_error&) {
            // too few or degenerate daily fits; summary columns stay empty
        }
        try {
            a.hourly_density = kde(hourly_betas[i]);
            a.hourly_summary = summarize_betas(a.hourly, *a.hourly_density);
        } catch (const std::runtime_error&) {
        }
        if (daily_width && daily_betas[i].size() >= 8) {
            a.daily_entropy_bits = entropy_bits(daily_betas[i], daily_width);
        }
        if (hourly_width && hourly_betas[i].size() >= 8) {
            a.hourly_entropy_bits = entropy_bits(hourly_betas[i], hourly_width);
        }
    }
    return results;
}

}  // namespace pvgrid
