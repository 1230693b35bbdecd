#include "pvgrid/beta_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "pvgrid/kernels.hpp"
#include "pvgrid/regression.hpp"

namespace pvgrid {

namespace {

constexpr std::size_t kDensityGridPoints = 512;
// Grid padding in bandwidths. Wider than the 3-bandwidth span contract so the
// trapezoidal integral stays within 1e-3 of 1 even for very small samples.
constexpr double kGridPadBandwidths = 4.0;

double sample_std(std::span<const double> v) {
    const std::size_t n = v.size();
    const double m = kernels::active().sum(v.data(), n) / static_cast<double>(n);
    const double ss = kernels::active().centered_dot(v.data(), m, v.data(), m, n);
    return std::sqrt(ss / static_cast<double>(n - 1));
}

// type-7 quantile (linear interpolation between order statistics)
double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double idx = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(idx);
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = idx - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

BetaSeries grouped_series(SeriesKind kind,
                          const std::map<std::int32_t, std::vector<MeterSample>>& groups,
                          std::size_t min_samples) {
    BetaSeries series;
    series.kind = kind;
    for (const auto& [label, samples] : groups) {
        RegressionInput input = injection_filter(samples);
        if (input.x.size() < std::max<std::size_t>(min_samples, 2)) continue;
        try {
            series.entries.push_back({label, pls1_fit(input)});
        } catch (const DegenerateDataError&) {
            // constant injected power within the group: no slope to estimate
        }
    }
    return series;
}

}  // namespace

BetaFit fit_site_beta(const Dataset& dataset, const std::string& site_id,
                      std::size_t min_samples) {
    const SiteData& site = dataset.site(site_id);
    RegressionInput input = injection_filter(site.samples);
    if (input.x.size() < std::max<std::size_t>(min_samples, 2)) {
        throw InsufficientDataError("site " + site_id + ": only " +
                                    std::to_string(input.x.size()) +
                                    " injection samples (need " +
                                    std::to_string(min_samples) + ")");
    }
    return pls1_fit(input);
}

BetaSeries daily_beta_series(const Dataset& dataset, const std::string& site_id,
                             std::size_t min_samples) {
    const SiteData& site = dataset.site(site_id);
    std::map<std::int32_t, std::vector<MeterSample>> by_day;
    for (const MeterSample& s : site.samples) by_day[s.t.day].push_back(s);
    return grouped_series(SeriesKind::daily, by_day, min_samples);
}

BetaSeries hourly_beta_series(const Dataset& dataset, const std::string& site_id,
                              std::size_t min_samples) {
    const SiteData& site = dataset.site(site_id);
    std::map<std::int32_t, std::vector<MeterSample>> by_minute;
    for (const MeterSample& s : site.samples) by_minute[s.t.minute].push_back(s);
    return grouped_series(SeriesKind::minute_of_day, by_minute, min_samples);
}

BetaSummary summarize_betas(const BetaSeries& series, const Density& density) {
    if (series.entries.size() < 2) {
        throw InsufficientDataError("need at least 2 series entries to summarize");
    }
    const std::vector<double> betas = series.betas();
    BetaSummary summary;
    summary.minimum = *std::min_element(betas.begin(), betas.end());
    summary.average =
        kernels::active().sum(betas.data(), betas.size()) / static_cast<double>(betas.size());
    summary.std = sample_std(betas);
    summary.map = map_estimate(density);
    return summary;
}

Density kde(std::span<const double> values, std::optional<double> bandwidth) {
    if (values.size() < 2) throw InsufficientDataError("need at least 2 values for a density");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) throw DegenerateDataError("all values identical: no density");

    double bw;
    if (bandwidth) {
        if (*bandwidth <= 0.0) throw InputError("bandwidth must be positive");
        bw = *bandwidth;
    } else {
        bw = 1.06 * sample_std(values) *
             std::pow(static_cast<double>(values.size()), -0.2);
    }

    Density d;
    d.bandwidth = bw;
    d.grid.resize(kDensityGridPoints);
    d.values.resize(kDensityGridPoints);
    const double start = lo - kGridPadBandwidths * bw;
    const double stop = hi + kGridPadBandwidths * bw;
    const double step = (stop - start) / static_cast<double>(kDensityGridPoints - 1);
    const double norm = 1.0 / (static_cast<double>(values.size()) * bw *
                               std::sqrt(2.0 * std::numbers::pi));
    const double inv_bw = 1.0 / bw;
    for (std::size_t i = 0; i < kDensityGridPoints; ++i) {
        d.grid[i] = start + static_cast<double>(i) * step;
        d.values[i] =
            norm * kernels::active().gauss_sum(values.data(), values.size(), d.grid[i], inv_bw);
    }
    return d;
}

double map_estimate(const Density& density) {
    if (density.grid.empty()) throw InputError("empty density");
    std::size_t best = 0;
    for (std::size_t i = 1; i < density.values.size(); ++i) {
        if (density.values[i] > density.values[best]) best = i;
    }
    return density.grid[best];
}

double fd_bin_width(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    return 2.0 * iqr * std::pow(static_cast<double>(sorted.size()), -1.0 / 3.0);
}

double entropy_bits(std::span<const double> values, std::optional<double> bin_width) {
    if (values.size() < 8) throw InsufficientDataError("need at least 8 values for entropy");
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double range = *hi_it - lo;
    const double width = bin_width.value_or(fd_bin_width(values));
    if (range <= 0.0 || width <= 0.0) return 0.0;  // everything in one bin

    const std::size_t n_bins = static_cast<std::size_t>(std::ceil(range / width));
    std::vector<std::size_t> counts(n_bins, 0);
    for (double v : values) {
        std::size_t bin = static_cast<std::size_t>((v - lo) / width);
        counts[std::min(bin, n_bins - 1)]++;
    }
    const double n = static_cast<double>(values.size());
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return h;
}

}  // namespace pvgrid
