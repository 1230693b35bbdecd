#pragma once

// Daily and per-minute beta series, summary statistics (min/avg/STD/MAP),
// kernel density estimation and histogram entropy.

#include <optional>
#include <span>
#include <vector>

#include "pvgrid/model.hpp"

namespace pvgrid {

// Injection filter + PLS1 over the site's entire stream.
BetaFit fit_site_beta(const Dataset& dataset, const std::string& site_id,
                      std::size_t min_samples = 100);

// One fit per day with >= min_samples injection samples; thin days are
// skipped (absent label, not zero).
BetaSeries daily_beta_series(const Dataset& dataset, const std::string& site_id,
                             std::size_t min_samples = 30);

// Pools each minute-of-day across all days, keyed by minute-of-day.
BetaSeries hourly_beta_series(const Dataset& dataset, const std::string& site_id,
                              std::size_t min_samples = 30);

BetaSummary summarize_betas(const BetaSeries& series, const Density& density);

// Gaussian-kernel density on a 512-point uniform grid. Bandwidth defaults to
// Silverman's rule 1.06 * sigma * n^(-1/5).
Density kde(std::span<const double> values, std::optional<double> bandwidth = std::nullopt);

// Grid point of maximum density; ties break toward the smaller grid value.
double map_estimate(const Density& density);

// Freedman-Diaconis bin width for the sample; 0 when the IQR is zero.
double fd_bin_width(std::span<const double> values);

// Shannon entropy in bits of the histogram over the data range. The default
// bin width is Freedman-Diaconis from the values themselves; pass a shared
// width when comparing samples on different scales.
double entropy_bits(std::span<const double> values,
                    std::optional<double> bin_width = std::nullopt);

}  // namespace pvgrid
