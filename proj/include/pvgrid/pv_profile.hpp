#pragma once

// Irradiance-to-power regression and daily-energy-per-capacity statistics.

#include "pvgrid/model.hpp"

namespace pvgrid {

// OLS through the origin on pooled (irradiance, pv_power/capacity) points
// with irradiance > 0.05 across all sites: slope = sum(r*p) / sum(r^2).
double fit_irradiance_slope(const Dataset& dataset);

// Mean over complete days of the integrated PV energy divided by capacity,
// in kWh per kW. Partial days at dataset boundaries are excluded.
double daily_energy_per_capacity(const Dataset& dataset, const std::string& site_id);

// Descriptive statistic: mean daylight pv_power / capacity across all sites.
double mean_daylight_output_fraction(const Dataset& dataset);

}  // namespace pvgrid
