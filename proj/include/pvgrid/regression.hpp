#pragma once

// Single-response regression: NIPALS PLS1 plus the ordinary-least-squares
// closed form used as its oracle, and the injection-sample filter.

#include <span>
#include <vector>

#include "pvgrid/model.hpp"

namespace pvgrid {

struct RegressionInput {
    std::vector<double> x;  // predictor (net power, kW)
    std::vector<double> y;  // response (voltage, pu)
};

// Keeps exactly the samples with net_power_kw <= 0, order preserved.
RegressionInput injection_filter(std::span<const MeterSample> samples);

// NIPALS PLS1 on mean-centered data. For a single predictor and one
// component the slope coincides with the OLS slope.
BetaFit pls1_fit(const RegressionInput& input, int n_components = 1);

// beta = sum (x-mx)(y-my) / sum (x-mx)^2, intercept = my - beta*mx.
BetaFit ols_fit(const RegressionInput& input);

}  // namespace pvgrid
