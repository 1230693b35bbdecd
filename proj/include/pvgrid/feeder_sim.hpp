#pragma once

// Synthetic multi-day meter dataset generation: radial feeder with PV sites,
// stochastic loads, a clamped mean-reverting cloud process, an LTC with
// deadband and time delay, and a linearized resistive power flow.
//
// Metering semantics: the simulation runs at 1-second resolution internally;
// each emitted minute carries the average net power, the MAX of the 60
// per-second PCC voltages, the average PV output and the minute-midpoint
// irradiance.

#include <random>
#include <span>
#include <vector>

#include "pvgrid/model.hpp"

namespace pvgrid {

struct LtcState {
    int tap_position = 0;           // in [-16, 16]
    double violation_timer_s = 0.0;
};

struct CloudState {
    double clearness_index = 1.0;  // in [0, 1]
};

// 0 outside the daylight window [360, 1080] minutes; inside, a raised cosine
// peaking at 1.0 kW/m^2 at minute 720 + orientation_offset_min.
double clear_sky_irradiance(int minute_of_day, const PvSiteSpec& site);

// Mean-reverting noisy update toward clear sky (index 1.0), clamped.
CloudState cloud_step(CloudState state, std::mt19937_64& rng, const CloudModel& model);

// derate * irradiance * capacity; throws InputError on negative irradiance.
double pv_output(double irradiance_kw_m2, const PvSiteSpec& spec);

// base * day_shape[minute] + Gaussian noise, clamped at 0. Noise std is
// scaled by midday_noise_scale for minutes in [720, 840].
double load_kw(int minute_of_day, std::mt19937_64& rng, const LoadModel& model);

// V_i = source_pu - (sum_j R[i][j] * net_powers_kw[j] * 1000) / base_voltage_v^2.
// Injection (negative net power) raises voltage.
std::vector<double> feeder_voltages(std::span<const double> net_powers_kw,
                                    double source_pu,
                                    const SharedImpedanceMatrix& r,
                                    double base_voltage_v);

// Deadband / delay tap controller. Out-of-band deviation accumulates the
// violation timer; after delay_s the tap moves one step toward the setpoint.
LtcState ltc_update(LtcState state, double transformer_voltage_pu,
                    double setpoint_pu, double dt_s, const LtcSettings& ltc);

// Deterministic for a fixed (config, seed).
Dataset simulate(const FeederConfig& config);

// Default 5-site feeder with the reference impedance/capacity table and
// calibrated cloud/load defaults.
FeederConfig default_config();

// Residential double-hump day shape, 1440 multipliers.
std::vector<double> default_day_shape();

}  // namespace pvgrid
