#include "pvgrid/feeder_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pvgrid/kernels.hpp"

namespace pvgrid {

namespace {

constexpr int kDaylightStartMin = 360;
constexpr int kDaylightEndMin = 1080;
constexpr int kMaxTap = 16;

}  // namespace

double clear_sky_irradiance(int minute_of_day, const PvSiteSpec& site) {
    // the orientation offset shifts the whole daylight window, so the daily
    // integral is identical for every site
    const int start = kDaylightStartMin + site.orientation_offset_min;
    const int end = kDaylightEndMin + site.orientation_offset_min;
    if (minute_of_day < start || minute_of_day > end) return 0.0;
    const double phase =
        2.0 * std::numbers::pi * (minute_of_day - start) / (kDaylightEndMin - kDaylightStartMin);
    return 0.5 * (1.0 - std::cos(phase));
}

CloudState cloud_step(CloudState state, std::mt19937_64& rng, const CloudModel& model) {
    std::normal_distribution<double> noise(0.0, 1.0);
    double k = state.clearness_index;
    k += model.mean_reversion * (1.0 - k) + model.volatility * noise(rng);
    k = std::clamp(k, model.clamp_lo, model.clamp_hi);
    return CloudState{k};
}

double pv_output(double irradiance_kw_m2, const PvSiteSpec& spec) {
    if (irradiance_kw_m2 < 0.0) throw InputError("irradiance must be nonnegative");
    return spec.derate * irradiance_kw_m2 * spec.capacity_kw;
}

double load_kw(int minute_of_day, std::mt19937_64& rng, const LoadModel& model) {
    const double shape = model.day_shape.empty()
                             ? 1.0
                             : model.day_shape[static_cast<std::size_t>(minute_of_day)];
    double sigma = model.noise_std_kw;
    if (minute_of_day >= 720 && minute_of_day <= 840) sigma *= model.midday_noise_scale;
    double load = model.base_kw * shape;
    if (sigma > 0.0) {
        std::normal_distribution<double> noise(0.0, sigma);
        load += noise(rng);
    } else {
        // keep the draw stream aligned whether or not noise is enabled
        std::normal_distribution<double> noise(0.0, 1.0);
        noise(rng);
    }
    return std::max(load, 0.0);
}

std::vector<double> feeder_voltages(std::span<const double> net_powers_kw,
                                    double source_pu,
                                    const SharedImpedanceMatrix& r,
                                    double base_voltage_v) {
    if (net_powers_kw.size() != r.size()) throw InputError("net power vector / matrix size mismatch");
    if (base_voltage_v <= 0.0) throw InputError("base_voltage_v must be positive");
    const std::size_t n = r.size();
    std::vector<double> drop(n, 0.0);
    kernels::active().matvec(r.data(), n, n, net_powers_kw.data(), drop.data());
    const double scale = 1000.0 / (base_voltage_v * base_voltage_v);
    std::vector<double> v(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i] = source_pu - drop[i] * scale;
    return v;
}

LtcState ltc_update(LtcState state, double transformer_voltage_pu,
                    double setpoint_pu, double dt_s, const LtcSettings& ltc) {
    if (dt_s <= 0.0) throw InputError("dt_s must be positive");
    const double deviation = transformer_voltage_pu - setpoint_pu;
    if (std::abs(deviation) > 0.5 * ltc.deadband_pu) {
        state.violation_timer_s += dt_s;
        if (state.violation_timer_s >= ltc.delay_s) {
            const int direction = deviation > 0.0 ? -1 : 1;
            state.tap_position = std::clamp(state.tap_position + direction, -kMaxTap, kMaxTap);
            state.violation_timer_s = 0.0;
        }
    } else {
        state.violation_timer_s = 0.0;
    }
    return state;
}

Dataset simulate(const FeederConfig& config) {
    config.validate();
    const std::size_t n = config.sites.size();
    const SharedImpedanceMatrix r = SharedImpedanceMatrix::from_config(config);
    const double vscale = 1000.0 / (config.base_voltage_v * config.base_voltage_v);

    std::mt19937_64 rng(config.seed);

    Dataset out;
    out.config = config;
    out.sites.resize(n);
    for (std::size_t s = 0; s < n; ++s) {
        out.sites[s].spec = config.sites[s];
        out.sites[s].samples.reserve(static_cast<std::size_t>(config.n_days) * 1440);
    }

    // one sky for the whole feeder: all sites see the same clearness index
    CloudState clouds{1.0};
    LtcState ltc;

    std::vector<double> irradiance(n), pv(n), net(n), drop(n);
    std::vector<double> net_sum(n), volt_sum(n), volt_max(n);

    for (int day = 0; day < config.n_days; ++day) {
        for (int minute = 0; minute < 1440; ++minute) {
            clouds = cloud_step(clouds, rng, config.cloud_model);
            for (std::size_t s = 0; s < n; ++s) {
                irradiance[s] =
                    clear_sky_irradiance(minute, config.sites[s]) * clouds.clearness_index;
                pv[s] = pv_output(irradiance[s], config.sites[s]);
            }
            std::fill(net_sum.begin(), net_sum.end(), 0.0);
            std::fill(volt_sum.begin(), volt_sum.end(), 0.0);
            std::fill(volt_max.begin(), volt_max.end(), -1e300);

            for (int sec = 0; sec < 60; ++sec) {
                for (std::size_t s = 0; s < n; ++s) {
                    net[s] = load_kw(minute, rng, config.load_model) - pv[s];
                }
                const double head = config.source_setpoint_pu + ltc.tap_position * config.ltc.step_pu;
                ltc = ltc_update(ltc, head, config.source_setpoint_pu, 1.0, config.ltc);
                kernels::active().matvec(r.data(), n, n, net.data(), drop.data());
                for (std::size_t s = 0; s < n; ++s) {
                    const double v = head - drop[s] * vscale;
                    net_sum[s] += net[s];
                    volt_sum[s] += v;
                    volt_max[s] = std::max(volt_max[s], v);
                }
            }

            for (std::size_t s = 0; s < n; ++s) {
                MeterSample sample;
                sample.t = MinuteStamp{day, minute};
                sample.net_power_kw = net_sum[s] / 60.0;
                sample.pcc_voltage_pu = volt_max[s];
                sample.pv_power_kw = pv[s];
                sample.pv_voltage_pu = volt_sum[s] / 60.0;
                sample.irradiance_kw_m2 = irradiance[s];
                out.sites[s].samples.push_back(sample);
            }
        }
    }
    return out;
}

std::vector<double> default_day_shape() {
    std::vector<double> shape(1440, 0.0);
    auto bump = [](double m, double center, double width) {
        const double z = (m - center) / width;
        return std::exp(-z * z);
    };
    for (int m = 0; m < 1440; ++m) {
        shape[m] = 0.55 + 0.25 * bump(m, 450.0, 90.0) + 0.15 * bump(m, 780.0, 150.0) +
                   0.55 * bump(m, 1140.0, 110.0);
    }
    return shape;
}

FeederConfig default_config() {
    FeederConfig cfg;
    cfg.base_voltage_v = 240.0;
    cfg.source_setpoint_pu = 1.02;
    // Reference feeder: five sites ordered by distance from the transformer.
    // Diagonal impedances are the per-site totals; segments are the prefix
    // differences.
    cfg.sites = {
        {"pv924", 9.24, 0.011, 0.906, -5, 0},
        {"pv1161", 11.61, 0.025, 0.906, 5, 1},
        {"pv731", 7.31, 0.053, 0.906, 0, 2},
        {"pv387", 3.87, 0.060, 0.906, 5, 3},
        {"pv194", 1.94, 0.077, 0.906, -5, 4},
    };
    cfg.segment_resistances_ohm = {0.011, 0.014, 0.028, 0.007, 0.017};
    cfg.ltc = LtcSettings{0.00625, 0.0125, 30.0};
    cfg.load_model = LoadModel{0.8, default_day_shape(), 0.25, 0.5};
    cfg.cloud_model = CloudModel{0.06, 0.05, 0.0, 1.0};
    cfg.n_days = 40;
    cfg.seed = 1;
    return cfg;
}

}  // namespace pvgrid
