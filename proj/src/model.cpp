#include "pvgrid/model.hpp"

#include <cmath>

namespace pvgrid {

namespace {

constexpr double kOverInjectionToleranceKw = 0.1;
constexpr double kImpedancePrefixTolerance = 1e-9;

}  // namespace

void FeederConfig::validate() const {
    if (base_voltage_v <= 0.0) throw ConfigError("base_voltage_v: must be positive");
    if (sites.empty()) throw ConfigError("sites: must be nonempty");
    if (segment_resistances_ohm.size() != sites.size()) {
        throw ConfigError("segment_resistances_ohm: length must equal number of sites");
    }
    double prefix = 0.0;
    for (std::size_t i = 0; i < sites.size(); ++i) {
        const PvSiteSpec& s = sites[i];
        const std::string where = "sites[" + std::to_string(i) + "].";
        if (s.site_id.empty()) throw ConfigError(where + "site_id: must be nonempty");
        if (s.capacity_kw <= 0.0) throw ConfigError(where + "capacity_kw: must be positive");
        if (s.impedance_ohm < 0.0) throw ConfigError(where + "impedance_ohm: must be nonnegative");
        if (s.derate <= 0.0 || s.derate > 1.0) throw ConfigError(where + "derate: must be in (0, 1]");
        if (i > 0 && sites[i - 1].position_index >= s.position_index) {
            throw ConfigError(where + "position_index: sites must be ordered by position");
        }
        if (segment_resistances_ohm[i] < 0.0) {
            throw ConfigError("segment_resistances_ohm[" + std::to_string(i) +
                              "]: must be nonnegative");
        }
        prefix += segment_resistances_ohm[i];
        if (std::abs(prefix - s.impedance_ohm) > kImpedancePrefixTolerance) {
            throw ConfigError(where + "impedance_ohm: does not match segment prefix sum");
        }
    }
    if (ltc.step_pu <= 0.0) throw ConfigError("ltc.step_pu: must be positive");
    if (ltc.deadband_pu < ltc.step_pu) throw ConfigError("ltc.deadband_pu: must be >= ltc.step_pu");
    if (ltc.delay_s <= 0.0) throw ConfigError("ltc.delay_s: must be positive");
    if (load_model.day_shape.size() != 1440) {
        throw ConfigError("load_model.day_shape: must have 1440 entries");
    }
    if (load_model.noise_std_kw < 0.0) {
        throw ConfigError("load_model.noise_std_kw: must be nonnegative");
    }
    if (load_model.midday_noise_scale <= 0.0 || load_model.midday_noise_scale > 1.0) {
        throw ConfigError("load_model.midday_noise_scale: must be in (0, 1]");
    }
    if (cloud_model.mean_reversion < 0.0 || cloud_model.mean_reversion > 1.0) {
        throw ConfigError("cloud_model.mean_reversion: must be in [0, 1]");
    }
    if (cloud_model.volatility < 0.0) {
        throw ConfigError("cloud_model.volatility: must be nonnegative");
    }
    if (n_days <= 0) throw ConfigError("n_days: must be positive");
}

SharedImpedanceMatrix SharedImpedanceMatrix::from_segments(
    const std::vector<double>& segments_ohm) {
    SharedImpedanceMatrix m;
    m.n_ = segments_ohm.size();
    m.r_.assign(m.n_ * m.n_, 0.0);
    std::vector<double> prefix(m.n_, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < m.n_; ++i) {
        if (segments_ohm[i] < 0.0) throw InputError("segment resistance must be nonnegative");
        acc += segments_ohm[i];
        prefix[i] = acc;
    }
    for (std::size_t i = 0; i < m.n_; ++i) {
        for (std::size_t j = 0; j < m.n_; ++j) {
            m.r_[i * m.n_ + j] = prefix[std::min(i, j)];
        }
    }
    return m;
}

SharedImpedanceMatrix SharedImpedanceMatrix::from_config(const FeederConfig& config) {
    return from_segments(config.segment_resistances_ohm);
}

std::vector<double> BetaSeries::betas() const {
    std::vector<double> out;
    out.reserve(entries.size());
    for (const Entry& e : entries) out.push_back(e.fit.beta_pu_per_kw);
    return out;
}

const SiteData& Dataset::site(const std::string& site_id) const {
    for (const SiteData& s : sites) {
        if (s.spec.site_id == site_id) return s;
    }
    throw InputError("unknown site: " + site_id);
}

double to_per_unit(double voltage_v, double base_voltage_v) {
    if (base_voltage_v <= 0.0) throw ConfigError("base_voltage_v: must be positive");
    return voltage_v / base_voltage_v;
}

std::optional<std::string> validate_sample(const MeterSample& s, const PvSiteSpec& spec) {
    if (s.t.minute < 0 || s.t.minute > 1439) return "timestamp.minute";
    if (!(s.pv_power_kw >= 0.0)) return "pv_power_kw";
    if (!(s.irradiance_kw_m2 >= 0.0 && s.irradiance_kw_m2 <= 1.5)) return "irradiance_kw_m2";
    if (!(s.pcc_voltage_pu > 0.5 && s.pcc_voltage_pu < 1.5)) return "pcc_voltage_pu";
    if (!(s.net_power_kw >= -(spec.capacity_kw + kOverInjectionToleranceKw))) {
        return "net_power_kw";
    }
    return std::nullopt;
}

}  // namespace pvgrid
