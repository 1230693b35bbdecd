#include "pvgrid/pv_profile.hpp"

#include <map>

#include "pvgrid/kernels.hpp"

namespace pvgrid {

namespace {

constexpr double kDaylightIrradianceFloor = 0.05;  // kW/m^2
constexpr std::size_t kMinSlopeSamples = 100;

}  // namespace

double fit_irradiance_slope(const Dataset& dataset) {
    std::vector<double> r;
    std::vector<double> p;
    for (const SiteData& site : dataset.sites) {
        for (const MeterSample& s : site.samples) {
            if (s.irradiance_kw_m2 > kDaylightIrradianceFloor) {
                r.push_back(s.irradiance_kw_m2);
                p.push_back(s.pv_power_kw / site.spec.capacity_kw);
            }
        }
    }
    if (r.size() < kMinSlopeSamples) {
        throw InsufficientDataError("only " + std::to_string(r.size()) +
                                    " daylight samples (need " +
                                    std::to_string(kMinSlopeSamples) + ")");
    }
    const auto& k = kernels::active();
    const double rr = k.dot(r.data(), r.data(), r.size());
    const double rp = k.dot(r.data(), p.data(), r.size());
    return rp / rr;
}

double daily_energy_per_capacity(const Dataset& dataset, const std::string& site_id) {
    const SiteData& site = dataset.site(site_id);
    std::map<std::int32_t, std::pair<std::size_t, double>> by_day;  // count, kW sum
    for (const MeterSample& s : site.samples) {
        auto& [count, sum] = by_day[s.t.day];
        ++count;
        sum += s.pv_power_kw;
    }
    double total = 0.0;
    std::size_t complete_days = 0;
    for (const auto& [day, agg] : by_day) {
        if (agg.first != 1440) continue;  // partial day
        total += agg.second / 60.0 / site.spec.capacity_kw;
        ++complete_days;
    }
    if (complete_days == 0) throw InsufficientDataError("no complete day for site " + site_id);
    return total / static_cast<double>(complete_days);
}

double mean_daylight_output_fraction(const Dataset& dataset) {
    double sum = 0.0;
    std::size_t n = 0;
    for (const SiteData& site : dataset.sites) {
        for (const MeterSample& s : site.samples) {
            if (s.irradiance_kw_m2 > kDaylightIrradianceFloor) {
                sum += s.pv_power_kw / site.spec.capacity_kw;
                ++n;
            }
        }
    }
    if (n == 0) throw InsufficientDataError("no daylight samples");
    return sum / static_cast<double>(n);
}

}  // namespace pvgrid
