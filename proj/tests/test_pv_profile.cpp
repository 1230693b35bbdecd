#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pvgrid/feeder_sim.hpp"
#include "pvgrid/pv_profile.hpp"

using namespace pvgrid;

namespace {

FeederConfig clear_sky_config(int n_days = 1) {
    FeederConfig cfg = default_config();
    cfg.load_model.noise_std_kw = 0.0;
    cfg.cloud_model = CloudModel{0.0, 0.0, 0.0, 1.0};
    cfg.n_days = n_days;
    return cfg;
}

Dataset single_site_dataset(std::vector<MeterSample> samples, double capacity = 1.0) {
    Dataset ds;
    PvSiteSpec spec;
    spec.site_id = "x";
    spec.capacity_kw = capacity;
    ds.config.sites = {spec};
    ds.sites = {{spec, std::move(samples)}};
    return ds;
}

}  // namespace

TEST_CASE("irradiance slope recovers the configured derate without clouds") {
    const Dataset ds = simulate(clear_sky_config());
    CHECK(std::abs(fit_irradiance_slope(ds) - 0.906) < 1e-6);
}

TEST_CASE("all-zero PV output gives zero slope") {
    std::vector<MeterSample> samples;
    for (int i = 0; i < 200; ++i) {
        MeterSample s;
        s.t = {0, 600 + i};
        s.irradiance_kw_m2 = 0.5;
        s.pv_power_kw = 0.0;
        samples.push_back(s);
    }
    CHECK(fit_irradiance_slope(single_site_dataset(std::move(samples))) == 0.0);
}

TEST_CASE("pooled slope averages distinct derates with equal weight") {
    FeederConfig cfg = clear_sky_config();
    cfg.sites = {{"a", 2.0, 0.02, 0.85, 0, 0}, {"b", 2.0, 0.05, 0.95, 0, 1}};
    cfg.segment_resistances_ohm = {0.02, 0.03};
    const Dataset ds = simulate(cfg);
    CHECK(std::abs(fit_irradiance_slope(ds) - 0.90) < 0.01);
}

TEST_CASE("slope needs enough daylight samples") {
    std::vector<MeterSample> samples(10);
    CHECK_THROWS_AS(fit_irradiance_slope(single_site_dataset(std::move(samples))),
                    InsufficientDataError);
}

TEST_CASE("daily energy per capacity definition") {
    std::vector<MeterSample> samples;
    for (int m = 0; m < 1440; ++m) {
        MeterSample s;
        s.t = {0, m};
        s.pv_power_kw = 1.0;
        samples.push_back(s);
    }
    const Dataset ds = single_site_dataset(std::move(samples), 1.0);
    CHECK(daily_energy_per_capacity(ds, "x") == doctest::Approx(24.0).epsilon(1e-12));
}

TEST_CASE("clear-sky energy equals the raised-cosine integral") {
    const Dataset ds = simulate(clear_sky_config());
    for (const SiteData& site : ds.sites) {
        // 12 h window, peak 1 kW/m^2, mean 1/2 -> 6 kWh/m^2 * derate
        CHECK(daily_energy_per_capacity(ds, site.spec.site_id) ==
              doctest::Approx(0.906 * 6.0).epsilon(1e-9));
    }
}

TEST_CASE("energy per capacity is invariant to capacity scaling") {
    FeederConfig cfg = clear_sky_config();
    const Dataset base = simulate(cfg);
    cfg.sites[0].capacity_kw *= 2.0;
    const Dataset doubled = simulate(cfg);
    const std::string id = cfg.sites[0].site_id;
    CHECK(daily_energy_per_capacity(base, id) ==
          doctest::Approx(daily_energy_per_capacity(doubled, id)).epsilon(1e-12));
}

TEST_CASE("partial days are excluded from energy averaging") {
    std::vector<MeterSample> samples;
    for (int m = 0; m < 1440; ++m) {
        MeterSample s;
        s.t = {0, m};
        s.pv_power_kw = 2.0;
        samples.push_back(s);
    }
    for (int m = 0; m < 100; ++m) {  // truncated second day
        MeterSample s;
        s.t = {1, m};
        s.pv_power_kw = 100.0;
        samples.push_back(s);
    }
    std::vector<MeterSample> only_partial(samples.begin() + 1440, samples.end());
    const Dataset ds = single_site_dataset(std::move(samples), 1.0);
    CHECK(daily_energy_per_capacity(ds, "x") == doctest::Approx(48.0).epsilon(1e-12));

    const Dataset partial = single_site_dataset(std::move(only_partial), 1.0);
    CHECK_THROWS_AS(daily_energy_per_capacity(partial, "x"), InsufficientDataError);
}

TEST_CASE("mean daylight output fraction stays below one") {
    const Dataset ds = simulate(clear_sky_config());
    const double fraction = mean_daylight_output_fraction(ds);
    CHECK(fraction > 0.0);
    CHECK(fraction < 1.0);
}
