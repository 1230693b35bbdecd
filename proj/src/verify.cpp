#include "pvgrid/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "pvgrid/beta_analysis.hpp"
#include "pvgrid/feeder_sim.hpp"
#include "pvgrid/regression.hpp"

namespace pvgrid {

namespace {

PropertyResult check_sample_validity(const std::vector<std::string>& violations) {
    PropertyResult r{"sample-validity", violations.empty(), false, ""};
    if (!violations.empty()) {
        r.detail = std::to_string(violations.size()) + " invalid samples; first: " + violations[0];
    }
    return r;
}

PropertyResult check_oracle_equivalence() {
    PropertyResult r{"pls-ols-oracle-equivalence", true, false, ""};
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::size_t> size_dist(2, 400);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int trial = 0; trial < 200 && r.passed; ++trial) {
        const std::size_t n = size_dist(rng);
        RegressionInput input;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = 3.0 * noise(rng) - 1.0;
            input.x.push_back(x);
            input.y.push_back(1.02 - 0.004 * x + 0.002 * noise(rng));
        }
        BetaFit pls, ols;
        try {
            pls = pls1_fit(input);
            ols = ols_fit(input);
        } catch (const DegenerateDataError&) {
            continue;
        }
        const double tol = 1e-10 * std::max(1.0, std::abs(ols.beta_pu_per_kw));
        if (std::abs(pls.beta_pu_per_kw - ols.beta_pu_per_kw) > tol) {
            r.passed = false;
            r.detail = "trial " + std::to_string(trial) + ": pls " +
                       std::to_string(pls.beta_pu_per_kw) + " vs ols " +
                       std::to_string(ols.beta_pu_per_kw);
        }
    }
    return r;
}

PropertyResult check_superposition(const Dataset& dataset) {
    PropertyResult r{"feeder-voltage-superposition", true, false, ""};
    const SharedImpedanceMatrix m = SharedImpedanceMatrix::from_config(dataset.config);
    const double base = dataset.config.base_voltage_v;
    std::mt19937_64 rng(11);
    std::normal_distribution<double> dist(0.0, 5.0);
    const std::size_t n = m.size();
    std::vector<double> p(n), q(n), pq(n), zero(n, 0.0);
    for (int trial = 0; trial < 200 && r.passed; ++trial) {
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = dist(rng);
            q[i] = dist(rng);
            pq[i] = p[i] + q[i];
        }
        const auto v_pq = feeder_voltages(pq, 1.0, m, base);
        const auto v_q = feeder_voltages(q, 1.0, m, base);
        const auto v_p = feeder_voltages(p, 1.0, m, base);
        const auto v_0 = feeder_voltages(zero, 1.0, m, base);
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs((v_pq[i] - v_q[i]) - (v_p[i] - v_0[i])) > 1e-12) {
                r.passed = false;
                r.detail = "superposition residual at site " + std::to_string(i);
                break;
            }
        }
    }
    return r;
}

PropertyResult check_density_normalization(const Dataset& dataset) {
    PropertyResult r{"density-normalization", true, false, ""};
    for (const SiteData& site : dataset.sites) {
        BetaSeries series = daily_beta_series(dataset, site.spec.site_id);
        const std::vector<double> betas = series.betas();
        if (betas.size() < 2) continue;
        Density d;
        try {
            d = kde(betas);
        } catch (const DegenerateDataError&) {
            continue;
        }
        double integral = 0.0;
        for (std::size_t i = 1; i < d.grid.size(); ++i) {
            integral += 0.5 * (d.values[i] + d.values[i - 1]) * (d.grid[i] - d.grid[i - 1]);
        }
        if (std::abs(integral - 1.0) > 1e-3) {
            r.passed = false;
            r.detail = site.spec.site_id + ": integral " + std::to_string(integral);
            return r;
        }
    }
    return r;
}

PropertyResult check_impedance_ordering(const Dataset& dataset) {
    PropertyResult r{"impedance-beta-ordering", true, false, ""};
    if (dataset.sites.size() < 2) {
        r.skipped = true;
        r.detail = "single site";
        return r;
    }
    std::vector<std::pair<double, double>> pairs;  // impedance, |beta|
    for (const SiteData& site : dataset.sites) {
        try {
            const BetaFit fit = fit_site_beta(dataset, site.spec.site_id);
            pairs.push_back({site.spec.impedance_ohm, std::abs(fit.beta_pu_per_kw)});
        } catch (const InsufficientDataError&) {
        }
    }
    if (pairs.size() < 2) {
        r.skipped = true;
        r.detail = "not enough fitted sites";
        return r;
    }
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 1; i < pairs.size(); ++i) {
        if (pairs[i].second <= pairs[i - 1].second) {
            r.passed = false;
            r.detail = "|beta| not strictly increasing with impedance";
            break;
        }
    }
    return r;
}

PropertyResult check_beta_recovery(const Dataset& dataset) {
    PropertyResult r{"noise-free-beta-recovery", true, false, ""};
    const FeederConfig& cfg = dataset.config;
    const bool noise_free =
        cfg.load_model.noise_std_kw == 0.0 && cfg.cloud_model.volatility == 0.0;
    if (!noise_free || cfg.sites.size() != 1) {
        r.skipped = true;
        r.detail = "requires a noise-free single-site dataset";
        return r;
    }
    const double expected = -cfg.sites[0].impedance_ohm * 1000.0 /
                            (cfg.base_voltage_v * cfg.base_voltage_v);
    const BetaFit fit = fit_site_beta(dataset, cfg.sites[0].site_id);
    if (std::abs(fit.beta_pu_per_kw - expected) > 1e-6) {
        r.passed = false;
        r.detail = "beta " + std::to_string(fit.beta_pu_per_kw) + " vs closed form " +
                   std::to_string(expected);
    }
    return r;
}

}  // namespace

std::vector<PropertyResult> run_verification(const Dataset& dataset,
                                             const std::vector<std::string>& sample_violations) {
    std::vector<PropertyResult> results;
    results.push_back(check_sample_validity(sample_violations));
    results.push_back(check_oracle_equivalence());
    results.push_back(check_superposition(dataset));
    results.push_back(check_density_normalization(dataset));
    results.push_back(check_impedance_ordering(dataset));
    results.push_back(check_beta_recovery(dataset));
    return results;
}

bool all_passed(const std::vector<PropertyResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const PropertyResult& r) { return r.passed || r.skipped; });
}

}  // namespace pvgrid
