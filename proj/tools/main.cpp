// pvgrid: simulate a radial feeder with PV sites, analyze meter datasets,
// and verify dataset invariants.
//
// Exit codes: 0 success, 1 config/validation error, 2 I/O error,
// 3 insufficient data, 4 verification failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pvgrid/analysis.hpp"
#include "pvgrid/feeder_sim.hpp"
#include "pvgrid/io.hpp"
#include "pvgrid/verify.hpp"

namespace {

constexpr int kExitConfigError = 1;
constexpr int kExitIoError = 2;
constexpr int kExitInsufficientData = 3;
constexpr int kExitVerifyFailure = 4;

int run_simulate(const std::string& config_path, std::optional<std::uint64_t> seed,
                 const std::string& out_dir) {
    pvgrid::FeederConfig config =
        config_path.empty() ? pvgrid::default_config() : pvgrid::io::read_config(config_path);
    if (seed) config.seed = *seed;
    config.validate();

    const pvgrid::Dataset dataset = pvgrid::simulate(config);
    pvgrid::io::write_dataset(dataset, out_dir);

    std::size_t total = 0;
    for (const auto& site : dataset.sites) total += site.samples.size();
    std::cout << "simulated " << dataset.sites.size() << " sites, " << config.n_days
              << " days, " << total << " samples (seed " << config.seed << ")\n"
              << "wrote " << out_dir << "\n";
    return 0;
}

int run_analyze(const std::string& data_dir, const std::string& out_dir,
                const std::optional<std::string>& site, std::optional<std::size_t> min_samples) {
    const pvgrid::Dataset dataset = pvgrid::io::read_dataset(data_dir);

    pvgrid::AnalysisOptions options;
    options.site_filter = site;
    if (min_samples) options.min_samples = *min_samples;

    const pvgrid::AnalysisResults results = pvgrid::analyze_dataset(dataset, options);
    pvgrid::io::write_report(results, out_dir);
    pvgrid::io::write_analysis_json(results, std::string(out_dir) + "/analysis.json");

    std::cout << "analyzed " << results.sites.size() << " site(s)\n";
    for (const auto& s : results.sites) {
        std::cout << "  " << s.site_id << ": beta " << s.overall.beta_pu_per_kw << " (n="
                  << s.overall.n_samples << ", R " << s.impedance_ohm << " ohm)\n";
    }
    std::cout << "wrote report to " << out_dir << "\n";
    return 0;
}

int run_verify(const std::string& data_dir) {
    std::vector<std::string> violations;
    const pvgrid::Dataset dataset = pvgrid::io::read_dataset(data_dir, &violations);
    const auto results = pvgrid::run_verification(dataset, violations);
    for (const auto& r : results) {
        const char* status = r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL");
        std::cout << "[" << status << "] " << r.name;
        if (!r.detail.empty()) std::cout << " (" << r.detail << ")";
        std::cout << "\n";
    }
    return pvgrid::all_passed(results) ? 0 : kExitVerifyFailure;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Distribution-feeder PV simulator and meter-data analytics"};
    app.require_subcommand(1);

    std::string config_path;
    std::string data_dir;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> site;
    std::optional<std::size_t> min_samples;

    CLI::App* sim = app.add_subcommand("simulate", "Generate a synthetic meter dataset");
    sim->add_option("--config", config_path, "Feeder config JSON (built-in default when omitted)");
    sim->add_option("--seed", seed, "Override the config seed");
    sim->add_option("--out", out_dir, "Output directory")->required();

    CLI::App* ana = app.add_subcommand("analyze", "Run the beta / PV-profile analyses");
    ana->add_option("--data", data_dir, "Dataset directory")->required();
    ana->add_option("--out", out_dir, "Report directory")->required();
    ana->add_option("--site", site, "Restrict to one site id");
    ana->add_option("--min-samples", min_samples, "Series sample threshold (default 30)");

    CLI::App* ver = app.add_subcommand("verify", "Run the dataset invariant suite");
    ver->add_option("--data", data_dir, "Dataset directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return run_simulate(config_path, seed, out_dir);
        if (ana->parsed()) return run_analyze(data_dir, out_dir, site, min_samples);
        if (ver->parsed()) return run_verify(data_dir);
    } catch (const pvgrid::InsufficientDataError& e) {
        std::cerr << "error: insufficient data: " << e.what() << "\n";
        return kExitInsufficientData;
    } catch (const pvgrid::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIoError;
    } catch (const std::exception& e) {
        // config, parse and validation problems
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return 0;
}
