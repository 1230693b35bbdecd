// End-to-end checks of the pvgrid binary: exit-code contracts and
// determinism of the full pipeline. The binary path arrives as argv[1].
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>
#include <unistd.h>

#include "pvgrid/feeder_sim.hpp"
#include "pvgrid/io.hpp"

namespace fs = std::filesystem;

namespace {

std::string g_binary;

int run(const std::string& args) {
    const std::string cmd = g_binary + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() /
               ("pvgrid_cli_" + tag + "_" + std::to_string(::getpid()));
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_small_config(const fs::path& dir, int n_days = 1) {
    pvgrid::FeederConfig cfg = pvgrid::default_config();
    cfg.n_days = n_days;
    const fs::path path = dir / "config.json";
    std::ofstream out(path);
    out << pvgrid::io::config_to_json(cfg);
    return path;
}

bool trees_identical(const fs::path& a, const fs::path& b) {
    std::vector<fs::path> names;
    for (const auto& e : fs::directory_iterator(a)) names.push_back(e.path().filename());
    for (const fs::path& name : names) {
        if (!fs::exists(b / name)) return false;
        if (slurp(a / name) != slurp(b / name)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("simulate: valid config exits 0 and writes files") {
    TempDir dir("sim");
    const fs::path cfg = write_small_config(dir.path);
    CHECK(run("simulate --config " + cfg.string() + " --out " + (dir.path / "out").string()) == 0);
    CHECK(fs::exists(dir.path / "out" / "feeder.json"));
    CHECK(fs::exists(dir.path / "out" / "pv194.csv"));
}

TEST_CASE("simulate: missing config exits 1") {
    TempDir dir("sim_missing");
    CHECK(run("simulate --config /nonexistent/config.json --out " +
              (dir.path / "out").string()) == 1);
}

TEST_CASE("simulate: fixed seed is reproducible through the CLI") {
    TempDir dir("sim_seed");
    const fs::path cfg = write_small_config(dir.path);
    const std::string a = (dir.path / "a").string();
    const std::string b = (dir.path / "b").string();
    REQUIRE(run("simulate --config " + cfg.string() + " --seed 42 --out " + a) == 0);
    REQUIRE(run("simulate --config " + cfg.string() + " --seed 42 --out " + b) == 0);
    CHECK(trees_identical(a, b));
}

TEST_CASE("analyze: report and site filter") {
    TempDir dir("analyze");
    const fs::path cfg = write_small_config(dir.path, 8);
    const std::string data = (dir.path / "data").string();
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + data) == 0);

    const std::string report = (dir.path / "report").string();
    CHECK(run("analyze --data " + data + " --out " + report + " --min-samples 5") == 0);
    for (const char* f : {"table_profile.txt", "table_daily_stats.txt", "table_hourly_stats.txt",
                          "table_entropy.txt", "analysis.json"}) {
        CHECK(fs::exists(fs::path(report) / f));
    }
    // five site columns in the daily table
    const std::string daily = slurp(fs::path(report) / "table_daily_stats.txt");
    for (const char* id : {"pv194", "pv387", "pv731", "pv1161", "pv924"}) {
        CHECK(daily.find(id) != std::string::npos);
    }

    const std::string single = (dir.path / "report_single").string();
    CHECK(run("analyze --data " + data + " --out " + single +
              " --min-samples 5 --site pv194") == 0);
    const std::string single_daily = slurp(fs::path(single) / "table_daily_stats.txt");
    CHECK(single_daily.find("pv194") != std::string::npos);
    CHECK(single_daily.find("pv924") == std::string::npos);
}

TEST_CASE("analyze: unreadable dataset exits 1, thin dataset exits 3") {
    TempDir dir("analyze_err");
    CHECK(run("analyze --data /nonexistent --out " + (dir.path / "r").string()) == 1);

    // a dataset with essentially no injection: the site fit has too few samples
    pvgrid::FeederConfig cfg = pvgrid::default_config();
    cfg.sites = {cfg.sites[0]};
    cfg.segment_resistances_ohm = {cfg.sites[0].impedance_ohm};
    cfg.sites[0].derate = 1e-6;
    cfg.load_model.noise_std_kw = 0.0;
    cfg.load_model.base_kw = 1.0;
    cfg.n_days = 1;
    pvgrid::io::write_dataset(pvgrid::simulate(cfg), dir.path / "thin");
    CHECK(run("analyze --data " + (dir.path / "thin").string() + " --out " +
              (dir.path / "r2").string()) == 3);
}

TEST_CASE("verify: clean dataset passes, corrupted dataset exits 4") {
    TempDir dir("verify");
    const fs::path cfg = write_small_config(dir.path, 2);
    const std::string data = (dir.path / "data").string();
    REQUIRE(run("simulate --config " + cfg.string() + " --out " + data) == 0);
    CHECK(run("verify --data " + data) == 0);

    // corrupt one voltage out of the plausible range (field 4 of a data row)
    const fs::path csv = fs::path(data) / "pv194.csv";
    std::string text = slurp(csv);
    const std::size_t line_start = text.find('\n') + 1;
    std::size_t field_start = line_start;
    for (int i = 0; i < 3; ++i) field_start = text.find(',', field_start) + 1;
    const std::size_t field_end = text.find(',', field_start);
    text.replace(field_start, field_end - field_start, "9.000000");
    std::ofstream(csv, std::ios::binary) << text;
    CHECK(run("verify --data " + data) == 4);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: test_cli <pvgrid binary>\n");
        return 2;
    }
    g_binary = argv[1];
    doctest::Context context;
    context.applyCommandLine(1, argv);
    return context.run();
}
