#include "pvgrid/io.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pvgrid/feeder_sim.hpp"

namespace pvgrid::io {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr std::chrono::year_month_day kEpoch{std::chrono::year{2024}, std::chrono::month{1},
                                             std::chrono::day{1}};
const char* kCsvHeader =
    "date,minute,net_power_kw,pcc_voltage_pu,pv_power_kw,pv_voltage_pu,irradiance_kw_m2";

std::string day_to_date(std::int32_t day) {
    const std::chrono::sys_days d = std::chrono::sys_days(kEpoch) + std::chrono::days(day);
    const std::chrono::year_month_day ymd(d);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::int32_t date_to_day(const std::string& date) {
    int y = 0, m = 0, d = 0;
    if (std::sscanf(date.c_str(), "%d-%d-%d", &y, &m, &d) != 3) {
        throw ParseError("bad date: " + date);
    }
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{unsigned(m)},
                                          std::chrono::day{unsigned(d)}};
    if (!ymd.ok()) throw ParseError("bad date: " + date);
    return static_cast<std::int32_t>(
        (std::chrono::sys_days(ymd) - std::chrono::sys_days(kEpoch)).count());
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(const std::string& s, const std::string& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw ParseError(where + ": bad number '" + s + "'");
        return v;
    } catch (const std::invalid_argument&) {
        throw ParseError(where + ": bad number '" + s + "'");
    } catch (const std::out_of_range&) {
        throw ParseError(where + ": number out of range '" + s + "'");
    }
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path.string());
    return out;
}

}  // namespace

FeederConfig config_from_json(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    try {
        FeederConfig cfg;
        cfg.base_voltage_v = j.value("base_voltage_v", 240.0);
        cfg.source_setpoint_pu = j.value("source_setpoint_pu", 1.02);
        for (const json& s : j.at("sites")) {
            PvSiteSpec spec;
            spec.site_id = s.at("site_id").get<std::string>();
            spec.capacity_kw = s.at("capacity_kw").get<double>();
            spec.impedance_ohm = s.at("impedance_ohm").get<double>();
            spec.derate = s.value("derate", 0.906);
            spec.orientation_offset_min = s.value("orientation_offset_min", 0);
            spec.position_index = s.at("position_index").get<int>();
            cfg.sites.push_back(std::move(spec));
        }
        cfg.segment_resistances_ohm = j.at("segment_resistances_ohm").get<std::vector<double>>();
        if (j.contains("ltc")) {
            const json& l = j["ltc"];
            cfg.ltc.step_pu = l.value("step_pu", cfg.ltc.step_pu);
            cfg.ltc.deadband_pu = l.value("deadband_pu", cfg.ltc.deadband_pu);
            cfg.ltc.delay_s = l.value("delay_s", cfg.ltc.delay_s);
        }
        if (j.contains("load_model")) {
            const json& l = j["load_model"];
            cfg.load_model.base_kw = l.value("base_kw", 0.0);
            if (l.contains("day_shape")) {
                cfg.load_model.day_shape = l["day_shape"].get<std::vector<double>>();
            } else {
                cfg.load_model.day_shape = default_day_shape();
            }
            cfg.load_model.noise_std_kw = l.value("noise_std_kw", 0.0);
            cfg.load_model.midday_noise_scale = l.value("midday_noise_scale", 1.0);
        } else {
            cfg.load_model.day_shape = default_day_shape();
        }
        if (j.contains("cloud_model")) {
            const json& c = j["cloud_model"];
            cfg.cloud_model.mean_reversion = c.value("mean_reversion", 0.0);
            cfg.cloud_model.volatility = c.value("volatility", 0.0);
            if (c.contains("clamp")) {
                const auto clamp = c["clamp"].get<std::vector<double>>();
                if (clamp.size() != 2) throw ParseError("config: cloud_model.clamp must have 2 entries");
                cfg.cloud_model.clamp_lo = clamp[0];
                cfg.cloud_model.clamp_hi = clamp[1];
            }
        }
        cfg.n_days = j.value("n_days", 1);
        cfg.seed = j.value("seed", std::uint64_t{1});
        cfg.validate();
        return cfg;
    } catch (const json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
}

std::string config_to_json(const FeederConfig& config) {
    json j;
    j["base_voltage_v"] = config.base_voltage_v;
    j["source_setpoint_pu"] = config.source_setpoint_pu;
    j["sites"] = json::array();
    for (const PvSiteSpec& s : config.sites) {
        j["sites"].push_back({{"site_id", s.site_id},
                              {"capacity_kw", s.capacity_kw},
                              {"impedance_ohm", s.impedance_ohm},
                              {"derate", s.derate},
                              {"orientation_offset_min", s.orientation_offset_min},
                              {"position_index", s.position_index}});
    }
    j["segment_resistances_ohm"] = config.segment_resistances_ohm;
    j["ltc"] = {{"step_pu", config.ltc.step_pu},
                {"deadband_pu", config.ltc.deadband_pu},
                {"delay_s", config.ltc.delay_s}};
    j["load_model"] = {{"base_kw", config.load_model.base_kw},
                       {"day_shape", config.load_model.day_shape},
                       {"noise_std_kw", config.load_model.noise_std_kw},
                       {"midday_noise_scale", config.load_model.midday_noise_scale}};
    j["cloud_model"] = {{"mean_reversion", config.cloud_model.mean_reversion},
                        {"volatility", config.cloud_model.volatility},
                        {"clamp", {config.cloud_model.clamp_lo, config.cloud_model.clamp_hi}}};
    j["n_days"] = config.n_days;
    j["seed"] = config.seed;
    return j.dump(2) + "\n";
}

FeederConfig read_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config: " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

void write_dataset(const Dataset& dataset, const fs::path& directory) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) throw IoError("cannot create directory: " + directory.string());

    for (const SiteData& site : dataset.sites) {
        const fs::path path = directory / (site.spec.site_id + ".csv");
        std::ofstream out = open_out(path);
        out << kCsvHeader << "\n";
        char buf[160];
        for (const MeterSample& s : site.samples) {
            std::snprintf(buf, sizeof(buf), "%s,%d,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                          day_to_date(s.t.day).c_str(), s.t.minute, s.net_power_kw,
                          s.pcc_voltage_pu, s.pv_power_kw, s.pv_voltage_pu, s.irradiance_kw_m2);
            out << buf;
        }
        if (!out) throw IoError("write failed: " + path.string());
    }
    std::ofstream cfg = open_out(directory / "feeder.json");
    cfg << config_to_json(dataset.config);
    if (!cfg) throw IoError("write failed: " + (directory / "feeder.json").string());
}

Dataset read_dataset(const fs::path& directory, std::vector<std::string>* violations) {
    Dataset dataset;
    dataset.config = read_config(directory / "feeder.json");

    std::size_t violation_count = 0;
    std::string first_violation;

    for (const PvSiteSpec& spec : dataset.config.sites) {
        const fs::path path = directory / (spec.site_id + ".csv");
        std::ifstream in(path, std::ios::binary);
        if (!in) throw IoError("cannot open dataset file: " + path.string());

        SiteData site;
        site.spec = spec;

        std::string line;
        if (!std::getline(in, line) || line != kCsvHeader) {
            throw ParseError(path.string() + ":1: bad header (expected '" +
                             std::string(kCsvHeader) + "')");
        }
        std::size_t line_no = 1;
        while (std::getline(in, line)) {
            ++line_no;
            if (line.empty()) continue;
            const std::string where = path.string() + ":" + std::to_string(line_no);
            const std::vector<std::string> fields = split(line, ',');
            if (fields.size() != 7) {
                throw ParseError(where + ": expected 7 fields, got " +
                                 std::to_string(fields.size()));
            }
            MeterSample s;
            s.t.day = date_to_day(fields[0]);
            s.t.minute = static_cast<std::int32_t>(parse_double(fields[1], where));
            s.net_power_kw = parse_double(fields[2], where);
            s.pcc_voltage_pu = parse_double(fields[3], where);
            s.pv_power_kw = parse_double(fields[4], where);
            s.pv_voltage_pu = parse_double(fields[5], where);
            s.irradiance_kw_m2 = parse_double(fields[6], where);
            if (const auto reason = validate_sample(s, spec)) {
                ++violation_count;
                const std::string msg = where + ": " + *reason;
                if (first_violation.empty()) first_violation = msg;
                if (violations) violations->push_back(msg);
            }
            site.samples.push_back(s);
        }
        dataset.sites.push_back(std::move(site));
    }
    if (violation_count > 0 && violations == nullptr) {
        throw ValidationError(std::to_string(violation_count) +
                              " invalid samples; first at " + first_violation);
    }
    return dataset;
}

namespace {

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), format, v);
    return buf;
}

void write_table(std::ofstream& out, const std::string& title,
                 const std::vector<std::string>& row_labels,
                 const std::vector<std::vector<std::string>>& columns,
                 const std::vector<std::string>& column_heads) {
    out << title << "\n";
    std::vector<std::size_t> widths(columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        widths[c] = column_heads[c].size();
        for (const std::string& cell : columns[c]) widths[c] = std::max(widths[c], cell.size());
    }
    std::size_t label_width = 0;
    for (const std::string& l : row_labels) label_width = std::max(label_width, l.size());

    auto pad = [](const std::string& s, std::size_t w) {
        return std::string(w - s.size(), ' ') + s;
    };
    out << std::string(label_width, ' ');
    for (std::size_t c = 0; c < columns.size(); ++c) out << "  " << pad(column_heads[c], widths[c]);
    out << "\n";
    for (std::size_t r = 0; r < row_labels.size(); ++r) {
        out << pad(row_labels[r], label_width);
        for (std::size_t c = 0; c < columns.size(); ++c) out << "  " << pad(columns[c][r], widths[c]);
        out << "\n";
    }
    out << "\n";
}

void write_plot_file(const fs::path& path, const std::vector<std::pair<double, double>>& rows) {
    std::ofstream out = open_out(path);
    char buf[64];
    for (const auto& [x, y] : rows) {
        std::snprintf(buf, sizeof(buf), "%.6f %.8g\n", x, y);
        out << buf;
    }
}

std::string opt_cell(const std::optional<double>& v, const char* format) {
    return v ? fmt(format, *v) : "--";
}

}  // namespace

void write_report(const AnalysisResults& results, const fs::path& directory) {
    std::error_code ec;
    fs::create_directories(directory, ec);
    if (ec) throw IoError("cannot create directory: " + directory.string());

    std::vector<std::string> heads;
    for (const SiteAnalysis& s : results.sites) heads.push_back(s.site_id);

    {
        std::ofstream out = open_out(directory / "table_profile.txt");
        std::vector<std::vector<std::string>> cols;
        for (const SiteAnalysis& s : results.sites) {
            cols.push_back({fmt("%.2f", s.capacity_kw), fmt("%.3f", s.impedance_ohm),
                            fmt("%.2f", s.energy_per_capacity_kwh)});
        }
        write_table(out, "PV profile (impedance and average daily energy per system capacity)",
                    {"Capacity (kW)", "Impedance (Ohm)", "Energy/SC (kWh/kW)"}, cols, heads);
        out << "Pooled irradiance slope (kW per kW capacity per kW/m^2): "
            << fmt("%.4f", results.irradiance_slope) << "\n";
        out << "Mean daylight output fraction of capacity: "
            << fmt("%.4f", results.mean_daylight_fraction) << "\n";
    }
    {
        std::ofstream out = open_out(directory / "table_daily_stats.txt");
        std::vector<std::vector<std::string>> cols;
        for (const SiteAnalysis& s : results.sites) {
            const auto& sum = s.daily_summary;
            cols.push_back({opt_cell(sum ? std::optional(sum->minimum) : std::nullopt, "%.4f"),
                            opt_cell(sum ? std::optional(sum->average) : std::nullopt, "%.4f"),
                            opt_cell(sum ? std::optional(sum->std) : std::nullopt, "%.4f"),
                            opt_cell(sum ? std::optional(sum->map) : std::nullopt, "%.4f")});
        }
        write_table(out, "Daily statistics of beta", {"Minimum", "Average", "STD", "MAP"}, cols,
                    heads);
    }
    {
        std::ofstream out = open_out(directory / "table_hourly_stats.txt");
        std::vector<std::vector<std::string>> cols;
        for (const SiteAnalysis& s : results.sites) {
            const auto& sum = s.hourly_summary;
            cols.push_back({opt_cell(sum ? std::optional(sum->minimum) : std::nullopt, "%.4f"),
                            opt_cell(sum ? std::optional(sum->average) : std::nullopt, "%.4f"),
                            opt_cell(sum ? std::optional(sum->std) : std::nullopt, "%.4f"),
                            opt_cell(sum ? std::optional(sum->map) : std::nullopt, "%.4f")});
        }
        write_table(out, "Hourly statistics of beta", {"Minimum", "Average", "STD", "MAP"}, cols,
                    heads);
    }
    {
        std::ofstream out = open_out(directory / "table_entropy.txt");
        std::vector<std::vector<std::string>> cols;
        for (const SiteAnalysis& s : results.sites) {
            cols.push_back({opt_cell(s.daily_entropy_bits, "%.2f"),
                            opt_cell(s.hourly_entropy_bits, "%.2f")});
        }
        write_table(out, "Entropy of beta (bits)", {"Daily entropy", "Hourly entropy"}, cols,
                    heads);
    }

    for (const SiteAnalysis& s : results.sites) {
        std::vector<std::pair<double, double>> rows;
        for (const auto& e : s.daily.entries) rows.push_back({double(e.label), e.fit.beta_pu_per_kw});
        write_plot_file(directory / ("beta_daily_" + s.site_id + ".dat"), rows);

        rows.clear();
        for (const auto& e : s.hourly.entries) rows.push_back({double(e.label), e.fit.beta_pu_per_kw});
        write_plot_file(directory / ("beta_hourly_" + s.site_id + ".dat"), rows);

        rows.clear();
        if (s.daily_density) {
            for (std::size_t i = 0; i < s.daily_density->grid.size(); ++i) {
                rows.push_back({s.daily_density->grid[i], s.daily_density->values[i]});
            }
        }
        write_plot_file(directory / ("density_daily_" + s.site_id + ".dat"), rows);

        rows.clear();
        if (s.hourly_density) {
            for (std::size_t i = 0; i < s.hourly_density->grid.size(); ++i) {
                rows.push_back({s.hourly_density->grid[i], s.hourly_density->values[i]});
            }
        }
        write_plot_file(directory / ("density_hourly_" + s.site_id + ".dat"), rows);
    }
}

void write_analysis_json(const AnalysisResults& results, const fs::path& path) {
    json j;
    j["irradiance_slope"] = results.irradiance_slope;
    j["mean_daylight_fraction"] = results.mean_daylight_fraction;
    j["sites"] = json::array();
    for (const SiteAnalysis& s : results.sites) {
        json site;
        site["site_id"] = s.site_id;
        site["capacity_kw"] = s.capacity_kw;
        site["impedance_ohm"] = s.impedance_ohm;
        site["beta"] = s.overall.beta_pu_per_kw;
        site["intercept"] = s.overall.intercept_pu;
        site["n_samples"] = s.overall.n_samples;
        site["residual_std"] = s.overall.residual_std_pu;
        site["explained_variance"] = s.overall.explained_variance;
        site["energy_per_capacity_kwh"] = s.energy_per_capacity_kwh;
        auto summary_json = [](const BetaSummary& b) {
            return json{{"minimum", b.minimum}, {"average", b.average}, {"std", b.std},
                        {"map", b.map}};
        };
        if (s.daily_summary) site["daily"] = summary_json(*s.daily_summary);
        if (s.hourly_summary) site["hourly"] = summary_json(*s.hourly_summary);
        if (s.daily_entropy_bits) site["daily_entropy_bits"] = *s.daily_entropy_bits;
        if (s.hourly_entropy_bits) site["hourly_entropy_bits"] = *s.hourly_entropy_bits;
        j["sites"].push_back(std::move(site));
    }
    std::ofstream out = open_out(path);
    out << j.dump(2) << "\n";
}

}  // namespace pvgrid::io
