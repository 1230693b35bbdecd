#pragma once

// Shared domain types and unit conventions. All types are immutable values
// after construction; nothing here touches the filesystem.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace pvgrid {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InsufficientDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DegenerateDataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Day index from dataset start plus minute-of-day. Minute-of-day is the
// analysis key; no timezone arithmetic anywhere.
struct MinuteStamp {
    std::int32_t day = 0;
    std::int32_t minute = 0;  // 0..1439

    friend bool operator==(const MinuteStamp&, const MinuteStamp&) = default;
};

// One minute of one site's telemetry. net_power_kw is signed: negative means
// injection into the grid.
struct MeterSample {
    MinuteStamp t;
    double net_power_kw = 0.0;
    double pcc_voltage_pu = 1.0;
    double pv_power_kw = 0.0;   // minute average, >= 0
    double pv_voltage_pu = 1.0;
    double irradiance_kw_m2 = 0.0;
};

struct PvSiteSpec {
    std::string site_id;
    double capacity_kw = 0.0;       // SC, > 0
    double impedance_ohm = 0.0;     // total line resistance PCC <-> transformer
    double derate = 0.906;          // PV conversion slope, in (0, 1]
    int orientation_offset_min = 0; // shifts the solar peak
    int position_index = 0;         // ordinal along the radial feeder
};

struct LtcSettings {
    double step_pu = 0.00625;
    double deadband_pu = 0.0125;  // must be >= step_pu
    double delay_s = 30.0;
};

struct LoadModel {
    double base_kw = 0.0;
    std::vector<double> day_shape;  // 1440 multipliers
    double noise_std_kw = 0.0;
    double midday_noise_scale = 1.0;  // in (0, 1]
};

struct CloudModel {
    double mean_reversion = 0.0;
    double volatility = 0.0;
    double clamp_lo = 0.0;
    double clamp_hi = 1.0;
};

struct FeederConfig {
    double base_voltage_v = 240.0;
    double source_setpoint_pu = 1.02;
    std::vector<PvSiteSpec> sites;               // ordered by position_index
    std::vector<double> segment_resistances_ohm; // one per feeder segment
    LtcSettings ltc;
    LoadModel load_model;
    CloudModel cloud_model;
    int n_days = 1;
    std::uint64_t seed = 1;

    // Throws ConfigError naming the offending field path.
    void validate() const;
};

// Pairwise shared-path resistance between each site pair and the transformer.
// For a radial feeder r[i][j] = prefix resistance up to min(position_i,
// position_j); the diagonal equals each site's total impedance.
class SharedImpedanceMatrix {
  public:
    static SharedImpedanceMatrix from_segments(const std::vector<double>& segments_ohm);
    static SharedImpedanceMatrix from_config(const FeederConfig& config);

    std::size_t size() const { return n_; }
    double at(std::size_t i, std::size_t j) const { return r_[i * n_ + j]; }
    const double* data() const { return r_.data(); }

  private:
    std::size_t n_ = 0;
    std::vector<double> r_;  // row-major, symmetric
};

// Result of the linear voltage-vs-power fit V = beta * P + intercept.
struct BetaFit {
    double beta_pu_per_kw = 0.0;
    double intercept_pu = 0.0;
    std::size_t n_samples = 0;
    double residual_std_pu = 0.0;
    double explained_variance = 0.0;  // in [0, 1]
};

enum class SeriesKind { daily, minute_of_day };

struct BetaSeries {
    SeriesKind kind = SeriesKind::daily;
    struct Entry {
        std::int32_t label;  // day index or minute-of-day, strictly increasing
        BetaFit fit;
    };
    std::vector<Entry> entries;

    std::vector<double> betas() const;
};

struct BetaSummary {
    double minimum = 0.0;
    double average = 0.0;
    double std = 0.0;
    double map = 0.0;  // mode of the estimated density
};

// Probability density evaluated on a uniform grid.
struct Density {
    std::vector<double> grid;    // strictly increasing
    std::vector<double> values;  // nonnegative, same length
    double bandwidth = 0.0;
};

// Simulated or ingested dataset: one sample stream per site.
struct SiteData {
    PvSiteSpec spec;
    std::vector<MeterSample> samples;  // sorted by (day, minute)
};

struct Dataset {
    FeederConfig config;
    std::vector<SiteData> sites;

    const SiteData& site(const std::string& site_id) const;
};

double to_per_unit(double voltage_v, double base_voltage_v);

// nullopt = accept; otherwise the name of the first violated invariant.
std::optional<std::string> validate_sample(const MeterSample& s, const PvSiteSpec& spec);

}  // namespace pvgrid
