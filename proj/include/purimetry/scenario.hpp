#ifndef PURIMETRY_SCENARIO_HPP
#define PURIMETRY_SCENARIO_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace purimetry {

inline constexpr const char* kToolVersion = "purimetry 0.1.0";

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Fully resolved run description. Every field is filled from, in order of
/// decreasing precedence: command-line flag, config-file line, built-in
/// scenario default.
struct ScenarioConfig {
    std::string scenario;
    int n_particles = 0;
    double beta_sq = 0;
    int n_b = 0;
    std::string exchange_sign = "minus";
    std::string state = "case1";  // husimi source state
    double gt = 0;
    double gt_min = 0, gt_max = 0;
    int gt_steps = 0;
    double gt_center = 0, gt_halfwidth = 0;
    double phi_min = 0, phi_max = 0;
    int phi_steps = 0;
    std::string phi_spacing = "linear";
    double initial_azimuth = 0;
    int theta_nodes = 0, phi_nodes = 0;
    std::uint64_t memory_budget_mb = 512;
    bool svg_log_x = false, svg_log_y = false;
    std::string out_path;
    std::string svg_path;

    /// key/value pairs in resolution order, echoed into the CSV metadata.
    std::vector<std::pair<std::string, std::string>> resolved;
};

struct CsvTable {
    std::vector<std::string> metadata;  // without the leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

const std::vector<std::string>& scenario_names();

/// Parse `<tool> <scenario> [--key value]...`. Flags override config-file
/// lines, which override defaults; unknown scenarios and keys are rejected.
ScenarioConfig parse_config(int argc, const char* const* argv);

/// Parse a literal number or a `pi` token with optional multiplier: "pi",
/// "0.5pi", "-2pi", "3.14".
double parse_angle_token(const std::string& text, const std::string& key);

/// Evaluate a scenario into its table without touching the filesystem.
CsvTable compute_scenario(const ScenarioConfig& config);

/// compute_scenario plus CSV emission (and SVG when configured); files are
/// written atomically via a temp file and rename.
CsvTable run_scenario(const ScenarioConfig& config);

std::string format_csv(const CsvTable& table);
void write_file_atomic(const std::string& path, const std::string& bytes);

}  // namespace purimetry

#endif
