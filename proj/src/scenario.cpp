#include "purimetry/scenario.hpp"

#include "purimetry/dynamics.hpp"
#include "purimetry/estimation.hpp"
#include "purimetry/qfi.hpp"
#include "purimetry/spin_algebra.hpp"
#include "purimetry/state_space.hpp"
#include "purimetry/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace purimetry {

namespace {

constexpr double kPi = std::numbers::pi;

enum class KeyKind { Int, Real, Angle, Token, Bool, Path };

struct KeySpec {
    const char* key;
    KeyKind kind;
    const char* default_value;
};

// Keys shared by every scenario.
const std::vector<KeySpec> kCommonKeys = {
    {"out", KeyKind::Path, ""},
    {"svg", KeyKind::Path, ""},
    {"svg-logx", KeyKind::Bool, "false"},
    {"svg-logy", KeyKind::Bool, "false"},
    {"memory-budget-mb", KeyKind::Int, "512"},
};

const std::map<std::string, std::vector<KeySpec>>& scenario_keys() {
    static const std::map<std::string, std::vector<KeySpec>> keys = {
        {"cases", {{"n", KeyKind::Int, "100"}}},
        {"dephasing-dicke",
         {{"n", KeyKind::Int, "100"},
          {"beta2", KeyKind::Real, "500"},
          {"azimuth0", KeyKind::Angle, "0"},
          {"gt-min", KeyKind::Angle, "0"},
          {"gt-max", KeyKind::Angle, "0.5"},
          {"gt-steps", KeyKind::Int, "501"}}},
        {"husimi",
         {{"n", KeyKind::Int, "20"},
          {"state", KeyKind::Token, "case1"},
          {"beta2", KeyKind::Real, "500"},
          {"gt", KeyKind::Angle, "0"},
          {"azimuth0", KeyKind::Angle, "0"},
          {"theta-nodes", KeyKind::Int, "100"},
          {"phi-nodes", KeyKind::Int, "100"}}},
        {"pseudo-cat",
         {{"n", KeyKind::Int, "100"},
          {"beta2", KeyKind::Real, "500"},
          {"gt-center", KeyKind::Angle, "pi"},
          {"gt-halfwidth", KeyKind::Angle, "0.5"},
          {"gt-steps", KeyKind::Int, "201"}}},
        {"exchange",
         {{"n", KeyKind::Int, "100"},
          {"n-b", KeyKind::Int, "20"},
          {"sign", KeyKind::Token, "minus"},
          {"gt-min", KeyKind::Angle, "0"},
          {"gt-max", KeyKind::Angle, "0.35"},
          {"gt-steps", KeyKind::Int, "351"}}},
        {"sensitivity-dicke",
         {{"n", KeyKind::Int, "100"},
          {"beta2", KeyKind::Real, "1e6"},
          {"gt", KeyKind::Angle, "0.01"},
          {"phi-min", KeyKind::Angle, "1e-3"},
          {"phi-max", KeyKind::Angle, "0.5"},
          {"phi-steps", KeyKind::Int, "200"},
          {"phi-spacing", KeyKind::Token, "log"}}},
        {"sensitivity-cat",
         {{"n", KeyKind::Int, "20"},
          {"beta2", KeyKind::Real, "30"},
          {"gt", KeyKind::Angle, "pi"},
          {"phi-min", KeyKind::Angle, "0"},
          {"phi-max", KeyKind::Angle, "0.3"},
          {"phi-steps", KeyKind::Int, "301"},
          {"phi-spacing", KeyKind::Token, "linear"}}},
    };
    return keys;
}

std::string trim(const std::string& text) {
    const auto begin = text.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = text.find_last_not_of(" \t\r\n");
    return text.substr(begin, end - begin + 1);
}

double parse_real(const std::string& text, const std::string& key) {
    try {
        size_t used = 0;
        const double value = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ConfigError("malformed numeric value '" + text + "' for key '" + key + "'");
    }
}

long long parse_int(const std::string& text, const std::string& key) {
    try {
        size_t used = 0;
        const long long value = std::stoll(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return value;
    } catch (const std::exception&) {
        throw ConfigError("malformed integer value '" + text + "' for key '" + key + "'");
    }
}

bool parse_bool(const std::string& text, const std::string& key) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw ConfigError("malformed boolean value '" + text + "' for key '" + key + "'");
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        const std::string content = trim(line);
        if (content.empty()) continue;
        const auto eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config file '" + path + "' line " + std::to_string(line_number) +
                              ": expected 'key = value'");
        const std::string key = trim(content.substr(0, eq));
        const std::string value = trim(content.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config file '" + path + "' line " + std::to_string(line_number) +
                              ": empty key or value");
        if (key == "config")
            throw ConfigError("config file '" + path + "': nested 'config' keys are not allowed");
        values[key] = value;
    }
    return values;
}

std::string list_names() {
    std::string names;
    for (const std::string& name : scenario_names()) {
        if (!names.empty()) names += ", ";
        names += name;
    }
    return names;
}

std::vector<double> linspace(double lo, double hi, int steps) {
    std::vector<double> grid(steps);
    if (steps == 1) {
        grid[0] = lo;
        return grid;
    }
    const double h = (hi - lo) / (steps - 1);
    for (int i = 0; i < steps; ++i) grid[i] = lo + h * i;
    grid.back() = hi;
    return grid;
}

// Symmetric grid that contains the center node exactly (odd step counts).
std::vector<double> centered_grid(double center, double halfwidth, int steps) {
    std::vector<double> grid(steps);
    if (steps == 1) {
        grid[0] = center;
        return grid;
    }
    const double h = 2.0 * halfwidth / (steps - 1);
    const int mid = (steps - 1) / 2;
    for (int i = 0; i < steps; ++i) grid[i] = center + (i - mid) * h;
    if (steps % 2 == 1) grid[mid] = center;
    return grid;
}

std::vector<double> phase_grid(const ScenarioConfig& cfg) {
    if (cfg.phi_spacing == "linear") return linspace(cfg.phi_min, cfg.phi_max, cfg.phi_steps);
    if (cfg.phi_spacing == "log") {
        if (cfg.phi_min <= 0.0)
            throw ConfigError("phi-min must be positive for log spacing");
        std::vector<double> grid = linspace(std::log(cfg.phi_min), std::log(cfg.phi_max),
                                            cfg.phi_steps);
        for (double& x : grid) x = std::exp(x);
        return grid;
    }
    throw ConfigError("unknown phi-spacing '" + cfg.phi_spacing + "' (use linear or log)");
}

std::string format_double(double value) {
    char buffer[48];
    std::snprintf(buffer, sizeof(buffer), "%.11e", value);
    return buffer;
}

// ---------------------------------------------------------------------------
// scenario implementations
// ---------------------------------------------------------------------------

CsvTable cases_table(const ScenarioConfig& cfg) {
    const SpinSpace space(cfg.n_particles);
    const SpinOperators ops = angular_momentum_operators(space);
    CsvTable table;
    table.columns = {"case", "four_var_jy", "f_a"};
    for (const CaseState which : {CaseState::I, CaseState::II, CaseState::III}) {
        const DensityMatrix rho = case_state(which, space);
        table.rows.push_back({static_cast<double>(static_cast<int>(which)),
                              qfi_purification(rho, ops.jy), qfi_mixed(rho, ops.jy)});
    }
    return table;
}

CsvTable dephasing_table(const ScenarioConfig& cfg, double initial_azimuth,
                         const std::vector<double>& grid) {
    const SpinSpace space(cfg.n_particles);
    const SpinOperators ops = angular_momentum_operators(space);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, initial_azimuth);
    const Complex beta = std::sqrt(cfg.beta_sq);

    CsvTable table;
    table.columns = {"gt", "c1_sq", "c2_sq", "purity", "f0", "f1", "f2", "f_a", "f_ab"};
    for (double gt : grid) {
        const JointState joint = dephasing_purification(initial, beta, gt);
        const DensityMatrix rho = partial_trace_to_probe(joint);
        const QfiBreakdown breakdown = qfi_breakdown(rho);
        table.rows.push_back({gt, std::norm(coherence_dephasing(1, cfg.beta_sq, gt)),
                              std::norm(coherence_dephasing(2, cfg.beta_sq, gt)), purity(rho),
                              breakdown.f0, breakdown.f1, breakdown.f2, qfi_mixed(rho, ops.jy),
                              breakdown.total});
    }
    return table;
}

CsvTable husimi_table(const ScenarioConfig& cfg) {
    const SpinSpace space(cfg.n_particles);
    DensityMatrix rho = [&]() {
        if (cfg.state == "case1") return case_state(CaseState::I, space);
        if (cfg.state == "case2") return case_state(CaseState::II, space);
        if (cfg.state == "case3") return case_state(CaseState::III, space);
        if (cfg.state == "dephased") {
            const SpinState initial =
                spin_coherent_state(space, 0.5 * kPi, cfg.initial_azimuth);
            return partial_trace_to_probe(
                dephasing_purification(initial, std::sqrt(cfg.beta_sq), cfg.gt));
        }
        throw ConfigError("unknown state '" + cfg.state +
                          "' (use case1, case2, case3, or dephased)");
    }();
    const HusimiField field = husimi_q(rho, cfg.theta_nodes, cfg.phi_nodes);
    CsvTable table;
    table.columns = {"theta", "phi", "q"};
    for (Eigen::Index it = 0; it < field.theta_grid.size(); ++it)
        for (Eigen::Index ip = 0; ip < field.phi_grid.size(); ++ip)
            table.rows.push_back({field.theta_grid(it), field.phi_grid(ip), field.values(it, ip)});
    return table;
}

CsvTable exchange_table(const ScenarioConfig& cfg) {
    const SpinSpace space(cfg.n_particles);
    const SpinOperators ops = angular_momentum_operators(space);
    ExchangeSpec spec;
    spec.sign = cfg.exchange_sign == "plus" ? ExchangeSign::Plus : ExchangeSign::Minus;
    if (cfg.exchange_sign != "plus" && cfg.exchange_sign != "minus")
        throw ConfigError("unknown sign '" + cfg.exchange_sign + "' (use minus or plus)");
    spec.n_b_initial = cfg.n_b;
    spec.coupling_time_grid = linspace(cfg.gt_min, cfg.gt_max, cfg.gt_steps);
    const SpinState initial = spin_coherent_state(space, 0.0, 0.0);

    CsvTable table;
    table.columns = {"gt", "purity", "f_a", "f_ab"};
    for (const ExchangeSnapshot& snap : evolve_exchange(space, spec, initial)) {
        table.rows.push_back({snap.gt, purity(snap.probe), qfi_mixed(snap.probe, ops.jy),
                              qfi_purification(snap.probe, ops.jy)});
    }
    return table;
}

CsvTable sensitivity_dicke_table(const ScenarioConfig& cfg) {
    const SpinSpace space(cfg.n_particles);
    const double beta = std::sqrt(cfg.beta_sq);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, 0.0);
    const JointState joint = dephasing_purification(initial, beta, cfg.gt);
    const JointState windowed = to_windowed_fock(joint, 1e-12, cfg.memory_budget_mb << 20);

    SignalKind kind;
    kind.tag = SignalKind::Tag::ApproxHomodyne;
    kind.beta = beta;
    kind.gt = cfg.gt;
    const std::vector<double> grid = phase_grid(cfg);
    const std::vector<SignalStats> curve = sensitivity_curve(kind, SignalInput(windowed), grid);

    // linearized sensitivity evaluated with the moments of the actual probe
    const SignalMoments moments = signal_moments(partial_trace_to_probe(joint));
    CsvTable table;
    table.columns = {"phi", "mean", "variance", "dmean_dphi", "delta_phi", "delta_phi_linearized"};
    for (const SignalStats& s : curve) {
        table.rows.push_back({s.phase, s.mean, s.variance, s.dmean_dphase, s.delta_phi,
                              analytic_homodyne_sensitivity(space, s.phase, beta, cfg.gt, moments)});
    }
    return table;
}

CsvTable sensitivity_cat_table(const ScenarioConfig& cfg) {
    const SpinSpace space(cfg.n_particles);
    const double beta = std::sqrt(cfg.beta_sq);
    const SpinState initial = spin_coherent_state(space, 0.5 * kPi, 0.5 * kPi);
    const JointState joint = dephasing_purification(initial, beta, cfg.gt);
    const JointState windowed = to_windowed_fock(joint, 1e-12, cfg.memory_budget_mb << 20);

    SignalKind kind;
    kind.tag = SignalKind::Tag::ApproxQuadratureParity;
    kind.beta = beta;
    const std::vector<double> grid = phase_grid(cfg);
    const std::vector<SignalStats> curve = sensitivity_curve(kind, SignalInput(windowed), grid);

    CsvTable table;
    table.columns = {"phi", "mean", "variance", "dmean_dphi", "delta_phi"};
    for (const SignalStats& s : curve)
        table.rows.push_back({s.phase, s.mean, s.variance, s.dmean_dphase, s.delta_phi});
    return table;
}

struct PlotSpec {
    std::string x;
    std::vector<std::string> y;
};

PlotSpec default_plot(const std::string& scenario) {
    if (scenario == "cases") return {"case", {"four_var_jy", "f_a"}};
    if (scenario == "husimi") return {"theta", {"q"}};
    if (scenario == "sensitivity-dicke") return {"phi", {"delta_phi", "delta_phi_linearized"}};
    if (scenario == "sensitivity-cat") return {"phi", {"delta_phi"}};
    return {"gt", {"f_a", "f_ab"}};
}

}  // namespace

// ---------------------------------------------------------------------------
// public surface
// ---------------------------------------------------------------------------

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = []() {
        std::vector<std::string> out;
        for (const auto& [name, keys] : scenario_keys()) out.push_back(name);
        return out;
    }();
    return names;
}

double parse_angle_token(const std::string& text, const std::string& key) {
    const std::string value = trim(text);
    if (value.size() >= 2 && value.substr(value.size() - 2) == "pi") {
        const std::string prefix = trim(value.substr(0, value.size() - 2));
        if (prefix.empty()) return kPi;
        if (prefix == "-") return -kPi;
        if (prefix == "+") return kPi;
        return parse_real(prefix, key) * kPi;
    }
    return parse_real(value, key);
}

ScenarioConfig parse_config(int argc, const char* const* argv) {
    if (argc < 2) throw ConfigError("missing scenario name; expected one of: " + list_names());
    const std::string scenario = argv[1];
    const auto registry = scenario_keys();
    const auto entry = registry.find(scenario);
    if (entry == registry.end())
        throw ConfigError("unknown scenario '" + scenario + "'; expected one of: " + list_names());

    std::vector<KeySpec> specs = entry->second;
    specs.insert(specs.end(), kCommonKeys.begin(), kCommonKeys.end());
    const auto find_spec = [&](const std::string& key) -> const KeySpec* {
        for (const KeySpec& spec : specs)
            if (key == spec.key) return &spec;
        return nullptr;
    };

    // command-line flags
    std::map<std::string, std::string> flag_values;
    std::string config_path;
    for (int i = 2; i < argc; ++i) {
        const std::string flag = argv[i];
        if (flag.size() < 3 || flag.substr(0, 2) != "--")
            throw ConfigError("expected '--key value' pairs, got '" + flag + "'");
        const std::string key = flag.substr(2);
        if (i + 1 >= argc) throw ConfigError("flag '--" + key + "' is missing its value");
        const std::string value = argv[++i];
        if (key == "config") {
            config_path = value;
            continue;
        }
        if (find_spec(key) == nullptr)
            throw ConfigError("unknown key '" + key + "' for scenario '" + scenario + "'");
        flag_values[key] = value;
    }

    // config file, overridden by flags
    std::map<std::string, std::string> file_values;
    if (!config_path.empty()) {
        file_values = read_config_file(config_path);
        for (const auto& [key, value] : file_values)
            if (find_spec(key) == nullptr)
                throw ConfigError("unknown key '" + key + "' in config file '" + config_path +
                                  "' for scenario '" + scenario + "'");
    }

    ScenarioConfig cfg;
    cfg.scenario = scenario;
    cfg.resolved.emplace_back("scenario", scenario);

    for (const KeySpec& spec : specs) {
        std::string value = spec.default_value;
        if (auto it = file_values.find(spec.key); it != file_values.end()) value = it->second;
        if (auto it = flag_values.find(spec.key); it != flag_values.end()) value = it->second;
        const std::string key = spec.key;
        cfg.resolved.emplace_back(key, value);

        if (key == "n") cfg.n_particles = static_cast<int>(parse_int(value, key));
        else if (key == "beta2") cfg.beta_sq = parse_real(value, key);
        else if (key == "n-b") cfg.n_b = static_cast<int>(parse_int(value, key));
        else if (key == "sign") cfg.exchange_sign = value;
        else if (key == "state") cfg.state = value;
        else if (key == "gt") cfg.gt = parse_angle_token(value, key);
        else if (key == "gt-min") cfg.gt_min = parse_angle_token(value, key);
        else if (key == "gt-max") cfg.gt_max = parse_angle_token(value, key);
        else if (key == "gt-steps") cfg.gt_steps = static_cast<int>(parse_int(value, key));
        else if (key == "gt-center") cfg.gt_center = parse_angle_token(value, key);
        else if (key == "gt-halfwidth") cfg.gt_halfwidth = parse_angle_token(value, key);
        else if (key == "phi-min") cfg.phi_min = parse_angle_token(value, key);
        else if (key == "phi-max") cfg.phi_max = parse_angle_token(value, key);
        else if (key == "phi-steps") cfg.phi_steps = static_cast<int>(parse_int(value, key));
        else if (key == "phi-spacing") cfg.phi_spacing = value;
        else if (key == "azimuth0") cfg.initial_azimuth = parse_angle_token(value, key);
        else if (key == "theta-nodes") cfg.theta_nodes = static_cast<int>(parse_int(value, key));
        else if (key == "phi-nodes") cfg.phi_nodes = static_cast<int>(parse_int(value, key));
        else if (key == "memory-budget-mb")
            cfg.memory_budget_mb = static_cast<std::uint64_t>(parse_int(value, key));
        else if (key == "out") cfg.out_path = value;
        else if (key == "svg") cfg.svg_path = value;
        else if (key == "svg-logx") cfg.svg_log_x = parse_bool(value, key);
        else if (key == "svg-logy") cfg.svg_log_y = parse_bool(value, key);
    }

    // cross-field invariants
    if (cfg.n_particles < 1) throw ConfigError("n must be at least 1");
    if (cfg.beta_sq < 0.0) throw ConfigError("beta2 must be non-negative");
    if (cfg.n_b < 0) throw ConfigError("n-b must be non-negative");
    if (cfg.memory_budget_mb < 1) throw ConfigError("memory-budget-mb must be at least 1");
    if (find_spec("gt-steps") != nullptr && cfg.gt_steps < 1)
        throw ConfigError("gt-steps must be at least 1");
    if (find_spec("gt-min") != nullptr && !(cfg.gt_min < cfg.gt_max))
        throw ConfigError("gt-min must be below gt-max");
    if (find_spec("phi-steps") != nullptr && cfg.phi_steps < 1)
        throw ConfigError("phi-steps must be at least 1");
    if (find_spec("phi-min") != nullptr && !(cfg.phi_min < cfg.phi_max))
        throw ConfigError("phi-min must be below phi-max");
    if (find_spec("gt-halfwidth") != nullptr && cfg.gt_halfwidth <= 0.0)
        throw ConfigError("gt-halfwidth must be positive");
    if (find_spec("theta-nodes") != nullptr && (cfg.theta_nodes < 2 || cfg.phi_nodes < 2))
        throw ConfigError("theta-nodes and phi-nodes must be at least 2");
    return cfg;
}

CsvTable compute_scenario(const ScenarioConfig& cfg) {
    CsvTable table;
    if (cfg.scenario == "cases") table = cases_table(cfg);
    else if (cfg.scenario == "dephasing-dicke")
        table = dephasing_table(cfg, cfg.initial_azimuth,
                                linspace(cfg.gt_min, cfg.gt_max, cfg.gt_steps));
    else if (cfg.scenario == "husimi") table = husimi_table(cfg);
    else if (cfg.scenario == "pseudo-cat")
        table = dephasing_table(cfg, 0.5 * kPi,
                                centered_grid(cfg.gt_center, cfg.gt_halfwidth, cfg.gt_steps));
    else if (cfg.scenario == "exchange") table = exchange_table(cfg);
    else if (cfg.scenario == "sensitivity-dicke") table = sensitivity_dicke_table(cfg);
    else if (cfg.scenario == "sensitivity-cat") table = sensitivity_cat_table(cfg);
    else
        throw ConfigError("unknown scenario '" + cfg.scenario + "'; expected one of: " +
                          list_names());

    table.metadata.clear();
    table.metadata.push_back(kToolVersion);
    for (const auto& [key, value] : cfg.resolved) table.metadata.push_back(key + " = " + value);
    return table;
}

std::string format_csv(const CsvTable& table) {
    std::string out;
    for (const std::string& line : table.metadata) out += "# " + line + "\n";
    for (size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) out += ",";
        out += table.columns[i];
    }
    out += "\n";
    for (const std::vector<double>& row : table.rows) {
        if (row.size() != table.columns.size())
            throw NumericError("format_csv: ragged row");
        for (size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ",";
            out += format_double(row[i]);
        }
        out += "\n";
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write output file '" + path + "'");
        out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        if (!out) throw ConfigError("short write to '" + tmp + "'");
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw ConfigError("cannot move '" + tmp + "' into place at '" + path + "'");
}

CsvTable run_scenario(const ScenarioConfig& cfg) {
    const CsvTable table = compute_scenario(cfg);
    const std::string out_path = cfg.out_path.empty() ? cfg.scenario + ".csv" : cfg.out_path;
    write_file_atomic(out_path, format_csv(table));
    if (!cfg.svg_path.empty()) {
        const PlotSpec plot = default_plot(cfg.scenario);
        SvgOptions options;
        options.log_x = cfg.svg_log_x;
        options.log_y = cfg.svg_log_y;
        write_file_atomic(cfg.svg_path, emit_svg(table, plot.x, plot.y, options));
    }
    return table;
}

}  // namespace purimetry
