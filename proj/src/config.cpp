#include "chiplink/config.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace chiplink {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

} // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    KeyValueConfig cfg;
    cfg.load_file(path, 0);
    return cfg;
}

void KeyValueConfig::load_file(const std::string& path, int depth) {
    if (depth > 8) throw ParseError("config include depth exceeded at '" + path + "'");
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config '" + path + "'");
    const fs::path base = fs::path(path).parent_path();

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::string ctx = path + ":" + std::to_string(lineno);

        if (line.rfind("include", 0) == 0 &&
            (line.size() == 7 || line[7] == ' ' || line[7] == '\t')) {
            const std::string target = trim(line.substr(7));
            if (target.empty()) throw ParseError(ctx + ": include without a path");
            load_file((base / target).string(), depth + 1);
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError(ctx + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError(ctx + ": empty key");
        set(key, value);
    }
}

bool KeyValueConfig::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& KeyValueConfig::str(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw ParseError("missing config key '" + key + "'");
    return it->second;
}

std::string KeyValueConfig::str_or(const std::string& key,
                                   const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

double KeyValueConfig::num(const std::string& key) const {
    const std::string& s = str(key);
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("config key '" + key + "' is not a number: '" + s + "'");
    }
}

double KeyValueConfig::num_or(const std::string& key, double fallback) const {
    return has(key) ? num(key) : fallback;
}

int KeyValueConfig::int_or(const std::string& key, int fallback) const {
    if (!has(key)) return fallback;
    const double v = num(key);
    const int i = static_cast<int>(v);
    if (static_cast<double>(i) != v)
        throw ParseError("config key '" + key + "' is not an integer");
    return i;
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
    if (!values_.count(key)) order_.push_back(key);
    values_[key] = value;
}

namespace {

std::string resolve_path(const std::string& dir, const std::string& p) {
    if (p.empty()) return p;
    fs::path path(p);
    if (path.is_absolute()) return p;
    return (fs::path(dir) / path).lexically_normal().string();
}

std::vector<double> parse_grid(const std::string& csv, const std::string& key) {
    std::vector<double> grid;
    std::istringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        try {
            grid.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw ParseError("config key '" + key + "': bad number '" + item + "'");
        }
    }
    return grid;
}

} // namespace

ScenarioConfig scenario_from_config(const KeyValueConfig& cfg,
                                    const std::string& config_dir) {
    ScenarioConfig sc;

    const std::string mode = cfg.str_or("frame.mode", "hybrid");
    if (mode == "hybrid")
        sc.frame = FrameConfig::hybrid(cfg.int_or("frame.payload_bytes", 256),
                                       cfg.int_or("frame.header_bytes", 8));
    else if (mode == "fec_only")
        sc.frame = FrameConfig::fec_only(cfg.int_or("frame.payload_bytes", 256),
                                         cfg.int_or("frame.header_bytes", 8));
    else
        throw ParseError("frame.mode must be 'hybrid' or 'fec_only', got '" + mode + "'");

    sc.targets.ber_target = cfg.num_or("targets.ber_target", 1e-27);
    sc.targets.p_undet = cfg.num_or("targets.p_undet", 0x1p-64);
    sc.targets.f_wrong = cfg.num_or("targets.f_wrong", 0.5);
    const std::string retries = cfg.str_or("targets.max_retries", "1");
    if (retries == "unbounded")
        sc.targets.max_retries.reset();
    else
        sc.targets.max_retries = cfg.int_or("targets.max_retries", 1);
    sc.targets.validate();

    sc.scaling.energy_factor = cfg.num_or("scaling.energy_factor", 1.0);
    sc.scaling.area_factor = cfg.num_or("scaling.area_factor", 1.0);
    sc.scaling.label = cfg.str_or("scaling.label", "7nm");
    sc.scaling.validate();

    sc.ecc.syndrome_fraction = cfg.num_or("ecc.syndrome_fraction", 0.4);
    sc.ecc.crc_cycle_ns = cfg.num_or("ecc.crc_cycle_ns", 2.0);

    sc.gbn_rtt_ns = cfg.num_or("gbn.rtt_ns", 10.0);
    sc.gbn_frames_per_cycle = cfg.num_or("gbn.frames_per_cycle", 1.0);
    sc.gbn_slack_frames = cfg.int_or("gbn.slack_frames", 2);

    sc.link_library_path = resolve_path(config_dir, cfg.str_or("paths.link_library", ""));
    sc.synth_rs_path = resolve_path(config_dir, cfg.str_or("paths.synth_rs", ""));
    sc.synth_crc_gbn_path =
        resolve_path(config_dir, cfg.str_or("paths.synth_crc_gbn", ""));
    sc.netlist_path = resolve_path(config_dir, cfg.str_or("paths.netlist", ""));
    sc.floorplan_path = resolve_path(config_dir, cfg.str_or("paths.floorplan", ""));

    sc.lambda_power_w = cfg.num_or("assign.lambda_power_w", 1.0);
    sc.lambda_area_mm2 = cfg.num_or("assign.lambda_area_mm2", 1.0);
    sc.filter = link_filter_from_string(cfg.str_or("assign.filter", "all"));
    sc.bw_scale = cfg.num_or("case.bw_scale", 1.0);
    sc.dist_scale = cfg.num_or("case.dist_scale", 1.0);

    if (cfg.has("sweep.ber_grid")) sc.ber_grid = parse_grid(cfg.str("sweep.ber_grid"), "sweep.ber_grid");
    sc.reference_lane_gbps = cfg.num_or("ref.lane_gbps", 1000.0);

    sc.out_dir = resolve_path(config_dir, cfg.str_or("out.dir", "out"));
    sc.seed = static_cast<std::uint64_t>(cfg.num_or("seed", 1));
    sc.time_budget_s = cfg.num_or("time_budget_s", 10.0);
    sc.mc_trials = static_cast<std::uint64_t>(cfg.num_or("oracle.mc_trials", 1e6));
    sc.oracle_instances = cfg.int_or("oracle.instances", 200);
    return sc;
}

ScenarioConfig load_scenario(const std::string& path) {
    const KeyValueConfig cfg = KeyValueConfig::load(path);
    return scenario_from_config(cfg, fs::path(path).parent_path().string());
}

SynthTable ScenarioConfig::load_synth_table() const {
    std::vector<SynthRecord> records;
    for (const std::string& path : {synth_rs_path, synth_crc_gbn_path}) {
        if (path.empty()) continue;
        const SynthTable t = SynthTable::load(path);
        records.insert(records.end(), t.records().begin(), t.records().end());
    }
    return SynthTable(std::move(records));
}

} // namespace chiplink
