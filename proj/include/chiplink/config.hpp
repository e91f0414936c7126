#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "chiplink/assignment.hpp"
#include "chiplink/ecc_cost.hpp"
#include "chiplink/ecc_model.hpp"

namespace chiplink {

/// Flat `key = value` configuration with '#' comments and an
/// `include <path>` directive (paths relative to the including file).
/// Later assignments override earlier ones, so a file can include a shared
/// baseline and then specialize it.
class KeyValueConfig {
public:
    static KeyValueConfig load(const std::string& path);

    bool has(const std::string& key) const;
    const std::string& str(const std::string& key) const;
    std::string str_or(const std::string& key, const std::string& fallback) const;
    double num(const std::string& key) const;
    double num_or(const std::string& key, double fallback) const;
    int int_or(const std::string& key, int fallback) const;

    void set(const std::string& key, const std::string& value);
    const std::vector<std::string>& keys_in_order() const { return order_; }

private:
    void load_file(const std::string& path, int depth);

    std::unordered_map<std::string, std::string> values_;
    std::vector<std::string> order_;
};

/// A fully-resolved experiment configuration. Paths are absolute (resolved
/// against the config file location); defaults mirror the baseline operating
/// point (P=256 B, H=8 B, CRC-64, RTT 10 ns, target 1e-27, one retry).
struct ScenarioConfig {
    FrameConfig frame = FrameConfig::hybrid(256, 8);
    ReliabilityTargets targets;
    NodeScaling scaling;
    EccCostOptions ecc;

    double gbn_rtt_ns = 10.0;
    double gbn_frames_per_cycle = 1.0;
    int gbn_slack_frames = 2;

    std::string link_library_path;
    std::string synth_rs_path;
    std::string synth_crc_gbn_path;
    std::string netlist_path;
    std::string floorplan_path;

    double lambda_power_w = 1.0;
    double lambda_area_mm2 = 1.0;
    LinkFilter filter = LinkFilter::All;
    double bw_scale = 1.0;
    double dist_scale = 1.0;

    std::vector<double> ber_grid;
    double reference_lane_gbps = 1000.0;

    std::string out_dir = "out";
    std::uint64_t seed = 1;
    double time_budget_s = 10.0;
    std::uint64_t mc_trials = 1000000;
    int oracle_instances = 200;

    /// Loads the synthesis tables named by the config (either or both keys
    /// may be present) into one merged table.
    SynthTable load_synth_table() const;
};

ScenarioConfig scenario_from_config(const KeyValueConfig& cfg,
                                    const std::string& config_dir);
ScenarioConfig load_scenario(const std::string& path);

} // namespace chiplink
