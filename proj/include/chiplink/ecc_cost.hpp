#pragma once

#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chiplink/ecc_model.hpp"
#include "chiplink/errors.hpp"

namespace chiplink {

enum class BlockKind { RsEncoder, RsDecoder, CrcAppend, CrcCheck, GbnRetry };

std::string to_string(BlockKind kind);
BlockKind block_kind_from_string(const std::string& s);

/// One synthesized block: area, dynamic power and clock at the synthesis
/// corner. RS records carry the code K they were synthesized for; CRC/GBN
/// records carry the payload size (and, for GBN, the round-trip time).
struct SynthRecord {
    BlockKind block_kind = BlockKind::RsEncoder;
    std::optional<int> code_k;
    std::optional<int> payload_bytes;
    std::optional<double> rtt_ns;
    double area_um2 = 0;
    double dyn_power_mw = 0;
    double clock_period_ns = 0;

    void validate() const;
};

/// Immutable cost table; lookups throw MissingRecordError naming the block.
class SynthTable {
public:
    SynthTable() = default;
    explicit SynthTable(std::vector<SynthRecord> records);

    static SynthTable load(const std::string& path);
    static SynthTable parse(std::istream& in, const std::string& source_name);

    const SynthRecord* find_rs(BlockKind kind, int code_k) const;
    const SynthRecord* find_block(BlockKind kind) const;
    const SynthRecord& rs_record(BlockKind kind, int code_k) const;
    const SynthRecord& block_record(BlockKind kind) const;

    const std::vector<SynthRecord>& records() const { return records_; }

private:
    std::vector<SynthRecord> records_;
};

/// Technology-node scaling knobs for synthesized ECC logic. Multiplicative on
/// energy and area only; clocks are left unchanged. Identity is (1, 1).
struct NodeScaling {
    double energy_factor = 1.0;
    double area_factor = 1.0;
    std::string label = "7nm";

    void validate() const;
};

/// Normalized cost of a full protection stack. An empty stack (no blocks at
/// all) has zero energy/area and imposes no throughput limit, reported as
/// +infinity.
struct EccCostSummary {
    double energy_pj_per_payload_bit = 0;
    double area_um2 = 0;
    double throughput_gbps = std::numeric_limits<double>::infinity();
    double shoreline_gbps_per_mm = std::numeric_limits<double>::infinity();
    double areal_gbps_per_mm2 = std::numeric_limits<double>::infinity();

    bool empty() const { return area_um2 == 0.0; }
};

struct EccCostOptions {
    /// Syndrome-only share of the full decoder energy; the remainder is
    /// weighted by the correction-activity probability.
    double syndrome_fraction = 0.4;
    /// CRC/GBN frame cycle (one frame per cycle at 500 MHz).
    double crc_cycle_ns = 2.0;
};

/// (P_dyn / f_clk) / (8 P) in pJ per payload bit; dynamic power only.
double energy_per_payload_bit(double dyn_power_mw, double clock_hz, int payload_bytes);

/// Activity-weighted decoder energy per information bit:
/// E_syndrome + Pr[1 <= X <= t] * (E_full - E_syndrome), where E_full is the
/// record's power over K*8 information bits per clock (or an explicit
/// info_bits_per_cycle when nonzero).
double rs_decoder_energy(const SynthRecord& record, double p_pre, const RsCode& code,
                         double syndrome_fraction = 0.4, int info_bits_per_cycle = 0);

struct GbnWindow {
    int frames = 0;
    long replay_bytes = 0;
};

/// Replay window: ceil(rtt * f_clk * frames_per_cycle) + slack frames, each
/// frame_wire_bytes deep.
GbnWindow gbn_window(double rtt_ns, double clock_hz, double frames_per_cycle,
                     int slack_frames, int frame_wire_bytes);

/// Composes the protection stack for one operating point: RS encode/decode
/// when K < N, CRC append/check and GBN retry in hybrid mode. Throughput is
/// the minimum over components (RS: K*8 bits per its synthesized clock;
/// CRC/GBN: one frame of 8P payload bits per crc_cycle_ns). Densities use a
/// square-footprint proxy (width = sqrt(area)).
EccCostSummary ecc_stack_cost(const RsCode& code, const SynthTable& table,
                              const FrameConfig& frame, double p_pre,
                              const NodeScaling& scaling,
                              const EccCostOptions& options = {});

} // namespace chiplink
