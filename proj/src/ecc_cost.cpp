#include "chiplink/ecc_cost.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "chiplink/table_io.hpp"

namespace chiplink {

std::string to_string(BlockKind kind) {
    switch (kind) {
    case BlockKind::RsEncoder: return "rs_encoder";
    case BlockKind::RsDecoder: return "rs_decoder";
    case BlockKind::CrcAppend: return "crc_append";
    case BlockKind::CrcCheck: return "crc_check";
    case BlockKind::GbnRetry: return "gbn_retry";
    }
    return "?";
}

BlockKind block_kind_from_string(const std::string& s) {
    if (s == "rs_encoder") return BlockKind::RsEncoder;
    if (s == "rs_decoder") return BlockKind::RsDecoder;
    if (s == "crc_append") return BlockKind::CrcAppend;
    if (s == "crc_check") return BlockKind::CrcCheck;
    if (s == "gbn_retry") return BlockKind::GbnRetry;
    throw ParseError("unknown block kind '" + s + "'");
}

void SynthRecord::validate() const {
    if (!(area_um2 > 0)) throw DomainError("SynthRecord: area_um2 must be > 0");
    if (!(dyn_power_mw >= 0)) throw DomainError("SynthRecord: dyn_power_mw must be >= 0");
    if (!(clock_period_ns > 0)) throw DomainError("SynthRecord: clock_period_ns must be > 0");
    const bool is_rs = block_kind == BlockKind::RsEncoder || block_kind == BlockKind::RsDecoder;
    if (is_rs && !code_k)
        throw DomainError("SynthRecord: RS record without code_k");
    if (!is_rs && !payload_bytes)
        throw DomainError("SynthRecord: CRC/GBN record without payload_bytes");
    if (block_kind == BlockKind::GbnRetry && !rtt_ns)
        throw DomainError("SynthRecord: GBN record without rtt_ns");
}

SynthTable::SynthTable(std::vector<SynthRecord> records) : records_(std::move(records)) {
    for (const auto& r : records_) r.validate();
}

SynthTable SynthTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open synthesis table '" + path + "'");
    return parse(in, path);
}

SynthTable SynthTable::parse(std::istream& in, const std::string& source_name) {
    std::vector<SynthRecord> records;
    for (const TableRow& row : read_table(in, source_name)) {
        SynthRecord r;
        r.block_kind = block_kind_from_string(row.str("block"));
        if (row.has("code_k")) r.code_k = row.integer("code_k");
        if (row.has("payload_bytes")) r.payload_bytes = row.integer("payload_bytes");
        if (row.has("rtt_ns")) r.rtt_ns = row.num("rtt_ns");
        r.area_um2 = row.num("area_um2");
        r.dyn_power_mw = row.num("dyn_power_mw");
        r.clock_period_ns = row.num("clock_period_ns");
        try {
            r.validate();
        } catch (const DomainError& e) {
            throw ParseError(row.context() + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return SynthTable(std::move(records));
}

const SynthRecord* SynthTable::find_rs(BlockKind kind, int code_k) const {
    for (const auto& r : records_)
        if (r.block_kind == kind && r.code_k && *r.code_k == code_k) return &r;
    return nullptr;
}

const SynthRecord* SynthTable::find_block(BlockKind kind) const {
    for (const auto& r : records_)
        if (r.block_kind == kind) return &r;
    return nullptr;
}

const SynthRecord& SynthTable::rs_record(BlockKind kind, int code_k) const {
    if (const SynthRecord* r = find_rs(kind, code_k)) return *r;
    throw MissingRecordError("no synthesis record for " + to_string(kind) +
                             " at K=" + std::to_string(code_k));
}

const SynthRecord& SynthTable::block_record(BlockKind kind) const {
    if (const SynthRecord* r = find_block(kind)) return *r;
    throw MissingRecordError("no synthesis record for " + to_string(kind));
}

void NodeScaling::validate() const {
    if (!(energy_factor > 0) || !(area_factor > 0))
        throw DomainError("NodeScaling: factors must be > 0");
}

double energy_per_payload_bit(double dyn_power_mw, double clock_hz, int payload_bytes) {
    if (!(dyn_power_mw >= 0)) throw DomainError("dyn_power_mw must be >= 0");
    if (!(clock_hz > 0)) throw DomainError("clock_hz must be > 0");
    if (payload_bytes < 1) throw DomainError("payload_bytes must be >= 1");
    // mW / Hz = 1e-3 J per cycle -> pJ: * 1e9.
    const double pj_per_cycle = dyn_power_mw / clock_hz * 1e9;
    return pj_per_cycle / (8.0 * payload_bytes);
}

double rs_decoder_energy(const SynthRecord& record, double p_pre, const RsCode& code,
                         double syndrome_fraction, int info_bits_per_cycle) {
    if (record.block_kind != BlockKind::RsDecoder)
        throw DomainError("rs_decoder_energy: record is not a decoder");
    if (!record.code_k || *record.code_k != code.k_symbols)
        throw MissingRecordError("rs_decoder_energy: record K does not match code K=" +
                                 std::to_string(code.k_symbols));
    if (!(syndrome_fraction >= 0 && syndrome_fraction <= 1))
        throw DomainError("syndrome_fraction must lie in [0, 1]");
    const int bits = info_bits_per_cycle > 0 ? info_bits_per_cycle
                                             : code.k_symbols * code.symbol_bits;
    // mW * ns = pJ per decode interval.
    const double e_full = record.dyn_power_mw * record.clock_period_ns / bits;
    const double e_syndrome = syndrome_fraction * e_full;
    const double p_sym = symbol_error_prob(p_pre, code.symbol_bits);
    const double p_corr = correctable_activity_prob(p_sym, code);
    return e_syndrome + p_corr * (e_full - e_syndrome);
}

GbnWindow gbn_window(double rtt_ns, double clock_hz, double frames_per_cycle,
                     int slack_frames, int frame_wire_bytes) {
    if (!(rtt_ns >= 0)) throw DomainError("rtt_ns must be >= 0");
    if (!(clock_hz > 0) || !(frames_per_cycle > 0))
        throw DomainError("clock and frames_per_cycle must be > 0");
    if (slack_frames < 0) throw DomainError("slack_frames must be >= 0");
    if (frame_wire_bytes < 1) throw DomainError("frame_wire_bytes must be >= 1");
    // Divide by the (exactly representable) 1e9 rather than multiplying by
    // 1e-9, so integer cycle counts stay integral before the ceil.
    const double in_flight = rtt_ns * clock_hz * frames_per_cycle / 1e9;
    GbnWindow w;
    w.frames = static_cast<int>(std::ceil(in_flight)) + slack_frames;
    w.replay_bytes = static_cast<long>(w.frames) * frame_wire_bytes;
    return w;
}

EccCostSummary ecc_stack_cost(const RsCode& code, const SynthTable& table,
                              const FrameConfig& frame, double p_pre,
                              const NodeScaling& scaling,
                              const EccCostOptions& options) {
    code.validate();
    frame.validate();
    scaling.validate();

    const bool rs_present = !code.is_rate_one();
    const bool crc_present = frame.mode == ProtectionMode::Hybrid;

    double energy = 0; // pJ per payload bit, pre-scaling
    double area = 0;   // um^2, pre-scaling
    double throughput = std::numeric_limits<double>::infinity();

    if (rs_present) {
        const SynthRecord& enc = table.rs_record(BlockKind::RsEncoder, code.k_symbols);
        const SynthRecord& dec = table.rs_record(BlockKind::RsDecoder, code.k_symbols);
        const int info_bits = code.k_symbols * code.symbol_bits;
        const double e_enc = enc.dyn_power_mw * enc.clock_period_ns / info_bits;
        const double e_dec =
            rs_decoder_energy(dec, p_pre, code, options.syndrome_fraction);
        // RS blocks process all D frame bytes; charge their per-info-bit
        // energy to payload bits.
        const double info_per_payload =
            static_cast<double>(frame.data_bytes()) / frame.payload_bytes;
        energy += (e_enc + e_dec) * info_per_payload;
        area += enc.area_um2 + dec.area_um2;
        // Decoder-limited information throughput, bits/ns = Gbps.
        throughput = std::min(throughput, info_bits / enc.clock_period_ns);
        throughput = std::min(throughput, info_bits / dec.clock_period_ns);
    }

    if (crc_present) {
        const double crc_hz = 1e9 / options.crc_cycle_ns;
        for (BlockKind kind :
             {BlockKind::CrcAppend, BlockKind::CrcCheck, BlockKind::GbnRetry}) {
            const SynthRecord& rec = table.block_record(kind);
            energy += energy_per_payload_bit(rec.dyn_power_mw, crc_hz, frame.payload_bytes);
            area += rec.area_um2;
        }
        // One frame of payload per CRC cycle.
        throughput = std::min(
            throughput, 8.0 * frame.payload_bytes / options.crc_cycle_ns);
    }

    EccCostSummary summary;
    if (!rs_present && !crc_present) return summary; // empty stack

    summary.energy_pj_per_payload_bit = energy * scaling.energy_factor;
    summary.area_um2 = area * scaling.area_factor;
    summary.throughput_gbps = throughput;
    const double area_mm2 = summary.area_um2 * 1e-6;
    summary.shoreline_gbps_per_mm = throughput / std::sqrt(area_mm2);
    summary.areal_gbps_per_mm2 = throughput / area_mm2;
    return summary;
}

} // namespace chiplink
