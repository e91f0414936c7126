#include "chiplink/ecc_cost.hpp"

#include <cmath>
#include <doctest.h>
#include <random>

#include "test_support.hpp"

using namespace chiplink;
using chiplink::testing::data_path;

namespace {

SynthTable full_table() {
    std::vector<SynthRecord> records = SynthTable::load(data_path("synth_rs_7nm_sample.tsv")).records();
    const auto crc = SynthTable::load(data_path("synth_crc_gbn_7nm.tsv")).records();
    records.insert(records.end(), crc.begin(), crc.end());
    return SynthTable(std::move(records));
}

} // namespace

TEST_CASE("energy_per_payload_bit anchors") {
    // 6.28 mW at 500 MHz over 256 B payload frames.
    CHECK(energy_per_payload_bit(6.28, 500e6, 256) == doctest::Approx(0.00614).epsilon(1e-5 / 0.00614));
    CHECK(energy_per_payload_bit(6.28, 500e6, 256) == doctest::Approx(0.0061328125).epsilon(1e-12));
    CHECK(energy_per_payload_bit(2.05, 500e6, 256) == doctest::Approx(0.00200).epsilon(1e-2));
    CHECK(energy_per_payload_bit(0.0, 500e6, 256) == 0.0);
    CHECK_THROWS_AS(energy_per_payload_bit(1.0, 0.0, 256), DomainError);
}

TEST_CASE("energy_per_payload_bit is linear in power, inverse-linear in payload") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> pw(0.1, 50.0);
    for (int i = 0; i < 200; ++i) {
        const double p = pw(rng);
        const double base = energy_per_payload_bit(p, 500e6, 128);
        CHECK(energy_per_payload_bit(3 * p, 500e6, 128) == doctest::Approx(3 * base).epsilon(1e-12));
        CHECK(energy_per_payload_bit(p, 500e6, 256) == doctest::Approx(base / 2).epsilon(1e-12));
    }
}

TEST_CASE("rs_decoder_energy weighting") {
    const SynthTable table = full_table();
    const RsCode code{86, 72, 8};
    const SynthRecord& dec = table.rs_record(BlockKind::RsDecoder, 72);

    // Clean channel: the decoder never corrects, only the syndrome path burns.
    const double e_full = dec.dyn_power_mw * dec.clock_period_ns / (72 * 8);
    CHECK(rs_decoder_energy(dec, 0.0, code) == doctest::Approx(0.4 * e_full).epsilon(1e-12));

    // Saturated channel: correction probability Pr[1 <= X <= t] < 1, so the
    // energy stays strictly between syndrome-only and full decode.
    const double hot = rs_decoder_energy(dec, 1.0, code);
    CHECK(hot > 0.4 * e_full);
    CHECK(hot < e_full);

    // Hand evaluation of the weighting formula on the shipped record.
    const double p_corr =
        correctable_activity_prob(symbol_error_prob(1e-4, 8), code);
    const double expect = 0.4 * e_full + p_corr * 0.6 * e_full;
    CHECK(rs_decoder_energy(dec, 1e-4, code) == doctest::Approx(expect).epsilon(1e-12));

    // Non-decreasing in channel error rate.
    double prev = -1;
    for (double p : {0.0, 1e-6, 1e-4, 1e-3, 1e-2, 0.1}) {
        const double e = rs_decoder_energy(dec, p, code);
        CHECK(e >= prev);
        prev = e;
    }
    CHECK_THROWS_AS(rs_decoder_energy(dec, 1e-4, RsCode{86, 62, 8}), MissingRecordError);
}

TEST_CASE("gbn_window anchors") {
    const int d = FrameConfig::hybrid(256, 8).data_bytes(); // 272
    const GbnWindow base = gbn_window(10, 500e6, 1, 2, d);
    CHECK(base.frames == 7);
    CHECK(base.replay_bytes == 1904);

    const GbnWindow zero = gbn_window(0, 500e6, 1, 2, d);
    CHECK(zero.frames == 2);
    CHECK(zero.replay_bytes == 544);

    const GbnWindow wide = gbn_window(20, 500e6, 1, 2, d);
    CHECK(wide.frames == 12);
    CHECK(wide.replay_bytes == 3264);
}

TEST_CASE("gbn_window is monotone in RTT with exact replay accounting") {
    int prev = 0;
    for (double rtt : {0.0, 1.0, 5.0, 10.0, 14.2, 20.0, 33.3, 100.0}) {
        const GbnWindow w = gbn_window(rtt, 500e6, 1, 2, 272);
        CHECK(w.frames >= prev);
        CHECK(w.replay_bytes == static_cast<long>(w.frames) * 272);
        prev = w.frames;
    }
}

TEST_CASE("ecc_stack_cost composition") {
    const SynthTable table = full_table();
    const FrameConfig hybrid = FrameConfig::hybrid(256, 8);
    const FrameConfig fec = FrameConfig::fec_only(256, 8);
    const NodeScaling identity;

    // No FEC and no CRC: empty stack.
    const EccCostSummary none = ecc_stack_cost(RsCode{86, 86, 8}, table, fec, 0.0, identity);
    CHECK(none.empty());
    CHECK(none.energy_pj_per_payload_bit == 0.0);
    CHECK(std::isinf(none.throughput_gbps));

    const RsCode code{86, 72, 8};
    const EccCostSummary h = ecc_stack_cost(code, table, hybrid, 1e-4, identity);

    // CRC/GBN contribution sits exactly on top of the RS part.
    const SynthRecord& enc = table.rs_record(BlockKind::RsEncoder, 72);
    const SynthRecord& dec = table.rs_record(BlockKind::RsDecoder, 72);
    const double rs_part = (enc.dyn_power_mw * enc.clock_period_ns / (72 * 8) +
                            rs_decoder_energy(dec, 1e-4, code)) *
                           (272.0 / 256.0);
    const double crc_part = 2 * energy_per_payload_bit(6.28, 500e6, 256) +
                            energy_per_payload_bit(2.05, 500e6, 256);
    CHECK(h.energy_pj_per_payload_bit == doctest::Approx(rs_part + crc_part).epsilon(1e-12));

    // Throughput is the tightest component: decoder at 72*8 bits / 0.8 ns vs
    // one 2048-bit frame per 2 ns.
    CHECK(h.throughput_gbps == doctest::Approx(std::min(72 * 8 / 0.8, 2048 / 2.0)));
    CHECK(h.throughput_gbps <= 72 * 8 / 0.8);
    CHECK(h.throughput_gbps <= 2048 / 2.0);

    // Density normalizations against the square-footprint proxy.
    const double area_mm2 = h.area_um2 * 1e-6;
    CHECK(h.shoreline_gbps_per_mm == doctest::Approx(h.throughput_gbps / std::sqrt(area_mm2)));
    CHECK(h.areal_gbps_per_mm2 == doctest::Approx(h.throughput_gbps / area_mm2));

    CHECK_THROWS_AS(ecc_stack_cost(RsCode{86, 50, 8}, SynthTable{}, hybrid, 1e-4, identity),
                    MissingRecordError);
}

TEST_CASE("node scaling commutes with stack composition") {
    const SynthTable table = full_table();
    const FrameConfig hybrid = FrameConfig::hybrid(256, 8);
    const NodeScaling identity;
    const NodeScaling scaled{0.5, 0.33, "3nm"};
    const RsCode code{86, 62, 8};

    const EccCostSummary base = ecc_stack_cost(code, table, hybrid, 1e-4, identity);
    const EccCostSummary s = ecc_stack_cost(code, table, hybrid, 1e-4, scaled);

    CHECK(s.energy_pj_per_payload_bit ==
          doctest::Approx(0.5 * base.energy_pj_per_payload_bit).epsilon(1e-12));
    CHECK(s.area_um2 == doctest::Approx(0.33 * base.area_um2).epsilon(1e-12));
    CHECK(s.throughput_gbps == doctest::Approx(base.throughput_gbps));
    CHECK(s.areal_gbps_per_mm2 ==
          doctest::Approx(base.areal_gbps_per_mm2 / 0.33).epsilon(1e-12));
    CHECK(s.shoreline_gbps_per_mm ==
          doctest::Approx(base.shoreline_gbps_per_mm / std::sqrt(0.33)).epsilon(1e-12));
}

TEST_CASE("synth table parsing rejects malformed rows") {
    CHECK_THROWS_AS(SynthTable::load("/nonexistent/path.tsv"), ParseError);
    std::istringstream bad(
        "block\tcode_k\tpayload_bytes\trtt_ns\tarea_um2\tdyn_power_mw\tclock_period_ns\n"
        "rs_decoder\t-\t-\t-\t100\t5\t0.8\n"); // RS row without K
    CHECK_THROWS_AS(SynthTable::parse(bad, "bad"), ParseError);
    std::istringstream worse(
        "block\tcode_k\tpayload_bytes\trtt_ns\tarea_um2\tdyn_power_mw\tclock_period_ns\n"
        "rs_decoder\t62\t-\t-\t-100\t5\t0.8\n"); // negative area
    CHECK_THROWS_AS(SynthTable::parse(worse, "worse"), ParseError);
}
