#include "chiplink/link_library.hpp"

#include <doctest.h>
#include <sstream>

#include "test_support.hpp"

using namespace chiplink;
using chiplink::testing::data_path;

namespace {

const char* kHeader =
    "name\treach_mm\tprocess_nm\traw_ber\tkind\tshoreline_gbps_per_mm\t"
    "areal_gbps_per_mm2\tenergy_pj_per_bit\tmetrics\n";

SynthTable full_table() {
    std::vector<SynthRecord> records = SynthTable::load(data_path("synth_rs_7nm_sample.tsv")).records();
    const auto crc = SynthTable::load(data_path("synth_crc_gbn_7nm.tsv")).records();
    records.insert(records.end(), crc.begin(), crc.end());
    return SynthTable(std::move(records));
}

const LinkRecord& by_name(const std::vector<LinkRecord>& lib, const std::string& name) {
    for (const auto& l : lib)
        if (l.name == name) return l;
    throw std::runtime_error("missing " + name);
}

LinkRecord raw_link(double ber) {
    LinkRecord r;
    r.name = "probe";
    r.reach_mm = 10;
    r.process_nm = 7;
    r.raw_ber = ber;
    r.link_kind = LinkKind::Electrical;
    r.shoreline_gbps_per_mm = 1000;
    r.areal_gbps_per_mm2 = 800;
    r.energy_pj_per_bit = 0.5;
    r.metrics_kind = MetricsKind::RawTransceiver;
    return r;
}

} // namespace

TEST_CASE("shipped link library loads with the published rows") {
    const auto lib = load_link_library(data_path("links_table2_7nm_feccrc.tsv"));
    CHECK(lib.size() == 25);

    const LinkRecord& sc = by_name(lib, "SuperCHIPS");
    CHECK(sc.reach_mm == 0.5);
    CHECK(sc.raw_ber == 1e-14);
    CHECK(sc.link_kind == LinkKind::Electrical);

    const LinkRecord& daudlin = by_name(lib, "Daudlin25");
    CHECK(daudlin.reach_mm == 4e3);
    CHECK(daudlin.raw_ber == 6e-8);
    CHECK(daudlin.link_kind == LinkKind::Optical);

    const LinkRecord& melek = by_name(lib, "Melek26");
    CHECK(melek.shoreline_gbps_per_mm == 5270);
    CHECK(melek.areal_gbps_per_mm2 == 4216);
    CHECK(melek.energy_pj_per_bit == 0.29);
    CHECK(melek.metrics_kind == MetricsKind::CorrectedDelivered);
}

TEST_CASE("library parsing edge cases") {
    std::istringstream empty(kHeader);
    CHECK(parse_link_library(empty, "empty").empty());

    std::istringstream dup(std::string(kHeader) +
                           "a\t1\t7\t1e-9\tE\t10\t10\t1\tcorrected\n"
                           "a\t2\t7\t1e-9\tE\t10\t10\t1\tcorrected\n");
    CHECK_THROWS_AS(parse_link_library(dup, "dup"), ParseError);

    std::istringstream invariant(std::string(kHeader) +
                                 "bad\t-1\t7\t1e-9\tE\t10\t10\t1\tcorrected\n");
    CHECK_THROWS_AS(parse_link_library(invariant, "invariant"), ParseError);

    std::istringstream field(std::string(kHeader) +
                             "bad\t1\t7\tnot_a_number\tE\t10\t10\t1\tcorrected\n");
    CHECK_THROWS_AS(parse_link_library(field, "field"), ParseError);
}

TEST_CASE("figure of merit") {
    CHECK(fom(1144, 0.08) == doctest::Approx(14300).epsilon(1e-12));
    CHECK(fom(3.7, 3.7) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(fom(5270, 0.29) == doctest::Approx(18172.4).epsilon(1e-4));
    CHECK_THROWS_AS(fom(100, 0), DomainError);
}

TEST_CASE("correct_link rejects double correction") {
    LinkRecord corrected = raw_link(1e-9);
    corrected.metrics_kind = MetricsKind::CorrectedDelivered;
    CHECK_THROWS_AS(correct_link(corrected, FrameConfig::hybrid(256, 8),
                                 ReliabilityTargets{}, full_table(), NodeScaling{}),
                    DomainError);
}

TEST_CASE("correct_link passthrough for channels at or below the target") {
    const SynthTable table = full_table();
    for (double ber : {0.0, 1e-30, 1e-27}) {
        const CorrectedMetrics m = correct_link(raw_link(ber), FrameConfig::hybrid(256, 8),
                                                ReliabilityTargets{}, table, NodeScaling{});
        CHECK(m.selected_code.k_symbols == 86);
        CHECK(m.goodput == 1.0);
        CHECK(m.shoreline_gbps_per_mm == 1000);
        CHECK(m.areal_gbps_per_mm2 == 800);
        CHECK(m.energy_pj_per_payload_bit == 0.5);
    }
}

TEST_CASE("correct_link at the moderate-BER anchor") {
    const SynthTable table = full_table();
    const CorrectedMetrics m = correct_link(raw_link(1e-4), FrameConfig::hybrid(256, 8),
                                            ReliabilityTargets{}, table, NodeScaling{});
    CHECK(m.selected_code.k_symbols == 72);
    CHECK(m.goodput == doctest::Approx(0.788).epsilon(0.005 / 0.788));
    CHECK(m.shoreline_gbps_per_mm == doctest::Approx(1000 * m.goodput));
    CHECK(m.energy_pj_per_payload_bit > 0.5 / m.goodput); // stack energy on top
    CHECK(m.areal_gbps_per_mm2 < 800 * m.goodput);
    CHECK(m.fom == doctest::Approx(m.shoreline_gbps_per_mm / m.energy_pj_per_payload_bit));
}

TEST_CASE("corrected metrics never beat raw metrics") {
    const SynthTable table = full_table();
    for (double ber : {1e-6, 1e-5, 1e-4, 3e-4, 1e-3}) {
        for (auto frame : {FrameConfig::hybrid(256, 8), FrameConfig::fec_only(256, 8)}) {
            const CorrectedMetrics m =
                correct_link(raw_link(ber), frame, ReliabilityTargets{}, table, NodeScaling{});
            CHECK(m.shoreline_gbps_per_mm <= 1000);
            CHECK(m.energy_pj_per_payload_bit >= 0.5);
            CHECK(m.areal_gbps_per_mm2 <= 800);
        }
    }
}

TEST_CASE("hybrid goodput dominates FEC-only goodput after correction") {
    const SynthTable table = full_table();
    for (double ber : {1e-6, 1e-5, 1e-4, 3e-4, 1e-3}) {
        const CorrectedMetrics hybrid = correct_link(
            raw_link(ber), FrameConfig::hybrid(256, 8), ReliabilityTargets{}, table, NodeScaling{});
        const CorrectedMetrics fec = correct_link(
            raw_link(ber), FrameConfig::fec_only(256, 8), ReliabilityTargets{}, table, NodeScaling{});
        CHECK(hybrid.goodput >= fec.goodput);
    }
}

TEST_CASE("correct_link surfaces infeasible channels") {
    CHECK_THROWS_AS(correct_link(raw_link(5e-3), FrameConfig::hybrid(256, 8),
                                 ReliabilityTargets{}, full_table(), NodeScaling{}),
                    InfeasibleError);
}

TEST_CASE("FoM ranking is invariant under a common energy scale") {
    const auto lib = load_link_library(data_path("links_table2_7nm_feccrc.tsv"));
    for (double scale : {0.5, 2.0, 13.7}) {
        for (std::size_t i = 1; i < lib.size(); ++i) {
            const bool before = fom(lib[i - 1]) < fom(lib[i]);
            const bool after = fom(lib[i - 1].shoreline_gbps_per_mm,
                                   lib[i - 1].energy_pj_per_bit * scale) <
                               fom(lib[i].shoreline_gbps_per_mm,
                                   lib[i].energy_pj_per_bit * scale);
            CHECK(before == after);
        }
    }
}
