#include "chiplink/link_library.hpp"

#include <fstream>
#include <set>

#include "chiplink/table_io.hpp"

namespace chiplink {

void LinkRecord::validate() const {
    if (name.empty()) throw DomainError("LinkRecord: empty name");
    if (!(reach_mm > 0)) throw DomainError("LinkRecord '" + name + "': reach_mm must be > 0");
    if (!(raw_ber > 0 && raw_ber < 1))
        throw DomainError("LinkRecord '" + name + "': raw_ber must lie in (0, 1)");
    if (!(shoreline_gbps_per_mm > 0) || !(areal_gbps_per_mm2 > 0) ||
        !(energy_pj_per_bit > 0))
        throw DomainError("LinkRecord '" + name + "': densities and energy must be > 0");
}

namespace {

LinkKind link_kind_from_string(const std::string& s, const std::string& ctx) {
    if (s == "electrical" || s == "E") return LinkKind::Electrical;
    if (s == "optical" || s == "O") return LinkKind::Optical;
    throw ParseError(ctx + ": unknown link kind '" + s + "'");
}

MetricsKind metrics_kind_from_string(const std::string& s, const std::string& ctx) {
    if (s == "raw") return MetricsKind::RawTransceiver;
    if (s == "corrected") return MetricsKind::CorrectedDelivered;
    throw ParseError(ctx + ": unknown metrics kind '" + s + "'");
}

} // namespace

std::vector<LinkRecord> parse_link_library(std::istream& in,
                                           const std::string& source_name) {
    std::vector<LinkRecord> links;
    std::set<std::string> seen;
    for (const TableRow& row : read_table(in, source_name)) {
        LinkRecord r;
        r.name = row.str("name");
        r.reach_mm = row.num("reach_mm");
        r.process_nm = row.integer("process_nm");
        r.raw_ber = row.num("raw_ber");
        r.link_kind = link_kind_from_string(row.str("kind"), row.context());
        r.shoreline_gbps_per_mm = row.num("shoreline_gbps_per_mm");
        r.areal_gbps_per_mm2 = row.num("areal_gbps_per_mm2");
        r.energy_pj_per_bit = row.num("energy_pj_per_bit");
        r.metrics_kind = metrics_kind_from_string(row.str("metrics"), row.context());
        try {
            r.validate();
        } catch (const DomainError& e) {
            throw ParseError(row.context() + ": " + e.what());
        }
        if (!seen.insert(r.name).second)
            throw ParseError(row.context() + ": duplicate link name '" + r.name + "'");
        links.push_back(std::move(r));
    }
    return links;
}

std::vector<LinkRecord> load_link_library(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open link library '" + path + "'");
    return parse_link_library(in, path);
}

CorrectedMetrics correct_link(const LinkRecord& link, const FrameConfig& frame,
                              const ReliabilityTargets& targets,
                              const SynthTable& table, const NodeScaling& scaling,
                              const CorrectionOptions& options) {
    if (link.metrics_kind == MetricsKind::CorrectedDelivered)
        throw DomainError("correct_link: '" + link.name +
                          "' already carries delivered metrics");
    frame.validate();
    targets.validate();

    CorrectedMetrics m;
    if (link.raw_ber <= targets.ber_target) {
        // Channel already meets the delivered target: no protection stack.
        m.shoreline_gbps_per_mm = link.shoreline_gbps_per_mm;
        m.areal_gbps_per_mm2 = link.areal_gbps_per_mm2;
        m.energy_pj_per_payload_bit = link.energy_pj_per_bit;
        m.selected_code = RsCode{86, 86, 8};
        m.goodput = 1.0;
        m.fom = fom(m.shoreline_gbps_per_mm, m.energy_pj_per_payload_bit);
        return m;
    }

    m.selected_code = select_code(link.raw_ber, frame, targets);
    const ReliabilityReport report =
        frame.mode == ProtectionMode::Hybrid
            ? hybrid_failure_analysis(link.raw_ber, m.selected_code, frame, targets)
            : fec_only_analysis(link.raw_ber, m.selected_code, frame);
    m.goodput = report.goodput;

    const EccCostSummary stack = ecc_stack_cost(m.selected_code, table, frame,
                                                link.raw_ber, scaling, options.ecc);

    m.shoreline_gbps_per_mm = link.shoreline_gbps_per_mm * m.goodput;
    m.energy_pj_per_payload_bit =
        link.energy_pj_per_bit / m.goodput + stack.energy_pj_per_payload_bit;
    // Fractional stack replication: area per delivered Gbps adds to the
    // transceiver's own area per delivered Gbps.
    const double stack_mm2_per_gbps =
        stack.empty() ? 0.0 : stack.area_um2 * 1e-6 / stack.throughput_gbps;
    m.areal_gbps_per_mm2 =
        1.0 / (1.0 / (m.goodput * link.areal_gbps_per_mm2) + stack_mm2_per_gbps);
    m.fom = fom(m.shoreline_gbps_per_mm, m.energy_pj_per_payload_bit);
    return m;
}

double fom(double shoreline_gbps_per_mm, double energy_pj_per_bit) {
    if (!(energy_pj_per_bit > 0))
        throw DomainError("fom: energy per bit must be > 0");
    return shoreline_gbps_per_mm / energy_pj_per_bit;
}

double fom(const LinkRecord& link) {
    return fom(link.shoreline_gbps_per_mm, link.energy_pj_per_bit);
}

double fom(const CorrectedMetrics& metrics) {
    return fom(metrics.shoreline_gbps_per_mm, metrics.energy_pj_per_payload_bit);
}

} // namespace chiplink
