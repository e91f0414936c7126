#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "chiplink/ecc_cost.hpp"
#include "chiplink/ecc_model.hpp"

namespace chiplink {

enum class LinkKind { Electrical, Optical };
enum class MetricsKind { RawTransceiver, CorrectedDelivered };

/// One link technology. metrics_kind records whether the density/energy
/// figures are raw transceiver numbers or already include protection-stack
/// overhead (a corrected record must never be corrected again).
struct LinkRecord {
    std::string name;
    double reach_mm = 0;
    int process_nm = 0;
    double raw_ber = 0;
    LinkKind link_kind = LinkKind::Electrical;
    double shoreline_gbps_per_mm = 0;
    double areal_gbps_per_mm2 = 0;
    double energy_pj_per_bit = 0;
    MetricsKind metrics_kind = MetricsKind::CorrectedDelivered;

    void validate() const;
};

std::vector<LinkRecord> load_link_library(const std::string& path);
std::vector<LinkRecord> parse_link_library(std::istream& in,
                                           const std::string& source_name);

/// Delivered metrics after applying the protection stack to a raw record.
struct CorrectedMetrics {
    double shoreline_gbps_per_mm = 0;
    double areal_gbps_per_mm2 = 0;
    double energy_pj_per_payload_bit = 0;
    RsCode selected_code;
    double goodput = 1.0;
    double fom = 0;
};

struct CorrectionOptions {
    EccCostOptions ecc;
    /// Granularity at which stacks/lanes are instantiated when reporting
    /// absolute areas; the corrected densities themselves are independent of
    /// it under fractional replication.
    double reference_lane_gbps = 1000.0;
};

/// Applies code selection and stack costs to a raw transceiver record:
///   shoreline' = shoreline * goodput
///   energy'    = energy / goodput + stack energy per payload bit
///   areal'     = 1 / (1 / (goodput * areal) + stack_area / stack_throughput)
/// Transceiver metrics are never node-scaled; scaling applies to the ECC
/// stack only. A link whose raw BER already meets the delivered target needs
/// no protection stack and passes through unchanged. Throws DomainError on a
/// CorrectedDelivered record and InfeasibleError when no code in the family
/// meets the target.
CorrectedMetrics correct_link(const LinkRecord& link, const FrameConfig& frame,
                              const ReliabilityTargets& targets,
                              const SynthTable& table, const NodeScaling& scaling,
                              const CorrectionOptions& options = {});

/// Shoreline throughput density divided by energy per delivered bit.
double fom(double shoreline_gbps_per_mm, double energy_pj_per_bit);
double fom(const LinkRecord& link);
double fom(const CorrectedMetrics& metrics);

} // namespace chiplink
