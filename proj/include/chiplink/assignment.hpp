#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

#include "chiplink/link_library.hpp"

namespace chiplink {

struct ChipletEdge {
    std::string id;
    double width_mm = 0; ///< usable shoreline budget W_{c,e}
};

struct Chiplet {
    std::string id;
    std::vector<ChipletEdge> edges;
};

/// Half-perimeter I/O model: every edge of a w x h die gets budget w + h.
Chiplet chiplet_from_die(const std::string& id, double width_mm, double height_mm);

struct Endpoint {
    std::string chiplet;
    std::string edge;
};

struct Net {
    std::string id;
    Endpoint a, b;
    double distance_mm = 0;
    double bw_req_gbps = 0;
};

enum class LinkFilter { All, ElectricalOnly, OpticalOnly };

std::string to_string(LinkFilter filter);
LinkFilter link_filter_from_string(const std::string& s);

/// Validated assignment instance with precomputed per-net feasible links,
/// minimum widths and objective costs. Immutable once built.
struct AssignmentProblem {
    std::vector<Chiplet> chiplets;
    std::vector<Net> nets;
    std::vector<LinkRecord> links;
    double lambda_power_w = 1;
    double lambda_area_mm2 = 1;
    LinkFilter filter = LinkFilter::All;

    // Derived on build.
    std::vector<std::string> edge_names;          // "chiplet.edge"
    std::vector<double> edge_capacity_mm;
    std::vector<int> net_edge_a, net_edge_b;      // per net, edge indices
    std::vector<std::vector<int>> feasible;       // per net, link indices by (cost, name)
    std::vector<std::vector<double>> w_min;       // per net x link
    std::vector<std::vector<double>> cost;        // per net x link objective term
    std::vector<std::string> warnings;            // e.g. empty feasible sets
};

/// Objective contribution of assigning link l to net n:
/// (Energy_l * BW_n) / lambda_P + (BW_n / BW_area_l) / lambda_A, with the
/// power term in watts.
double assignment_cost_term(const Net& net, const LinkRecord& link,
                            double lambda_power_w, double lambda_area_mm2);

AssignmentProblem build_problem(std::vector<Chiplet> chiplets, std::vector<Net> nets,
                                std::vector<LinkRecord> links, double lambda_power_w,
                                double lambda_area_mm2, LinkFilter filter);

struct NetAssignment {
    int link_index = -1;
    std::string link_name;
    double width_mm = 0; ///< shoreline consumed on each endpoint edge
};

enum class SolveStatus { Optimal, Feasible, Infeasible };

std::string to_string(SolveStatus status);

struct AssignmentSolution {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<NetAssignment> per_net;
    double objective = std::numeric_limits<double>::infinity();
    double total_power_w = 0;
    double total_area_mm2 = 0;
    std::string witness; ///< violated constraint / blocking edge when infeasible
    std::uint64_t nodes_explored = 0;
};

/// Exact branch-and-bound over per-net link choices. Widths are fixed at the
/// minimum feasible value BW_req / BW_shore (the objective does not depend on
/// width beyond feasibility), deducted from both endpoint edges. Nets are
/// expanded in input order and links in (cost, name) order, so runs are
/// deterministic and objective sums associate identically to the canonical
/// net-order sum. Returns Optimal when the search closes, Feasible with the
/// best incumbent on time-budget expiry, Infeasible with a witness otherwise.
AssignmentSolution solve_exact(const AssignmentProblem& problem,
                               std::chrono::duration<double> time_budget =
                                   std::chrono::duration<double>(10.0));

/// Reach-only greedy baseline: per net in input order, among links whose
/// minimum width still fits both endpoint edges, picks the highest shoreline
/// bandwidth density (name-lexicographic on ties).
AssignmentSolution solve_greedy_simple(const AssignmentProblem& problem);

/// Totals for a feasible solution: power = sum Energy * BW (watts); area =
/// 1/2 * sum BW / BW_area (per-endpoint attribution of transceiver area).
struct SolutionTotals {
    double power_w = 0;
    double area_mm2 = 0;
};
SolutionTotals report_totals(const AssignmentSolution& solution,
                             const AssignmentProblem& problem);

/// Scales every net's bandwidth and distance (case studies).
std::vector<Net> case_study_transform(std::vector<Net> nets, double bw_scale,
                                      double dist_scale);

// Deck file loaders (formats documented in docs/FORMATS.md).
std::vector<Net> load_netlist(const std::string& path);
std::vector<Chiplet> load_floorplan(const std::string& path);

} // namespace chiplink
