#include "chiplink/solution_check.hpp"

#include <map>

namespace chiplink {

namespace {
// Allow a whisker of float slack: widths are stored as BW/shore, so
// width * shore reproduces BW only to rounding.
constexpr double kRelTol = 1e-9;
} // namespace

CheckResult check_solution(const std::vector<Chiplet>& chiplets,
                           const std::vector<Net>& nets,
                           const std::vector<LinkRecord>& links, LinkFilter filter,
                           const AssignmentSolution& solution) {
    CheckResult res;
    auto fail = [&](const std::string& why) {
        res.ok = false;
        res.violation = why;
        return res;
    };

    if (solution.status == SolveStatus::Infeasible)
        return fail("solution is marked infeasible");
    if (solution.per_net.size() != nets.size())
        return fail("solution does not cover every net exactly once");

    std::map<std::pair<std::string, std::string>, double> used;
    for (std::size_t n = 0; n < nets.size(); ++n) {
        const Net& net = nets[n];
        const NetAssignment& a = solution.per_net[n];
        if (a.link_index < 0 || a.link_index >= static_cast<int>(links.size()))
            return fail("net " + net.id + ": link index out of range");
        const LinkRecord& link = links[static_cast<std::size_t>(a.link_index)];
        if (link.name != a.link_name)
            return fail("net " + net.id + ": link name/index mismatch");

        if (filter == LinkFilter::ElectricalOnly && link.link_kind != LinkKind::Electrical)
            return fail("net " + net.id + ": optical link under electrical-only filter");
        if (filter == LinkFilter::OpticalOnly && link.link_kind != LinkKind::Optical)
            return fail("net " + net.id + ": electrical link under optical-only filter");

        if (net.distance_mm > link.reach_mm)
            return fail("net " + net.id + ": distance " + std::to_string(net.distance_mm) +
                        " mm exceeds reach of " + link.name);

        if (a.width_mm * link.shoreline_gbps_per_mm <
            net.bw_req_gbps * (1.0 - kRelTol))
            return fail("net " + net.id + ": allocated width does not cover bandwidth");

        used[{net.a.chiplet, net.a.edge}] += a.width_mm;
        used[{net.b.chiplet, net.b.edge}] += a.width_mm;
    }

    for (const Chiplet& c : chiplets) {
        for (const ChipletEdge& e : c.edges) {
            auto it = used.find({c.id, e.id});
            if (it == used.end()) continue;
            if (it->second > e.width_mm * (1.0 + kRelTol))
                return fail("edge " + c.id + "." + e.id + ": shoreline " +
                            std::to_string(it->second) + " mm exceeds budget " +
                            std::to_string(e.width_mm) + " mm");
            used.erase(it);
        }
    }
    if (!used.empty())
        return fail("width charged to unknown edge " + used.begin()->first.first + "." +
                    used.begin()->first.second);
    return res;
}

} // namespace chiplink
