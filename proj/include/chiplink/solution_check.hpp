#pragma once

#include <string>
#include <vector>

#include "chiplink/assignment.hpp"

namespace chiplink {

struct CheckResult {
    bool ok = true;
    std::string violation;
};

/// Independent constraint checker for assignment solutions. Works directly
/// from the raw problem data (chiplets, nets, links, filter) and shares no
/// logic with the solvers: reachability, per-net bandwidth coverage,
/// per-edge shoreline capacity (both endpoints consume width) and the
/// one-link-per-net rule are each re-derived here from first principles.
CheckResult check_solution(const std::vector<Chiplet>& chiplets,
                           const std::vector<Net>& nets,
                           const std::vector<LinkRecord>& links, LinkFilter filter,
                           const AssignmentSolution& solution);

} // namespace chiplink
