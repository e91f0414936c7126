#include "chiplink/assignment.hpp"

#include <algorithm>
#include <cmath>

namespace chiplink {

Chiplet chiplet_from_die(const std::string& id, double width_mm, double height_mm) {
    if (!(width_mm > 0) || !(height_mm > 0))
        throw DomainError("chiplet_from_die: die dimensions must be > 0");
    const double budget = width_mm + height_mm; // half the perimeter
    return Chiplet{id,
                   {{"n", budget}, {"e", budget}, {"s", budget}, {"w", budget}}};
}

std::string to_string(LinkFilter filter) {
    switch (filter) {
    case LinkFilter::All: return "all";
    case LinkFilter::ElectricalOnly: return "electrical";
    case LinkFilter::OpticalOnly: return "optical";
    }
    return "?";
}

LinkFilter link_filter_from_string(const std::string& s) {
    if (s == "all") return LinkFilter::All;
    if (s == "electrical") return LinkFilter::ElectricalOnly;
    if (s == "optical") return LinkFilter::OpticalOnly;
    throw ParseError("unknown link filter '" + s + "'");
}

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::Optimal: return "optimal";
    case SolveStatus::Feasible: return "feasible";
    case SolveStatus::Infeasible: return "infeasible";
    }
    return "?";
}

double assignment_cost_term(const Net& net, const LinkRecord& link,
                            double lambda_power_w, double lambda_area_mm2) {
    // pJ/bit * Gbps = mW; normalize in watts.
    const double power_w = link.energy_pj_per_bit * net.bw_req_gbps * 1e-3;
    const double area_mm2 = net.bw_req_gbps / link.areal_gbps_per_mm2;
    return power_w / lambda_power_w + area_mm2 / lambda_area_mm2;
}

namespace {

bool link_passes_filter(const LinkRecord& link, LinkFilter filter) {
    switch (filter) {
    case LinkFilter::All: return true;
    case LinkFilter::ElectricalOnly: return link.link_kind == LinkKind::Electrical;
    case LinkFilter::OpticalOnly: return link.link_kind == LinkKind::Optical;
    }
    return false;
}

// Canonical objective: per-net cost terms accumulated in input-net order.
// Every solver reports this exact sum so equal assignments compare
// bit-identically.
double canonical_objective(const AssignmentProblem& problem,
                           const std::vector<int>& choice) {
    double total = 0;
    for (std::size_t n = 0; n < choice.size(); ++n)
        total += problem.cost[n][static_cast<std::size_t>(choice[n])];
    return total;
}

} // namespace

AssignmentProblem build_problem(std::vector<Chiplet> chiplets, std::vector<Net> nets,
                                std::vector<LinkRecord> links, double lambda_power_w,
                                double lambda_area_mm2, LinkFilter filter) {
    if (!(lambda_power_w > 0) || !(lambda_area_mm2 > 0))
        throw DomainError("build_problem: lambda normalizers must be > 0");

    AssignmentProblem p;
    p.chiplets = std::move(chiplets);
    p.nets = std::move(nets);
    p.links = std::move(links);
    p.lambda_power_w = lambda_power_w;
    p.lambda_area_mm2 = lambda_area_mm2;
    p.filter = filter;

    for (const LinkRecord& l : p.links) l.validate();

    std::unordered_map<std::string, int> edge_index;
    for (const Chiplet& c : p.chiplets) {
        std::unordered_map<std::string, bool> seen;
        for (const ChipletEdge& e : c.edges) {
            if (!(e.width_mm > 0))
                throw DomainError("edge " + c.id + "." + e.id + ": width must be > 0");
            if (seen[e.id])
                throw DomainError("chiplet " + c.id + ": duplicate edge id '" + e.id + "'");
            seen[e.id] = true;
            edge_index[c.id + "." + e.id] = static_cast<int>(p.edge_names.size());
            p.edge_names.push_back(c.id + "." + e.id);
            p.edge_capacity_mm.push_back(e.width_mm);
        }
    }

    auto resolve = [&](const Endpoint& ep, const std::string& net_id) {
        auto it = edge_index.find(ep.chiplet + "." + ep.edge);
        if (it == edge_index.end())
            throw DomainError("net " + net_id + ": dangling endpoint " + ep.chiplet +
                              "." + ep.edge);
        return it->second;
    };

    for (const Net& net : p.nets) {
        if (!(net.distance_mm >= 0) || !(net.bw_req_gbps > 0))
            throw DomainError("net " + net.id + ": invalid distance or bandwidth");
        p.net_edge_a.push_back(resolve(net.a, net.id));
        p.net_edge_b.push_back(resolve(net.b, net.id));

        std::vector<int> feas;
        std::vector<double> widths(p.links.size(), 0);
        std::vector<double> costs(p.links.size(), 0);
        for (std::size_t l = 0; l < p.links.size(); ++l) {
            const LinkRecord& link = p.links[l];
            widths[l] = net.bw_req_gbps / link.shoreline_gbps_per_mm;
            costs[l] = assignment_cost_term(net, link, lambda_power_w, lambda_area_mm2);
            if (!link_passes_filter(link, p.filter)) continue;
            if (net.distance_mm > link.reach_mm) continue;
            feas.push_back(static_cast<int>(l));
        }
        std::sort(feas.begin(), feas.end(), [&](int x, int y) {
            const auto sx = static_cast<std::size_t>(x);
            const auto sy = static_cast<std::size_t>(y);
            if (costs[sx] != costs[sy]) return costs[sx] < costs[sy];
            return p.links[sx].name < p.links[sy].name;
        });
        if (feas.empty())
            p.warnings.push_back("net " + net.id +
                                 ": no reach-feasible link under the active filter");
        p.feasible.push_back(std::move(feas));
        p.w_min.push_back(std::move(widths));
        p.cost.push_back(std::move(costs));
    }
    return p;
}

namespace {

struct SearchState {
    const AssignmentProblem& p;
    std::vector<double> residual;       // per-edge remaining width
    std::vector<int> choice;            // link index per net (-1 unassigned)
    std::vector<int> best_choice;
    double best_objective = std::numeric_limits<double>::infinity();
    bool has_incumbent = false;
    std::vector<double> suffix_min;     // lower bound on cost of nets n..end
    std::chrono::steady_clock::time_point deadline;
    bool timed_out = false;
    std::uint64_t nodes = 0;

    explicit SearchState(const AssignmentProblem& problem) : p(problem) {}

    bool fits(int net, int link) const {
        const auto n = static_cast<std::size_t>(net);
        const double w = p.w_min[n][static_cast<std::size_t>(link)];
        const int ea = p.net_edge_a[n];
        const int eb = p.net_edge_b[n];
        if (ea == eb) return residual[static_cast<std::size_t>(ea)] >= 2 * w;
        return residual[static_cast<std::size_t>(ea)] >= w &&
               residual[static_cast<std::size_t>(eb)] >= w;
    }

    void apply(int net, int link, double sign) {
        const auto n = static_cast<std::size_t>(net);
        const double w = sign * p.w_min[n][static_cast<std::size_t>(link)];
        residual[static_cast<std::size_t>(p.net_edge_a[n])] -= w;
        residual[static_cast<std::size_t>(p.net_edge_b[n])] -= w;
    }

    void dfs(int net, double partial) {
        if (timed_out) return;
        if ((++nodes & 0xFFF) == 0 &&
            std::chrono::steady_clock::now() > deadline) {
            timed_out = true;
            return;
        }
        const auto n = static_cast<std::size_t>(net);
        if (n == p.nets.size()) {
            // partial is the canonical net-order sum by construction.
            if (!has_incumbent || partial < best_objective) {
                best_objective = partial;
                best_choice = choice;
                has_incumbent = true;
            }
            return;
        }
        // Bound with a slack so float association noise cannot prune a
        // genuinely optimal completion.
        if (has_incumbent) {
            const double bound = partial + suffix_min[n];
            if (bound > best_objective + 1e-9 * (1.0 + std::abs(best_objective)))
                return;
        }
        for (int link : p.feasible[n]) {
            if (!fits(net, link)) continue;
            choice[n] = link;
            apply(net, link, +1);
            dfs(net + 1, partial + p.cost[n][static_cast<std::size_t>(link)]);
            apply(net, link, -1);
            choice[n] = -1;
            if (timed_out) return;
        }
    }
};

AssignmentSolution make_solution(const AssignmentProblem& p,
                                 const std::vector<int>& choice, SolveStatus status) {
    AssignmentSolution s;
    s.status = status;
    s.objective = canonical_objective(p, choice);
    s.per_net.reserve(choice.size());
    double power = 0, area = 0;
    for (std::size_t n = 0; n < choice.size(); ++n) {
        const auto l = static_cast<std::size_t>(choice[n]);
        s.per_net.push_back(NetAssignment{choice[n], p.links[l].name, p.w_min[n][l]});
        power += p.links[l].energy_pj_per_bit * p.nets[n].bw_req_gbps * 1e-3;
        area += 0.5 * p.nets[n].bw_req_gbps / p.links[l].areal_gbps_per_mm2;
    }
    s.total_power_w = power;
    s.total_area_mm2 = area;
    return s;
}

// Names the edge that most tightly blocks the cheapest link of the first
// unplaceable net -- the infeasibility witness.
std::string infeasibility_witness(const AssignmentProblem& p) {
    for (std::size_t n = 0; n < p.nets.size(); ++n) {
        if (p.feasible[n].empty())
            return "net " + p.nets[n].id + " has no reach-feasible link under filter " +
                   to_string(p.filter);
    }
    // Capacity-driven: report the edge with the smallest capacity-to-demand
    // ratio among single-net lower bounds.
    std::vector<double> demand(p.edge_capacity_mm.size(), 0);
    for (std::size_t n = 0; n < p.nets.size(); ++n) {
        double w_best = std::numeric_limits<double>::infinity();
        for (int l : p.feasible[n])
            w_best = std::min(w_best, p.w_min[n][static_cast<std::size_t>(l)]);
        demand[static_cast<std::size_t>(p.net_edge_a[n])] += w_best;
        demand[static_cast<std::size_t>(p.net_edge_b[n])] += w_best;
    }
    std::size_t worst = 0;
    double worst_ratio = 0;
    for (std::size_t e = 0; e < demand.size(); ++e) {
        const double ratio = demand[e] / p.edge_capacity_mm[e];
        if (ratio > worst_ratio) {
            worst_ratio = ratio;
            worst = e;
        }
    }
    return "tightest edge " + p.edge_names[worst] + ": minimum demand " +
           std::to_string(demand[worst]) + " mm exceeds capacity " +
           std::to_string(p.edge_capacity_mm[worst]) + " mm";
}

} // namespace

AssignmentSolution solve_exact(const AssignmentProblem& problem,
                               std::chrono::duration<double> time_budget) {
    AssignmentSolution infeasible;
    infeasible.status = SolveStatus::Infeasible;
    for (std::size_t n = 0; n < problem.nets.size(); ++n) {
        if (problem.feasible[n].empty()) {
            infeasible.witness = infeasibility_witness(problem);
            return infeasible;
        }
    }
    if (problem.nets.empty()) {
        AssignmentSolution s;
        s.status = SolveStatus::Optimal;
        s.objective = 0;
        return s;
    }

    SearchState st(problem);
    st.residual = problem.edge_capacity_mm;
    st.choice.assign(problem.nets.size(), -1);
    st.deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      time_budget);

    st.suffix_min.assign(problem.nets.size() + 1, 0);
    for (std::size_t n = problem.nets.size(); n-- > 0;) {
        double cheapest = std::numeric_limits<double>::infinity();
        for (int l : problem.feasible[n])
            cheapest = std::min(cheapest, problem.cost[n][static_cast<std::size_t>(l)]);
        st.suffix_min[n] = st.suffix_min[n + 1] + cheapest;
    }

    // Seed the incumbent with the greedy solution when it exists; the bound
    // prunes most of the tree on benign instances.
    {
        AssignmentSolution greedy = solve_greedy_simple(problem);
        if (greedy.status != SolveStatus::Infeasible) {
            st.best_choice.resize(problem.nets.size());
            for (std::size_t n = 0; n < greedy.per_net.size(); ++n)
                st.best_choice[n] = greedy.per_net[n].link_index;
            st.best_objective = greedy.objective;
            st.has_incumbent = true;
        }
    }

    st.dfs(0, 0.0);

    if (!st.has_incumbent) {
        infeasible.witness = st.timed_out
                                 ? "time budget expired before any feasible solution"
                                 : infeasibility_witness(problem);
        infeasible.status =
            st.timed_out ? SolveStatus::Feasible : SolveStatus::Infeasible;
        infeasible.nodes_explored = st.nodes;
        return infeasible;
    }
    AssignmentSolution s =
        make_solution(problem, st.best_choice,
                      st.timed_out ? SolveStatus::Feasible : SolveStatus::Optimal);
    s.nodes_explored = st.nodes;
    return s;
}

AssignmentSolution solve_greedy_simple(const AssignmentProblem& problem) {
    std::vector<double> residual = problem.edge_capacity_mm;
    std::vector<int> choice(problem.nets.size(), -1);
    for (std::size_t n = 0; n < problem.nets.size(); ++n) {
        int best = -1;
        for (int l : problem.feasible[n]) {
            const auto sl = static_cast<std::size_t>(l);
            const double w = problem.w_min[n][sl];
            const int ea = problem.net_edge_a[n];
            const int eb = problem.net_edge_b[n];
            const bool fits =
                ea == eb ? residual[static_cast<std::size_t>(ea)] >= 2 * w
                         : residual[static_cast<std::size_t>(ea)] >= w &&
                               residual[static_cast<std::size_t>(eb)] >= w;
            if (!fits) continue;
            if (best < 0) {
                best = l;
                continue;
            }
            const auto sb = static_cast<std::size_t>(best);
            const double shore_l = problem.links[sl].shoreline_gbps_per_mm;
            const double shore_b = problem.links[sb].shoreline_gbps_per_mm;
            if (shore_l > shore_b ||
                (shore_l == shore_b && problem.links[sl].name < problem.links[sb].name))
                best = l;
        }
        if (best < 0) {
            AssignmentSolution s;
            s.status = SolveStatus::Infeasible;
            s.witness = "greedy: net " + problem.nets[n].id +
                        " does not fit any reach-feasible link";
            return s;
        }
        choice[n] = best;
        const double w = problem.w_min[n][static_cast<std::size_t>(best)];
        residual[static_cast<std::size_t>(problem.net_edge_a[n])] -= w;
        residual[static_cast<std::size_t>(problem.net_edge_b[n])] -= w;
    }
    return make_solution(problem, choice, SolveStatus::Feasible);
}

SolutionTotals report_totals(const AssignmentSolution& solution,
                             const AssignmentProblem& problem) {
    if (solution.status == SolveStatus::Infeasible)
        throw DomainError("report_totals: infeasible solution has no totals");
    SolutionTotals t;
    for (std::size_t n = 0; n < solution.per_net.size(); ++n) {
        const auto l = static_cast<std::size_t>(solution.per_net[n].link_index);
        t.power_w += problem.links[l].energy_pj_per_bit * problem.nets[n].bw_req_gbps * 1e-3;
        t.area_mm2 += 0.5 * problem.nets[n].bw_req_gbps /
                      problem.links[l].areal_gbps_per_mm2;
    }
    return t;
}

std::vector<Net> case_study_transform(std::vector<Net> nets, double bw_scale,
                                      double dist_scale) {
    if (!(bw_scale > 0) || !(dist_scale > 0))
        throw DomainError("case_study_transform: scales must be > 0");
    for (Net& n : nets) {
        n.bw_req_gbps *= bw_scale;
        n.distance_mm *= dist_scale;
    }
    return nets;
}

} // namespace chiplink
