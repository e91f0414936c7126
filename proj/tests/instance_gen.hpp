#pragma once

#include <random>
#include <string>
#include <vector>

#include "chiplink/assignment.hpp"

namespace chiplink::testing {

/// Deterministic random assignment instances small enough for brute-force
/// enumeration. Distances occasionally exceed every reach and edges are
/// sometimes tight, so the set covers feasible, capacity-bound and
/// infeasible cases.
inline AssignmentProblem random_instance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    auto uniform = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto pick = [&](int lo, int hi) {
        return std::uniform_int_distribution<int>(lo, hi)(rng);
    };

    const int n_chiplets = pick(2, 4);
    std::vector<Chiplet> chiplets;
    for (int c = 0; c < n_chiplets; ++c) {
        Chiplet chip{"c" + std::to_string(c), {}};
        const int n_edges = pick(2, 4);
        for (int e = 0; e < n_edges; ++e)
            chip.edges.push_back(ChipletEdge{"e" + std::to_string(e), uniform(2.0, 20.0)});
        chiplets.push_back(std::move(chip));
    }

    const int n_links = pick(2, 6);
    std::vector<LinkRecord> links;
    for (int l = 0; l < n_links; ++l) {
        LinkRecord r;
        r.name = "L" + std::to_string(l);
        r.reach_mm = std::exp(uniform(std::log(0.5), std::log(120.0)));
        r.process_nm = 7;
        r.raw_ber = 1e-12;
        r.link_kind = pick(0, 1) ? LinkKind::Optical : LinkKind::Electrical;
        r.shoreline_gbps_per_mm = uniform(100.0, 5000.0);
        r.areal_gbps_per_mm2 = uniform(100.0, 5000.0);
        r.energy_pj_per_bit = uniform(0.05, 3.0);
        r.metrics_kind = MetricsKind::CorrectedDelivered;
        links.push_back(std::move(r));
    }

    const int n_nets = pick(1, 8);
    std::vector<Net> nets;
    for (int n = 0; n < n_nets; ++n) {
        Net net;
        net.id = "n" + std::to_string(n);
        const Chiplet& ca = chiplets[static_cast<std::size_t>(pick(0, n_chiplets - 1))];
        const Chiplet& cb = chiplets[static_cast<std::size_t>(pick(0, n_chiplets - 1))];
        net.a = Endpoint{ca.id,
                         ca.edges[static_cast<std::size_t>(
                                      pick(0, static_cast<int>(ca.edges.size()) - 1))]
                             .id};
        net.b = Endpoint{cb.id,
                         cb.edges[static_cast<std::size_t>(
                                      pick(0, static_cast<int>(cb.edges.size()) - 1))]
                             .id};
        net.distance_mm = std::exp(uniform(std::log(0.1), std::log(150.0)));
        net.bw_req_gbps = uniform(50.0, 3000.0);
        nets.push_back(std::move(net));
    }

    const LinkFilter filter =
        std::array{LinkFilter::All, LinkFilter::ElectricalOnly, LinkFilter::OpticalOnly}
            [static_cast<std::size_t>(pick(0, 2))];
    return build_problem(std::move(chiplets), std::move(nets), std::move(links),
                         uniform(1.0, 100.0), uniform(10.0, 2000.0), filter);
}

} // namespace chiplink::testing
