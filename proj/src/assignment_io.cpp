#include <fstream>
#include <set>
#include <sstream>

#include "chiplink/assignment.hpp"
#include "chiplink/table_io.hpp"

namespace chiplink {

std::vector<Net> load_netlist(const std::string& path) {
    std::vector<Net> nets;
    std::set<std::string> seen;
    for (const TableRow& row : read_table_file(path)) {
        Net n;
        n.id = row.str("net");
        n.a = Endpoint{row.str("chiplet_a"), row.str("edge_a")};
        n.b = Endpoint{row.str("chiplet_b"), row.str("edge_b")};
        n.distance_mm = row.num("distance_mm");
        n.bw_req_gbps = row.num("bw_gbps");
        if (!seen.insert(n.id).second)
            throw ParseError(row.context() + ": duplicate net id '" + n.id + "'");
        if (!(n.distance_mm >= 0) || !(n.bw_req_gbps > 0))
            throw ParseError(row.context() + ": invalid distance or bandwidth");
        nets.push_back(std::move(n));
    }
    return nets;
}

std::vector<Chiplet> load_floorplan(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open floorplan '" + path + "'");

    std::vector<Chiplet> chiplets;
    std::unordered_map<std::string, std::size_t> index;
    auto chiplet_at = [&](const std::string& id) -> Chiplet& {
        auto it = index.find(id);
        if (it != index.end()) return chiplets[it->second];
        index[id] = chiplets.size();
        chiplets.push_back(Chiplet{id, {}});
        return chiplets.back();
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        std::string kind;
        if (!(ss >> kind)) continue;
        const std::string ctx = path + ":" + std::to_string(lineno);
        if (kind == "edge") {
            std::string chiplet, edge;
            double width = 0;
            if (!(ss >> chiplet >> edge >> width))
                throw ParseError(ctx + ": expected 'edge <chiplet> <edge> <width_mm>'");
            chiplet_at(chiplet).edges.push_back(ChipletEdge{edge, width});
        } else if (kind == "die") {
            std::string chiplet;
            double w = 0, h = 0;
            if (!(ss >> chiplet >> w >> h))
                throw ParseError(ctx + ": expected 'die <chiplet> <width_mm> <height_mm>'");
            if (index.count(chiplet))
                throw ParseError(ctx + ": chiplet '" + chiplet + "' already defined");
            Chiplet c = chiplet_from_die(chiplet, w, h);
            index[chiplet] = chiplets.size();
            chiplets.push_back(std::move(c));
        } else {
            throw ParseError(ctx + ": unknown record '" + kind + "'");
        }
    }
    return chiplets;
}

} // namespace chiplink
