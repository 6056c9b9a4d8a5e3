#include "cyclecover/checker.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclecover {

const char* to_string(RejectReason reason) {
    switch (reason) {
        case RejectReason::none: return "none";
        case RejectReason::no_unique_out_edge: return "vertex-without-unique-out-edge";
        case RejectReason::premature_revisit_or_exhaustion:
            return "premature-revisit-or-edge-exhaustion";
        case RejectReason::two_cycle: return "two-cycle";
        case RejectReason::leftover_material: return "leftover-material";
    }
    return "unknown";
}

CoverVerdict is_cycle_cover(const DirectedGraph& g, const DirectedGraph& sub) {
    if (sub.labels() != g.labels()) {
        throw std::invalid_argument("is_cycle_cover: subgraph must have the same vertex set");
    }
    if (!std::includes(g.edges().begin(), g.edges().end(),
                       sub.edges().begin(), sub.edges().end())) {
        throw std::invalid_argument("is_cycle_cover: subgraph edges must be a subset");
    }

    const int num_vertices = g.num_vertices();
    const auto& edges = sub.edges();

    // Out-adjacency of `sub` as edge ids, plus liveness flags for the
    // shrinking edge set.
    std::vector<std::vector<int>> out_edges(static_cast<std::size_t>(num_vertices));
    for (std::size_t e = 0; e < edges.size(); ++e) {
        out_edges[static_cast<std::size_t>(edges[e].first)].push_back(static_cast<int>(e));
    }
    std::vector<bool> edge_alive(edges.size(), true);
    std::vector<int> out_remaining(static_cast<std::size_t>(num_vertices), 0);
    for (const auto& [from, to] : edges) ++out_remaining[static_cast<std::size_t>(from)];

    std::vector<bool> vertex_removed(static_cast<std::size_t>(num_vertices), false);
    std::vector<int> in_open_cycle(static_cast<std::size_t>(num_vertices), -1);

    std::size_t remaining_edges = edges.size();
    int remaining_vertices = num_vertices;
    int start_scan = 0;
    int round = 0;

    CoverVerdict verdict;
    const auto reject = [&verdict](RejectReason reason) {
        verdict.accepted = false;
        verdict.reason = reason;
        return verdict;
    };

    while (remaining_vertices > 0 || remaining_edges > 0) {
        if (remaining_vertices == 0) return reject(RejectReason::leftover_material);

        while (vertex_removed[static_cast<std::size_t>(start_scan)]) ++start_scan;
        const int start = start_scan;

        std::vector<int> cycle_vertices;
        std::vector<int> cycle_edges;
        int current = start;
        int next = -1;

        do {
            ++verdict.steps;
            if (out_remaining[static_cast<std::size_t>(current)] != 1) {
                return reject(RejectReason::no_unique_out_edge);
            }
            int edge_id = -1;
            for (const int e : out_edges[static_cast<std::size_t>(current)]) {
                ++verdict.steps;
                if (edge_alive[static_cast<std::size_t>(e)]) {
                    edge_id = e;
                    break;
                }
            }
            cycle_vertices.push_back(current);
            in_open_cycle[static_cast<std::size_t>(current)] = round;
            cycle_edges.push_back(edge_id);

            next = edges[static_cast<std::size_t>(edge_id)].second;
            if (next != start && (in_open_cycle[static_cast<std::size_t>(next)] == round ||
                                  cycle_edges.size() == remaining_edges)) {
                return reject(RejectReason::premature_revisit_or_exhaustion);
            }
            current = next;
        } while (next != start);

        if (cycle_vertices.size() == 2) return reject(RejectReason::two_cycle);

        for (const int v : cycle_vertices) {
            vertex_removed[static_cast<std::size_t>(v)] = true;
            --remaining_vertices;
        }
        for (const int e : cycle_edges) {
            edge_alive[static_cast<std::size_t>(e)] = false;
            --out_remaining[static_cast<std::size_t>(edges[static_cast<std::size_t>(e)].first)];
            --remaining_edges;
        }
        ++round;
    }

    verdict.accepted = true;
    verdict.reason = RejectReason::none;
    return verdict;
}

}  // namespace cyclecover
