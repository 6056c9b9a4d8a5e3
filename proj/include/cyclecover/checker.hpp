#pragma once

#include <cstdint>

#include "cyclecover/graph.hpp"

namespace cyclecover {

enum class RejectReason {
    none,
    /// A walked vertex had zero or more than one remaining out-edge.
    no_unique_out_edge,
    /// The walk re-entered its own open cycle, or consumed every remaining
    /// edge without closing.
    premature_revisit_or_exhaustion,
    /// A completed cycle had exactly two vertices.
    two_cycle,
    /// Edges remained after every vertex had been consumed.
    leftover_material,
};

const char* to_string(RejectReason reason);

struct CoverVerdict {
    bool accepted = false;
    RejectReason reason = RejectReason::none;
    /// Basic walk operations performed; grows at most linearly in N_E * N_V.
    std::uint64_t steps = 0;
};

/// Decides whether `sub` partitions the vertices of `g` into directed
/// cycles of length three or more.
///
/// The walk repeatedly starts from the smallest remaining vertex, follows
/// unique out-edges while accumulating the open cycle, and rejects on a
/// branch or dead end, on re-entering the open cycle, on running out of
/// edges before closing, or on closing a two-cycle. Completed cycles are
/// removed; acceptance requires vertices and edges to run out together.
///
/// Preconditions (violations throw std::invalid_argument, distinct from a
/// rejection verdict): `sub` has the same vertex set as `g` and its edges
/// are a subset of `g`'s.
CoverVerdict is_cycle_cover(const DirectedGraph& g, const DirectedGraph& sub);

}  // namespace cyclecover
