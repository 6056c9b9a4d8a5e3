#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cyclecover {

/// Directed edge between internal vertex indices (see DirectedGraph).
using Edge = std::pair<int, int>;

/// Simple directed graph without self-loops.
///
/// Vertices carry arbitrary distinct non-negative integer labels. Internally
/// they are re-indexed 0..N_V-1 by ascending label; all file output restores
/// the original labels. Instances are immutable after construction and safe
/// to share across threads.
class DirectedGraph {
  public:
    DirectedGraph() = default;

    /// Builds a graph from labelled vertices and label-pair edges.
    /// Throws std::invalid_argument on duplicate labels, self-loops,
    /// duplicate edges, or edges with undeclared endpoints.
    DirectedGraph(std::vector<std::uint64_t> labels,
                  const std::vector<std::pair<std::uint64_t, std::uint64_t>>& label_edges);

    /// Builds directly from internal indices. `labels` must be strictly
    /// ascending; edges are validated and sorted.
    static DirectedGraph from_internal(std::vector<std::uint64_t> labels,
                                       std::vector<Edge> edges);

    int num_vertices() const { return static_cast<int>(labels_.size()); }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    std::uint64_t label(int vertex) const { return labels_[static_cast<std::size_t>(vertex)]; }
    const std::vector<std::uint64_t>& labels() const { return labels_; }

    /// Internal index for a label, or -1 if the label is absent.
    int index_of(std::uint64_t label) const;

    /// Edges in internal indices, lexicographically sorted, duplicate-free.
    const std::vector<Edge>& edges() const { return edges_; }

    bool has_edge(int from, int to) const;

    std::vector<int> out_degrees() const;
    std::vector<int> in_degrees() const;

    bool operator==(const DirectedGraph&) const = default;

  private:
    std::vector<std::uint64_t> labels_;  // ascending
    std::vector<Edge> edges_;            // lex sorted
};

/// Parameters for benchmark-instance generation: n disjoint cycles of
/// length L, plus noise given either as a fraction of the candidate pool
/// or as an absolute edge count.
struct GeneratorParams {
    int n = 1;
    int L = 3;
    std::optional<double> p_noise;
    std::optional<std::int64_t> n_noise;
    std::uint64_t seed = 0;
};

/// n disjoint directed cycles of length L on vertices 0..n*L-1; cycle k
/// uses vertices k*L..k*L+L-1 in ascending order.
/// Throws std::invalid_argument when n < 1 or L < 3.
DirectedGraph generate_cycles(int n, int L);

/// Maximum-noise fraction converted to an edge count:
/// round-half-away-from-zero of p_noise * N_V * (N_V - 2).
/// Requires p_noise >= 0 and num_vertices >= 3.
std::int64_t noise_count(double p_noise, int num_vertices);

/// Number of ordered non-loop vertex pairs not already present as edges.
std::int64_t noise_capacity(const DirectedGraph& g);

/// Adds `n_noise` distinct edges drawn uniformly without replacement from
/// all ordered non-loop pairs not already in `g0`. Deterministic for a
/// fixed seed (see rng.hpp); `g0` is left untouched. Throws CapacityError
/// when the candidate set is too small.
DirectedGraph add_noise(const DirectedGraph& g0, std::int64_t n_noise, std::uint64_t seed);

/// Resolves GeneratorParams noise to an edge count for a graph with
/// `num_vertices` vertices. Exactly one of p_noise/n_noise must be set.
std::int64_t resolve_noise(const GeneratorParams& params, int num_vertices);

// Edge-list text format:
//   # comment lines are skipped
//   N_V N_E                 header
//   v <label>               one line per isolated vertex
//   <from> <to>             N_E edge lines, original labels
// Writers emit isolated vertices ascending and edges lexicographically
// sorted, with no comments, so write(read(f)) == f byte for byte.

DirectedGraph read_edge_list(std::istream& in);
DirectedGraph read_edge_list_file(const std::string& path);
void write_edge_list(std::ostream& out, const DirectedGraph& g);
void write_edge_list_file(const std::string& path, const DirectedGraph& g);

}  // namespace cyclecover
