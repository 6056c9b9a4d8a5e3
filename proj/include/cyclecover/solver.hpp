#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cyclecover/graph.hpp"
#include "cyclecover/qubo.hpp"

namespace cyclecover {

struct SampleRecord {
    Assignment bits;
    double energy = 0.0;
    std::uint64_t count = 0;
};

/// Aggregated solver output: distinct assignments with their energies and
/// occurrence counts. Records are sorted by energy, ties by bits, and the
/// counts sum to total_shots.
struct SampleSet {
    std::vector<SampleRecord> records;
    std::uint64_t total_shots = 0;
};

struct AnnealParams {
    std::uint64_t shots = 100;
    std::uint64_t sweeps = 1000;
    double beta_min = 0.1;
    double beta_max = 10.0;
    std::uint64_t seed = 0;
};

struct ExactResult {
    double min_energy = 0.0;
    /// Every assignment attaining min_energy, lexicographically sorted.
    std::vector<Assignment> minimizers;
};

/// Exhaustive enumeration refuses problems above this many variables.
inline constexpr int kExactSolverMaxVars = 30;

/// Scans all 2^num_vars assignments (Gray-code order with incremental
/// energy updates) and returns the exact minimum with every minimizer.
/// Throws CapacityError above kExactSolverMaxVars.
ExactResult solve_exact(const QuboProblem& q);

/// Single-bit-flip Metropolis annealing. Each shot starts from a uniformly
/// random assignment and performs `sweeps` passes over the variables in
/// random order, with inverse temperature rising geometrically from
/// beta_min to beta_max. Shots use seeds derived from params.seed per shot
/// index, so results are independent of execution order. Deterministic for
/// fixed inputs.
SampleSet sample_sa(const QuboProblem& q, const AnnealParams& params);

/// Depth-first enumeration of subgraphs in which every vertex has in- and
/// out-degree exactly one and all cycles have length >= 3. Chooses an
/// out-edge per vertex in ascending vertex order, pruning in-degree
/// conflicts and two-cycles; stops after `limit` covers.
std::vector<DirectedGraph> enumerate_covers(const DirectedGraph& g, std::uint64_t limit);

// Sample CSV format: header `energy,count,bits`; bits as a 0/1 string in
// variable-index order; rows ascending by energy, then by bits.
void write_sample_csv(std::ostream& out, const SampleSet& samples);
void write_sample_csv_file(const std::string& path, const SampleSet& samples);

}  // namespace cyclecover
