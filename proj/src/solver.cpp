#include "cyclecover/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "cyclecover/errors.hpp"
#include "cyclecover/format.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

// Per-variable view of the quadratic terms, for O(degree) flip deltas.
std::vector<std::vector<std::pair<int, double>>> build_adjacency(const QuboProblem& q) {
    std::vector<std::vector<std::pair<int, double>>> adjacency(
            static_cast<std::size_t>(q.num_vars()));
    for (const auto& term : q.quadratic()) {
        adjacency[static_cast<std::size_t>(term.u)].emplace_back(term.v, term.coeff);
        adjacency[static_cast<std::size_t>(term.v)].emplace_back(term.u, term.coeff);
    }
    return adjacency;
}

// Energy change from flipping variable `var` in `x`.
double flip_delta(const QuboProblem& q,
                  const std::vector<std::vector<std::pair<int, double>>>& adjacency,
                  const Assignment& x, int var) {
    double field = q.linear()[static_cast<std::size_t>(var)];
    for (const auto& [other, coeff] : adjacency[static_cast<std::size_t>(var)]) {
        if (x[static_cast<std::size_t>(other)]) field += coeff;
    }
    return x[static_cast<std::size_t>(var)] ? -field : field;
}

}  // namespace

ExactResult solve_exact(const QuboProblem& q) {
    const int num_vars = q.num_vars();
    if (num_vars > kExactSolverMaxVars) {
        throw CapacityError("solve_exact: " + std::to_string(num_vars) +
                            " variables exceed the exhaustive-enumeration cap of " +
                            std::to_string(kExactSolverMaxVars));
    }

    const auto adjacency = build_adjacency(q);
    Assignment x(static_cast<std::size_t>(num_vars), 0);

    ExactResult result;
    result.min_energy = 0.0;  // all-zeros
    result.minimizers.push_back(x);

    // Gray-code walk: step s flips bit ctz(s), so the running energy only
    // needs one flip delta per assignment. The running value is a trigger;
    // candidates are re-evaluated with a fresh full sum before they count,
    // and the accumulator is re-synced periodically to keep drift below
    // the trigger margin for non-integral coefficients.
    double running = 0.0;
    const std::uint64_t total = 1ULL << num_vars;
    for (std::uint64_t step = 1; step < total; ++step) {
        const int bit = std::countr_zero(step);
        running += flip_delta(q, adjacency, x, bit);
        x[static_cast<std::size_t>(bit)] ^= 1;

        if ((step & 0xFFFFF) == 0) running = energy(q, x);

        const double margin = 1e-6 * (1.0 + std::abs(result.min_energy));
        if (running <= result.min_energy + margin) {
            const double exact = energy(q, x);
            if (exact < result.min_energy) {
                result.min_energy = exact;
                result.minimizers.clear();
                result.minimizers.push_back(x);
            } else if (exact == result.min_energy) {
                result.minimizers.push_back(x);
            }
        }
    }

    std::sort(result.minimizers.begin(), result.minimizers.end());
    return result;
}

SampleSet sample_sa(const QuboProblem& q, const AnnealParams& params) {
    if (params.shots < 1) throw std::invalid_argument("sample_sa: shots must be >= 1");
    if (params.sweeps < 1) throw std::invalid_argument("sample_sa: sweeps must be >= 1");
    if (!(params.beta_min > 0) || !(params.beta_min < params.beta_max)) {
        throw std::invalid_argument("sample_sa: need 0 < beta_min < beta_max");
    }

    const int num_vars = q.num_vars();
    const auto adjacency = build_adjacency(q);

    // Geometric schedule over sweep index; a single sweep runs cold.
    std::vector<double> betas(params.sweeps);
    const double ratio = params.beta_max / params.beta_min;
    for (std::uint64_t sweep = 0; sweep < params.sweeps; ++sweep) {
        betas[sweep] = params.sweeps == 1
                               ? params.beta_max
                               : params.beta_min *
                                         std::pow(ratio, static_cast<double>(sweep) /
                                                                 static_cast<double>(params.sweeps - 1));
    }

    std::map<Assignment, std::uint64_t> counts;
    std::vector<int> order(static_cast<std::size_t>(num_vars));

    for (std::uint64_t shot = 0; shot < params.shots; ++shot) {
        Xoshiro256 rng(derive_seed(params.seed, shot));

        Assignment x(static_cast<std::size_t>(num_vars));
        for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1);

        for (std::uint64_t sweep = 0; sweep < params.sweeps; ++sweep) {
            const double beta = betas[sweep];
            std::iota(order.begin(), order.end(), 0);
            shuffle_in_place(order, rng);
            for (const int var : order) {
                const double delta = flip_delta(q, adjacency, x, var);
                if (delta <= 0 || uniform_unit(rng) < std::exp(-beta * delta)) {
                    x[static_cast<std::size_t>(var)] ^= 1;
                }
            }
        }
        ++counts[x];
    }

    SampleSet samples;
    samples.total_shots = params.shots;
    samples.records.reserve(counts.size());
    for (const auto& [bits, count] : counts) {
        samples.records.push_back({bits, energy(q, bits), count});
    }
    // std::map already orders ties by bits.
    std::stable_sort(samples.records.begin(), samples.records.end(),
                     [](const SampleRecord& a, const SampleRecord& b) {
                         return a.energy < b.energy;
                     });
    return samples;
}

namespace {

struct CoverSearch {
    const std::vector<std::vector<int>>& out_neighbors;
    const DirectedGraph& graph;
    std::uint64_t limit;
    std::vector<int> successor;
    std::vector<bool> target_taken;
    std::vector<DirectedGraph> found;

    bool run(int vertex) {
        const int num_vertices = graph.num_vertices();
        if (vertex == num_vertices) {
            std::vector<Edge> edges;
            edges.reserve(static_cast<std::size_t>(num_vertices));
            for (int v = 0; v < num_vertices; ++v) {
                edges.emplace_back(v, successor[static_cast<std::size_t>(v)]);
            }
            found.push_back(DirectedGraph::from_internal(graph.labels(), std::move(edges)));
            return found.size() >= limit;
        }
        for (const int target : out_neighbors[static_cast<std::size_t>(vertex)]) {
            if (target_taken[static_cast<std::size_t>(target)]) continue;   // in-degree conflict
            if (successor[static_cast<std::size_t>(target)] == vertex) continue;  // two-cycle
            successor[static_cast<std::size_t>(vertex)] = target;
            target_taken[static_cast<std::size_t>(target)] = true;
            if (run(vertex + 1)) return true;
            successor[static_cast<std::size_t>(vertex)] = -1;
            target_taken[static_cast<std::size_t>(target)] = false;
        }
        return false;
    }
};

}  // namespace

std::vector<DirectedGraph> enumerate_covers(const DirectedGraph& g, std::uint64_t limit) {
    if (limit < 1) throw std::invalid_argument("enumerate_covers: limit must be >= 1");

    std::vector<std::vector<int>> out_neighbors(static_cast<std::size_t>(g.num_vertices()));
    for (const auto& [from, to] : g.edges()) {
        out_neighbors[static_cast<std::size_t>(from)].push_back(to);  // already ascending
    }

    CoverSearch search{out_neighbors,
                       g,
                       limit,
                       std::vector<int>(static_cast<std::size_t>(g.num_vertices()), -1),
                       std::vector<bool>(static_cast<std::size_t>(g.num_vertices()), false),
                       {}};
    search.run(0);
    return std::move(search.found);
}

void write_sample_csv(std::ostream& out, const SampleSet& samples) {
    out << "energy,count,bits\n";
    for (const auto& record : samples.records) {
        out << format_double(record.energy) << ',' << record.count << ',';
        for (const auto bit : record.bits) out << (bit ? '1' : '0');
        out << '\n';
    }
}

void write_sample_csv_file(const std::string& path, const SampleSet& samples) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    write_sample_csv(out, samples);
}

}  // namespace cyclecover
