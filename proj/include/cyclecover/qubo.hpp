#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cyclecover/graph.hpp"

namespace cyclecover {

/// One binary value per QUBO variable; variable u corresponds to the edge
/// QuboProblem::variable_edge(u).
using Assignment = std::vector<std::uint8_t>;

/// Off-diagonal QUBO coefficient between variables u < v.
struct QuadraticTerm {
    int u;
    int v;
    double coeff;

    friend bool operator==(const QuadraticTerm&, const QuadraticTerm&) = default;
};

/// Penalty constants that make every constraint violation cost more than
/// the reward of the extra edges involved:
///   out_penalty[i] = 1 + epsilon where vertex i has out-degree > 1, else 0
///   in_penalty[j]  = 1 + epsilon where vertex j has in-degree > 1, else 0
///   pair_penalty   = 2 + epsilon
struct PenaltyConstants {
    std::vector<double> out_penalty;
    std::vector<double> in_penalty;
    double pair_penalty = 0.0;
};

PenaltyConstants penalty_constants(const DirectedGraph& g, double epsilon);

/// Quadratic binary cost function over the edges of a directed graph.
///
/// Minimising it selects a maximum set of edges (linear coefficient -1
/// each) subject to penalties that charge any vertex with two selected
/// out-edges, any vertex with two selected in-edges, and any selected
/// mutual pair (i,j),(j,i). Immutable after construction.
class QuboProblem {
  public:
    QuboProblem() = default;

    /// `quadratic` keys must be unique with u < v; variable u maps to
    /// graph.edges()[u]. Throws std::invalid_argument on malformed input.
    QuboProblem(DirectedGraph graph, std::vector<double> linear,
                std::vector<QuadraticTerm> quadratic, std::optional<double> epsilon);

    int num_vars() const { return static_cast<int>(linear_.size()); }
    const std::vector<double>& linear() const { return linear_; }
    /// Sorted by (u, v); u < v; no duplicate keys.
    const std::vector<QuadraticTerm>& quadratic() const { return quadratic_; }

    /// Edge for a variable, internal indices of graph().
    Edge variable_edge(int var) const { return graph_.edges()[static_cast<std::size_t>(var)]; }
    std::pair<std::uint64_t, std::uint64_t> variable_edge_labels(int var) const;

    /// Source graph. For problems read back from a file this contains only
    /// the vertices that appear as edge endpoints.
    const DirectedGraph& graph() const { return graph_; }

    /// Penalty margin used by encode(); empty for problems read from file.
    std::optional<double> epsilon() const { return epsilon_; }

  private:
    DirectedGraph graph_;
    std::vector<double> linear_;
    std::vector<QuadraticTerm> quadratic_;
    std::optional<double> epsilon_;
};

/// Builds the QUBO for `g`: one variable per edge in lexicographic edge
/// order, linear coefficient -1, and the penalty constants above on every
/// out-pair, in-pair and mutual pair. The edges-equal-vertices constraint
/// is left to the solution check rather than encoded.
/// Requires a non-empty graph and epsilon > 0.
QuboProblem encode(const DirectedGraph& g, double epsilon);

/// Cost of an assignment: sum of linear terms plus active quadratic terms.
/// Exact whenever the coefficients are exactly representable (integral
/// epsilon in particular). Throws std::invalid_argument on length mismatch.
double energy(const QuboProblem& q, const Assignment& x);

/// Subgraph selected by an assignment, over the full vertex set of the
/// source graph. Throws std::invalid_argument on length mismatch.
DirectedGraph decode(const QuboProblem& q, const Assignment& x);

// QUBO coordinate text format:
//   # comment lines are skipped
//   p <num_vars> <num_entries>      header
//   c var <idx> <from> <to>         edge behind each variable, original labels
//   <u> <v> <coeff>                 num_entries lines, u <= v; u == v is linear
// Writers emit variables in index order and entries sorted by (u, v), with
// coefficients as shortest exact decimals.

QuboProblem read_qubo(std::istream& in);
QuboProblem read_qubo_file(const std::string& path);
void write_qubo(std::ostream& out, const QuboProblem& q);
void write_qubo_file(const std::string& path, const QuboProblem& q);

}  // namespace cyclecover
