#include "cyclecover/qubo.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "cyclecover/errors.hpp"
#include "cyclecover/format.hpp"

namespace cyclecover {

PenaltyConstants penalty_constants(const DirectedGraph& g, double epsilon) {
    if (!(epsilon > 0)) throw std::invalid_argument("penalty_constants: epsilon must be > 0");

    PenaltyConstants constants;
    constants.pair_penalty = 2.0 + epsilon;

    const std::vector<int> out_deg = g.out_degrees();
    const std::vector<int> in_deg = g.in_degrees();
    constants.out_penalty.resize(out_deg.size());
    constants.in_penalty.resize(in_deg.size());
    for (std::size_t v = 0; v < out_deg.size(); ++v) {
        constants.out_penalty[v] = out_deg[v] > 1 ? 1.0 + epsilon : 0.0;
        constants.in_penalty[v] = in_deg[v] > 1 ? 1.0 + epsilon : 0.0;
    }
    return constants;
}

QuboProblem::QuboProblem(DirectedGraph graph, std::vector<double> linear,
                         std::vector<QuadraticTerm> quadratic, std::optional<double> epsilon)
    : graph_(std::move(graph)),
      linear_(std::move(linear)),
      quadratic_(std::move(quadratic)),
      epsilon_(epsilon) {
    if (linear_.size() != graph_.edges().size()) {
        throw std::invalid_argument("qubo: one linear coefficient per edge required");
    }
    std::sort(quadratic_.begin(), quadratic_.end(),
              [](const QuadraticTerm& a, const QuadraticTerm& b) {
                  return std::pair{a.u, a.v} < std::pair{b.u, b.v};
              });
    for (std::size_t t = 0; t < quadratic_.size(); ++t) {
        const auto& term = quadratic_[t];
        if (term.u < 0 || term.v >= num_vars() || term.u >= term.v) {
            throw std::invalid_argument("qubo: quadratic keys must satisfy 0 <= u < v < num_vars");
        }
        if (t > 0 && quadratic_[t - 1].u == term.u && quadratic_[t - 1].v == term.v) {
            throw std::invalid_argument("qubo: duplicate quadratic key");
        }
    }
}

std::pair<std::uint64_t, std::uint64_t> QuboProblem::variable_edge_labels(int var) const {
    const Edge e = variable_edge(var);
    return {graph_.label(e.first), graph_.label(e.second)};
}

QuboProblem encode(const DirectedGraph& g, double epsilon) {
    if (g.num_vertices() == 0 || g.num_edges() == 0) {
        throw std::invalid_argument("encode: graph must have vertices and edges");
    }
    const PenaltyConstants constants = penalty_constants(g, epsilon);

    // Variable u is edge u in lexicographic order, so encode/decode
    // round-trips are deterministic.
    const auto& edges = g.edges();
    const int num_vars = static_cast<int>(edges.size());
    std::vector<double> linear(edges.size(), -1.0);

    std::vector<std::vector<int>> out_vars(static_cast<std::size_t>(g.num_vertices()));
    std::vector<std::vector<int>> in_vars(static_cast<std::size_t>(g.num_vertices()));
    for (int u = 0; u < num_vars; ++u) {
        out_vars[static_cast<std::size_t>(edges[static_cast<std::size_t>(u)].first)].push_back(u);
        in_vars[static_cast<std::size_t>(edges[static_cast<std::size_t>(u)].second)].push_back(u);
    }

    std::vector<QuadraticTerm> quadratic;
    for (int v = 0; v < g.num_vertices(); ++v) {
        const auto& outs = out_vars[static_cast<std::size_t>(v)];
        for (std::size_t a = 0; a < outs.size(); ++a) {
            for (std::size_t b = a + 1; b < outs.size(); ++b) {
                quadratic.push_back({outs[a], outs[b], constants.out_penalty[static_cast<std::size_t>(v)]});
            }
        }
        const auto& ins = in_vars[static_cast<std::size_t>(v)];
        for (std::size_t a = 0; a < ins.size(); ++a) {
            for (std::size_t b = a + 1; b < ins.size(); ++b) {
                quadratic.push_back({ins[a], ins[b], constants.in_penalty[static_cast<std::size_t>(v)]});
            }
        }
    }
    for (int u = 0; u < num_vars; ++u) {
        const auto [i, j] = edges[static_cast<std::size_t>(u)];
        if (i < j && g.has_edge(j, i)) {
            const auto partner = std::lower_bound(edges.begin(), edges.end(), Edge{j, i});
            const int v = static_cast<int>(partner - edges.begin());
            quadratic.push_back({std::min(u, v), std::max(u, v), constants.pair_penalty});
        }
    }

    return QuboProblem(g, std::move(linear), std::move(quadratic), epsilon);
}

double energy(const QuboProblem& q, const Assignment& x) {
    if (static_cast<int>(x.size()) != q.num_vars()) {
        throw std::invalid_argument("energy: assignment length " + std::to_string(x.size()) +
                                    " does not match " + std::to_string(q.num_vars()) +
                                    " variables");
    }
    double total = 0.0;
    const auto& linear = q.linear();
    for (std::size_t u = 0; u < linear.size(); ++u) {
        if (x[u]) total += linear[u];
    }
    for (const auto& term : q.quadratic()) {
        if (x[static_cast<std::size_t>(term.u)] && x[static_cast<std::size_t>(term.v)]) {
            total += term.coeff;
        }
    }
    return total;
}

DirectedGraph decode(const QuboProblem& q, const Assignment& x) {
    if (static_cast<int>(x.size()) != q.num_vars()) {
        throw std::invalid_argument("decode: assignment length does not match variable count");
    }
    std::vector<Edge> selected;
    for (int u = 0; u < q.num_vars(); ++u) {
        if (x[static_cast<std::size_t>(u)]) selected.push_back(q.variable_edge(u));
    }
    return DirectedGraph::from_internal(q.graph().labels(), std::move(selected));
}

QuboProblem read_qubo(std::istream& in) {
    std::string line;
    int line_number = 0;
    long long num_vars = -1;
    long long num_entries = -1;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> var_edges;
    std::vector<std::pair<std::pair<int, int>, double>> entries;

    while (std::getline(in, line)) {
        ++line_number;
        const auto pos = line.find_first_not_of(" \t\r");
        if (pos == std::string::npos || line[pos] == '#') continue;

        std::istringstream fields(line);
        const std::string where = "qubo line " + std::to_string(line_number);

        if (num_vars < 0) {
            std::string tag;
            if (!(fields >> tag >> num_vars >> num_entries) || tag != "p" || num_vars < 0 ||
                num_entries < 0) {
                throw ParseError(where + ": expected header 'p <num_vars> <num_entries>'");
            }
            continue;
        }

        if (line[pos] == 'c') {
            std::string tag, kind;
            long long idx;
            std::uint64_t from, to;
            if (!(fields >> tag >> kind >> idx >> from >> to) || kind != "var" ||
                idx != static_cast<long long>(var_edges.size())) {
                throw ParseError(where + ": expected 'c var <idx> <from> <to>' in index order");
            }
            var_edges.emplace_back(from, to);
            continue;
        }

        int u, v;
        double coeff;
        if (!(fields >> u >> v >> coeff) || u < 0 || v < u || v >= num_vars) {
            throw ParseError(where + ": expected entry '<u> <v> <coeff>' with 0 <= u <= v");
        }
        entries.push_back({{u, v}, coeff});
    }

    if (num_vars < 0) throw ParseError("qubo: missing 'p' header");
    if (static_cast<long long>(var_edges.size()) != num_vars) {
        throw ParseError("qubo: expected " + std::to_string(num_vars) + " 'c var' lines, found " +
                         std::to_string(var_edges.size()));
    }
    if (static_cast<long long>(entries.size()) != num_entries) {
        throw ParseError("qubo: header declares " + std::to_string(num_entries) +
                         " entries but " + std::to_string(entries.size()) + " were found");
    }

    // Vertex set recoverable from a QUBO file = edge endpoints.
    std::vector<std::uint64_t> labels;
    for (const auto& [from, to] : var_edges) {
        labels.push_back(from);
        labels.push_back(to);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    DirectedGraph graph;
    try {
        graph = DirectedGraph(labels, var_edges);
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("qubo: ") + err.what());
    }

    // Variables must follow lexicographic edge order; verify the map is a
    // bijection consistent with that order.
    for (std::size_t u = 0; u < var_edges.size(); ++u) {
        const Edge internal{graph.index_of(var_edges[u].first), graph.index_of(var_edges[u].second)};
        if (internal != graph.edges()[u]) {
            throw ParseError("qubo: 'c var' lines are not in lexicographic edge order");
        }
    }

    std::vector<double> linear(static_cast<std::size_t>(num_vars), 0.0);
    std::vector<QuadraticTerm> quadratic;
    for (const auto& [key, coeff] : entries) {
        if (key.first == key.second) {
            linear[static_cast<std::size_t>(key.first)] = coeff;
        } else {
            quadratic.push_back({key.first, key.second, coeff});
        }
    }
    try {
        return QuboProblem(std::move(graph), std::move(linear), std::move(quadratic), std::nullopt);
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("qubo: ") + err.what());
    }
}

QuboProblem read_qubo_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open qubo file: " + path);
    return read_qubo(in);
}

void write_qubo(std::ostream& out, const QuboProblem& q) {
    const auto& quadratic = q.quadratic();
    out << "p " << q.num_vars() << ' ' << q.num_vars() + quadratic.size() << '\n';
    for (int u = 0; u < q.num_vars(); ++u) {
        const auto [from, to] = q.variable_edge_labels(u);
        out << "c var " << u << ' ' << from << ' ' << to << '\n';
    }
    // Entries sorted by (u, v); the diagonal entry (u, u) precedes the
    // off-diagonal terms of row u.
    std::size_t next_quadratic = 0;
    for (int u = 0; u < q.num_vars(); ++u) {
        out << u << ' ' << u << ' ' << format_double(q.linear()[static_cast<std::size_t>(u)])
            << '\n';
        while (next_quadratic < quadratic.size() && quadratic[next_quadratic].u == u) {
            const auto& term = quadratic[next_quadratic++];
            out << term.u << ' ' << term.v << ' ' << format_double(term.coeff) << '\n';
        }
    }
}

void write_qubo_file(const std::string& path, const QuboProblem& q) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    write_qubo(out, q);
}

}  // namespace cyclecover
