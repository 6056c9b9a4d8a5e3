#include "cyclecover/graph.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "cyclecover/errors.hpp"
#include "cyclecover/rng.hpp"

namespace cyclecover {

namespace {

void validate_edges(int num_vertices, std::vector<Edge>& edges) {
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const auto [from, to] = edges[i];
        if (from == to) {
            throw std::invalid_argument("graph: self-loop on vertex index " +
                                        std::to_string(from));
        }
        if (from < 0 || to < 0 || from >= num_vertices || to >= num_vertices) {
            throw std::invalid_argument("graph: edge endpoint out of range");
        }
        if (i > 0 && edges[i] == edges[i - 1]) {
            throw std::invalid_argument("graph: duplicate edge (" + std::to_string(from) +
                                        ", " + std::to_string(to) + ")");
        }
    }
}

}  // namespace

DirectedGraph::DirectedGraph(
        std::vector<std::uint64_t> labels,
        const std::vector<std::pair<std::uint64_t, std::uint64_t>>& label_edges) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        throw std::invalid_argument("graph: duplicate vertex label");
    }
    labels_ = std::move(labels);

    std::vector<Edge> edges;
    edges.reserve(label_edges.size());
    for (const auto& [from_label, to_label] : label_edges) {
        const int from = index_of(from_label);
        const int to = index_of(to_label);
        if (from < 0 || to < 0) {
            throw std::invalid_argument("graph: edge endpoint " +
                                        std::to_string(from < 0 ? from_label : to_label) +
                                        " is not a declared vertex");
        }
        edges.emplace_back(from, to);
    }
    validate_edges(num_vertices(), edges);
    edges_ = std::move(edges);
}

DirectedGraph DirectedGraph::from_internal(std::vector<std::uint64_t> labels,
                                           std::vector<Edge> edges) {
    if (!std::is_sorted(labels.begin(), labels.end()) ||
        std::adjacent_find(labels.begin(), labels.end()) != labels.end()) {
        throw std::invalid_argument("graph: labels must be strictly ascending");
    }
    DirectedGraph g;
    g.labels_ = std::move(labels);
    validate_edges(g.num_vertices(), edges);
    g.edges_ = std::move(edges);
    return g;
}

int DirectedGraph::index_of(std::uint64_t label) const {
    const auto it = std::lower_bound(labels_.begin(), labels_.end(), label);
    if (it == labels_.end() || *it != label) return -1;
    return static_cast<int>(it - labels_.begin());
}

bool DirectedGraph::has_edge(int from, int to) const {
    return std::binary_search(edges_.begin(), edges_.end(), Edge{from, to});
}

std::vector<int> DirectedGraph::out_degrees() const {
    std::vector<int> degrees(labels_.size(), 0);
    for (const auto& [from, to] : edges_) ++degrees[static_cast<std::size_t>(from)];
    return degrees;
}

std::vector<int> DirectedGraph::in_degrees() const {
    std::vector<int> degrees(labels_.size(), 0);
    for (const auto& [from, to] : edges_) ++degrees[static_cast<std::size_t>(to)];
    return degrees;
}

DirectedGraph generate_cycles(int n, int L) {
    if (n < 1) throw std::invalid_argument("generate_cycles: n must be >= 1");
    if (L < 3) throw std::invalid_argument("generate_cycles: cycle length must be >= 3");

    const int num_vertices = n * L;
    std::vector<std::uint64_t> labels(static_cast<std::size_t>(num_vertices));
    for (int v = 0; v < num_vertices; ++v) labels[static_cast<std::size_t>(v)] = static_cast<std::uint64_t>(v);

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(num_vertices));
    for (int k = 0; k < n; ++k) {
        for (int m = 0; m < L; ++m) {
            edges.emplace_back(k * L + m, k * L + (m + 1) % L);
        }
    }
    return DirectedGraph::from_internal(std::move(labels), std::move(edges));
}

std::int64_t noise_count(double p_noise, int num_vertices) {
    if (num_vertices < 3) throw std::invalid_argument("noise_count: need at least 3 vertices");
    if (p_noise < 0) throw std::invalid_argument("noise_count: fraction must be >= 0");
    const double pool = static_cast<double>(num_vertices) * (static_cast<double>(num_vertices) - 2.0);
    return std::llround(p_noise * pool);  // llround = half away from zero
}

std::int64_t noise_capacity(const DirectedGraph& g) {
    const std::int64_t num_vertices = g.num_vertices();
    return num_vertices * (num_vertices - 1) - g.num_edges();
}

namespace {

// Ordered non-loop pairs are ranked lexicographically:
//   pair_rank(i, j) = i*(N_V-1) + j - [j > i],   0 <= rank < N_V*(N_V-1).
std::uint64_t pair_rank(int from, int to, int num_vertices) {
    return static_cast<std::uint64_t>(from) * static_cast<std::uint64_t>(num_vertices - 1) +
           static_cast<std::uint64_t>(to) - (to > from ? 1 : 0);
}

Edge pair_from_rank(std::uint64_t rank, int num_vertices) {
    const std::uint64_t stride = static_cast<std::uint64_t>(num_vertices - 1);
    const int from = static_cast<int>(rank / stride);
    const int rem = static_cast<int>(rank % stride);
    const int to = rem >= from ? rem + 1 : rem;
    return {from, to};
}

// rank of the c-th (0-based) pair that is not an existing edge, where
// `edge_ranks` is ascending. Binary search over the number of non-edge
// pairs at or below a rank.
std::uint64_t nth_free_rank(std::uint64_t c, std::uint64_t total_pairs,
                            const std::vector<std::uint64_t>& edge_ranks) {
    std::uint64_t lo = 0;
    std::uint64_t hi = total_pairs - 1;
    while (lo < hi) {
        const std::uint64_t mid = lo + (hi - lo) / 2;
        const auto used = static_cast<std::uint64_t>(
                std::upper_bound(edge_ranks.begin(), edge_ranks.end(), mid) - edge_ranks.begin());
        const std::uint64_t free_upto = mid + 1 - used;
        if (free_upto >= c + 1) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace

DirectedGraph add_noise(const DirectedGraph& g0, std::int64_t n_noise, std::uint64_t seed) {
    if (n_noise < 0) throw std::invalid_argument("add_noise: edge count must be >= 0");
    const std::int64_t capacity = noise_capacity(g0);
    if (n_noise > capacity) {
        throw CapacityError("add_noise: requested " + std::to_string(n_noise) +
                            " noise edges but only " + std::to_string(capacity) +
                            " candidate pairs remain");
    }
    if (n_noise == 0) return g0;

    const int num_vertices = g0.num_vertices();
    const auto total_pairs = static_cast<std::uint64_t>(num_vertices) *
                             static_cast<std::uint64_t>(num_vertices - 1);

    std::vector<std::uint64_t> edge_ranks;
    edge_ranks.reserve(g0.edges().size());
    for (const auto& [from, to] : g0.edges()) {
        edge_ranks.push_back(pair_rank(from, to, num_vertices));
    }
    std::sort(edge_ranks.begin(), edge_ranks.end());

    // Floyd's sampling: k distinct values uniform over {0..capacity-1}
    // with exactly k draws.
    const auto pool = static_cast<std::uint64_t>(capacity);
    const auto k = static_cast<std::uint64_t>(n_noise);
    Xoshiro256 rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::uint64_t j = pool - k; j < pool; ++j) {
        const std::uint64_t r = uniform_below(rng, j + 1);
        chosen.insert(chosen.count(r) ? j : r);
    }

    std::vector<Edge> edges = g0.edges();
    edges.reserve(edges.size() + static_cast<std::size_t>(k));
    for (const std::uint64_t c : chosen) {
        edges.push_back(pair_from_rank(nth_free_rank(c, total_pairs, edge_ranks), num_vertices));
    }
    return DirectedGraph::from_internal(g0.labels(), std::move(edges));
}

std::int64_t resolve_noise(const GeneratorParams& params, int num_vertices) {
    if (params.p_noise.has_value() == params.n_noise.has_value()) {
        throw std::invalid_argument("generator: exactly one of p_noise / n_noise must be given");
    }
    if (params.n_noise) {
        if (*params.n_noise < 0) throw std::invalid_argument("generator: n_noise must be >= 0");
        return *params.n_noise;
    }
    return noise_count(*params.p_noise, num_vertices);
}

namespace {

bool is_comment_or_blank(const std::string& line) {
    const auto pos = line.find_first_not_of(" \t\r");
    return pos == std::string::npos || line[pos] == '#';
}

std::uint64_t parse_label(const std::string& token, int line_number) {
    std::uint64_t value = 0;
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("edge list line " + std::to_string(line_number) +
                         ": expected a non-negative integer, got '" + token + "'");
    }
    try {
        value = std::stoull(token);
    } catch (const std::exception&) {
        throw ParseError("edge list line " + std::to_string(line_number) +
                         ": label out of range: '" + token + "'");
    }
    return value;
}

}  // namespace

DirectedGraph read_edge_list(std::istream& in) {
    std::string line;
    int line_number = 0;
    long long declared_vertices = -1;
    long long declared_edges = -1;

    std::vector<std::uint64_t> isolated;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> label_edges;

    while (std::getline(in, line)) {
        ++line_number;
        if (is_comment_or_blank(line)) continue;

        std::istringstream fields(line);
        if (declared_vertices < 0) {
            if (!(fields >> declared_vertices >> declared_edges) || declared_vertices < 0 ||
                declared_edges < 0) {
                throw ParseError("edge list line " + std::to_string(line_number) +
                                 ": expected header 'N_V N_E'");
            }
            continue;
        }

        std::string first;
        fields >> first;
        if (first == "v") {
            std::string token;
            if (!(fields >> token)) {
                throw ParseError("edge list line " + std::to_string(line_number) +
                                 ": expected 'v <label>'");
            }
            isolated.push_back(parse_label(token, line_number));
        } else {
            std::string second;
            if (!(fields >> second)) {
                throw ParseError("edge list line " + std::to_string(line_number) +
                                 ": expected '<from> <to>'");
            }
            label_edges.emplace_back(parse_label(first, line_number),
                                     parse_label(second, line_number));
        }
        std::string trailing;
        if (fields >> trailing) {
            throw ParseError("edge list line " + std::to_string(line_number) +
                             ": unexpected trailing token '" + trailing + "'");
        }
    }

    if (declared_vertices < 0) throw ParseError("edge list: missing 'N_V N_E' header");
    if (static_cast<long long>(label_edges.size()) != declared_edges) {
        throw ParseError("edge list: header declares " + std::to_string(declared_edges) +
                         " edges but " + std::to_string(label_edges.size()) + " were found");
    }

    std::vector<std::uint64_t> labels = isolated;
    for (const auto& [from, to] : label_edges) {
        labels.push_back(from);
        labels.push_back(to);
    }
    std::sort(labels.begin(), labels.end());
    labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
    if (static_cast<long long>(labels.size()) != declared_vertices) {
        throw ParseError("edge list: header declares " + std::to_string(declared_vertices) +
                         " vertices but " + std::to_string(labels.size()) + " were found");
    }

    try {
        return DirectedGraph(std::move(labels), label_edges);
    } catch (const std::invalid_argument& err) {
        throw ParseError(std::string("edge list: ") + err.what());
    }
}

DirectedGraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open edge list file: " + path);
    return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const DirectedGraph& g) {
    out << g.num_vertices() << ' ' << g.num_edges() << '\n';

    std::vector<bool> connected(static_cast<std::size_t>(g.num_vertices()), false);
    for (const auto& [from, to] : g.edges()) {
        connected[static_cast<std::size_t>(from)] = true;
        connected[static_cast<std::size_t>(to)] = true;
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
        if (!connected[static_cast<std::size_t>(v)]) out << "v " << g.label(v) << '\n';
    }
    for (const auto& [from, to] : g.edges()) {
        out << g.label(from) << ' ' << g.label(to) << '\n';
    }
}

void write_edge_list_file(const std::string& path, const DirectedGraph& g) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    write_edge_list(out, g);
}

}  // namespace cyclecover
