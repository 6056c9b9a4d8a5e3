#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cyclecover/checker.hpp"
#include "cyclecover/errors.hpp"
#include "cyclecover/qubo.hpp"
#include "cyclecover/rng.hpp"
#include "support/reference.hpp"

using namespace cyclecover;
namespace ct = cyclecover::testing;

namespace {

Assignment bits_for(const QuboProblem& q, const DirectedGraph& sub) {
    Assignment bits(static_cast<std::size_t>(q.num_vars()), 0);
    for (int u = 0; u < q.num_vars(); ++u) {
        const Edge e = q.variable_edge(u);
        if (sub.has_edge(sub.index_of(q.graph().label(e.first)),
                         sub.index_of(q.graph().label(e.second)))) {
            bits[static_cast<std::size_t>(u)] = 1;
        }
    }
    return bits;
}

}  // namespace

TEST_CASE("penalty constants depend on degrees and epsilon") {
    // Vertex 0 with three out-edges, vertex 4 with one.
    const DirectedGraph g({0, 1, 2, 3, 4}, {{0, 1}, {0, 2}, {0, 3}, {4, 0}, {1, 0}, {2, 0}});
    const PenaltyConstants constants = penalty_constants(g, 1.0);
    CHECK(constants.out_penalty[0] == 2.0);
    CHECK(constants.out_penalty[4] == 0.0);  // single out-edge
    CHECK(constants.in_penalty[0] == 2.0);   // three in-edges
    CHECK(constants.in_penalty[1] == 0.0);
    CHECK(constants.pair_penalty == 3.0);

    const PenaltyConstants softer = penalty_constants(g, 0.25);
    CHECK(softer.out_penalty[0] == 1.25);
    CHECK(softer.pair_penalty == 2.25);

    CHECK_THROWS_AS(penalty_constants(g, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(penalty_constants(g, -1.0), std::invalid_argument);
}

TEST_CASE("encode on the seven-vertex example") {
    const DirectedGraph g = ct::example7_graph();
    const QuboProblem q = encode(g, 1.0);
    CHECK(q.num_vars() == 11);
    CHECK(q.epsilon() == 1.0);

    for (const double coeff : q.linear()) CHECK(coeff == -1.0);

    SUBCASE("mutual pair (3,4),(4,3) carries 2 + epsilon") {
        const int u34 = static_cast<int>(std::lower_bound(g.edges().begin(), g.edges().end(),
                                                          Edge{g.index_of(3), g.index_of(4)}) -
                                         g.edges().begin());
        const int u43 = static_cast<int>(std::lower_bound(g.edges().begin(), g.edges().end(),
                                                          Edge{g.index_of(4), g.index_of(3)}) -
                                         g.edges().begin());
        bool found = false;
        for (const auto& term : q.quadratic()) {
            if (term.u == std::min(u34, u43) && term.v == std::max(u34, u43)) {
                CHECK(term.coeff == 3.0);
                found = true;
            }
        }
        CHECK(found);

        const QuboProblem softer = encode(g, 0.5);
        for (const auto& term : softer.quadratic()) {
            if (term.u == std::min(u34, u43) && term.v == std::max(u34, u43)) {
                CHECK(term.coeff == 2.5);
            }
        }
    }
}

TEST_CASE("a lone cycle encodes with no quadratic terms") {
    const QuboProblem q = encode(generate_cycles(1, 3), 1.0);
    CHECK(q.num_vars() == 3);
    CHECK(q.quadratic().empty());
}

TEST_CASE("encode rejects empty graphs and bad epsilon") {
    CHECK_THROWS_AS(encode(DirectedGraph({0, 1}, {}), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(encode(generate_cycles(1, 3), 0.0), std::invalid_argument);
}

TEST_CASE("energy evaluates the quadratic form") {
    const DirectedGraph g = ct::example7_graph();
    const QuboProblem q = encode(g, 1.0);

    CHECK(energy(q, Assignment(11, 0)) == 0.0);
    CHECK(energy(q, bits_for(q, ct::example7_cover())) == -7.0);

    const QuboProblem triangle = encode(generate_cycles(1, 3), 1.0);
    CHECK(energy(triangle, Assignment(3, 1)) == -3.0);

    CHECK_THROWS_AS(energy(q, Assignment(10, 0)), std::invalid_argument);
}

TEST_CASE("energy agrees with the first-principles cost on random instances") {
    Xoshiro256 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        const double eps = trial % 2 == 0 ? 1.0 : 0.5;
        const DirectedGraph g =
                add_noise(generate_cycles(1 + static_cast<int>(uniform_below(rng, 3)), 3),
                          static_cast<std::int64_t>(uniform_below(rng, 6)), rng());
        const QuboProblem q = encode(g, eps);
        for (int draw = 0; draw < 50; ++draw) {
            Assignment x(static_cast<std::size_t>(q.num_vars()));
            for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1);
            CHECK(energy(q, x) == ct::reference_cost(g, x, eps));
        }
    }
}

TEST_CASE("decode inverts the variable-edge association") {
    const DirectedGraph g = ct::example7_graph();
    const QuboProblem q = encode(g, 1.0);

    const DirectedGraph empty = decode(q, Assignment(11, 0));
    CHECK(empty.num_vertices() == 7);
    CHECK(empty.num_edges() == 0);

    CHECK(decode(q, Assignment(11, 1)) == g);

    const DirectedGraph cover = decode(q, bits_for(q, ct::example7_cover()));
    CHECK(cover == ct::example7_cover());
    CHECK(is_cycle_cover(g, cover).accepted);

    CHECK_THROWS_AS(decode(q, Assignment(3, 0)), std::invalid_argument);
}

TEST_CASE("structural invariants of the encoding") {
    Xoshiro256 rng(47);
    for (int trial = 0; trial < 25; ++trial) {
        const DirectedGraph g =
                add_noise(generate_cycles(1 + static_cast<int>(uniform_below(rng, 3)),
                                          3 + static_cast<int>(uniform_below(rng, 3))),
                          static_cast<std::int64_t>(uniform_below(rng, 10)), rng());
        const double eps = 1.0;
        const QuboProblem q = encode(g, eps);

        for (const double coeff : q.linear()) CHECK(coeff == -1.0);

        // every variable maps to a distinct edge of g, covering all edges
        std::set<Edge> mapped;
        for (int u = 0; u < q.num_vars(); ++u) mapped.insert(q.variable_edge(u));
        CHECK(mapped.size() == g.edges().size());

        std::set<std::pair<int, int>> keys;
        std::size_t mutual_pairs = 0;
        for (const auto& term : q.quadratic()) {
            CHECK(term.u < term.v);
            CHECK(keys.insert({term.u, term.v}).second);
            CHECK((term.coeff == 1.0 + eps || term.coeff == 2.0 + eps));

            // exactly one relation: shared source, shared target, or mutual
            const Edge a = q.variable_edge(term.u);
            const Edge b = q.variable_edge(term.v);
            const int shares_source = a.first == b.first ? 1 : 0;
            const int shares_target = a.second == b.second ? 1 : 0;
            const int mutual = (a.first == b.second && a.second == b.first) ? 1 : 0;
            CHECK(shares_source + shares_target + mutual == 1);
            mutual_pairs += static_cast<std::size_t>(mutual);
        }

        // term count: C(outdeg,2) + C(indeg,2) per vertex plus mutual pairs
        std::size_t expected = mutual_pairs;
        for (const int d : g.out_degrees()) expected += static_cast<std::size_t>(d) * (d - 1) / 2;
        for (const int d : g.in_degrees()) expected += static_cast<std::size_t>(d) * (d - 1) / 2;
        CHECK(q.quadratic().size() == expected);
    }
}

TEST_CASE("flipping any bit of a cover assignment costs at least min(1, eps)") {
    Xoshiro256 rng(53);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(uniform_below(rng, 5));
        const int L = 3 + static_cast<int>(uniform_below(rng, 3));
        const DirectedGraph planted = generate_cycles(n, L);
        const DirectedGraph g =
                add_noise(planted, static_cast<std::int64_t>(uniform_below(rng, 11)), rng());
        const double eps = trial % 3 == 0 ? 0.5 : 1.0;
        const QuboProblem q = encode(g, eps);

        Assignment cover = bits_for(q, planted);
        const double base_energy = energy(q, cover);
        CHECK(base_energy == -static_cast<double>(g.num_vertices()));

        for (int u = 0; u < q.num_vars(); ++u) {
            Assignment flipped = cover;
            flipped[static_cast<std::size_t>(u)] ^= 1;
            CHECK(energy(q, flipped) - base_energy >= std::min(1.0, eps));
        }
    }
}

TEST_CASE("qubo file round-trips") {
    const DirectedGraph g = ct::example7_graph();
    const QuboProblem q = encode(g, 1.0);

    std::ostringstream first;
    write_qubo(first, q);
    std::istringstream replay(first.str());
    const QuboProblem reread = read_qubo(replay);

    CHECK(reread.num_vars() == q.num_vars());
    CHECK(reread.linear() == q.linear());
    CHECK(reread.quadratic() == q.quadratic());
    for (int u = 0; u < q.num_vars(); ++u) {
        CHECK(reread.variable_edge_labels(u) == q.variable_edge_labels(u));
    }
    CHECK_FALSE(reread.epsilon().has_value());

    std::ostringstream second;
    write_qubo(second, reread);
    CHECK(first.str() == second.str());

    // energies agree between original and reread problems
    Xoshiro256 rng(3);
    for (int draw = 0; draw < 20; ++draw) {
        Assignment x(11);
        for (auto& bit : x) bit = static_cast<std::uint8_t>(rng() & 1);
        CHECK(energy(q, x) == energy(reread, x));
    }
}

TEST_CASE("qubo parser rejects malformed input") {
    {
        std::istringstream in("0 0 1\n");  // missing header
        CHECK_THROWS_AS(read_qubo(in), ParseError);
    }
    {
        std::istringstream in("p 1 1\nc var 0 0 1\n0 1 2\n");  // v out of range
        CHECK_THROWS_AS(read_qubo(in), ParseError);
    }
    {
        std::istringstream in("p 2 2\nc var 0 1 2\nc var 1 0 1\n0 0 -1\n1 1 -1\n");
        CHECK_THROWS_AS(read_qubo(in), ParseError);  // map lines out of lexicographic order
    }
    {
        std::istringstream in("p 1 2\nc var 0 0 1\n0 0 -1\n");
        CHECK_THROWS_AS(read_qubo(in), ParseError);  // entry count mismatch
    }
}
