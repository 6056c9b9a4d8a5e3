#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "cyclecover/errors.hpp"
#include "cyclecover/graph.hpp"
#include "cyclecover/rng.hpp"
#include "support/reference.hpp"

using namespace cyclecover;

TEST_CASE("DirectedGraph validates its invariants") {
    CHECK_THROWS_AS(DirectedGraph({0, 1}, {{0, 0}}), std::invalid_argument);       // self-loop
    CHECK_THROWS_AS(DirectedGraph({0, 1}, {{0, 1}, {0, 1}}), std::invalid_argument);  // duplicate
    CHECK_THROWS_AS(DirectedGraph({0, 1}, {{0, 2}}), std::invalid_argument);  // undeclared vertex
    CHECK_THROWS_AS(DirectedGraph({0, 0, 1}, {}), std::invalid_argument);     // duplicate label
}

TEST_CASE("DirectedGraph re-indexes by ascending label") {
    const DirectedGraph g({10, 3, 7}, {{10, 3}, {3, 7}});
    CHECK(g.num_vertices() == 3);
    CHECK(g.label(0) == 3);
    CHECK(g.label(2) == 10);
    CHECK(g.index_of(7) == 1);
    CHECK(g.index_of(4) == -1);
    CHECK(g.has_edge(2, 0));  // 10 -> 3
    CHECK(g.has_edge(0, 1));  // 3 -> 7
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("generate_cycles produces n disjoint cycles of length L") {
    SUBCASE("n=3 L=4 sizes") {
        const DirectedGraph g = generate_cycles(3, 4);
        CHECK(g.num_vertices() == 12);
        CHECK(g.num_edges() == 12);
        const auto out = g.out_degrees();
        const auto in = g.in_degrees();
        CHECK(std::all_of(out.begin(), out.end(), [](int d) { return d == 1; }));
        CHECK(std::all_of(in.begin(), in.end(), [](int d) { return d == 1; }));
    }
    SUBCASE("n=1 L=3 is the triangle") {
        const DirectedGraph g = generate_cycles(1, 3);
        CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}});
    }
    SUBCASE("n=2 L=3 exact edge set") {
        const DirectedGraph g = generate_cycles(2, 3);
        CHECK(g.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}});
    }
    SUBCASE("parameter domain") {
        CHECK_THROWS_AS(generate_cycles(0, 3), std::invalid_argument);
        CHECK_THROWS_AS(generate_cycles(1, 2), std::invalid_argument);
        CHECK_THROWS_AS(generate_cycles(-1, 5), std::invalid_argument);
    }
}

TEST_CASE("noise_count matches the rounding rule") {
    CHECK(noise_count(0.5e-4, 4200) == 882);
    CHECK(noise_count(1e-4, 3600) == 1295);
    CHECK(noise_count(0.0, 999) == 0);
    CHECK(noise_count(0.5, 3) == 2);  // 0.5 * 3 * 1 = 1.5 rounds away from zero
    CHECK_THROWS_AS(noise_count(-0.1, 10), std::invalid_argument);
    CHECK_THROWS_AS(noise_count(0.1, 2), std::invalid_argument);
}

TEST_CASE("noise_count is monotone in both arguments") {
    const double fractions[] = {0.0, 1e-5, 5e-5, 1e-4, 1e-3, 0.5};
    const int sizes[] = {3, 10, 60, 500, 4200};
    for (std::size_t f = 0; f + 1 < std::size(fractions); ++f) {
        for (std::size_t s = 0; s + 1 < std::size(sizes); ++s) {
            CHECK(noise_count(fractions[f], sizes[s]) <= noise_count(fractions[f + 1], sizes[s]));
            CHECK(noise_count(fractions[f], sizes[s]) <= noise_count(fractions[f], sizes[s + 1]));
        }
    }
}

TEST_CASE("add_noise adds the requested number of fresh edges") {
    const DirectedGraph base = generate_cycles(3, 4);

    SUBCASE("sizes for 6 added edges") {
        const DirectedGraph noisy = add_noise(base, 6, 7);
        CHECK(noisy.num_vertices() == 12);
        CHECK(noisy.num_edges() == 18);
    }
    SUBCASE("zero is a no-op") {
        CHECK(add_noise(base, 0, 3) == base);
    }
    SUBCASE("superset, count, no self-loops, determinism") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            const DirectedGraph noisy = add_noise(base, 9, seed);
            CHECK(noisy.num_edges() == base.num_edges() + 9);
            CHECK(std::includes(noisy.edges().begin(), noisy.edges().end(),
                                base.edges().begin(), base.edges().end()));
            for (const auto& [from, to] : noisy.edges()) CHECK(from != to);
            CHECK(add_noise(base, 9, seed) == noisy);
        }
    }
    SUBCASE("distinct seeds explore distinct choices") {
        CHECK(add_noise(base, 9, 1) != add_noise(base, 9, 2));
    }
}

TEST_CASE("add_noise can exhaust the candidate set exactly") {
    const DirectedGraph triangle = generate_cycles(1, 3);
    CHECK(noise_capacity(triangle) == 3);
    const DirectedGraph full = add_noise(triangle, 3, 0);
    CHECK(full.num_edges() == 6);  // all ordered non-loop pairs on 3 vertices
    const std::set<Edge> expected{{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}};
    CHECK(std::set<Edge>(full.edges().begin(), full.edges().end()) == expected);
    CHECK_THROWS_AS(add_noise(triangle, 4, 0), CapacityError);
    CHECK_THROWS_AS(add_noise(triangle, -1, 0), std::invalid_argument);
}

TEST_CASE("add_noise sampling is uniform enough over a tiny candidate set") {
    // Three candidates, choose one: each should be picked roughly 1/3 of
    // the time across seeds.
    const DirectedGraph triangle = generate_cycles(1, 3);
    std::map<Edge, int> picks;
    for (std::uint64_t seed = 0; seed < 3000; ++seed) {
        const DirectedGraph noisy = add_noise(triangle, 1, seed);
        for (const auto& edge : noisy.edges()) {
            if (!triangle.has_edge(edge.first, edge.second)) ++picks[edge];
        }
    }
    CHECK(picks.size() == 3);
    for (const auto& [edge, count] : picks) CHECK(count > 800);
}

TEST_CASE("edge list round-trips byte for byte") {
    const DirectedGraph example = cyclecover::testing::example7_graph();

    std::ostringstream first;
    write_edge_list(first, example);
    std::istringstream replay(first.str());
    const DirectedGraph reread = read_edge_list(replay);
    CHECK(reread == example);

    std::ostringstream second;
    write_edge_list(second, reread);
    CHECK(first.str() == second.str());

    // labels are restored verbatim, not re-numbered
    CHECK(first.str().find("7 6\n") != std::string::npos);
}

TEST_CASE("edge list keeps isolated vertices via v-lines") {
    const DirectedGraph g({0, 1, 2, 5}, {{0, 1}, {1, 0}});
    std::ostringstream out;
    write_edge_list(out, g);
    CHECK(out.str() == "4 2\nv 2\nv 5\n0 1\n1 0\n");
    std::istringstream in(out.str());
    CHECK(read_edge_list(in) == g);
}

TEST_CASE("edge list parser accepts comments and rejects malformed input") {
    SUBCASE("comments and blank lines") {
        std::istringstream in("# generated instance\n\n3 3\n# body\n0 1\n1 2\n2 0\n");
        const DirectedGraph g = read_edge_list(in);
        CHECK(g.num_vertices() == 3);
        CHECK(g.num_edges() == 3);
    }
    SUBCASE("missing header") {
        std::istringstream in("0 1\n");
        CHECK_THROWS_AS(read_edge_list(in), ParseError);
    }
    SUBCASE("edge count mismatch") {
        std::istringstream in("3 3\n0 1\n1 2\n");
        CHECK_THROWS_AS(read_edge_list(in), ParseError);
    }
    SUBCASE("vertex count mismatch") {
        std::istringstream in("4 3\n0 1\n1 2\n2 0\n");
        CHECK_THROWS_AS(read_edge_list(in), ParseError);
    }
    SUBCASE("negative label") {
        std::istringstream in("2 1\n-1 0\n");
        CHECK_THROWS_AS(read_edge_list(in), ParseError);
    }
    SUBCASE("self-loop in file") {
        std::istringstream in("1 1\n3 3\n");
        CHECK_THROWS_AS(read_edge_list(in), ParseError);
    }
    SUBCASE("trailing token") {
        std::istringstream in("2 1\n0 1 9\n");
        CHECK_THROWS_AS(read_edge_list(in), ParseError);
    }
}
