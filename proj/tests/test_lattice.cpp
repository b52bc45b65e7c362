#include <set>

#include "dimer/errors.hpp"
#include "dimer/graph.hpp"
#include "dimer/lattice.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dimer;

namespace {

void check_handshake(const Graph& g) {
    long long degree_sum = 0;
    for (int v = 0; v < g.num_vertices(); ++v) degree_sum += g.degree(v);
    CHECK(degree_sum == 2LL * g.num_edges());
}

void check_regular(const Graph& g, int r) {
    for (int v = 0; v < g.num_vertices(); ++v) CHECK(g.degree(v) == r);
}

}  // namespace

TEST_SUITE("lattice") {

TEST_CASE("cycle basics") {
    Graph c4 = build_cycle(4);
    CHECK(c4.num_vertices() == 4);
    CHECK(c4.num_edges() == 4);
    check_regular(c4, 2);

    Graph c6 = build_cycle(6);
    auto bp = bipartition(c6);
    REQUIRE(bp.bipartite);
    CHECK(bp.classes[0] == std::vector<int>{0, 2, 4});
    CHECK(bp.classes[1] == std::vector<int>{1, 3, 5});

    CHECK_THROWS_AS(build_cycle(5), InvalidParameterError);
    CHECK_THROWS_AS(build_cycle(2), InvalidParameterError);
}

TEST_CASE("hypercubic torus") {
    Graph t44 = build_hypercubic_torus({4, 4});
    CHECK(t44.num_vertices() == 16);
    CHECK(t44.num_edges() == 32);
    check_regular(t44, 4);

    Graph t66 = build_hypercubic_torus({6, 6});
    auto bp = bipartition(t66);
    REQUIRE(bp.bipartite);
    CHECK(bp.classes[0].size() == 18);
    CHECK(bp.classes[1].size() == 18);

    // Odd sides are allowed and produce a non-bipartite torus.
    Graph t33 = build_hypercubic_torus({3, 3});
    check_regular(t33, 4);
    auto bp33 = bipartition(t33);
    CHECK_FALSE(bp33.bipartite);
    CHECK(bp33.odd_cycle.size() % 2 == 1);
    // the witness really is a cycle
    for (size_t i = 0; i < bp33.odd_cycle.size(); ++i) {
        int u = bp33.odd_cycle[i];
        int v = bp33.odd_cycle[(i + 1) % bp33.odd_cycle.size()];
        CHECK(t33.has_edge(u, v));
    }

    CHECK_THROWS_AS(build_hypercubic_torus({2, 4}), InvalidParameterError);

    Graph t333 = build_hypercubic_torus({3, 3, 3});
    check_regular(t333, 6);
    CHECK(t333.num_vertices() == 27);
}

TEST_CASE("honeycomb torus") {
    Graph h33 = build_honeycomb_torus(3, 3);
    CHECK(h33.num_vertices() == 18);
    CHECK(h33.num_edges() == 27);
    check_regular(h33, 3);
    CHECK(girth(h33) == 6);
    CHECK(bipartition(h33).bipartite);

    CHECK_THROWS_AS(build_honeycomb_torus(1, 3), InvalidParameterError);

    Graph h54 = build_honeycomb_torus(5, 4);
    check_regular(h54, 3);
    CHECK(girth(h54) == 6);
}

TEST_CASE("prism torus") {
    Graph p46 = build_prism_torus(4, 6);
    CHECK(p46.num_vertices() == 24);
    CHECK(p46.num_edges() == 48);
    CHECK(bipartition(p46).bipartite);

    Graph p44 = build_prism_torus(4, 4);
    check_regular(p44, 4);

    CHECK_THROWS_AS(build_prism_torus(3, 6), InvalidParameterError);
    CHECK_THROWS_AS(build_prism_torus(4, 5), InvalidParameterError);
}

TEST_CASE("random regular bipartite") {
    Graph g = build_random_regular_bipartite(8, 3, 12345);
    check_regular(g, 3);
    CHECK(g.num_vertices() == 16);
    CHECK(bipartition(g).bipartite);

    Graph g2 = build_random_regular_bipartite(8, 3, 12345);
    CHECK(g.edges() == g2.edges());  // same seed, same graph

    Graph g3 = build_random_regular_bipartite(8, 3, 999);
    CHECK(g.edges() != g3.edges());
}

TEST_CASE("handshake and regularity across families") {
    for (const Graph& g :
         {build_cycle(10), build_hypercubic_torus({4, 6}), build_honeycomb_torus(3, 4),
          build_prism_torus(6, 8), build_random_regular_bipartite(6, 4, 7)}) {
        check_handshake(g);
        REQUIRE(g.regularity().has_value());
        check_regular(g, *g.regularity());
    }
}

TEST_CASE("bipartiteness of hypercubic iff all sides even") {
    CHECK(bipartition(build_hypercubic_torus({4, 6})).bipartite);
    CHECK_FALSE(bipartition(build_hypercubic_torus({3, 6})).bipartite);
    CHECK_FALSE(bipartition(build_hypercubic_torus({5, 5})).bipartite);
}

TEST_CASE("bipartition needs a connected graph") {
    Graph two_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_AS(bipartition(two_edges), InvalidInputError);
}

TEST_CASE("edge list round trip") {
    Graph g = build_prism_torus(4, 6);
    std::string text = edge_list_text(g);
    Graph back = parse_edge_list(text);
    CHECK(back.num_vertices() == g.num_vertices());
    CHECK(back.edges() == g.edges());
    CHECK(edge_list_text(back) == text);
}

TEST_CASE("graph rejects bad input") {
    CHECK_THROWS_AS(Graph(3, {{0, 0}}), InvalidParameterError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}, {1, 0}}), InvalidParameterError);
    CHECK_THROWS_AS(Graph(3, {{0, 5}}), InvalidParameterError);
    CHECK_THROWS_AS(Graph(3, {{0, 1}}, 2), InvalidParameterError);
}

TEST_CASE("build_lattice warnings below documented minimums") {
    LatticeSpec spec;
    spec.family = LatticeFamily::honeycomb_torus;
    spec.sizes = {3, 3};
    CHECK_FALSE(build_lattice(spec).warnings.empty());
    spec.sizes = {4, 4};
    CHECK(build_lattice(spec).warnings.empty());

    spec.family = LatticeFamily::hypercubic_torus;
    spec.sizes = {4, 4};
    CHECK_FALSE(build_lattice(spec).warnings.empty());
    spec.sizes = {6, 6};
    CHECK(build_lattice(spec).warnings.empty());
}

}  // TEST_SUITE
