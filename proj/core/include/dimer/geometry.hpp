#ifndef DIMER_GEOMETRY_HPP
#define DIMER_GEOMETRY_HPP

#include <string>
#include <vector>

#include "dimer/bignum.hpp"
#include "dimer/graph.hpp"

namespace dimer {

enum class PatternId { G1_four_loop, G2_six_loop, G3_theta, G4_ladder };

std::string pattern_name(PatternId id);

// One of the four fixed subgraph patterns whose densities enter the
// entropy-coefficient relations: the 4-cycle, the 6-cycle, the theta
// graph (two degree-3 vertices joined by three length-2 paths) and the
// 2x3 ladder.
struct PatternGraph {
    PatternId id = PatternId::G1_four_loop;
    Graph graph;
    int automorphism_count = 0;
};

// The four patterns, automorphism counts verified by enumeration.
const std::vector<PatternGraph>& pattern_graphs();

// |Aut| by exhaustive permutation check; patterns are tiny (<= 8 vertices).
int automorphism_count(const Graph& pattern);

// Number of injective maps pattern -> g sending pattern edges to edges
// (edges only: subgraph counting, not induced-subgraph counting).
BigInt count_embeddings_labeled(const Graph& g, const Graph& pattern, int threads = 1);

// Unlabeled subgraph count: labeled count / |Aut|.
BigInt count_embeddings(const Graph& g, const PatternGraph& p, int threads = 1);

// count / n with n = V/2, as an exact rational.
BigRat geom_density(const Graph& g, const PatternGraph& p, int threads = 1);

struct PatternDensity {
    PatternId id = PatternId::G1_four_loop;
    BigInt count;
    BigRat density;
};

struct GeomDensities {
    std::string lattice_id;
    int num_vertices = 0;
    // Set when the host lattice is below its documented wrap-around-free
    // minimum size, where finite counts exceed the infinite-lattice density.
    bool finite_size_warning = false;
    std::vector<PatternDensity> patterns;

    const PatternDensity& at(PatternId id) const;
};

GeomDensities compute_geom_densities(const Graph& g, bool finite_size_warning = false,
                                     int threads = 1);

}  // namespace dimer

#endif
