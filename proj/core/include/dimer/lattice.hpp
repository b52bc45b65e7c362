#ifndef DIMER_LATTICE_HPP
#define DIMER_LATTICE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dimer/graph.hpp"

namespace dimer {

enum class LatticeFamily {
    cycle,
    hypercubic_torus,
    honeycomb_torus,
    prism_torus,
    random_regular_bipartite,
};

std::string family_name(LatticeFamily f);
LatticeFamily family_from_name(const std::string& name);

// Declarative lattice request; `sizes` is family-specific:
//   cycle: {m}; hypercubic_torus: {L1, ..., Ld}; honeycomb_torus: {a, b};
//   prism_torus: {c, L}; random_regular_bipartite: {N_per_side, r}.
struct LatticeSpec {
    LatticeFamily family = LatticeFamily::cycle;
    std::vector<int> sizes;
    std::optional<std::uint64_t> seed;

    std::string name() const;
};

struct BuiltLattice {
    Graph graph;
    std::vector<std::string> warnings;
};

// Cycle C_m; 2-regular, bipartite for even m. Requires even m >= 4.
Graph build_cycle(int m);

// d-dimensional torus with periodic boundaries, vertices indexed
// row-major over coordinate tuples; r = 2d. Bipartite iff every side is
// even. Sides must be >= 3.
Graph build_hypercubic_torus(const std::vector<int>& dims);

// Periodic honeycomb patch with 2ab vertices, 3-regular, bipartite.
// Requires a, b >= 2.
Graph build_honeycomb_torus(int a, int b);

// Cartesian product C_c x C_L; 4-regular bipartite for even c, L >= 4.
Graph build_prism_torus(int c, int L);

// Seeded configuration model on two sides of N vertices, degree r,
// resampled until simple. Deterministic for a fixed seed.
Graph build_random_regular_bipartite(int n_per_side, int r, std::uint64_t seed);

// Spec-driven build; collects non-fatal warnings (e.g. sizes below the
// documented wrap-around-free minimum for pattern counting).
BuiltLattice build_lattice(const LatticeSpec& spec);

}  // namespace dimer

#endif
