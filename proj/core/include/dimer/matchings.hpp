#ifndef DIMER_MATCHINGS_HPP
#define DIMER_MATCHINGS_HPP

#include <string>
#include <vector>

#include "dimer/bignum.hpp"
#include "dimer/graph.hpp"

namespace dimer {

// Exact j-matching counts for one graph: counts[j] = number of sets of j
// pairwise vertex-disjoint edges. counts[0] = 1, counts[1] = |E|.
struct MatchTable {
    std::string graph_id;
    int num_vertices = 0;
    std::vector<BigInt> counts;

    // Half the vertex count; only defined for even-order graphs.
    int n() const;
    int max_j() const { return static_cast<int>(counts.size()) - 1; }
};

struct DpOptions {
    // Counts are computed for j <= j_cap when set (>= 0); truncation does
    // not perturb the retained entries.
    int j_cap = -1;
    // Hard cap on the frontier width; the state space is 2^width.
    int width_budget = 28;
    int threads = 1;
};

// Exhaustive recursion over vertices (match-or-skip). Exact but limited
// to 20 vertices; larger graphs must use the DP.
MatchTable count_matchings_brute(const Graph& g);

// Frontier dynamic program over the given vertex elimination order.
// State is the matched-status of the boundary between processed and
// unprocessed vertices; per-j counts are exact big integers. Output is
// independent of thread count.
MatchTable count_matchings_dp(const Graph& g, const std::vector<int>& order,
                              const DpOptions& opts = {});

// DP over the better of the natural order and Cuthill-McKee.
MatchTable count_matchings_auto(const Graph& g, const DpOptions& opts = {});

std::vector<int> identity_order(const Graph& g);
// Bandwidth-reduction heuristic for graphs without a known good order.
std::vector<int> cuthill_mckee_order(const Graph& g);
// Maximum number of simultaneously live frontier slots along the order.
// Slots released by a step coexist with the slot of the vertex being
// processed, so e.g. a cycle in natural order reports 3, and a c-ring
// prism reports 2c+1.
int frontier_width(const Graph& g, const std::vector<int>& order);

struct LambdaSample {
    BigRat p;       // dimer-covered vertex density j/n = 2j/V
    double lambda;  // (1/V) ln m(j)
    int j = 0;
    int n2 = 0;  // V = 2n
};

// One sample per j with counts[j] > 0. The log is applied to the count;
// the zero-dimer entry maps to (p=0, lambda=0).
std::vector<LambdaSample> lambda_samples(const MatchTable& table);

}  // namespace dimer

#endif
