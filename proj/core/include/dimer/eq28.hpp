#ifndef DIMER_EQ28_HPP
#define DIMER_EQ28_HPP

#include <vector>

#include "dimer/matchings.hpp"

namespace dimer {

// One exact data point for the high-density-limit degree check:
// lnA = ln( m(j)_n j! / n^j ), evaluated from exact integers.
struct Eq28Sample {
    int j = 0;
    int n = 0;
    double ln_a = 0.0;
};

struct Eq28Options {
    int h_max = 2;
    int k_max = 4;
    // Degree of the 1/n fit; -1 picks min(#sizes - 2, h_max + 3).
    int fit_h_degree = -1;
    // j grid; empty picks 1..k_max+3.
    std::vector<int> j_grid;
};

struct Eq28Cell {
    int h = 0;
    int k = 0;
    double coeff = 0.0;  // fitted j^k coefficient of the n^{-h} slice
    bool flagged = false;  // k >= h+2: expected to vanish
};

struct Eq28Report {
    std::vector<int> j_grid;
    std::vector<int> sizes;                // n per size, ascending
    std::vector<std::vector<double>> b;    // b[h][j_index]: n^{-h} coefficient of lnA
    std::vector<Eq28Cell> cells;           // all (h <= h_max, k <= k_max)
    double max_flagged_abs = 0.0;          // max |coeff| over flagged cells

    double flagged_abs(int h, int k) const;
};

// Core fit on prepared samples: per fixed j, expand lnA in powers of 1/n;
// per order h, fit the expansion coefficient as a polynomial in j and
// report the j^k coefficients. Powers k >= h+2 are expected to vanish.
Eq28Report eq28_analyze(const std::vector<Eq28Sample>& samples, const Eq28Options& opts);

// Compute lnA from exact match tables (one per size) and run the
// analysis. Requires >= h_max+2 sizes, all with even vertex count.
Eq28Report verify_eq28_numeric(const std::vector<MatchTable>& tables, const Eq28Options& opts);

// Synthetic degree-compliant samples: lnA = sum_h q_h(j) / n^h where
// q_h has degree deg_j[h]. Used to measure the fit noise floor.
std::vector<Eq28Sample> planted_eq28_samples(const std::vector<std::vector<double>>& q_coeffs,
                                             const std::vector<int>& j_grid,
                                             const std::vector<int>& sizes);

}  // namespace dimer

#endif
