#ifndef DIMER_ENTROPY_HPP
#define DIMER_ENTROPY_HPP

#include <vector>

#include "dimer/bignum.hpp"
#include "dimer/matchings.hpp"

namespace dimer {

struct DkCoefficient {
    int k = 0;
    double dk = 0.0;
    double sigma = 0.0;
};

// Series coefficients of the entropy correction beyond mean field for one
// lattice family at fixed coordination number r.
struct EntropySeries {
    int r = 0;
    std::vector<DkCoefficient> coefficients;
    double p_window_lo = 0.0;
    double p_window_hi = 0.0;
    std::vector<int> sizes_used;  // n = V/2 per size

    const DkCoefficient& at(int k) const;
};

// Leading entropy term for an r-regular lattice at dimer-covered vertex
// density p: (1/2)[p ln r - p ln p - 2(1-p) ln(1-p) - p], with the usual
// x ln x -> 0 limits at the endpoints.
double mean_field(double p, int r);

struct Extrapolation {
    double value = 0.0;
    double error = 0.0;  // difference between the two highest-order extrapolants
    int points = 0;
};

struct ExtrapolationOptions {
    // Add ln(n)/(4n) to each sample before extrapolating, cancelling the
    // universal saddle-point n^{-1/2} prefactor of the matching count at
    // fixed 0 < p < 1. Without it the 1/n tableau stalls at O(ln n / n)
    // accuracy, which drowns the d_k signal. Not valid at p = 1, where
    // the prefactor is absent.
    bool log_prefactor_correction = false;
};

// Polynomial-in-1/n (Richardson/Neville) extrapolation of lambda_n(p) to
// n -> infinity at fixed p. Each inner vector holds one size's samples;
// every size must realize the requested p exactly (p = j/n with integer
// j), and at least three sizes are required.
Extrapolation extrapolate_lambda(const std::vector<std::vector<LambdaSample>>& per_size,
                                 const BigRat& p, const ExtrapolationOptions& opts = {});

// Raw Neville tableau on (x_i = 1/n_i, y_i), evaluated at x = 0.
Extrapolation richardson_at_zero(const std::vector<std::pair<double, double>>& xy);

struct LambdaPoint {
    BigRat p;
    double lambda = 0.0;
    double sigma = 0.0;
};

struct ExtractOptions {
    // Weighted least squares floor for per-point sigmas.
    double sigma_floor = 1e-12;
    // Condition-number gate for the scaled design matrix.
    double condition_limit = 1e10;
};

// Least-squares fit of lambda(p) - mean_field(p, r) against {p^2, ...,
// p^kmax}; uncertainties from the weighted residual covariance.
EntropySeries extract_dk(const std::vector<LambdaPoint>& lambda_inf, int r, int kmax,
                         const ExtractOptions& opts = {});

}  // namespace dimer

#endif
