#ifndef DIMER_RELATIONS_HPP
#define DIMER_RELATIONS_HPP

#include <string>
#include <vector>

#include "dimer/geometry.hpp"

namespace dimer {

// Virial coefficient from the entropy-series coefficient:
// m_k = (k-1) (1/(k(k-1)) - d_k).
double virial_from_dk(int k, double dk);

struct VirialSeries {
    std::vector<std::pair<int, double>> mk;  // (k, m_k)
    std::string source_series;
};

// Truncated pressure series p/2 + sum_{k=2}^{kmax} m_k p^k.
double pressure_series(double p, const VirialSeries& virial, int kmax);

// One lattice family's contribution to a relation fit.
struct RelationObservation {
    std::string family;
    GeomDensities densities;
    double dk = 0.0;
    double sigma = 0.0;
    bool bipartite = true;
};

// Monomials in the G_hat densities; constant 1 is g_power all zero.
struct RelationMonomial {
    // exponent per pattern, indexed G1..G4
    int exponents[4] = {0, 0, 0, 0};
    std::string name() const;
};

struct RelationModel {
    int k = 0;
    std::vector<RelationMonomial> basis;
    std::vector<double> coefficients;
    std::vector<double> coefficient_sigmas;
    double residual_norm = 0.0;
    // Per-observation leave-one-out prediction error (prediction minus
    // measured d_k) and its combined sigma.
    std::vector<double> loo_errors;
    std::vector<double> loo_sigmas;
    std::vector<std::string> families;
    std::vector<std::vector<double>> design;      // row per family
    std::vector<std::vector<double>> covariance;  // of the fitted coefficients

    double predict(const GeomDensities& densities) const;
    double predict_sigma(const GeomDensities& densities) const;
};

// Monomial basis used for d_k: {1} for k=2,3; {1, G1} for k=4,5;
// {1, G1, G2, G3} for k=6; {1, G1^2, G1, G2, G3, G4} for k=7.
std::vector<RelationMonomial> relation_basis(int k);

// Weighted least squares for the relation coefficients across lattice
// families at fixed r. All observations must be bipartite.
RelationModel fit_relation(int k, const std::vector<RelationObservation>& observations);

}  // namespace dimer

#endif
