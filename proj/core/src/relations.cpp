#include "dimer/relations.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dimer/errors.hpp"

namespace dimer {

double virial_from_dk(int k, double dk) {
    if (k < 2) throw DomainError("virial_from_dk: k must be >= 2");
    double kk = static_cast<double>(k);
    return (kk - 1.0) * (1.0 / (kk * (kk - 1.0)) - dk);
}

double pressure_series(double p, const VirialSeries& virial, int kmax) {
    if (!(p >= 0.0 && p < 1.0)) throw DomainError("pressure_series: p must lie in [0, 1)");
    double out = p / 2.0;
    for (auto [k, mk] : virial.mk) {
        if (k > kmax) continue;
        out += mk * std::pow(p, k);
    }
    return out;
}

std::string RelationMonomial::name() const {
    std::ostringstream out;
    bool any = false;
    for (int i = 0; i < 4; ++i) {
        for (int e = 0; e < exponents[i]; ++e) {
            if (any) out << '*';
            out << "G" << (i + 1);
            any = true;
        }
    }
    if (!any) out << '1';
    return out.str();
}

std::vector<RelationMonomial> relation_basis(int k) {
    auto mono = [](int e1, int e2, int e3, int e4) {
        RelationMonomial m;
        m.exponents[0] = e1;
        m.exponents[1] = e2;
        m.exponents[2] = e3;
        m.exponents[3] = e4;
        return m;
    };
    switch (k) {
        case 2:
        case 3:
            return {mono(0, 0, 0, 0)};
        case 4:
        case 5:
            return {mono(0, 0, 0, 0), mono(1, 0, 0, 0)};
        case 6:
            return {mono(0, 0, 0, 0), mono(1, 0, 0, 0), mono(0, 1, 0, 0), mono(0, 0, 1, 0)};
        case 7:
            return {mono(0, 0, 0, 0), mono(2, 0, 0, 0), mono(1, 0, 0, 0),
                    mono(0, 1, 0, 0), mono(0, 0, 1, 0), mono(0, 0, 0, 1)};
        default:
            throw InvalidParameterError("relation_basis: no basis known for k=" +
                                        std::to_string(k));
    }
}

namespace {

double monomial_value(const RelationMonomial& m, const GeomDensities& densities) {
    static const PatternId ids[4] = {PatternId::G1_four_loop, PatternId::G2_six_loop,
                                     PatternId::G3_theta, PatternId::G4_ladder};
    double out = 1.0;
    for (int i = 0; i < 4; ++i) {
        if (m.exponents[i] == 0) continue;
        double g = mpq_get_d(densities.at(ids[i]).density.get_mpq_t());
        for (int e = 0; e < m.exponents[i]; ++e) out *= g;
    }
    return out;
}

RelationModel fit_core(int k, const std::vector<RelationObservation>& observations,
                       const std::vector<RelationMonomial>& basis) {
    const int m = static_cast<int>(observations.size());
    const int nb = static_cast<int>(basis.size());
    Eigen::MatrixXd design(m, nb);
    Eigen::VectorXd rhs(m), weight(m);
    for (int i = 0; i < m; ++i) {
        const auto& obs = observations[static_cast<size_t>(i)];
        for (int c = 0; c < nb; ++c)
            design(i, c) = monomial_value(basis[static_cast<size_t>(c)], obs.densities);
        rhs(i) = obs.dk;
        weight(i) = 1.0 / std::max(obs.sigma, 1e-12);
    }
    // Identical density vectors cannot be distinguished by the fit when
    // the system would otherwise be square or underdetermined.
    Eigen::MatrixXd scaled = weight.asDiagonal() * design;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double smin = svd.singularValues()(nb - 1);
    double smax = svd.singularValues()(0);
    if (smin <= smax * 1e-12) {
        std::ostringstream msg;
        msg << "fit_relation: rank-deficient design for k=" << k << ";";
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if ((design.row(i) - design.row(j)).norm() == 0.0)
                    msg << " families '" << observations[static_cast<size_t>(i)].family
                        << "' and '" << observations[static_cast<size_t>(j)].family
                        << "' have identical density vectors;";
        throw DegenerateDesignError(msg.str());
    }

    RelationModel model;
    model.k = k;
    model.basis = basis;
    Eigen::VectorXd coeff = svd.solve(weight.asDiagonal() * rhs);
    Eigen::VectorXd resid = weight.asDiagonal() * (rhs - design * coeff);
    model.residual_norm = resid.norm();
    Eigen::MatrixXd cov = (scaled.transpose() * scaled).inverse();
    int dof = m - nb;
    double inflate = dof > 0 ? std::max(1.0, resid.squaredNorm() / dof) : 1.0;
    cov *= inflate;
    for (int c = 0; c < nb; ++c) {
        model.coefficients.push_back(coeff(c));
        model.coefficient_sigmas.push_back(std::sqrt(cov(c, c)));
    }
    model.covariance.assign(static_cast<size_t>(nb), std::vector<double>(static_cast<size_t>(nb)));
    for (int a = 0; a < nb; ++a)
        for (int b = 0; b < nb; ++b) model.covariance[static_cast<size_t>(a)][static_cast<size_t>(b)] = cov(a, b);
    for (int i = 0; i < m; ++i) {
        model.families.push_back(observations[static_cast<size_t>(i)].family);
        std::vector<double> row;
        for (int c = 0; c < nb; ++c) row.push_back(design(i, c));
        model.design.push_back(std::move(row));
    }
    return model;
}

}  // namespace

double RelationModel::predict(const GeomDensities& densities) const {
    double out = 0.0;
    for (size_t c = 0; c < basis.size(); ++c)
        out += coefficients[c] * monomial_value(basis[c], densities);
    return out;
}

double RelationModel::predict_sigma(const GeomDensities& densities) const {
    const size_t nb = basis.size();
    std::vector<double> x(nb);
    for (size_t c = 0; c < nb; ++c) x[c] = monomial_value(basis[c], densities);
    double var = 0.0;
    for (size_t a = 0; a < nb; ++a)
        for (size_t b = 0; b < nb; ++b) var += x[a] * covariance[a][b] * x[b];
    return std::sqrt(std::max(var, 0.0));
}

RelationModel fit_relation(int k, const std::vector<RelationObservation>& observations) {
    auto basis = relation_basis(k);
    for (const auto& obs : observations)
        if (!obs.bipartite)
            throw InvalidInputError("fit_relation: family '" + obs.family +
                                    "' is not bipartite; the d_k relation forms assume "
                                    "bipartite lattices");
    if (observations.size() < basis.size())
        throw InsufficientDataError("fit_relation: " + std::to_string(observations.size()) +
                                    " families for a basis of size " +
                                    std::to_string(basis.size()));
    RelationModel model = fit_core(k, observations, basis);

    // Leave-one-out prediction errors when enough families remain.
    for (size_t hold = 0; hold < observations.size(); ++hold) {
        if (observations.size() - 1 < basis.size()) {
            model.loo_errors.push_back(std::numeric_limits<double>::quiet_NaN());
            model.loo_sigmas.push_back(std::numeric_limits<double>::quiet_NaN());
            continue;
        }
        std::vector<RelationObservation> rest;
        for (size_t i = 0; i < observations.size(); ++i)
            if (i != hold) rest.push_back(observations[i]);
        try {
            RelationModel sub = fit_core(k, rest, basis);
            double pred = sub.predict(observations[hold].densities);
            double psig = sub.predict_sigma(observations[hold].densities);
            model.loo_errors.push_back(pred - observations[hold].dk);
            model.loo_sigmas.push_back(
                std::sqrt(psig * psig + observations[hold].sigma * observations[hold].sigma));
        } catch (const DegenerateDesignError&) {
            model.loo_errors.push_back(std::numeric_limits<double>::quiet_NaN());
            model.loo_sigmas.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    return model;
}

}  // namespace dimer
