#include "dimer/entropy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "dimer/errors.hpp"

namespace dimer {

const DkCoefficient& EntropySeries::at(int k) const {
    for (const auto& c : coefficients)
        if (c.k == k) return c;
    throw InvalidParameterError("EntropySeries::at: no coefficient for k=" + std::to_string(k));
}

double mean_field(double p, int r) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mean_field: p must lie in [0, 1]");
    if (r < 2) throw DomainError("mean_field: r must be >= 2");
    auto xlnx = [](double x) { return x > 0.0 ? x * std::log(x) : 0.0; };
    return 0.5 * (p * std::log(static_cast<double>(r)) - xlnx(p) - 2.0 * xlnx(1.0 - p) - p);
}

Extrapolation richardson_at_zero(const std::vector<std::pair<double, double>>& xy) {
    const int m = static_cast<int>(xy.size());
    if (m < 1) throw InsufficientDataError("richardson_at_zero: no points");
    // Neville tableau evaluated at x = 0.
    std::vector<std::vector<double>> t(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) t[static_cast<size_t>(i)].assign(static_cast<size_t>(i) + 1, 0.0);
    for (int i = 0; i < m; ++i) t[static_cast<size_t>(i)][0] = xy[static_cast<size_t>(i)].second;
    for (int col = 1; col < m; ++col) {
        for (int i = col; i < m; ++i) {
            double xi = xy[static_cast<size_t>(i)].first;
            double xim = xy[static_cast<size_t>(i - col)].first;
            double hi = t[static_cast<size_t>(i)][static_cast<size_t>(col - 1)];
            double lo = t[static_cast<size_t>(i - 1)][static_cast<size_t>(col - 1)];
            t[static_cast<size_t>(i)][static_cast<size_t>(col)] =
                (xim * hi - xi * lo) / (xim - xi);
        }
    }
    Extrapolation out;
    out.points = m;
    out.value = t[static_cast<size_t>(m - 1)][static_cast<size_t>(m - 1)];
    if (m >= 2) {
        double prev_col = t[static_cast<size_t>(m - 1)][static_cast<size_t>(m - 2)];
        double prev_diag = t[static_cast<size_t>(m - 2)][static_cast<size_t>(m - 2)];
        out.error = std::max(std::abs(out.value - prev_col), std::abs(out.value - prev_diag));
    }
    return out;
}

Extrapolation extrapolate_lambda(const std::vector<std::vector<LambdaSample>>& per_size,
                                 const BigRat& p, const ExtrapolationOptions& opts) {
    std::vector<std::pair<double, double>> xy;  // (1/n, lambda_n)
    for (const auto& samples : per_size) {
        for (const auto& s : samples) {
            if (s.p == p) {
                double n = static_cast<double>(s.n2) / 2.0;
                double y = s.lambda;
                if (opts.log_prefactor_correction) y += std::log(n) / (4.0 * n);
                xy.emplace_back(1.0 / n, y);
                break;
            }
        }
    }
    if (xy.size() < 3)
        throw InsufficientDataError("extrapolate_lambda: p realized at only " +
                                    std::to_string(xy.size()) + " sizes (need >= 3)");
    std::sort(xy.begin(), xy.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });
    return richardson_at_zero(xy);
}

EntropySeries extract_dk(const std::vector<LambdaPoint>& lambda_inf, int r, int kmax,
                         const ExtractOptions& opts) {
    if (kmax < 2) throw InvalidParameterError("extract_dk: kmax must be >= 2");
    const int n_basis = kmax - 1;
    // Distinct p values only; duplicated abscissae add no information.
    std::vector<LambdaPoint> pts;
    for (const auto& q : lambda_inf) {
        bool dup = false;
        for (const auto& seen : pts)
            if (seen.p == q.p) dup = true;
        if (!dup) pts.push_back(q);
    }
    const int m = static_cast<int>(pts.size());
    if (m < kmax + 2)
        throw InsufficientDataError("extract_dk: need at least kmax+2 = " +
                                    std::to_string(kmax + 2) + " distinct p values, got " +
                                    std::to_string(m));

    Eigen::MatrixXd design(m, n_basis);
    Eigen::VectorXd rhs(m);
    Eigen::VectorXd weight(m);
    double p_lo = 1.0, p_hi = 0.0;
    for (int i = 0; i < m; ++i) {
        double p = mpq_get_d(pts[static_cast<size_t>(i)].p.get_mpq_t());
        p_lo = std::min(p_lo, p);
        p_hi = std::max(p_hi, p);
        double base = p * p;
        for (int c = 0; c < n_basis; ++c) {
            design(i, c) = base;
            base *= p;
        }
        rhs(i) = pts[static_cast<size_t>(i)].lambda - mean_field(p, r);
        double sigma = std::max(pts[static_cast<size_t>(i)].sigma, opts.sigma_floor);
        weight(i) = 1.0 / sigma;
    }

    // Scale columns to unit norm before conditioning; the raw Vandermonde
    // scale difference between p^2 and p^7 is not what we want to gate on.
    Eigen::MatrixXd scaled = weight.asDiagonal() * design;
    Eigen::VectorXd col_scale(n_basis);
    for (int c = 0; c < n_basis; ++c) {
        col_scale(c) = scaled.col(c).norm();
        if (col_scale(c) == 0.0) col_scale(c) = 1.0;
        scaled.col(c) /= col_scale(c);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled, Eigen::ComputeThinU | Eigen::ComputeThinV);
    double cond = svd.singularValues()(0) / svd.singularValues()(n_basis - 1);
    if (!(cond < opts.condition_limit))
        throw ConditioningError(
            "extract_dk: design matrix condition number " + std::to_string(cond) +
            " exceeds limit; widen or reposition the p-window");

    Eigen::VectorXd wrhs = weight.asDiagonal() * rhs;
    Eigen::VectorXd coeff_scaled = svd.solve(wrhs);
    Eigen::VectorXd coeff = coeff_scaled.array() / col_scale.array();

    // Residual covariance: (A^T W A)^{-1}, inflated by reduced chi^2 when
    // the fit is worse than the stated sigmas.
    Eigen::MatrixXd normal = (scaled.transpose() * scaled).inverse();
    Eigen::VectorXd resid = wrhs - scaled * coeff_scaled;
    int dof = m - n_basis;
    double chi2 = resid.squaredNorm();
    double inflate = dof > 0 ? std::max(1.0, chi2 / dof) : 1.0;

    EntropySeries series;
    series.r = r;
    series.p_window_lo = p_lo;
    series.p_window_hi = p_hi;
    for (int c = 0; c < n_basis; ++c) {
        DkCoefficient dk;
        dk.k = c + 2;
        dk.dk = coeff(c);
        dk.sigma = std::sqrt(normal(c, c) * inflate) / col_scale(c);
        series.coefficients.push_back(dk);
    }
    return series;
}

}  // namespace dimer
