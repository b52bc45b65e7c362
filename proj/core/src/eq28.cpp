#include "dimer/eq28.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "dimer/errors.hpp"

namespace dimer {

double Eq28Report::flagged_abs(int h, int k) const {
    for (const auto& c : cells)
        if (c.h == h && c.k == k) return std::abs(c.coeff);
    throw InvalidParameterError("Eq28Report: no cell for the requested (h, k)");
}

namespace {

// Least-squares polynomial fit y(x) of the given degree with the
// abscissa rescaled to [0, 1]; returns coefficients in the original x.
std::vector<double> poly_fit(const std::vector<double>& x, const std::vector<double>& y,
                             int degree) {
    const int m = static_cast<int>(x.size());
    if (m < degree + 1) throw InsufficientDataError("poly_fit: not enough points");
    double xmax = 0.0;
    for (double v : x) xmax = std::max(xmax, std::abs(v));
    if (xmax == 0.0) xmax = 1.0;
    Eigen::MatrixXd design(m, degree + 1);
    Eigen::VectorXd rhs(m);
    for (int i = 0; i < m; ++i) {
        double t = x[static_cast<size_t>(i)] / xmax;
        double base = 1.0;
        for (int c = 0; c <= degree; ++c) {
            design(i, c) = base;
            base *= t;
        }
        rhs(i) = y[static_cast<size_t>(i)];
    }
    Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
    std::vector<double> out(static_cast<size_t>(degree) + 1);
    double scale = 1.0;
    for (int c = 0; c <= degree; ++c) {
        out[static_cast<size_t>(c)] = sol(c) / scale;
        scale *= xmax;
    }
    return out;
}

}  // namespace

Eq28Report eq28_analyze(const std::vector<Eq28Sample>& samples, const Eq28Options& opts) {
    if (opts.h_max < 0 || opts.k_max < 0)
        throw InvalidParameterError("eq28_analyze: negative h_max/k_max");
    std::set<int> j_set, n_set;
    std::map<std::pair<int, int>, double> by_jn;
    for (const auto& s : samples) {
        j_set.insert(s.j);
        n_set.insert(s.n);
        by_jn[{s.j, s.n}] = s.ln_a;
    }
    Eq28Report report;
    report.j_grid.assign(j_set.begin(), j_set.end());
    report.sizes.assign(n_set.begin(), n_set.end());
    const int n_sizes = static_cast<int>(report.sizes.size());
    if (n_sizes < opts.h_max + 2)
        throw InsufficientDataError("eq28_analyze: need at least h_max+2 = " +
                                    std::to_string(opts.h_max + 2) + " sizes, got " +
                                    std::to_string(n_sizes));
    int fit_degree = opts.fit_h_degree >= 0 ? opts.fit_h_degree
                                            : std::min(n_sizes - 2, opts.h_max + 3);
    if (fit_degree < opts.h_max)
        throw InvalidParameterError("eq28_analyze: fit degree below h_max");

    // Per fixed j: lnA as a polynomial in 1/n.
    report.b.assign(static_cast<size_t>(opts.h_max) + 1,
                    std::vector<double>(report.j_grid.size(), 0.0));
    for (size_t ji = 0; ji < report.j_grid.size(); ++ji) {
        int j = report.j_grid[ji];
        std::vector<double> x, y;
        for (int n : report.sizes) {
            auto it = by_jn.find({j, n});
            if (it == by_jn.end())
                throw InsufficientDataError("eq28_analyze: missing sample for j=" +
                                            std::to_string(j) + ", n=" + std::to_string(n));
            x.push_back(1.0 / n);
            y.push_back(it->second);
        }
        auto coeffs = poly_fit(x, y, fit_degree);
        for (int h = 0; h <= opts.h_max; ++h)
            report.b[static_cast<size_t>(h)][ji] = coeffs[static_cast<size_t>(h)];
    }

    // Per order h: the coefficient as a polynomial in j.
    for (int h = 0; h <= opts.h_max; ++h) {
        std::vector<double> xj(report.j_grid.begin(), report.j_grid.end());
        auto gamma = poly_fit(xj, report.b[static_cast<size_t>(h)], opts.k_max);
        for (int k = 0; k <= opts.k_max; ++k) {
            Eq28Cell cell;
            cell.h = h;
            cell.k = k;
            cell.coeff = gamma[static_cast<size_t>(k)];
            cell.flagged = k >= h + 2;
            if (cell.flagged)
                report.max_flagged_abs = std::max(report.max_flagged_abs, std::abs(cell.coeff));
            report.cells.push_back(cell);
        }
    }
    return report;
}

Eq28Report verify_eq28_numeric(const std::vector<MatchTable>& tables, const Eq28Options& opts) {
    if (static_cast<int>(tables.size()) < opts.h_max + 2)
        throw InsufficientDataError("verify_eq28_numeric: need at least h_max+2 tables");
    std::vector<int> j_grid = opts.j_grid;
    if (j_grid.empty())
        for (int j = 1; j <= opts.k_max + 3; ++j) j_grid.push_back(j);

    std::vector<Eq28Sample> samples;
    for (const auto& table : tables) {
        int n = table.n();
        for (int j : j_grid) {
            if (j > table.max_j() || sgn(table.counts[static_cast<size_t>(j)]) <= 0)
                throw InsufficientDataError("verify_eq28_numeric: zero count at j=" +
                                            std::to_string(j) + " for n=" + std::to_string(n));
            // A = m(j) j! / n^j, exact.
            BigInt npow;
            mpz_ui_pow_ui(npow.get_mpz_t(), static_cast<unsigned long>(n),
                          static_cast<unsigned long>(j));
            BigRat a(table.counts[static_cast<size_t>(j)] *
                         factorial(static_cast<unsigned long>(j)),
                     npow);
            a.canonicalize();
            samples.push_back({j, n, log_bigrat(a)});
        }
    }
    Eq28Options local = opts;
    local.j_grid = j_grid;
    return eq28_analyze(samples, local);
}

std::vector<Eq28Sample> planted_eq28_samples(const std::vector<std::vector<double>>& q_coeffs,
                                             const std::vector<int>& j_grid,
                                             const std::vector<int>& sizes) {
    std::vector<Eq28Sample> out;
    for (int n : sizes) {
        for (int j : j_grid) {
            double ln_a = 0.0;
            double nh = 1.0;
            for (const auto& q : q_coeffs) {
                double qj = 0.0, jp = 1.0;
                for (double c : q) {
                    qj += c * jp;
                    jp *= j;
                }
                ln_a += qj / nh;
                nh *= n;
            }
            out.push_back({j, n, ln_a});
        }
    }
    return out;
}

}  // namespace dimer
