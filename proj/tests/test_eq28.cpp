#include <cmath>

#include "dimer/eq28.hpp"
#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dimer;

TEST_SUITE("eq28") {

TEST_CASE("planted degree-compliant model is recovered to 1e-9") {
    // lnA = q_0(j) + q_1(j)/n + q_2(j)/n^2 with deg q_h = h+1.
    std::vector<std::vector<double>> q = {
        {0.0, 0.7},             // q_0 = 0.7 j
        {0.2, -0.75, 0.05},     // q_1 quadratic
        {0.0, 0.3, -0.2, 0.01}  // q_2 cubic
    };
    std::vector<int> j_grid{1, 2, 3, 4, 5, 6, 7};
    std::vector<int> sizes{40, 60, 80, 120, 160, 240};
    auto samples = planted_eq28_samples(q, j_grid, sizes);
    Eq28Options opts;
    opts.h_max = 2;
    opts.k_max = 4;
    Eq28Report report = eq28_analyze(samples, opts);
    CHECK(report.max_flagged_abs < 1e-9);
    // unflagged coefficients are the planted ones
    for (const auto& cell : report.cells) {
        if (cell.flagged) continue;
        double expect = 0.0;
        if (cell.h < static_cast<int>(q.size()) &&
            cell.k < static_cast<int>(q[static_cast<size_t>(cell.h)].size()))
            expect = q[static_cast<size_t>(cell.h)][static_cast<size_t>(cell.k)];
        CHECK(cell.coeff == doctest::Approx(expect).epsilon(1e-7));
    }
}

TEST_CASE("violating planted model is detected") {
    // q_0 has degree 2: the (h=0, k=2) cell must light up.
    std::vector<std::vector<double>> q = {{0.0, 0.3, 0.05}, {0.1, 0.2, -0.3}};
    std::vector<int> j_grid{1, 2, 3, 4, 5, 6};
    std::vector<int> sizes{40, 60, 80, 120, 160};
    auto samples = planted_eq28_samples(q, j_grid, sizes);
    Eq28Options opts;
    opts.h_max = 1;
    opts.k_max = 3;
    Eq28Report report = eq28_analyze(samples, opts);
    CHECK(report.flagged_abs(0, 2) == doctest::Approx(0.05).epsilon(1e-6));
}

TEST_CASE("cycle family: leading slice is linear in j") {
    std::vector<MatchTable> tables;
    for (int two_n : {120, 180, 240, 300, 360}) {
        DpOptions opts;
        opts.j_cap = 9;
        tables.push_back(count_matchings_dp(build_cycle(two_n), identity_order(build_cycle(two_n)), opts));
    }
    Eq28Options opts;
    opts.h_max = 1;
    opts.k_max = 3;
    Eq28Report report = verify_eq28_numeric(tables, opts);
    // b_0(j) = j ln 2 for cycles
    auto cell01 = [&](int h, int k) {
        for (const auto& c : report.cells)
            if (c.h == h && c.k == k) return c.coeff;
        throw std::logic_error("missing cell");
    };
    CHECK(cell01(0, 1) == doctest::Approx(std::log(2.0)).epsilon(1e-6));
    CHECK(std::abs(cell01(0, 0)) < 1e-6);
    // b_1(j) = -3 j (j-1) / 4 for cycles
    CHECK(cell01(1, 1) == doctest::Approx(0.75).epsilon(1e-3));
    CHECK(cell01(1, 2) == doctest::Approx(-0.75).epsilon(1e-3));
    CHECK(report.max_flagged_abs < 1e-3);
}

TEST_CASE("preconditions") {
    std::vector<MatchTable> tables;
    for (int two_n : {40, 60}) tables.push_back(count_matchings_auto(build_cycle(two_n)));
    Eq28Options opts;
    opts.h_max = 2;
    CHECK_THROWS_AS(verify_eq28_numeric(tables, opts), InsufficientDataError);
}

}  // TEST_SUITE
