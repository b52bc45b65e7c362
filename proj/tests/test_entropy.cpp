#include <cmath>

#include "dimer/entropy.hpp"
#include "dimer/errors.hpp"
#include "dimer/lattice.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace dimer;

namespace {

std::vector<std::vector<LambdaSample>> cycle_samples(const std::vector<int>& two_ns) {
    std::vector<std::vector<LambdaSample>> out;
    for (int two_n : two_ns)
        out.push_back(lambda_samples(count_matchings_auto(build_cycle(two_n))));
    return out;
}

}  // namespace

TEST_SUITE("entropy") {

TEST_CASE("mean field endpoint limits") {
    CHECK(mean_field(0.0, 2) == 0.0);
    CHECK(mean_field(0.0, 7) == 0.0);
    CHECK(mean_field(1.0, 3) == doctest::Approx((std::log(3.0) - 1.0) / 2.0).epsilon(1e-14));
    CHECK(mean_field(0.5, 2) == doctest::Approx(std::log(2.0) - 0.25).epsilon(1e-14));
    CHECK_THROWS_AS(mean_field(-0.1, 2), DomainError);
    CHECK_THROWS_AS(mean_field(1.1, 2), DomainError);
    CHECK_THROWS_AS(mean_field(0.5, 1), DomainError);
}

TEST_CASE("lambda_1d is the cycle limit and its tail is the r=2 series") {
    // lambda_1d(p) - mean_field(p, 2) must equal sum_{k>=2} (p/2)^k/(k(k-1));
    // checked numerically before the r=2 d_k oracle values are trusted.
    for (double p : {0.05, 0.1, 0.2, 0.3, 0.5}) {
        double tail = 0.0;
        for (int k = 2; k < 60; ++k)
            tail += std::pow(p / 2.0, k) / (static_cast<double>(k) * (k - 1));
        CHECK(oracle::lambda_1d(p) - mean_field(p, 2) == doctest::Approx(tail).epsilon(1e-12));
    }
}

TEST_CASE("richardson of constant data") {
    Extrapolation ex = richardson_at_zero({{0.1, 3.5}, {0.05, 3.5}, {0.025, 3.5}});
    CHECK(ex.value == doctest::Approx(3.5).epsilon(1e-14));
    CHECK(ex.error <= 1e-14);
}

TEST_CASE("richardson recovers polynomial data exactly") {
    auto f = [](double x) { return 1.0 + 2.0 * x - 7.0 * x * x; };
    std::vector<std::pair<double, double>> xy;
    for (double x : {0.2, 0.1, 0.05, 0.025}) xy.emplace_back(x, f(x));
    Extrapolation ex = richardson_at_zero(xy);
    CHECK(ex.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cycles at p=1 extrapolate to zero") {
    auto samples = cycle_samples({12, 16, 20, 24});
    Extrapolation ex = extrapolate_lambda(samples, BigRat(1));
    CHECK(std::abs(ex.value) < 1e-12);  // ln(2)/(2n) is linear in 1/n
}

TEST_CASE("cycles at p=1/2 match the closed form") {
    auto samples = cycle_samples({40, 80, 120, 160, 200});
    ExtrapolationOptions opts;
    opts.log_prefactor_correction = true;
    Extrapolation ex = extrapolate_lambda(samples, BigRat(1, 2), opts);
    CHECK(ex.value == doctest::Approx(oracle::lambda_1d(0.5)).epsilon(1e-6));
}

TEST_CASE("extrapolation needs three sizes at the exact p") {
    auto samples = cycle_samples({12, 16});
    CHECK_THROWS_AS(extrapolate_lambda(samples, BigRat(1)), InsufficientDataError);
    // p = 1/3 is realizable at 2n=12 (j=2) but not at 2n=16
    auto more = cycle_samples({12, 16, 20});
    CHECK_THROWS_AS(extrapolate_lambda(more, BigRat(1, 3)), InsufficientDataError);
}

TEST_CASE("extract_dk on exact mean-field data gives zero coefficients") {
    std::vector<LambdaPoint> pts;
    for (int k = 1; k <= 8; ++k) {
        BigRat p = make_rational(k, 20);
        pts.push_back({p, mean_field(mpq_get_d(p.get_mpq_t()), 3), 0.0});
    }
    EntropySeries s = extract_dk(pts, 3, 4);
    for (const auto& c : s.coefficients) CHECK(std::abs(c.dk) < 1e-10);
}

TEST_CASE("extract_dk recovers a planted coefficient") {
    std::vector<LambdaPoint> pts;
    for (int k = 1; k <= 8; ++k) {
        BigRat p = make_rational(k, 20);
        double pd = mpq_get_d(p.get_mpq_t());
        pts.push_back({p, mean_field(pd, 4) + 0.1 * pd * pd, 0.0});
    }
    EntropySeries s = extract_dk(pts, 4, 4);
    CHECK(s.at(2).dk == doctest::Approx(0.1).epsilon(1e-8));
    CHECK(std::abs(s.at(3).dk) < 1e-8);
    CHECK(std::abs(s.at(4).dk) < 1e-8);
}

TEST_CASE("extract_dk recovers planted polynomials up to kmax 6") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> planted(7, 0.0);
        for (int k = 2; k <= 6; ++k)
            planted[static_cast<size_t>(k)] =
                (static_cast<double>(oracle::rand_below(rng, 2000)) - 1000.0) / 5000.0;
        std::vector<LambdaPoint> pts;
        for (int k = 1; k <= 10; ++k) {
            BigRat p = make_rational(k, 25);
            double pd = mpq_get_d(p.get_mpq_t());
            double val = mean_field(pd, 5);
            for (int kk = 2; kk <= 6; ++kk) val += planted[static_cast<size_t>(kk)] * std::pow(pd, kk);
            pts.push_back({p, val, 0.0});
        }
        EntropySeries s = extract_dk(pts, 5, 6);
        for (int kk = 2; kk <= 6; ++kk)
            CHECK(s.at(kk).dk == doctest::Approx(planted[static_cast<size_t>(kk)]).epsilon(1e-8));
    }
}

TEST_CASE("extract_dk preconditions and conditioning") {
    std::vector<LambdaPoint> few;
    for (int k = 1; k <= 4; ++k) few.push_back({make_rational(k, 20), 0.1, 0.0});
    CHECK_THROWS_AS(extract_dk(few, 4, 4), InsufficientDataError);

    // A degenerate cluster of nearly equal p values must trip the gate.
    std::vector<LambdaPoint> clustered;
    for (int k = 0; k < 9; ++k)
        clustered.push_back({make_rational(1000000 + k, 10000000), 0.05, 0.0});
    CHECK_THROWS_AS(extract_dk(clustered, 4, 6), ConditioningError);
}

TEST_CASE("r=2 series oracle at reduced size") {
    // Small version of the acceptance run: cycles up to 2n = 120.
    auto samples = cycle_samples({40, 60, 80, 100, 120});
    ExtrapolationOptions opts;
    opts.log_prefactor_correction = true;
    std::vector<LambdaPoint> pts;
    for (int k = 1; k <= 10; ++k) {
        BigRat p = make_rational(k, 20);
        Extrapolation ex = extrapolate_lambda(samples, p, opts);
        pts.push_back({p, ex.value, ex.error});
    }
    EntropySeries s = extract_dk(pts, 2, 6);
    for (int k = 2; k <= 5; ++k) {
        double truth = 1.0 / (k * (k - 1) * std::pow(2.0, k));
        CHECK(std::abs(s.at(k).dk - truth) <
              std::max(2e-3, 3.0 * s.at(k).sigma));
    }
}

}  // TEST_SUITE
