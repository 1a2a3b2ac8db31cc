#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "solitonlab/speed.hpp"

using namespace solitonlab;

TEST_SUITE_BEGIN("speed");

TEST_CASE("built-in evaluation at hand-computed points") {
    CHECK(eval(SpeedFunction::mean_curvature(1.0), {3.0, 5.0}) == 3.0);
    CHECK(eval(SpeedFunction::power_mean(2.0, 1.0), {2.0, 1.0}) == 4.0);
    CHECK(eval(SpeedFunction::power_mean_mn(1, 2, 1.0), {8.0, 0.5}) == doctest::Approx(2.0));
    // (x1^2 - x2) / (4 x1): (4-0)/8 = 1/2 and at the unit point 1/4
    CHECK(eval(SpeedFunction::harmonic_mean_power_mn(1, 1, 1.0), {2.0, 0.0}) == 0.5);
    CHECK(eval(SpeedFunction::harmonic_mean_power_mn(1, 1, 1.0), {1.0, 0.0}) == 0.25);
    // (x1^2 - x2) / 4: (9-1)/4 = 2
    CHECK(eval(SpeedFunction::gauss_power_mn(1, 1, 1.0), {3.0, 1.0}) == 2.0);
    CHECK(eval(SpeedFunction::gauss_power_mn(1, 1, 1.0), {2.0, 0.0}) == 1.0);
    // (a + b/4) x1^2 - (b/4) x2 with a=b=1: 1.25*4 - 0.25*4 = 4
    CHECK(eval(SpeedFunction::quadratic_hk(1.0, 1.0, 1.0), {2.0, 4.0}) == 4.0);
    // (x1^2 + x2)/2
    CHECK(eval(SpeedFunction::norm_a_squared(1.0), {2.0, 4.0}) == 4.0);
}

TEST_CASE("custom speeds evaluate sums of powered polynomials") {
    // x1^(2/3) + 2 * x2
    CustomTerm t1;
    t1.coef = 1.0;
    t1.expo = 2.0 / 3.0;
    t1.expo_odd = OddExponent{2, 3};
    t1.poly = {{1.0, 1.0, 0.0}};
    CustomTerm t2;
    t2.coef = 2.0;
    t2.expo = 1.0;
    t2.poly = {{1.0, 0.0, 1.0}};
    auto f = SpeedFunction::custom({t1, t2}, 2.0 / 3.0, 1.0);
    CHECK(eval(f, {8.0, 0.0}) == doctest::Approx(4.0));
    CHECK(eval(f, {8.0, 1.5}) == doctest::Approx(7.0));
    // odd-root branch admits negative polynomial values
    CHECK(eval(f, {-8.0, 0.0}) == doctest::Approx(4.0));
}

TEST_CASE("homogeneity residual vanishes for every built-in family") {
    std::vector<SpeedFunction> fams = {
        SpeedFunction::mean_curvature(1.0),
        SpeedFunction::power_mean(2.0, 1.0),
        SpeedFunction::power_mean_mn(1, 3, 1.0),
        SpeedFunction::harmonic_mean_power_mn(1, 1, 1.0),
        SpeedFunction::harmonic_mean_power(0.5, 1.0),
        SpeedFunction::gauss_power_mn(2, 1, 1.0),
        SpeedFunction::gauss_power(0.2, 1.0),
        SpeedFunction::quadratic_hk(1.0, 1.0, 1.0),
        SpeedFunction::norm_a_squared(1.0),
    };
    std::mt19937 rng(20260815);
    // x2 stays below x1^2 (positive Gauss curvature) so fractional powers of
    // K-based speeds remain real
    std::uniform_real_distribution<double> ux1(0.1, 4.0), ufrac(0.0, 0.9), ua(0.3, 3.0);
    for (const auto& f : fams) {
        for (int i = 0; i < 50; ++i) {
            double x1 = ux1(rng);
            EvalPoint p(x1, ufrac(rng) * x1 * x1);
            double a = ua(rng);
            double scale = std::abs(eval(f, p)) + 1.0;
            CHECK(std::abs(homogeneity_residual(f, p, a)) <= 1e-10 * scale);
        }
    }
}

TEST_CASE("gradients match central differences") {
    std::vector<SpeedFunction> fams = {
        SpeedFunction::power_mean(3.0, 1.0),
        SpeedFunction::harmonic_mean_power_mn(1, 1, 1.0),
        SpeedFunction::gauss_power_mn(1, 1, 1.0),
        SpeedFunction::quadratic_hk(2.0, -1.0, 1.0),
        SpeedFunction::norm_a_squared(1.0),
    };
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ux1(0.5, 3.0), ux2(0.5, 2.0);
    for (const auto& f : fams) {
        for (int i = 0; i < 25; ++i) {
            double x1 = ux1(rng), x2 = ux2(rng);
            Gradient g = grad(f, {x1, x2});
            double h = 1e-6;
            double d1 = (eval(f, {x1 + h, x2}) - eval(f, {x1 - h, x2})) / (2 * h);
            double d2 = (eval(f, {x1, x2 + h}) - eval(f, {x1, x2 - h})) / (2 * h);
            CHECK(g.psi1 == doctest::Approx(d1).epsilon(1e-6));
            CHECK(g.psi2 == doctest::Approx(d2).epsilon(1e-6));
        }
    }
}

TEST_CASE("parabolicity indicator closed forms") {
    // Psi = x1: indicator = 1 everywhere
    CHECK(parabolicity_indicator(SpeedFunction::mean_curvature(1.0), {2.0, 3.0}) == 1.0);
    // Psi = (x1^2+x2)/2: Psi_1 = x1, Psi_2 = 1/2 -> x1^2 - x2 = 4K
    auto na = SpeedFunction::norm_a_squared(1.0);
    double H = 2.0, K = 0.25;
    double x2 = H * H - 4 * K;
    CHECK(parabolicity_indicator(na, {H, x2}) == doctest::Approx(4 * K));
    // quadratic a=b=1: 6 H^2 + K up to the common positive factor 1/4... the
    // indicator is (2(a+b/4)x1)^2 - 4 x2 (b/4)^2 = (6H^2+K)/... check sign only
    auto q = SpeedFunction::quadratic_hk(1.0, 1.0, 1.0);
    CHECK(parabolicity_indicator(q, {1.0, 0.0}) > 0.0);       // K = H^2/4 > -6H^2
    double x2_neg = 1.0 + 4 * 6.5;                            // K = -6.5 H^2, H=1
    CHECK(parabolicity_indicator(q, {1.0, x2_neg}) < 0.0);
}

TEST_CASE("from_principal agrees with eval on (H, (k1-k2)^2)") {
    auto f = SpeedFunction::gauss_power_mn(1, 1, 1.0);
    double k1 = 0.7, k2 = 0.2;
    EvalPoint p(k1 + k2, (k1 - k2) * (k1 - k2));
    CHECK(from_principal(f, k1, k2) == doctest::Approx(eval(f, p)).epsilon(1e-14));
    // Gauss curvature speed literally equals k1 k2
    CHECK(from_principal(f, k1, k2) == doctest::Approx(k1 * k2).epsilon(1e-14));
}

TEST_CASE("odd-root powers and domain rules") {
    CHECK(rpow(-8.0, OddExponent{1, 3}) == doctest::Approx(-2.0));
    CHECK(rpow(-8.0, OddExponent{2, 3}) == doctest::Approx(4.0));
    CHECK(rpow(27.0, OddExponent{-1, 3}) == doctest::Approx(1.0 / 3.0));
    CHECK(rpow(2.0, 0.5) == doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(rpow(-2.0, 0.5), DomainError);
    CHECK_THROWS_AS(rpow(0.0, -1.0), DomainError);
}

TEST_CASE("EvalPoint clamps round-off but rejects real negatives") {
    CHECK(EvalPoint(1.0, -1e-13).x2 == 0.0);
    CHECK_THROWS_AS(EvalPoint(1.0, -1e-11), DomainError);
}

TEST_CASE("beta exponents for rational constructions") {
    // (m, n) selects the exponent m / (2n - 1), so n = 2 is the cube root
    auto pm = beta_exponent(SpeedFunction::power_mean_mn(1, 2, 1.0));
    REQUIRE(pm.has_value());
    CHECK(pm->num == 1);
    CHECK(pm->den == 3);
    auto gp = beta_exponent(SpeedFunction::gauss_power_mn(1, 1, 1.0));
    REQUIRE(gp.has_value());
    CHECK(gp->value() == 2.0);
}

TEST_CASE("family names round-trip") {
    for (Family f : {Family::MeanCurvature, Family::PowerMean, Family::HarmonicMeanPower,
                     Family::GaussPower, Family::QuadraticHK, Family::NormASquared,
                     Family::Custom})
        CHECK(family_from_name(family_name(f)) == f);
    CHECK_THROWS_AS(family_from_name("noodle"), ArgError);
}

TEST_CASE("JSON serialization round-trips evaluation") {
    std::vector<SpeedFunction> fams = {
        SpeedFunction::power_mean_mn(2, 3, 1.5),
        SpeedFunction::harmonic_mean_power(0.5, 2.0),
        SpeedFunction::quadratic_hk(1.0, -0.5, 0.7),
    };
    CustomTerm t;
    t.coef = 0.5;
    t.expo = 2.0;
    t.poly = {{1.0, 1.0, 0.0}, {-0.25, 0.0, 1.0}};
    fams.push_back(SpeedFunction::custom({t}, 2.0, 1.0));
    for (const auto& f : fams) {
        SpeedFunction g = speed_from_json(to_json_string(f));
        CHECK(g.family == f.family);
        CHECK(g.beta == f.beta);
        CHECK(g.lambda == f.lambda);
        for (double x1 : {0.5, 1.0, 2.5})
            for (double frac : {0.0, 0.3, 0.8})
                CHECK(eval(g, {x1, frac * x1 * x1}) == eval(f, {x1, frac * x1 * x1}));
    }
}

TEST_SUITE_END();
