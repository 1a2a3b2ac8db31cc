#include <cmath>

#include "doctest.h"
#include "solitonlab/sphere.hpp"

using namespace solitonlab;

TEST_SUITE_BEGIN("sphere");

TEST_CASE("closed-form radii") {
    struct Row {
        SpeedFunction f;
        double R;
    };
    std::vector<Row> rows = {
        {SpeedFunction::mean_curvature(1.0), std::sqrt(2.0)},
        {SpeedFunction::mean_curvature(0.5), 2.0},
        {SpeedFunction::power_mean_mn(3, 1, 1.0), std::pow(8.0, 0.25)},
        {SpeedFunction::gauss_power_mn(1, 1, 1.0), 1.0},
        {SpeedFunction::gauss_power_mn(1, 1, 8.0), 0.5},
        {SpeedFunction::harmonic_mean_power_mn(1, 1, 0.5), 1.0},
        {SpeedFunction::quadratic_hk(1.0, 1.0, 1.0), std::pow(5.0, 1.0 / 3.0)},
        {SpeedFunction::norm_a_squared(2.0), 1.0},
    };
    for (const auto& row : rows) {
        auto res = sphere_radius(row.f);
        REQUIRE(res.solutions.size() == 1);
        CHECK_FALSE(res.any_radius);
        CHECK_FALSE(res.weingarten);
        CHECK(res.solutions[0].R == doctest::Approx(row.R).epsilon(1e-12));
        CHECK(std::abs(res.solutions[0].residual) <= 1e-12);
        CHECK(res.solutions[0].center_is_origin);
        CHECK(verify_sphere(row.f, res.solutions[0].R) <= 1e-10);
    }
}

TEST_CASE("the radius equation really is selective") {
    // harmonic-mean speed at lambda = 1/2: R = 1 works, nearby radii do not
    auto f = SpeedFunction::harmonic_mean_power_mn(1, 1, 0.5);
    CHECK(verify_sphere(f, 1.0) <= 1e-12);
    CHECK(verify_sphere(f, 0.5) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(verify_sphere(f, 3.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("lambda = 0 flags the Weingarten degeneration") {
    SpeedFunction f = SpeedFunction::power_mean_mn(2, 1, 1.0);
    f.lambda = 0.0;
    auto res = sphere_radius(f);
    CHECK(res.weingarten);
    CHECK(res.solutions.empty());  // H^2 > 0 on every sphere
}

TEST_CASE("scaling-matched speeds admit every radius") {
    // Psi homogeneous of degree -1 with lambda tuned so lambda R = Psi(2/R,0) for all R
    CustomTerm t;
    t.coef = 1.0;
    t.expo = 1.0;
    t.poly = {{1.0, -1.0, 0.0}};
    SpeedFunction f = SpeedFunction::custom({t}, -1.0, 0.5);
    auto res = sphere_radius(f);
    CHECK(res.any_radius);
    CHECK(res.solutions.empty());
    CHECK(verify_sphere(f, 0.7) <= 1e-12);
    CHECK(verify_sphere(f, 2.9) <= 1e-12);
}

TEST_CASE("negative lambda leaves expanding families without a sphere") {
    auto res = sphere_radius(SpeedFunction::gauss_power_mn(1, 1, -1.0));
    CHECK(res.solutions.empty());
    CHECK_FALSE(res.any_radius);
}

TEST_CASE("result JSON carries the radius list") {
    auto res = sphere_radius(SpeedFunction::mean_curvature(1.0));
    std::string text = sphere_result_json(res);
    CHECK(text.find("\"solutions\"") != std::string::npos);
    CHECK(text.find("1.4142135623730951") != std::string::npos);
    CHECK(text.find("\"any_radius\": false") != std::string::npos);
}

TEST_SUITE_END();
