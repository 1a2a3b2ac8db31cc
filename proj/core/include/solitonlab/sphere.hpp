#pragma once

#include <string>
#include <vector>

#include "solitonlab/speed.hpp"

namespace solitonlab {

struct SphereSolution {
    double R = 0.0;
    bool center_is_origin = true;
    double residual = 0.0;  // lambda*R - Psi(2/R, 0) at the reported radius
};

// Outcome of the spherical-solution search for one speed function.
//
// any_radius: the equation lambda*R = Psi(2/R,0) holds identically in R, so every
// centered sphere is a solution and no single radius is listed.
// weingarten: lambda = 0, where the equation degenerates to Psi(2/R,0) = 0 and the
// center is free; solutions then carry center_is_origin = false.
struct SphereFamilyResult {
    std::vector<SphereSolution> solutions;  // sorted by radius
    bool any_radius = false;
    bool weingarten = false;
};

SphereFamilyResult sphere_radius(const SpeedFunction& speed);

// Max absolute soliton residual along gamma(x) = sqrt(R^2 - x^2) at 50 abscissae
// x_i = R*i/51.
double verify_sphere(const SpeedFunction& speed, double R);

std::string sphere_result_json(const SphereFamilyResult& result);

}  // namespace solitonlab
