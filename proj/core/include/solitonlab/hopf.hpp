#pragma once
#include <string>
#include <utility>
#include <vector>

#include "solitonlab/soliton.hpp"

namespace solitonlab {

// A surface-of-revolution band in a conformal coordinate u (metric x(u)^2 (du^2+dth^2)).
// u_grid is uniform; x, y give the profile at the nodes; rho = x^2. P is the
// quadratic-differential coefficient computed by finite differences (P_im vanishes
// identically on rotational patches). End nodes use one-sided stencils; defect
// maxima exclude two nodes at each end.
struct HopfPatch {
    std::vector<double> u_grid;
    std::vector<double> x, y;
    std::vector<double> rho;
    std::vector<double> P_re, P_im;
    std::vector<double> H, K;

    double h() const { return u_grid.size() > 1 ? u_grid[1] - u_grid[0] : 0.0; }
};

HopfPatch sphere_patch(double R, double u0, double u1, int n);
HopfPatch cylinder_patch(double r, double u0, double u1, int n);
// Ellipsoid of revolution x^2/a^2 + ... + y^2/c^2 = 1, u = 0 at the equator.
HopfPatch ellipsoid_patch(double a, double c, double u0, double u1, int n);
// Self-similar profile continued from a seed jet (u = 0 at the seed point).
HopfPatch soliton_patch(const SpeedFunction& speed, double lambda, const GraphJet& seed,
                        double u0, double u1, int n);
// Conformal resampling of an integrated profile (u = 0 at its first sample).
HopfPatch isothermal_reparam(const ProfileCurve& profile, int n);

// (P_re, P_im) per node via finite differences of the embedding.
std::pair<std::vector<double>, std::vector<double>> hopf_differential(const HopfPatch& p);

// max | |P|^2 - rho^2/16 (H^2-4K) | / (1 + |P|^2)
double verify_modulus_identity(const HopfPatch& p);
// max | P_u/2 - rho/8 H_u |
double verify_pz_identity(const HopfPatch& p);
// max component defect of the five first-order structure equations
double verify_structure_equations(const HopfPatch& p);
// max | sqrt(||X||^2 - <X,N>^2) - 2/sqrt(rho) |<X,X_z>| |
double verify_tangential_identity(const HopfPatch& p);
// max | <X_u,X_u> - <X_th,X_th> | (conformality of the grid)
double verify_isothermal_metric(const HopfPatch& p);

extern const char* const hopf_csv_header;  // "u,rho,P_re,P_im,H,K"
std::string hopf_csv(const HopfPatch& p);

}  // namespace solitonlab
