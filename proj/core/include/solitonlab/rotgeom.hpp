#pragma once
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/errors.hpp"

namespace solitonlab {

// 2-jet of a profile graph (x, gamma(x)), x > 0.
struct GraphJet {
    double x;
    double gamma;
    double gamma_p;
    double gamma_pp;
};

// 2-jet of a parametric profile (x(t), y(t)), regular, x > 0.
struct ParamJet {
    double x, y;
    double xp, yp;
    double xpp, ypp;
};

struct PrincipalCurvatures {
    double k1;  // circle direction
    double k2;  // meridian direction
};

struct SupportQuantities {
    double support;        // <X,N> with the inward normal
    double tangential_sq;  // ||X||^2 - <X,N>^2
};

// Everything measured at one profile point. gamma_p/gamma_pp are absent on
// parametric rows at a vertical tangent; Q is absent at umbilic points.
struct CurvatureSample {
    double x = 0.0;
    double gamma = 0.0;
    std::optional<double> gamma_p;
    std::optional<double> gamma_pp;
    double k1 = 0.0, k2 = 0.0;
    double H = 0.0, K = 0.0;
    double support = 0.0;
    double tangential_sq = 0.0;
    std::optional<double> Q;
};

PrincipalCurvatures curvature_graph(const GraphJet& j);
PrincipalCurvatures curvature_param(const ParamJet& j);
SupportQuantities support_quantities(const GraphJet& j);
SupportQuantities support_quantities(const ParamJet& j);

// k1 = k2 up to a scale-aware tolerance; length_scale sets the floor 1/L^2.
bool is_umbilic(double H, double K, double length_scale = 1.0);

// Q = |H| sqrt(tangential_sq) / sqrt(H^2-4K); absent at umbilic samples (0/0).
std::optional<double> pinching_ratio(const CurvatureSample& c, double length_scale = 1.0);

// Largest eps such that 1 - eps lambda^2 tangential_sq stays >= H^2-4K... inverted
// over the sampled set: 1/(lambda^2 (sup Q)^2). +inf when every Q is absent or sup Q=0.
double pinching_epsilon_sup(const std::vector<CurvatureSample>& samples, double lambda);

// Assemble a full sample from a jet (curvatures, support, Q).
CurvatureSample sample_graph(const GraphJet& j, double length_scale = 1.0);
CurvatureSample sample_param(const ParamJet& j, double length_scale = 1.0);

extern const char* const curvature_csv_header;  // "x,gamma,...,Q"
std::string curvature_csv(const std::vector<CurvatureSample>& samples);

}  // namespace solitonlab
