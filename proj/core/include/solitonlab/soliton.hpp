#pragma once
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/rotgeom.hpp"
#include "solitonlab/speed.hpp"

namespace solitonlab {

// One accepted integration node. Graph rows carry (x, gamma, gamma', gamma'');
// parametric rows (past a vertical tangent) carry the tangent angle phi and the
// meridian curvature k2 instead. phi is filled on graph rows too (= atan gamma').
struct ProfileSample {
    bool graph = true;
    double x = 0.0;
    double y = 0.0;  // gamma
    double gamma_p = 0.0;
    double gamma_pp = 0.0;
    double phi = 0.0;
    double k2 = 0.0;
};

using ProfileCurve = std::vector<ProfileSample>;

struct SolitonProblem {
    SpeedFunction speed;  // speed.lambda is the flow constant used throughout
    double b = 1.0;       // gamma(0), > 0
    double x_start = 0.0;  // <= 0 selects the default 1e-3 * b
    double x_max = 10.0;
    double tol = 1e-9;
    std::optional<double> max_step;    // cap on the adaptive step
    std::optional<double> fixed_step;  // constant step, no error control (convergence studies)
    std::vector<double> record_at;     // abscissae the graph phase must land on exactly

    double x_start_value() const { return x_start > 0.0 ? x_start : 1e-3 * b; }
};

struct SeriesData {
    double c = 0.0;
    double a3 = 0.0;              // identically zero
    std::optional<double> a4;     // fitted downstream, never closed-form
};

enum class Termination { ReachedXMax, VerticalTangent, RootFindFailed, DomainExit };

std::string termination_name(Termination t);

struct SolveReport {
    SolitonProblem problem;
    ProfileCurve profile;
    Termination termination = Termination::ReachedXMax;
    double residual_max = 0.0;
    long long steps = 0;
    long long ambiguous_steps = 0;  // accepted steps whose root-solve saw multiple roots
    bool axis_return = false;       // parametric phase ended back at x = x_start
};

// Soliton equation defect at a graph jet:
//   Psi(-A, B^2) / (1+gamma'^2)^{3 beta/2} + lambda (x gamma' - gamma) / sqrt(1+gamma'^2)
// with A = gamma'/x (1+gamma'^2) + gamma'' and B = gamma'/x (1+gamma'^2) - gamma''.
double residual(const SpeedFunction& speed, double lambda, const GraphJet& j);

// Same defect at a parametric state (x, y, phi): Psi(k1+k2, (k1-k2)^2) + lambda*support.
double residual_param(const SpeedFunction& speed, double lambda, double x, double y,
                      double phi, double k2);

// Implicit solve of the soliton equation for gamma'' at (x, gamma, gamma'), seeded
// at guess; expanding-bracket scan plus Brent. multiple_roots (optional) reports
// whether the bracket stage saw more than one crossing.
double solve_gamma_pp(const SpeedFunction& speed, double lambda, double x, double gamma,
                      double gamma_p, double guess, bool* multiple_roots = nullptr);

// Implicit solve for the meridian curvature k2 at a parametric state.
double solve_param_k2(const SpeedFunction& speed, double lambda, double x, double y,
                      double phi, double guess, bool* multiple_roots = nullptr);

// Axis expansion gamma = b + c x^2 + O(x^4) with c = -1/4 (lambda b / Psi(1,0))^{1/beta}.
double series_c(const SpeedFunction& speed, double lambda, double b);
SeriesData series_start(const SolitonProblem& problem);

SolveReport integrate_profile(const SolitonProblem& problem);

// Graph jet at abscissa x: the exact sample when one lands there, otherwise a
// quintic-Hermite interpolant between the bracketing graph samples.
GraphJet jet_at(const ProfileCurve& profile, double x);

struct ShootSample {
    double b = 0.0;
    double closure_defect = 0.0;  // NaN when the run never returns to the axis
    double sin_phi_return = 0.0;  // tangent inclination at the return event (NaN if none)
    Termination termination = Termination::ReachedXMax;
    bool axis_return = false;
};

struct ShootReport {
    std::vector<ShootSample> samples;  // grid samples in input order, then refinements
    std::vector<double> roots;         // b values where the defect changes sign, refined
};

// Samples b in [b_lo, b_hi] (n points), reports closure defects, and bisects every
// sign change down to a b-window of width criterion_tol.
ShootReport shoot_for_closure(const SpeedFunction& speed, double lambda, double b_lo,
                              double b_hi, int n, double criterion_tol);

std::vector<CurvatureSample> profile_samples(const ProfileCurve& profile,
                                             double length_scale = 1.0);
std::string profile_csv(const ProfileCurve& profile);
std::string solve_report_json(const SolveReport& report);
std::string problem_to_json(const SolitonProblem& problem);
SolitonProblem problem_from_json(const std::string& text);
extern const char* const shoot_csv_header;
std::string shoot_csv(const ShootReport& report);

}  // namespace solitonlab
