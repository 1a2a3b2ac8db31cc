#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solitonlab/soliton.hpp"
#include "solitonlab/speed.hpp"

namespace solitonlab {

struct TaylorFit {
    double c = 0.0;
    double a3 = 0.0;
    double a4 = 0.0;
};

// Least-squares fit of gamma - b against {x^2, x^3, ..., x^degree} over the graph
// samples with 0 < x <= 0.1*b (columns scaled to the window for conditioning).
// ArgError when fewer than n_samples land in the window or the window cannot
// determine the requested degree.
TaylorFit taylor_fit(const ProfileCurve& profile, double b, int n_samples, int degree = 4);

struct PinchReport {
    double b = 0.0;
    double lambda = 0.0;
    double c_series = 0.0;
    double c_fit = 0.0;
    double a3_fit = 0.0;
    double a4_fit = 0.0;
    std::vector<std::pair<double, double>> ftilde_samples;  // (x, Q(x)*x)
    double ftilde_limit = 0.0;
    double ftilde_closed = 0.0;
    double epsilon_sup = 0.0;
    bool sphere_coincident = false;
    bool umbilic_ladder = false;
};

// Axis asymptotics of the pinching quotient on a geometric ladder x in
// {x0, 2*x0, 4*x0} with x0 = 10 * (first profile abscissa), Richardson-extrapolated
// to x = 0 and compared against c(1+2bc)/(2(c^3 - a4)).
PinchReport ftilde_analysis(const ProfileCurve& profile, const SpeedFunction& speed,
                            double lambda, double b);

// True iff the profile seed b lands on the spherical solution: |1 + 2bc| <= 1e-8 with
// c the series coefficient; cross-checked against the equivalent power form
// b^(1+1/beta) = 2 Psi(1,0)^(1/beta) / lambda^(1/beta).
bool sphere_coincidence(double b, const SpeedFunction& speed);

struct ScanGrid {
    double H0 = 0.0, H1 = 1.0;
    int nH = 2;
    double K0 = 0.0, K1 = 1.0;
    int nK = 2;
};

struct ScanCell {
    double H = 0.0;
    double K = 0.0;
    std::optional<double> indicator;  // absent outside the domain
    std::string cls;                  // parabolic | nonparabolic | degenerate | outside | error
};

struct BoundaryPoint {
    double H = 0.0;
    double K = 0.0;
};

struct ScanResult {
    ScanGrid grid;
    std::vector<ScanCell> cells;  // row-major, H outer, K inner
    std::vector<BoundaryPoint> boundary;
};

ScanResult parabolicity_scan(const SpeedFunction& speed, const ScanGrid& grid);

std::string pinch_report_json(const PinchReport& report);
std::string scan_csv_header();
std::string scan_csv(const ScanResult& result);
std::string boundary_csv(const ScanResult& result);

}  // namespace solitonlab
