#include "solitonlab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "detail/numerics.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/io.hpp"
#include "solitonlab/rotgeom.hpp"

namespace solitonlab {

namespace {

constexpr double tol_sph = 1e-8;

// Pinching quotient times x, computed without the umbilic gate: on the exact sphere
// this is 0/0 and the caller must not ask for it.
double ftilde_at(const ProfileCurve& profile, double x) {
    GraphJet jet = jet_at(profile, x);
    PrincipalCurvatures k = curvature_graph(jet);
    SupportQuantities s = support_quantities(jet);
    double h = k.k1 + k.k2;
    double diff = std::abs(k.k1 - k.k2);
    return x * std::abs(h) * std::sqrt(std::max(0.0, s.tangential_sq)) / diff;
}

bool coincidence_forms(double b, const SpeedFunction& speed, double lambda) {
    if (lambda == 0.0) throw ArgError("sphere_coincidence: lambda must be nonzero");
    if (speed.beta == 0.0) throw ArgError("sphere_coincidence: beta must be nonzero");

    double c = series_c(speed, lambda, b);
    bool via_c = std::abs(1.0 + 2.0 * b * c) <= tol_sph;

    double inv_beta = 1.0 / speed.beta;
    double psi10 = eval(speed, EvalPoint(1.0, 0.0));
    double lhs = rpow(b, 1.0 + inv_beta);
    double rhs = 2.0 * rpow(psi10, inv_beta) / rpow(lambda, inv_beta);
    double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
    bool via_power = std::abs(lhs - rhs) <= tol_sph * scale;

    if (via_c != via_power)
        throw DomainError("sphere_coincidence: series and power criteria disagree");
    return via_c;
}

}  // namespace

TaylorFit taylor_fit(const ProfileCurve& profile, double b, int n_samples, int degree) {
    if (!(b > 0.0)) throw ArgError("taylor_fit: b must be positive");
    if (degree < 4) throw ArgError("taylor_fit: degree must be at least 4");
    int cols = degree - 1;  // coefficients of x^2 .. x^degree
    if (n_samples < cols) throw ArgError("taylor_fit: n_samples below coefficient count");

    double window = 0.1 * b;
    std::vector<double> xs, ys;
    for (const auto& s : profile) {
        if (!s.graph) continue;
        if (s.x > 0.0 && s.x <= window) {
            xs.push_back(s.x);
            ys.push_back(s.y - b);
        }
    }
    if (static_cast<int>(xs.size()) < n_samples)
        throw ArgError("taylor_fit: not enough samples in (0, 0.1*b]");

    Eigen::MatrixXd A(xs.size(), cols);
    Eigen::VectorXd rhs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double t = xs[i] / window;
        double p = t * t;
        for (int j = 0; j < cols; ++j) {
            A(i, j) = p;
            p *= t;
        }
        rhs(i) = ys[i];
    }
    Eigen::VectorXd coef = A.colPivHouseholderQr().solve(rhs);

    TaylorFit fit;
    fit.c = coef(0) / (window * window);
    fit.a3 = coef(1) / (window * window * window);
    fit.a4 = coef(2) / (window * window * window * window);
    return fit;
}

bool sphere_coincidence(double b, const SpeedFunction& speed) {
    if (!(b > 0.0)) throw ArgError("sphere_coincidence: b must be positive");
    return coincidence_forms(b, speed, speed.lambda);
}

PinchReport ftilde_analysis(const ProfileCurve& profile, const SpeedFunction& speed,
                            double lambda, double b) {
    if (profile.empty()) throw ArgError("ftilde_analysis: empty profile");
    if (!(b > 0.0)) throw ArgError("ftilde_analysis: b must be positive");

    PinchReport report;
    report.b = b;
    report.lambda = lambda;
    report.c_series = series_c(speed, lambda, b);
    report.sphere_coincident = coincidence_forms(b, speed, lambda);

    TaylorFit fit = taylor_fit(profile, b, 6, 6);
    report.c_fit = fit.c;
    report.a3_fit = fit.a3;
    report.a4_fit = fit.a4;

    double x0 = 10.0 * profile.front().x;
    if (report.sphere_coincident) {
        report.umbilic_ladder = true;
        for (int k = 0; k < 3; ++k)
            report.ftilde_samples.emplace_back(x0 * (1 << k), detail::quiet_nan);
        report.ftilde_limit = detail::quiet_nan;
        report.ftilde_closed = detail::quiet_nan;
        report.epsilon_sup = pinching_epsilon_sup(profile_samples(profile, b), lambda);
    } else {
        for (int k = 0; k < 3; ++k) {
            double x = x0 * (1 << k);
            report.ftilde_samples.emplace_back(x, ftilde_at(profile, x));
        }
        double f0 = report.ftilde_samples[0].second;
        double f1 = report.ftilde_samples[1].second;
        report.ftilde_limit = (4.0 * f0 - f1) / 3.0;
        double c = report.c_series;
        // |.|: the ladder quotient is unsigned, so the closed form is compared by modulus
        report.ftilde_closed =
            std::abs(c * (1.0 + 2.0 * b * c) / (2.0 * (c * c * c - report.a4_fit)));
        report.epsilon_sup = 0.0;  // Q ~ F(0)/x is unbounded toward the axis
    }
    return report;
}

ScanResult parabolicity_scan(const SpeedFunction& speed, const ScanGrid& grid) {
    if (grid.nH < 1 || grid.nK < 2) throw ArgError("parabolicity_scan: grid too small");

    ScanResult result;
    result.grid = grid;
    result.cells.reserve(static_cast<std::size_t>(grid.nH) * grid.nK);

    auto h_at = [&](int i) {
        return grid.nH == 1 ? grid.H0 : grid.H0 + (grid.H1 - grid.H0) * i / (grid.nH - 1);
    };
    auto k_at = [&](int j) {
        return grid.K0 + (grid.K1 - grid.K0) * j / (grid.nK - 1);
    };

    for (int i = 0; i < grid.nH; ++i) {
        double H = h_at(i);
        int col_start = static_cast<int>(result.cells.size());
        for (int j = 0; j < grid.nK; ++j) {
            double K = k_at(j);
            ScanCell cell;
            cell.H = H;
            cell.K = K;
            double x2 = H * H - 4.0 * K;
            if (x2 < -EvalPoint::tol_clamp) {
                cell.cls = "outside";
            } else {
                try {
                    double ind = parabolicity_indicator(speed, EvalPoint(H, x2));
                    cell.indicator = ind;
                    cell.cls = ind > 0.0 ? "parabolic" : (ind < 0.0 ? "nonparabolic" : "degenerate");
                } catch (const DomainError&) {
                    cell.cls = "error";
                }
            }
            result.cells.push_back(std::move(cell));
        }
        // boundary: sign changes of the indicator along this H column; exact zeros are
        // emitted once, from the pair whose left cell vanishes
        for (int j = 0; j + 1 < grid.nK; ++j) {
            const ScanCell& a = result.cells[col_start + j];
            const ScanCell& c = result.cells[col_start + j + 1];
            if (!a.indicator || !c.indicator) continue;
            double fa = *a.indicator, fc = *c.indicator;
            if (fa == 0.0) {
                result.boundary.push_back({H, a.K});
            } else if (fc != 0.0 && (fa < 0) != (fc < 0)) {
                double t = fa / (fa - fc);
                result.boundary.push_back({H, a.K + t * (c.K - a.K)});
            }
        }
        const ScanCell& last = result.cells[col_start + grid.nK - 1];
        if (last.indicator && *last.indicator == 0.0)
            result.boundary.push_back({H, last.K});
    }

    std::sort(result.boundary.begin(), result.boundary.end(),
              [](const BoundaryPoint& a, const BoundaryPoint& b) {
                  return a.H != b.H ? a.H < b.H : a.K < b.K;
              });
    return result;
}

std::string pinch_report_json(const PinchReport& report) {
    nlohmann::json j;
    j["b"] = report.b;
    j["lambda"] = report.lambda;
    j["c_series"] = report.c_series;
    j["c_fit"] = report.c_fit;
    j["a3_fit"] = report.a3_fit;
    j["a4_fit"] = report.a4_fit;
    j["ftilde_samples"] = nlohmann::json::array();
    for (const auto& [x, f] : report.ftilde_samples)
        j["ftilde_samples"].push_back({x, f});
    j["ftilde_limit"] = report.ftilde_limit;
    j["ftilde_closed"] = report.ftilde_closed;
    j["epsilon_sup"] = report.epsilon_sup;
    j["sphere_coincident"] = report.sphere_coincident;
    j["umbilic_ladder"] = report.umbilic_ladder;
    return j.dump(2);
}

std::string scan_csv_header() { return "H,K,indicator,class"; }

std::string scan_csv(const ScanResult& result) {
    std::string out = scan_csv_header() + "\n";
    for (const auto& c : result.cells) {
        out += fmt_double(c.H);
        out += ',';
        out += fmt_double(c.K);
        out += ',';
        if (c.indicator) out += fmt_double(*c.indicator);
        out += ',';
        out += c.cls;
        out += '\n';
    }
    return out;
}

std::string boundary_csv(const ScanResult& result) {
    std::string out = "H,K\n";
    for (const auto& p : result.boundary) {
        out += fmt_double(p.H);
        out += ',';
        out += fmt_double(p.K);
        out += '\n';
    }
    return out;
}

}  // namespace solitonlab
