#include "solitonlab/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "detail/numerics.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/rotgeom.hpp"
#include "solitonlab/soliton.hpp"

namespace solitonlab {

namespace {

// lambda*R - Psi(2/R, 0); NaN where the speed is undefined.
double sphere_gap(const SpeedFunction& f, double R) {
    try {
        return f.lambda * R - eval(f, EvalPoint(2.0 / R, 0.0));
    } catch (const DomainError&) {
        return detail::quiet_nan;
    }
}

bool holds_identically(const SpeedFunction& f) {
    for (double R : {0.5, 1.0, 3.0, 7.0}) {
        double g = sphere_gap(f, R);
        if (!(std::abs(g) <= 1e-12 * std::max(1.0, std::abs(f.lambda) * R))) return false;
    }
    return true;
}

// R = [2^beta * Psi(1,0) / lambda]^{1/(beta+1)}; ArgError at the beta = -1
// exponent singularity so the caller can fall back to bracketing.
double closed_form_radius(const SpeedFunction& f) {
    if (std::abs(f.beta + 1.0) < 1e-14) throw ArgError("closed_form_radius: beta = -1");
    double psi10 = eval(f, EvalPoint(1.0, 0.0));
    double base = std::pow(2.0, f.beta) * psi10 / f.lambda;
    if (!(base > 0.0)) return detail::quiet_nan;
    return std::pow(base, 1.0 / (f.beta + 1.0));
}

double characteristic_length(const SpeedFunction& f) {
    try {
        if (std::abs(f.beta + 1.0) < 1e-14) return 1.0;
        double psi10 = eval(f, EvalPoint(1.0, 0.0));
        double base = std::abs(psi10 / f.lambda);
        if (!(base > 0.0) || !std::isfinite(base)) return 1.0;
        double r = std::pow(base, 1.0 / (f.beta + 1.0));
        return std::isfinite(r) && r > 0.0 ? r : 1.0;
    } catch (const DomainError&) {
        return 1.0;
    }
}

// All positive roots of g on a log-spaced grid over (R_char*1e-6, R_char*1e6).
std::vector<double> scan_roots(const SpeedFunction& f, double (*g)(const SpeedFunction&, double)) {
    double r_char = characteristic_length(f);
    double lo = 1e-6 * r_char, hi = 1e6 * r_char;
    constexpr int n = 1201;
    double step = std::log(hi / lo) / (n - 1);

    std::vector<double> roots;
    double prev_r = lo, prev_g = g(f, lo);
    for (int i = 1; i < n; ++i) {
        double r = lo * std::exp(i * step);
        double gr = g(f, r);
        if (std::isfinite(prev_g) && std::isfinite(gr)) {
            if (prev_g == 0.0) {
                roots.push_back(prev_r);
            } else if ((prev_g < 0) != (gr < 0)) {
                auto fn = [&](double R) { return g(f, R); };
                double xtol = 1e-14 * std::max(1.0, r);
                roots.push_back(detail::brent(fn, prev_r, r, prev_g, gr, xtol));
            }
        }
        prev_r = r;
        prev_g = gr;
    }
    if (prev_g == 0.0) roots.push_back(prev_r);

    std::sort(roots.begin(), roots.end());
    std::vector<double> out;
    for (double r : roots) {
        if (out.empty() || r - out.back() > 1e-9 * std::max(1.0, r)) out.push_back(r);
    }
    return out;
}

double weingarten_gap(const SpeedFunction& f, double R) {
    try {
        return eval(f, EvalPoint(2.0 / R, 0.0));
    } catch (const DomainError&) {
        return detail::quiet_nan;
    }
}

}  // namespace

SphereFamilyResult sphere_radius(const SpeedFunction& speed) {
    SphereFamilyResult result;

    if (speed.lambda == 0.0) {
        result.weingarten = true;
        bool all_zero = true;
        for (double R : {0.5, 1.0, 3.0, 7.0}) {
            double g = weingarten_gap(speed, R);
            if (!(std::abs(g) <= 1e-12)) all_zero = false;
        }
        if (all_zero) {
            result.any_radius = true;
            return result;
        }
        for (double r : scan_roots(speed, &weingarten_gap))
            result.solutions.push_back({r, false, weingarten_gap(speed, r)});
        return result;
    }

    if (holds_identically(speed)) {
        result.any_radius = true;
        return result;
    }

    std::vector<double> roots;
    bool have_closed = false;
    if (speed.family != Family::Custom) {
        try {
            double r = closed_form_radius(speed);
            have_closed = true;
            if (std::isfinite(r) && r > 0.0) roots.push_back(r);
        } catch (const ArgError&) {
            have_closed = false;
        }
    }
    if (!have_closed) roots = scan_roots(speed, &sphere_gap);

    for (double r : roots) result.solutions.push_back({r, true, sphere_gap(speed, r)});
    return result;
}

double verify_sphere(const SpeedFunction& speed, double R) {
    if (!(R > 0.0)) throw ArgError("verify_sphere: R must be positive");
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
        double x = R * i / 51.0;
        double gamma = std::sqrt(R * R - x * x);
        GraphJet jet{x, gamma, -x / gamma, -R * R / (gamma * gamma * gamma)};
        worst = std::max(worst, std::abs(residual(speed, speed.lambda, jet)));
    }
    return worst;
}

std::string sphere_result_json(const SphereFamilyResult& result) {
    nlohmann::json j;
    j["any_radius"] = result.any_radius;
    j["weingarten"] = result.weingarten;
    j["solutions"] = nlohmann::json::array();
    for (const auto& s : result.solutions) {
        nlohmann::json e;
        e["R"] = s.R;
        e["center_is_origin"] = s.center_is_origin;
        e["residual"] = s.residual;
        j["solutions"].push_back(e);
    }
    return j.dump(2);
}

}  // namespace solitonlab
