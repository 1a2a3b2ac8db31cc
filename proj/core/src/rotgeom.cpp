#include "solitonlab/rotgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "solitonlab/io.hpp"

namespace solitonlab {

PrincipalCurvatures curvature_graph(const GraphJet& j) {
    if (j.x <= 0.0) throw DomainError("curvature_graph: x must be > 0");
    double w = 1.0 + j.gamma_p * j.gamma_p;
    double sw = std::sqrt(w);
    return {-j.gamma_p / (j.x * sw), -j.gamma_pp / (w * sw)};
}

PrincipalCurvatures curvature_param(const ParamJet& j) {
    if (j.x <= 0.0) throw DomainError("curvature_param: x must be > 0");
    double s2 = j.xp * j.xp + j.yp * j.yp;
    if (s2 <= 0.0) throw DomainError("curvature_param: irregular point (x'=y'=0)");
    double s = std::sqrt(s2);
    return {-j.yp / (j.x * s), (j.xpp * j.yp - j.xp * j.ypp) / (s2 * s)};
}

SupportQuantities support_quantities(const GraphJet& j) {
    if (j.x <= 0.0) throw DomainError("support_quantities: x must be > 0");
    double w = 1.0 + j.gamma_p * j.gamma_p;
    double t = j.x + j.gamma * j.gamma_p;
    return {(j.x * j.gamma_p - j.gamma) / std::sqrt(w), t * t / w};
}

SupportQuantities support_quantities(const ParamJet& j) {
    if (j.x <= 0.0) throw DomainError("support_quantities: x must be > 0");
    double s2 = j.xp * j.xp + j.yp * j.yp;
    if (s2 <= 0.0) throw DomainError("support_quantities: irregular point");
    double t = j.x * j.xp + j.y * j.yp;
    return {(j.x * j.yp - j.y * j.xp) / std::sqrt(s2), t * t / s2};
}

bool is_umbilic(double H, double K, double length_scale) {
    double d = H * H - 4.0 * K;
    double scale = std::max(H * H, 1.0 / (length_scale * length_scale));
    return d <= 1e-10 * scale;
}

std::optional<double> pinching_ratio(const CurvatureSample& c, double length_scale) {
    if (is_umbilic(c.H, c.K, length_scale)) return std::nullopt;
    double d = c.H * c.H - 4.0 * c.K;
    return std::abs(c.H) * std::sqrt(std::max(0.0, c.tangential_sq)) / std::sqrt(d);
}

double pinching_epsilon_sup(const std::vector<CurvatureSample>& samples, double lambda) {
    if (lambda == 0.0) throw ArgError("pinching_epsilon_sup: lambda must be nonzero");
    double sup_q = -1.0;
    for (const auto& s : samples)
        if (s.Q) sup_q = std::max(sup_q, *s.Q);
    if (sup_q <= 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (lambda * lambda * sup_q * sup_q);
}

CurvatureSample sample_graph(const GraphJet& j, double length_scale) {
    CurvatureSample s;
    s.x = j.x;
    s.gamma = j.gamma;
    s.gamma_p = j.gamma_p;
    s.gamma_pp = j.gamma_pp;
    auto [k1, k2] = curvature_graph(j);
    s.k1 = k1;
    s.k2 = k2;
    s.H = k1 + k2;
    s.K = k1 * k2;
    auto sq = support_quantities(j);
    s.support = sq.support;
    s.tangential_sq = sq.tangential_sq;
    s.Q = pinching_ratio(s, length_scale);
    return s;
}

CurvatureSample sample_param(const ParamJet& j, double length_scale) {
    CurvatureSample s;
    s.x = j.x;
    s.gamma = j.y;
    // graph-form derivatives only make sense away from vertical tangents
    double sn = std::sqrt(j.xp * j.xp + j.yp * j.yp);
    if (sn > 0.0 && std::abs(j.xp) / sn >= 1e-8) {
        s.gamma_p = j.yp / j.xp;
        s.gamma_pp = (j.ypp * j.xp - j.yp * j.xpp) / (j.xp * j.xp * j.xp);
    }
    auto [k1, k2] = curvature_param(j);
    s.k1 = k1;
    s.k2 = k2;
    s.H = k1 + k2;
    s.K = k1 * k2;
    auto sq = support_quantities(j);
    s.support = sq.support;
    s.tangential_sq = sq.tangential_sq;
    s.Q = pinching_ratio(s, length_scale);
    return s;
}

const char* const curvature_csv_header =
    "x,gamma,gamma_p,gamma_pp,k1,k2,H,K,support,tangential_sq,Q";

std::string curvature_csv(const std::vector<CurvatureSample>& samples) {
    std::string out = curvature_csv_header;
    out += '\n';
    for (const auto& s : samples)
        out += csv_line({s.x, s.gamma, s.gamma_p, s.gamma_pp, s.k1, s.k2, s.H, s.K,
                         s.support, s.tangential_sq, s.Q});
    return out;
}

}  // namespace solitonlab
