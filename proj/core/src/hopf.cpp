#include "solitonlab/hopf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "detail/numerics.hpp"
#include "solitonlab/io.hpp"

namespace solitonlab {

namespace {

void check_patch_args(double u0, double u1, int n, const char* what) {
    if (!(u1 > u0)) throw ArgError(std::string(what) + ": need u1 > u0");
    if (n < 8) throw ArgError(std::string(what) + ": need at least 8 nodes");
}

std::vector<double> uniform_grid(double u0, double u1, int n) {
    std::vector<double> g(n);
    double h = (u1 - u0) / (n - 1);
    for (int i = 0; i < n; ++i) g[i] = u0 + i * h;
    g.back() = u1;
    return g;
}

// Fixed-substep integrator for exact node-to-node advances (local error ~h^6
// makes the columns effectively exact against the FD defects being measured).
template <std::size_t N, class F>
std::array<double, N> advance_fixed(F&& f, double t0, std::array<double, N> y, double t1,
                                    double h_target) {
    double span = t1 - t0;
    if (span == 0.0) return y;
    int m = std::max(1, static_cast<int>(std::ceil(std::abs(span) / h_target)));
    double h = span / m;
    std::array<double, N> k1;
    f(t0, y, k1);
    for (int i = 0; i < m; ++i) {
        auto st = detail::dopri5_step<N>(f, t0 + i * h, y, k1, h);
        y = st.y5;
        k1 = st.k_last;
    }
    return y;
}

// First/second u-derivatives of a column, O(h^2); one-sided at the ends.
double d1(const std::vector<double>& v, size_t i, double h) {
    size_t n = v.size();
    if (i == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    if (i == n - 1) return (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
    return (v[i + 1] - v[i - 1]) / (2.0 * h);
}

double d2(const std::vector<double>& v, size_t i, double h) {
    size_t n = v.size();
    if (i == 0) return (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / (h * h);
    if (i == n - 1) return (2.0 * v[n - 1] - 5.0 * v[n - 2] + 4.0 * v[n - 3] - v[n - 4]) / (h * h);
    return (v[i + 1] - 2.0 * v[i] + v[i - 1]) / (h * h);
}

void fill_p(HopfPatch& p) {
    auto pq = hopf_differential(p);
    p.P_re = std::move(pq.first);
    p.P_im = std::move(pq.second);
}

// Interior margin excluded from defect maxima (one-sided stencils and
// second-generation differences live there).
constexpr size_t defect_margin = 2;

}  // namespace

HopfPatch sphere_patch(double R, double u0, double u1, int n) {
    if (R <= 0.0) throw ArgError("sphere_patch: R must be > 0");
    check_patch_args(u0, u1, n, "sphere_patch");
    HopfPatch p;
    p.u_grid = uniform_grid(u0, u1, n);
    for (double u : p.u_grid) {
        double x = R / std::cosh(u);
        p.x.push_back(x);
        p.y.push_back(-R * std::tanh(u));
        p.rho.push_back(x * x);
        p.H.push_back(2.0 / R);
        p.K.push_back(1.0 / (R * R));
    }
    fill_p(p);
    return p;
}

HopfPatch cylinder_patch(double r, double u0, double u1, int n) {
    if (r <= 0.0) throw ArgError("cylinder_patch: r must be > 0");
    check_patch_args(u0, u1, n, "cylinder_patch");
    HopfPatch p;
    p.u_grid = uniform_grid(u0, u1, n);
    for (double u : p.u_grid) {
        p.x.push_back(r);
        p.y.push_back(r * u);
        p.rho.push_back(r * r);
        p.H.push_back(-1.0 / r);
        p.K.push_back(0.0);
    }
    fill_p(p);
    return p;
}

HopfPatch ellipsoid_patch(double a, double c, double u0, double u1, int n) {
    if (a <= 0.0 || c <= 0.0) throw ArgError("ellipsoid_patch: axes must be > 0");
    check_patch_args(u0, u1, n, "ellipsoid_patch");
    HopfPatch p;
    p.u_grid = uniform_grid(u0, u1, n);
    auto rhs = [&](double, const std::array<double, 1>& t, std::array<double, 1>& dt) {
        double ct = std::cos(t[0]), st = std::sin(t[0]);
        dt[0] = a * st / std::sqrt(a * a * ct * ct + c * c * st * st);
    };
    // latitude at each node, integrating away from the equator (t = pi/2 at u = 0)
    std::vector<double> tt(n);
    auto sweep = [&](int from, int to, int step) {
        std::array<double, 1> t{std::acos(-1.0) / 2.0};
        double u_prev = 0.0;
        for (int i = from; i != to; i += step) {
            t = advance_fixed<1>(rhs, u_prev, t, p.u_grid[i], 2.5e-4);
            u_prev = p.u_grid[i];
            tt[i] = t[0];
        }
    };
    int i0 = static_cast<int>(std::lower_bound(p.u_grid.begin(), p.u_grid.end(), 0.0) -
                              p.u_grid.begin());
    sweep(std::min(i0, n - 1), -1, -1);
    sweep(std::min(i0, n - 1), n, 1);
    for (int i = 0; i < n; ++i) {
        double st = std::sin(tt[i]), ct = std::cos(tt[i]);
        double x = a * st;
        double m = std::sqrt(a * a * ct * ct + c * c * st * st);
        p.x.push_back(x);
        p.y.push_back(c * ct);
        p.rho.push_back(x * x);
        double k1 = c / (a * m);
        double k2 = a * c / (m * m * m);
        p.H.push_back(k1 + k2);
        p.K.push_back(k1 * k2);
    }
    fill_p(p);
    return p;
}

HopfPatch soliton_patch(const SpeedFunction& speed, double lambda, const GraphJet& seed,
                        double u0, double u1, int n) {
    check_patch_args(u0, u1, n, "soliton_patch");
    if (seed.x <= 0.0) throw ArgError("soliton_patch: seed must have x > 0");
    HopfPatch p;
    p.u_grid = uniform_grid(u0, u1, n);
    double w = 1.0 + seed.gamma_p * seed.gamma_p;
    std::array<double, 3> z0{seed.x, seed.gamma, std::atan(seed.gamma_p)};
    double k2_seed = -seed.gamma_pp / std::pow(w, 1.5);

    std::vector<std::array<double, 4>> nodes(n);  // x, y, phi, k2
    auto sweep = [&](int from, int to, int step) {
        std::array<double, 3> z = z0;
        double guess = k2_seed;
        auto rhs = [&](double, const std::array<double, 3>& zz, std::array<double, 3>& dz) {
            double k2v = solve_param_k2(speed, lambda, zz[0], zz[1], zz[2], guess);
            guess = k2v;
            dz[0] = zz[0] * std::cos(zz[2]);
            dz[1] = zz[0] * std::sin(zz[2]);
            dz[2] = -zz[0] * k2v;
        };
        double u_prev = 0.0;
        for (int i = from; i != to; i += step) {
            z = advance_fixed<3>(rhs, u_prev, z, p.u_grid[i], 2.5e-4);
            u_prev = p.u_grid[i];
            nodes[i] = {z[0], z[1], z[2],
                        solve_param_k2(speed, lambda, z[0], z[1], z[2], guess)};
        }
    };
    int i0 = static_cast<int>(std::lower_bound(p.u_grid.begin(), p.u_grid.end(), 0.0) -
                              p.u_grid.begin());
    sweep(std::min(i0, n - 1), -1, -1);
    sweep(std::min(i0, n - 1), n, 1);
    for (int i = 0; i < n; ++i) {
        auto [x, y, phi, k2] = nodes[i];
        if (x <= 0.0) throw DomainError("soliton_patch: profile reached the axis");
        p.x.push_back(x);
        p.y.push_back(y);
        p.rho.push_back(x * x);
        double k1 = -std::sin(phi) / x;
        p.H.push_back(k1 + k2);
        p.K.push_back(k1 * k2);
    }
    fill_p(p);
    return p;
}

namespace {

// Node data extracted from a profile sample for the Hermite chain.
struct CurvePoint {
    double x, y, tx, ty, k1, k2;
};

CurvePoint curve_point(const ProfileSample& s) {
    CurvePoint c;
    c.x = s.x;
    c.y = s.y;
    if (s.graph) {
        double w = 1.0 + s.gamma_p * s.gamma_p, sw = std::sqrt(w);
        c.tx = 1.0 / sw;
        c.ty = s.gamma_p / sw;
        auto k = curvature_graph({s.x, s.y, s.gamma_p, s.gamma_pp});
        c.k1 = k.k1;
        c.k2 = k.k2;
    } else {
        c.tx = std::cos(s.phi);
        c.ty = std::sin(s.phi);
        c.k1 = -std::sin(s.phi) / s.x;
        c.k2 = s.k2;
    }
    return c;
}

struct Hermite {
    double p0x, p0y, p1x, p1y, m0x, m0y, m1x, m1y;

    void at(double t, double* x, double* y) const {
        double t2 = t * t, t3 = t2 * t;
        double h00 = 2 * t3 - 3 * t2 + 1, h10 = t3 - 2 * t2 + t;
        double h01 = -2 * t3 + 3 * t2, h11 = t3 - t2;
        *x = h00 * p0x + h10 * m0x + h01 * p1x + h11 * m1x;
        *y = h00 * p0y + h10 * m0y + h01 * p1y + h11 * m1y;
    }
    void deriv(double t, double* dx, double* dy) const {
        double t2 = t * t;
        double g00 = 6 * t2 - 6 * t, g10 = 3 * t2 - 4 * t + 1;
        double g01 = -6 * t2 + 6 * t, g11 = 3 * t2 - 2 * t;
        *dx = g00 * p0x + g10 * m0x + g01 * p1x + g11 * m1x;
        *dy = g00 * p0y + g10 * m0y + g01 * p1y + g11 * m1y;
    }
    double du_dt(double t) const {  // |C'(t)| / x(t)
        double x, y, dx, dy;
        at(t, &x, &y);
        deriv(t, &dx, &dy);
        if (x <= 0.0) throw DomainError("isothermal_reparam: profile touches the axis");
        return std::sqrt(dx * dx + dy * dy) / x;
    }
};

// 4-point Gauss-Legendre of f over [a, b].
template <class F>
double gauss4(F&& f, double a, double b) {
    static const double xs[2] = {0.3399810435848563, 0.8611363115940526};
    static const double ws[2] = {0.6521451548625461, 0.3478548451374538};
    double c = 0.5 * (a + b), hw = 0.5 * (b - a);
    double s = 0.0;
    for (int k = 0; k < 2; ++k)
        s += ws[k] * (f(c - hw * xs[k]) + f(c + hw * xs[k]));
    return s * hw;
}

// du over [0, t] within one segment (two GL panels keep the error ~Delta^9).
double u_of_t(const Hermite& hh, double t) {
    auto f = [&](double q) { return hh.du_dt(q); };
    return gauss4(f, 0.0, 0.5 * t) + gauss4(f, 0.5 * t, t);
}

// Cubic Lagrange through 4 nodes (uk, vk), evaluated at u.
double lagrange4(const double* uk, const double* vk, double u) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        double li = 1.0;
        for (int j = 0; j < 4; ++j)
            if (j != i) li *= (u - uk[j]) / (uk[i] - uk[j]);
        s += li * vk[i];
    }
    return s;
}

}  // namespace

HopfPatch isothermal_reparam(const ProfileCurve& profile, int n) {
    if (n < 8) throw ArgError("isothermal_reparam: need at least 8 nodes");
    std::vector<CurvePoint> pts;
    for (const auto& s : profile) {
        if (s.x <= 0.0) throw DomainError("isothermal_reparam: profile touches the axis");
        if (!pts.empty()) {
            double dx = s.x - pts.back().x, dy = s.y - pts.back().y;
            if (dx * dx + dy * dy == 0.0) continue;
        }
        pts.push_back(curve_point(s));
    }
    size_t m = pts.size();
    if (m < 4) throw ArgError("isothermal_reparam: need at least 4 distinct profile samples");

    std::vector<Hermite> seg(m - 1);
    for (size_t i = 0; i + 1 < m; ++i) {
        double dx = pts[i + 1].x - pts[i].x, dy = pts[i + 1].y - pts[i].y;
        double chord = std::sqrt(dx * dx + dy * dy);
        seg[i] = {pts[i].x,           pts[i].y,           pts[i + 1].x,      pts[i + 1].y,
                  chord * pts[i].tx,  chord * pts[i].ty,  chord * pts[i + 1].tx,
                  chord * pts[i + 1].ty};
    }
    std::vector<double> u_node(m);
    u_node[0] = 0.0;
    for (size_t i = 0; i + 1 < m; ++i) u_node[i + 1] = u_node[i] + u_of_t(seg[i], 1.0);

    HopfPatch p;
    p.u_grid = uniform_grid(0.0, u_node.back(), n);
    for (int j = 0; j < n; ++j) {
        double u = p.u_grid[j];
        size_t i = std::upper_bound(u_node.begin(), u_node.end(), u) - u_node.begin();
        i = std::min(std::max<size_t>(i, 1), m - 1) - 1;  // segment index
        // invert u(t) on the segment by Newton with bisection safeguard
        double target = u - u_node[i];
        double seg_len = u_node[i + 1] - u_node[i];
        double lo = 0.0, hi = 1.0;
        double t = std::min(1.0, std::max(0.0, target / seg_len));
        for (int it = 0; it < 60; ++it) {
            double val = u_of_t(seg[i], t) - target;
            if (std::abs(val) <= 1e-15 * std::max(1.0, std::abs(target))) break;
            if (val > 0)
                hi = t;
            else
                lo = t;
            if (hi - lo < 1e-16) break;
            double tn = t - val / seg[i].du_dt(t);
            t = (tn > lo && tn < hi) ? tn : 0.5 * (lo + hi);
        }
        double x, y;
        seg[i].at(t, &x, &y);
        p.x.push_back(x);
        p.y.push_back(y);
        p.rho.push_back(x * x);
        // curvatures by 4-node interpolation of the profile's own jet values
        size_t i0 = std::min(std::max<size_t>(i, 1), m - 3) - 1;
        double uk[4], k1k[4], k2k[4];
        for (int q = 0; q < 4; ++q) {
            uk[q] = u_node[i0 + q];
            k1k[q] = pts[i0 + q].k1;
            k2k[q] = pts[i0 + q].k2;
        }
        double k1 = lagrange4(uk, k1k, u), k2 = lagrange4(uk, k2k, u);
        p.H.push_back(k1 + k2);
        p.K.push_back(k1 * k2);
    }
    fill_p(p);
    return p;
}

std::pair<std::vector<double>, std::vector<double>> hopf_differential(const HopfPatch& p) {
    size_t n = p.u_grid.size();
    double h = p.h();
    std::vector<double> pre(n), pim(n);
    for (size_t i = 0; i < n; ++i) {
        double xu = d1(p.x, i, h), yu = d1(p.y, i, h);
        double xuu = d2(p.x, i, h), yuu = d2(p.y, i, h);
        double nrm = std::sqrt(xu * xu + yu * yu);
        // II(Xu,Xu) = <Xuu,N>, II(Xth,Xth) = <Xthth,N>, II(Xu,Xth) = <Xuth,N>;
        // at th = 0: Xthth = (-x,0,0), Xuth = (0,xu,0), N = (yu,0,-xu)/|.|
        double ii_uu = (xuu * yu - yuu * xu) / nrm;
        double ii_tt = -p.x[i] * yu / nrm;
        double ii_ut = xu * 0.0;  // N has no middle component at th = 0
        pre[i] = 0.25 * (ii_uu - ii_tt);
        pim[i] = -0.5 * ii_ut;
    }
    return {pre, pim};
}

double verify_modulus_identity(const HopfPatch& p) {
    size_t n = p.u_grid.size();
    double worst = 0.0;
    for (size_t i = defect_margin; i + defect_margin < n; ++i) {
        double p2 = p.P_re[i] * p.P_re[i] + p.P_im[i] * p.P_im[i];
        double rhs = p.rho[i] * p.rho[i] / 16.0 * (p.H[i] * p.H[i] - 4.0 * p.K[i]);
        worst = std::max(worst, std::abs(p2 - rhs) / (1.0 + p2));
    }
    return worst;
}

double verify_pz_identity(const HopfPatch& p) {
    size_t n = p.u_grid.size();
    double h = p.h();
    double worst = 0.0;
    for (size_t i = defect_margin; i + defect_margin < n; ++i) {
        double pu = d1(p.P_re, i, h);
        double hu = d1(p.H, i, h);
        worst = std::max(worst, std::abs(0.5 * pu - p.rho[i] / 8.0 * hu));
    }
    return worst;
}

double verify_structure_equations(const HopfPatch& p) {
    using cplx = std::complex<double>;
    using vec3 = std::array<cplx, 3>;
    size_t n = p.u_grid.size();
    double h = p.h();
    std::vector<double> n1(n), n3(n);
    for (size_t i = 0; i < n; ++i) {
        double xu = d1(p.x, i, h), yu = d1(p.y, i, h);
        double nrm = std::sqrt(xu * xu + yu * yu);
        n1[i] = yu / nrm;
        n3[i] = -xu / nrm;
    }
    const cplx I(0.0, 1.0);
    double worst = 0.0;
    auto upd = [&](const vec3& v) {
        for (const auto& c : v) worst = std::max(worst, std::abs(c));
    };
    for (size_t i = defect_margin; i + defect_margin < n; ++i) {
        double x = p.x[i], xu = d1(p.x, i, h), yu = d1(p.y, i, h);
        double xuu = d2(p.x, i, h), yuu = d2(p.y, i, h);
        double rho = p.rho[i], rho_u = d1(p.rho, i, h);
        double Hm = p.H[i];
        cplx P(p.P_re[i], p.P_im[i]);
        vec3 Xz{0.5 * xu, -0.5 * I * x, 0.5 * yu};
        vec3 Xzb{0.5 * xu, 0.5 * I * x, 0.5 * yu};
        vec3 Xzz{0.25 * (xuu + x), -0.5 * I * xu, 0.25 * yuu};
        vec3 Xzbzb{0.25 * (xuu + x), 0.5 * I * xu, 0.25 * yuu};
        vec3 Xzzb{0.25 * (xuu - x), 0.0, 0.25 * yuu};
        vec3 N{n1[i], 0.0, n3[i]};
        vec3 Nz{0.5 * d1(n1, i, h), -0.5 * I * n1[i], 0.5 * d1(n3, i, h)};
        vec3 Nzb{0.5 * d1(n1, i, h), 0.5 * I * n1[i], 0.5 * d1(n3, i, h)};
        cplx rz_over_rho = 0.5 * rho_u / rho;

        vec3 e;
        for (int q = 0; q < 3; ++q) e[q] = Xzz[q] - rz_over_rho * Xz[q] - P * N[q];
        upd(e);
        for (int q = 0; q < 3; ++q) e[q] = Xzzb[q] - 0.25 * rho * Hm * N[q];
        upd(e);
        for (int q = 0; q < 3; ++q) e[q] = Xzbzb[q] - rz_over_rho * Xzb[q] - std::conj(P) * N[q];
        upd(e);
        for (int q = 0; q < 3; ++q) e[q] = Nz[q] + 0.5 * Hm * Xz[q] + 2.0 * P / rho * Xzb[q];
        upd(e);
        for (int q = 0; q < 3; ++q)
            e[q] = Nzb[q] + 0.5 * Hm * Xzb[q] + 2.0 * std::conj(P) / rho * Xz[q];
        upd(e);
    }
    return worst;
}

double verify_tangential_identity(const HopfPatch& p) {
    size_t n = p.u_grid.size();
    double h = p.h();
    double worst = 0.0;
    for (size_t i = defect_margin; i + defect_margin < n; ++i) {
        double x = p.x[i], y = p.y[i];
        double xu = d1(p.x, i, h), yu = d1(p.y, i, h);
        double nrm = std::sqrt(xu * xu + yu * yu);
        double sup = (x * yu - y * xu) / nrm;
        double lhs = std::sqrt(std::max(0.0, x * x + y * y - sup * sup));
        double rhs = std::abs(x * xu + y * yu) / std::sqrt(p.rho[i]);
        worst = std::max(worst, std::abs(lhs - rhs));
    }
    return worst;
}

double verify_isothermal_metric(const HopfPatch& p) {
    size_t n = p.u_grid.size();
    double h = p.h();
    double worst = 0.0;
    for (size_t i = defect_margin; i + defect_margin < n; ++i) {
        double xu = d1(p.x, i, h), yu = d1(p.y, i, h);
        worst = std::max(worst, std::abs(xu * xu + yu * yu - p.x[i] * p.x[i]));
    }
    return worst;
}

const char* const hopf_csv_header = "u,rho,P_re,P_im,H,K";

std::string hopf_csv(const HopfPatch& p) {
    std::string out = hopf_csv_header;
    out += '\n';
    for (size_t i = 0; i < p.u_grid.size(); ++i)
        out += csv_line({p.u_grid[i], p.rho[i], p.P_re[i], p.P_im[i], p.H[i], p.K[i]});
    return out;
}

}  // namespace solitonlab
