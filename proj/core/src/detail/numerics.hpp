#pragma once
// Internal numerics: Dormand-Prince 5(4) step, Brent root refinement, and an
// expanding-bracket scan for implicit equations whose domain may have holes.
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>

namespace solitonlab::detail {

inline constexpr double quiet_nan = std::numeric_limits<double>::quiet_NaN();

// ---------------------------------------------------------------------------
// Dormand-Prince 5(4), FSAL. One step from (t, y) with derivative k1 = f(t,y).
// On return: y5 is the 5th-order solution, err the embedded error estimate,
// k_last = f(t+h, y5) reusable as the next step's k1.
// f(t, y, dydt) must fill dydt; it may throw — the caller handles retries.
// ---------------------------------------------------------------------------
template <std::size_t N>
struct RKStep {
    std::array<double, N> y5;
    std::array<double, N> err;
    std::array<double, N> k_last;
};

template <std::size_t N, class F>
RKStep<N> dopri5_step(F&& f, double t, const std::array<double, N>& y,
                      const std::array<double, N>& k1, double h) {
    constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                     a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                     a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                     e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    std::array<double, N> k2, k3, k4, k5, k6, yt;
    RKStep<N> out;

    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
    f(t + c2 * h, yt, k2);
    for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(t + c3 * h, yt, k3);
    for (std::size_t i = 0; i < N; ++i)
        yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(t + c4 * h, yt, k4);
    for (std::size_t i = 0; i < N; ++i)
        yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(t + c5 * h, yt, k5);
    for (std::size_t i = 0; i < N; ++i)
        yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    f(t + h, yt, k6);
    for (std::size_t i = 0; i < N; ++i)
        out.y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    f(t + h, out.y5, out.k_last);
    for (std::size_t i = 0; i < N; ++i)
        out.err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                          e7 * out.k_last[i]);
    return out;
}

// Scaled RMS error norm; accept when <= 1.
template <std::size_t N>
double error_norm(const std::array<double, N>& err, const std::array<double, N>& y0,
                  const std::array<double, N>& y1, double atol, double rtol) {
    double s = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
        double q = err[i] / sc;
        s += q * q;
    }
    return std::sqrt(s / N);
}

inline double next_step_factor(double err_norm_value) {
    if (err_norm_value <= 0.0) return 5.0;
    double fac = 0.9 * std::pow(err_norm_value, -0.2);
    return std::min(5.0, std::max(0.2, fac));
}

// ---------------------------------------------------------------------------
// Brent-Dekker on a sign-changing bracket [a,b]. xtol is absolute.
// ---------------------------------------------------------------------------
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol, int maxit = 128) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    double c = a, fc = fa, d = b - a, e = d;
    for (int it = 0; it < maxit; ++it) {
        if ((fb > 0) == (fc > 0)) {
            c = a;
            fc = fa;
            d = e = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        double tol1 = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
        double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double s = fb / fa, p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                double qq = fa / fc, r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0 ? tol1 : -tol1);
        fb = f(b);
    }
    return b;
}

// ---------------------------------------------------------------------------
// Expanding-bracket scan around a guess. f may return NaN (domain hole).
// Finds the sign-change pair nearest to the guess; counts all crossings seen
// in the stage where one is first found (ambiguity diagnostics).
// ---------------------------------------------------------------------------
struct Bracket {
    bool found = false;
    double lo = 0, hi = 0, flo = 0, fhi = 0;
    int crossings = 0;
};

template <class F>
Bracket expanding_bracket(F&& f, double guess, double delta0, double delta_max,
                          int points_per_stage = 33) {
    Bracket best;
    for (double delta = delta0; delta <= delta_max; delta *= 2.0) {
        double lo = guess - delta, hi = guess + delta;
        double h = (hi - lo) / (points_per_stage - 1);
        double prev_x = lo, prev_f = f(lo);
        int crossings = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        Bracket stage;
        for (int i = 1; i < points_per_stage; ++i) {
            double x = lo + i * h;
            double fx = f(x);
            if (std::isfinite(prev_f) && std::isfinite(fx) &&
                ((prev_f <= 0 && fx >= 0) || (prev_f >= 0 && fx <= 0))) {
                ++crossings;
                double mid = 0.5 * (prev_x + x);
                double dist = std::abs(mid - guess);
                if (dist < best_dist) {
                    best_dist = dist;
                    stage.found = true;
                    stage.lo = prev_x;
                    stage.hi = x;
                    stage.flo = prev_f;
                    stage.fhi = fx;
                }
            }
            prev_x = x;
            prev_f = fx;
        }
        if (stage.found) {
            stage.crossings = crossings;
            return stage;
        }
        if (delta == delta_max) break;
        if (delta * 2.0 > delta_max && delta < delta_max) delta = delta_max / 2.0;
    }
    return best;
}

}  // namespace solitonlab::detail
