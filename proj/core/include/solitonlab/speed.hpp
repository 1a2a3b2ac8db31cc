#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "solitonlab/errors.hpp"

namespace solitonlab {

enum class Family {
    MeanCurvature,
    PowerMean,
    HarmonicMeanPower,
    GaussPower,
    QuadraticHK,
    NormASquared,
    Custom,
};

// Exact rational exponent num/den with odd den > 0. Powers with such exponents are
// evaluated on the real odd-root branch: base^(num/den) = sign(base)^num |base|^(num/den),
// which admits negative bases.
struct OddExponent {
    long long num = 0;
    long long den = 1;

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    OddExponent minus_one() const { return {num - den, den}; }
    OddExponent doubled() const { return {2 * num, den}; }
};

struct Monomial {
    double c = 0.0;
    double p = 0.0;  // power of x1
    double q = 0.0;  // power of x2
};

// One summand of a Custom speed: coef * (sum of monomials)^expo.
struct CustomTerm {
    double coef = 1.0;
    double expo = 1.0;
    std::optional<OddExponent> expo_odd;
    std::vector<Monomial> poly;
};

// A point (x1, x2) = (H, H^2 - 4K). x2 is non-negative by construction; values in
// [-tol_clamp, 0) are round-off and clamp to 0, anything below is rejected.
struct EvalPoint {
    static constexpr double tol_clamp = 1e-12;

    double x1;
    double x2;

    EvalPoint(double x1_, double x2_) : x1(x1_), x2(x2_) {
        if (x2 < 0.0) {
            if (x2 < -tol_clamp)
                throw DomainError("EvalPoint: x2 = H^2-4K below -1e-12");
            x2 = 0.0;
        }
    }
};

struct SpeedFunction {
    Family family = Family::MeanCurvature;
    double beta = 1.0;    // homogeneity degree
    double lambda = 1.0;  // flow constant
    std::map<std::string, double> params;
    std::optional<OddExponent> expo;  // defining exponent, odd-root form when built from (m,n)
    std::vector<CustomTerm> terms;    // Custom only

    static SpeedFunction mean_curvature(double lambda);
    static SpeedFunction power_mean(double beta, double lambda);
    static SpeedFunction power_mean_mn(long long m, long long n, double lambda);
    static SpeedFunction harmonic_mean_power(double alpha, double lambda);
    static SpeedFunction harmonic_mean_power_mn(long long m, long long n, double lambda);
    static SpeedFunction gauss_power(double alpha, double lambda);
    static SpeedFunction gauss_power_mn(long long m, long long n, double lambda);
    static SpeedFunction quadratic_hk(double a, double b, double lambda);
    static SpeedFunction norm_a_squared(double lambda);
    static SpeedFunction custom(std::vector<CustomTerm> terms, double beta, double lambda);
};

struct Gradient {
    double psi1;
    double psi2;
};

double eval(const SpeedFunction& f, const EvalPoint& p);
Gradient grad(const SpeedFunction& f, const EvalPoint& p);
double homogeneity_residual(const SpeedFunction& f, const EvalPoint& p, double a);
double parabolicity_indicator(const SpeedFunction& f, const EvalPoint& p);
double from_principal(const SpeedFunction& f, double k1, double k2);

// Singularity-safe derivative combinations; closed forms where a family's Psi_1 has a
// removable singularity (HarmonicMeanPower at K=0), generic grad-based fallback otherwise.
double grad_ratio(const SpeedFunction& f, const EvalPoint& p);  // Psi_2 / Psi_1
double inv_grad1(const SpeedFunction& f, const EvalPoint& p);   // 1 / Psi_1

// beta as an exact odd-denominator rational when one is known (built from (m,n),
// a built-in with fixed integer degree, or an integral beta); otherwise absent.
std::optional<OddExponent> beta_exponent(const SpeedFunction& f);

// Real power with domain rules: negative bases need an integral exponent, zero bases a
// non-negative one.
double rpow(double base, double e);
// Odd-root branch power.
double rpow(double base, const OddExponent& e);
double rpow(double base, double e, const std::optional<OddExponent>& oe);

std::string family_name(Family f);
Family family_from_name(const std::string& name);

std::string to_json_string(const SpeedFunction& f);
SpeedFunction speed_from_json(const std::string& text);

}  // namespace solitonlab
