#include "solitonlab/speed.hpp"

#include <cmath>
#include <cstdlib>

#include <nlohmann/json.hpp>

namespace solitonlab {

namespace {

using nlohmann::json;

double get_param(const SpeedFunction& f, const char* name) {
    auto it = f.params.find(name);
    if (it == f.params.end())
        throw ArgError(std::string("speed: missing parameter '") + name + "'");
    return it->second;
}

double alpha_of(const SpeedFunction& f) { return get_param(f, "alpha"); }

bool is_integral(double e) { return std::rint(e) == e && std::abs(e) < 1e15; }

}  // namespace

double rpow(double base, double e) {
    if (base > 0.0) return std::pow(base, e);
    if (base == 0.0) {
        if (e > 0.0) return 0.0;
        if (e == 0.0) return 1.0;
        throw DomainError("rpow: 0 raised to a negative power");
    }
    if (is_integral(e)) return std::pow(base, e);
    throw DomainError("rpow: negative base with non-integral exponent");
}

double rpow(double base, const OddExponent& e) {
    if (e.den <= 0 || e.den % 2 == 0)
        throw ArgError("rpow: odd-root exponent must have positive odd denominator");
    if (base == 0.0) {
        if (e.num > 0) return 0.0;
        if (e.num == 0) return 1.0;
        throw DomainError("rpow: 0 raised to a negative power");
    }
    double mag = std::pow(std::abs(base), e.value());
    bool odd_num = (std::llabs(e.num) % 2) == 1;
    return (base < 0.0 && odd_num) ? -mag : mag;
}

double rpow(double base, double e, const std::optional<OddExponent>& oe) {
    return oe ? rpow(base, *oe) : rpow(base, e);
}

SpeedFunction SpeedFunction::mean_curvature(double lambda) {
    return {Family::MeanCurvature, 1.0, lambda, {}, std::nullopt, {}};
}

SpeedFunction SpeedFunction::power_mean(double beta, double lambda) {
    if (beta == 0.0) throw ArgError("power_mean: beta must be nonzero");
    return {Family::PowerMean, beta, lambda, {}, std::nullopt, {}};
}

SpeedFunction SpeedFunction::power_mean_mn(long long m, long long n, double lambda) {
    if (m < 1 || n < 1) throw ArgError("power_mean_mn: m, n must be positive integers");
    OddExponent e{m, 2 * n - 1};
    SpeedFunction f{Family::PowerMean, e.value(), lambda, {}, e, {}};
    f.params["m"] = static_cast<double>(m);
    f.params["n"] = static_cast<double>(n);
    return f;
}

SpeedFunction SpeedFunction::harmonic_mean_power(double alpha, double lambda) {
    if (alpha == 0.0) throw ArgError("harmonic_mean_power: alpha must be nonzero");
    SpeedFunction f{Family::HarmonicMeanPower, alpha, lambda, {}, std::nullopt, {}};
    f.params["alpha"] = alpha;
    return f;
}

SpeedFunction SpeedFunction::harmonic_mean_power_mn(long long m, long long n, double lambda) {
    if (m < 1 || n < 1) throw ArgError("harmonic_mean_power_mn: m, n must be positive integers");
    OddExponent e{m, 2 * n - 1};
    SpeedFunction f{Family::HarmonicMeanPower, e.value(), lambda, {}, e, {}};
    f.params["m"] = static_cast<double>(m);
    f.params["n"] = static_cast<double>(n);
    f.params["alpha"] = e.value();
    return f;
}

SpeedFunction SpeedFunction::gauss_power(double alpha, double lambda) {
    if (alpha == 0.0) throw ArgError("gauss_power: alpha must be nonzero");
    SpeedFunction f{Family::GaussPower, 2.0 * alpha, lambda, {}, std::nullopt, {}};
    f.params["alpha"] = alpha;
    return f;
}

SpeedFunction SpeedFunction::gauss_power_mn(long long m, long long n, double lambda) {
    if (m < 1 || n < 1) throw ArgError("gauss_power_mn: m, n must be positive integers");
    OddExponent e{m, 2 * n - 1};
    SpeedFunction f{Family::GaussPower, 2.0 * e.value(), lambda, {}, e, {}};
    f.params["m"] = static_cast<double>(m);
    f.params["n"] = static_cast<double>(n);
    f.params["alpha"] = e.value();
    return f;
}

SpeedFunction SpeedFunction::quadratic_hk(double a, double b, double lambda) {
    SpeedFunction f{Family::QuadraticHK, 2.0, lambda, {}, std::nullopt, {}};
    f.params["a"] = a;
    f.params["b"] = b;
    return f;
}

SpeedFunction SpeedFunction::norm_a_squared(double lambda) {
    return {Family::NormASquared, 2.0, lambda, {}, std::nullopt, {}};
}

SpeedFunction SpeedFunction::custom(std::vector<CustomTerm> terms, double beta, double lambda) {
    SpeedFunction f{Family::Custom, beta, lambda, {}, std::nullopt, std::move(terms)};
    return f;
}

namespace {

double eval_poly(const std::vector<Monomial>& poly, double x1, double x2) {
    double s = 0.0;
    for (const auto& m : poly) s += m.c * rpow(x1, m.p) * rpow(x2, m.q);
    return s;
}

// w = K/H = (x1^2 - x2) / (4 x1)
double harmonic_w(const EvalPoint& p) {
    if (p.x1 == 0.0) throw DomainError("harmonic_mean_power: x1 = 0");
    return (p.x1 * p.x1 - p.x2) / (4.0 * p.x1);
}

}  // namespace

double eval(const SpeedFunction& f, const EvalPoint& p) {
    switch (f.family) {
        case Family::MeanCurvature:
            return p.x1;
        case Family::PowerMean:
            return rpow(p.x1, f.beta, f.expo);
        case Family::HarmonicMeanPower:
            return rpow(harmonic_w(p), alpha_of(f), f.expo);
        case Family::GaussPower:
            return rpow((p.x1 * p.x1 - p.x2) / 4.0, alpha_of(f), f.expo);
        case Family::QuadraticHK: {
            double a = get_param(f, "a"), b = get_param(f, "b");
            return (a + b / 4.0) * p.x1 * p.x1 - (b / 4.0) * p.x2;
        }
        case Family::NormASquared:
            return (p.x1 * p.x1 + p.x2) / 2.0;
        case Family::Custom: {
            double s = 0.0;
            for (const auto& t : f.terms)
                s += t.coef * rpow(eval_poly(t.poly, p.x1, p.x2), t.expo, t.expo_odd);
            return s;
        }
    }
    throw ArgError("eval: unknown family");
}

Gradient grad(const SpeedFunction& f, const EvalPoint& p) {
    switch (f.family) {
        case Family::MeanCurvature:
            return {1.0, 0.0};
        case Family::PowerMean: {
            std::optional<OddExponent> em;
            if (f.expo) em = f.expo->minus_one();
            return {f.beta * rpow(p.x1, f.beta - 1.0, em), 0.0};
        }
        case Family::HarmonicMeanPower: {
            double a = alpha_of(f);
            double w = harmonic_w(p);
            std::optional<OddExponent> em;
            if (f.expo) em = f.expo->minus_one();
            double dpsi = a * rpow(w, a - 1.0, em);
            double dw1 = (p.x1 * p.x1 + p.x2) / (4.0 * p.x1 * p.x1);
            double dw2 = -1.0 / (4.0 * p.x1);
            return {dpsi * dw1, dpsi * dw2};
        }
        case Family::GaussPower: {
            double a = alpha_of(f);
            double kq = (p.x1 * p.x1 - p.x2) / 4.0;
            std::optional<OddExponent> em;
            if (f.expo) em = f.expo->minus_one();
            double dpsi = a * rpow(kq, a - 1.0, em);
            return {dpsi * p.x1 / 2.0, -dpsi / 4.0};
        }
        case Family::QuadraticHK: {
            double a = get_param(f, "a"), b = get_param(f, "b");
            return {2.0 * (a + b / 4.0) * p.x1, -b / 4.0};
        }
        case Family::NormASquared:
            return {p.x1, 0.5};
        case Family::Custom: {
            // central differences; one-sided at the x2 >= 0 boundary
            double h1 = 1e-6 * (1.0 + std::abs(p.x1));
            double h2 = 1e-6 * (1.0 + std::abs(p.x2));
            double g1 = (eval(f, {p.x1 + h1, p.x2}) - eval(f, {p.x1 - h1, p.x2})) / (2.0 * h1);
            double g2;
            if (p.x2 >= h2) {
                g2 = (eval(f, {p.x1, p.x2 + h2}) - eval(f, {p.x1, p.x2 - h2})) / (2.0 * h2);
            } else {
                double f0 = eval(f, {p.x1, p.x2});
                double f1 = eval(f, {p.x1, p.x2 + h2});
                double f2 = eval(f, {p.x1, p.x2 + 2.0 * h2});
                g2 = (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h2);
            }
            return {g1, g2};
        }
    }
    throw ArgError("grad: unknown family");
}

double homogeneity_residual(const SpeedFunction& f, const EvalPoint& p, double a) {
    if (a <= 0.0) throw ArgError("homogeneity_residual: a must be positive");
    return eval(f, {a * p.x1, a * a * p.x2}) - std::pow(a, f.beta) * eval(f, p);
}

double parabolicity_indicator(const SpeedFunction& f, const EvalPoint& p) {
    Gradient g = grad(f, p);
    return g.psi1 * g.psi1 - 4.0 * p.x2 * g.psi2 * g.psi2;
}

double from_principal(const SpeedFunction& f, double k1, double k2) {
    double d = k1 - k2;
    return eval(f, {k1 + k2, d * d});
}

double grad_ratio(const SpeedFunction& f, const EvalPoint& p) {
    if (f.family == Family::HarmonicMeanPower) {
        if (p.x1 == 0.0) throw DomainError("grad_ratio: x1 = 0");
        return -p.x1 / (p.x1 * p.x1 + p.x2);
    }
    Gradient g = grad(f, p);
    if (g.psi1 == 0.0) throw DomainError("grad_ratio: Psi_1 = 0");
    return g.psi2 / g.psi1;
}

double inv_grad1(const SpeedFunction& f, const EvalPoint& p) {
    if (f.family == Family::HarmonicMeanPower) {
        double a = alpha_of(f);
        double w = harmonic_w(p);
        std::optional<OddExponent> e1m;
        if (f.expo) e1m = OddExponent{f.expo->den - f.expo->num, f.expo->den};
        double wpow = rpow(w, 1.0 - a, e1m);  // w^(1-alpha); 0 at w=0 when alpha < 1
        return 4.0 * p.x1 * p.x1 * wpow / (a * (p.x1 * p.x1 + p.x2));
    }
    Gradient g = grad(f, p);
    if (g.psi1 == 0.0) throw DomainError("inv_grad1: Psi_1 = 0");
    return 1.0 / g.psi1;
}

std::optional<OddExponent> beta_exponent(const SpeedFunction& f) {
    switch (f.family) {
        case Family::MeanCurvature:
            return OddExponent{1, 1};
        case Family::PowerMean:
        case Family::HarmonicMeanPower:
            if (f.expo) return f.expo;
            break;
        case Family::GaussPower:
            if (f.expo) return f.expo->doubled();
            break;
        case Family::QuadraticHK:
        case Family::NormASquared:
            return OddExponent{2, 1};
        case Family::Custom:
            break;
    }
    if (is_integral(f.beta)) return OddExponent{static_cast<long long>(f.beta), 1};
    return std::nullopt;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::MeanCurvature: return "mean-curvature";
        case Family::PowerMean: return "power-mean";
        case Family::HarmonicMeanPower: return "harmonic-mean-power";
        case Family::GaussPower: return "gauss-power";
        case Family::QuadraticHK: return "quadratic-hk";
        case Family::NormASquared: return "norm-a-squared";
        case Family::Custom: return "custom";
    }
    throw ArgError("family_name: unknown family");
}

Family family_from_name(const std::string& name) {
    if (name == "mean-curvature") return Family::MeanCurvature;
    if (name == "power-mean") return Family::PowerMean;
    if (name == "harmonic-mean-power") return Family::HarmonicMeanPower;
    if (name == "gauss-power") return Family::GaussPower;
    if (name == "quadratic-hk") return Family::QuadraticHK;
    if (name == "norm-a-squared") return Family::NormASquared;
    if (name == "custom") return Family::Custom;
    throw ArgError("unknown speed family '" + name + "'");
}

namespace {

json terms_to_json(const std::vector<CustomTerm>& terms) {
    json arr = json::array();
    for (const auto& t : terms) {
        json jt;
        jt["coef"] = t.coef;
        if (t.expo_odd) {
            jt["expo_m"] = t.expo_odd->num;
            jt["expo_n"] = (t.expo_odd->den + 1) / 2;
        } else {
            jt["expo"] = t.expo;
        }
        json poly = json::array();
        for (const auto& m : t.poly) poly.push_back({{"c", m.c}, {"p", m.p}, {"q", m.q}});
        jt["poly"] = poly;
        arr.push_back(jt);
    }
    return arr;
}

std::vector<CustomTerm> terms_from_json(const json& arr) {
    std::vector<CustomTerm> out;
    for (const auto& jt : arr) {
        CustomTerm t;
        t.coef = jt.at("coef").get<double>();
        if (jt.contains("expo_m")) {
            long long m = jt.at("expo_m").get<long long>();
            long long n = jt.at("expo_n").get<long long>();
            if (n < 1) throw ArgError("custom term: expo_n must be >= 1");
            t.expo_odd = OddExponent{m, 2 * n - 1};
            t.expo = t.expo_odd->value();
        } else {
            t.expo = jt.at("expo").get<double>();
        }
        for (const auto& jm : jt.at("poly"))
            t.poly.push_back({jm.at("c").get<double>(), jm.at("p").get<double>(),
                              jm.at("q").get<double>()});
        out.push_back(std::move(t));
    }
    return out;
}

}  // namespace

std::string to_json_string(const SpeedFunction& f) {
    json j;
    j["family"] = family_name(f.family);
    j["beta"] = f.beta;
    j["lambda"] = f.lambda;
    json params(json::value_t::object);
    for (const auto& [k, v] : f.params) params[k] = v;
    if (f.family == Family::Custom) params["terms"] = terms_to_json(f.terms);
    j["params"] = params;
    return j.dump(2) + "\n";
}

SpeedFunction speed_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ArgError(std::string("speed JSON parse error: ") + e.what());
    }
    try {
        Family fam = family_from_name(j.at("family").get<std::string>());
        double lambda = j.at("lambda").get<double>();
        const json& params = j.value("params", json::object());
        auto has = [&](const char* k) { return params.contains(k); };
        auto get = [&](const char* k) { return params.at(k).get<double>(); };
        auto get_ll = [&](const char* k) { return params.at(k).get<long long>(); };
        switch (fam) {
            case Family::MeanCurvature:
                return SpeedFunction::mean_curvature(lambda);
            case Family::PowerMean:
                if (has("m") && has("n"))
                    return SpeedFunction::power_mean_mn(get_ll("m"), get_ll("n"), lambda);
                return SpeedFunction::power_mean(j.at("beta").get<double>(), lambda);
            case Family::HarmonicMeanPower:
                if (has("m") && has("n"))
                    return SpeedFunction::harmonic_mean_power_mn(get_ll("m"), get_ll("n"), lambda);
                return SpeedFunction::harmonic_mean_power(get("alpha"), lambda);
            case Family::GaussPower:
                if (has("m") && has("n"))
                    return SpeedFunction::gauss_power_mn(get_ll("m"), get_ll("n"), lambda);
                return SpeedFunction::gauss_power(get("alpha"), lambda);
            case Family::QuadraticHK:
                return SpeedFunction::quadratic_hk(get("a"), get("b"), lambda);
            case Family::NormASquared:
                return SpeedFunction::norm_a_squared(lambda);
            case Family::Custom:
                return SpeedFunction::custom(terms_from_json(params.at("terms")),
                                             j.at("beta").get<double>(), lambda);
        }
        throw ArgError("speed JSON: unknown family");
    } catch (const json::exception& e) {
        throw ArgError(std::string("speed JSON schema error: ") + e.what());
    }
}

}  // namespace solitonlab
