// solitonlab: rotationally symmetric self-similar solutions of curvature flows.
//
// Subcommands: sphere, solve, pinch, verify, scan, shoot. Every artifact (stdout or
// file) is formatted with fixed 17-significant-digit decimals and LF endings, so
// identical invocations produce byte-identical output.
//
// Exit codes: 0 ok, 1 bad configuration, 2 no solution found, 3 numerical failure.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "solitonlab/analysis.hpp"
#include "solitonlab/errors.hpp"
#include "solitonlab/hopf.hpp"
#include "solitonlab/io.hpp"
#include "solitonlab/rotgeom.hpp"
#include "solitonlab/soliton.hpp"
#include "solitonlab/speed.hpp"
#include "solitonlab/sphere.hpp"

namespace {

using namespace solitonlab;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitNumerical = 3;

// Flags shared by every subcommand that needs a speed function. A JSON config file
// (--speed-config) is mutually exclusive with the flag form.
struct SpeedOpts {
    std::string family = "mean-curvature";
    double lambda = 1.0;
    std::optional<double> alpha;   // gauss-power, harmonic-mean-power
    std::optional<double> beta;    // power-mean
    std::optional<long long> m, n; // exact rational exponent alpha (or beta) = m/n
    std::optional<double> coef_a, coef_b;  // quadratic-hk coefficients
    std::string config_path;
};

void add_speed_flags(CLI::App* cmd, SpeedOpts& o, bool scan_aliases = false) {
    cmd->add_option("--family", o.family,
                    "mean-curvature | power-mean | harmonic-mean-power | gauss-power | "
                    "quadratic-hk | norm-a-squared | custom");
    cmd->add_option("--lambda", o.lambda, "flow constant (default 1)");
    cmd->add_option("--alpha", o.alpha, "exponent for gauss-power / harmonic-mean-power");
    cmd->add_option("--beta", o.beta, "exponent for power-mean");
    cmd->add_option("--exp-m", o.m, "exponent numerator (exact rational m/n form)");
    cmd->add_option("--exp-n", o.n, "exponent denominator (odd; enables negative bases)");
    cmd->add_option(scan_aliases ? "--coef-a,--a" : "--coef-a", o.coef_a,
                    "quadratic-hk coefficient a");
    cmd->add_option(scan_aliases ? "--coef-b,--b" : "--coef-b", o.coef_b,
                    "quadratic-hk coefficient b");
    cmd->add_option("--speed-config", o.config_path, "speed function JSON file");
}

SpeedFunction build_speed(const SpeedOpts& o) {
    if (!o.config_path.empty()) {
        SpeedFunction f = speed_from_json(read_text_file(o.config_path));
        return f;
    }
    Family fam = family_from_name(o.family);
    bool has_mn = o.m.has_value() && o.n.has_value();
    switch (fam) {
        case Family::MeanCurvature:
            return SpeedFunction::mean_curvature(o.lambda);
        case Family::PowerMean:
            if (has_mn) return SpeedFunction::power_mean_mn(*o.m, *o.n, o.lambda);
            if (o.beta) return SpeedFunction::power_mean(*o.beta, o.lambda);
            throw ArgError("power-mean needs --beta or --exp-m/--exp-n");
        case Family::HarmonicMeanPower:
            if (has_mn) return SpeedFunction::harmonic_mean_power_mn(*o.m, *o.n, o.lambda);
            if (o.alpha) return SpeedFunction::harmonic_mean_power(*o.alpha, o.lambda);
            throw ArgError("harmonic-mean-power needs --alpha or --exp-m/--exp-n");
        case Family::GaussPower:
            if (has_mn) return SpeedFunction::gauss_power_mn(*o.m, *o.n, o.lambda);
            if (o.alpha) return SpeedFunction::gauss_power(*o.alpha, o.lambda);
            throw ArgError("gauss-power needs --alpha or --exp-m/--exp-n");
        case Family::QuadraticHK:
            if (!o.coef_a || !o.coef_b)
                throw ArgError("quadratic-hk needs --coef-a and --coef-b");
            return SpeedFunction::quadratic_hk(*o.coef_a, *o.coef_b, o.lambda);
        case Family::NormASquared:
            return SpeedFunction::norm_a_squared(o.lambda);
        case Family::Custom:
            throw ArgError("custom speeds are JSON-only: use --speed-config");
    }
    throw ArgError("unknown family");
}

double default_tol(double fallback) {
    if (const char* env = std::getenv("SOLITONLAB_TOL")) {
        try {
            return std::stod(env);
        } catch (...) {
            throw ArgError("SOLITONLAB_TOL is not a number");
        }
    }
    return fallback;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty())
        std::cout << text;
    else
        write_text_file(path, text);
}

// --- sphere ---------------------------------------------------------------

int cmd_sphere(const SpeedOpts& so, const std::string& out) {
    SphereFamilyResult res = sphere_radius(build_speed(so));
    emit(sphere_result_json(res) + "\n", out);
    if (res.any_radius || !res.solutions.empty()) return kExitOk;
    std::cerr << "no spherical solution for this speed/lambda\n";
    return kExitNoSolution;
}

// --- solve ----------------------------------------------------------------

struct SolveOpts {
    SpeedOpts speed;
    double b = 1.0;
    double x_start = 0.0;
    double x_max = 10.0;
    double tol = 0.0;
    std::optional<double> max_step, fixed_step;
    std::vector<double> record_at;
    std::string problem_config;
    std::string out_json, out_csv;
};

int cmd_solve(const SolveOpts& o) {
    SolitonProblem p;
    if (!o.problem_config.empty()) {
        p = problem_from_json(read_text_file(o.problem_config));
    } else {
        p.speed = build_speed(o.speed);
        p.b = o.b;
        p.x_start = o.x_start;
        p.x_max = o.x_max;
        p.tol = default_tol(1e-9);
        p.max_step = o.max_step;
        p.fixed_step = o.fixed_step;
        p.record_at = o.record_at;
    }
    if (o.tol > 0.0) p.tol = o.tol;
    if (p.speed.lambda == 0.0)
        std::cerr << "lambda = 0: stationary (Weingarten) mode, speed must vanish along "
                     "the profile\n";
    SolveReport rep = integrate_profile(p);
    emit(solve_report_json(rep) + "\n", o.out_json);
    if (!o.out_csv.empty()) write_text_file(o.out_csv, profile_csv(rep.profile));
    if (rep.termination == Termination::RootFindFailed ||
        rep.termination == Termination::DomainExit) {
        std::cerr << "integration stopped: " << termination_name(rep.termination) << "\n";
        return kExitNumerical;
    }
    return kExitOk;
}

// --- pinch ----------------------------------------------------------------

struct PinchOpts {
    SpeedOpts speed;
    double b = 1.0;
    double x_max = 0.0;  // 0: default to b (analysis only needs x <= 0.1 b)
    double tol = 0.0;
    std::string out_json;
};

int cmd_pinch(const PinchOpts& o) {
    SolitonProblem p;
    p.speed = build_speed(o.speed);
    p.b = o.b;
    p.x_max = o.x_max > 0.0 ? o.x_max : o.b;
    p.tol = o.tol > 0.0 ? o.tol : default_tol(1e-12);
    SolveReport rep = integrate_profile(p);
    PinchReport pr = ftilde_analysis(rep.profile, p.speed, p.speed.lambda, p.b);
    emit(pinch_report_json(pr) + "\n", o.out_json);
    return kExitOk;
}

// --- verify ---------------------------------------------------------------

struct VerifyOpts {
    SpeedOpts speed;
    std::string profile = "sphere";  // sphere | cylinder | ellipsoid | soliton
    double R = 1.0;                  // sphere / cylinder radius
    double semi_a = 2.0, semi_c = 1.0;
    double b = 0.5;       // soliton axis height
    double seed_x = 0.0;  // soliton patch seed abscissa; 0: 0.6 b
    double u0 = 0.0, u1 = 0.0;
    double h = 1e-3;
    double tol = 0.0;
    std::string out_json, out_csv;
};

int cmd_verify(const VerifyOpts& o) {
    double u0 = o.u0, u1 = o.u1;
    if (u0 == 0.0 && u1 == 0.0) {
        u0 = o.profile == "soliton" ? -0.25 : -0.5;
        u1 = -u0;
    }
    if (!(o.h > 0.0) || u1 <= u0) throw ArgError("need u1 > u0 and h > 0");
    int n = static_cast<int>((u1 - u0) / o.h + 0.5) + 1;

    HopfPatch patch;
    if (o.profile == "sphere") {
        patch = sphere_patch(o.R, u0, u1, n);
    } else if (o.profile == "cylinder") {
        patch = cylinder_patch(o.R, u0, u1, n);
    } else if (o.profile == "ellipsoid") {
        patch = ellipsoid_patch(o.semi_a, o.semi_c, u0, u1, n);
    } else if (o.profile == "soliton") {
        SolitonProblem p;
        p.speed = build_speed(o.speed);
        p.b = o.b;
        p.x_max = 2.0 * o.b;
        p.tol = 1e-12;
        SolveReport rep = integrate_profile(p);
        double sx = o.seed_x > 0.0 ? o.seed_x : 0.6 * o.b;
        patch = soliton_patch(p.speed, p.speed.lambda, jet_at(rep.profile, sx), u0, u1, n);
    } else {
        throw ArgError("--profile must be sphere, cylinder, ellipsoid or soliton");
    }

    double tol = o.tol > 0.0 ? o.tol : default_tol(1e-5);
    double d_mod = verify_modulus_identity(patch);
    double d_pz = verify_pz_identity(patch);
    double d_struct = verify_structure_equations(patch);
    double d_tang = verify_tangential_identity(patch);
    double d_metric = verify_isothermal_metric(patch);
    bool pass = d_mod <= tol && d_pz <= tol && d_struct <= tol && d_tang <= tol &&
                d_metric <= tol;

    std::ostringstream js;
    js << "{\n  \"profile\": \"" << o.profile << "\",\n"
       << "  \"n\": " << n << ",\n  \"h\": " << fmt_double(patch.h()) << ",\n"
       << "  \"modulus_defect\": " << fmt_double(d_mod) << ",\n"
       << "  \"pz_defect\": " << fmt_double(d_pz) << ",\n"
       << "  \"structure_defect\": " << fmt_double(d_struct) << ",\n"
       << "  \"tangential_defect\": " << fmt_double(d_tang) << ",\n"
       << "  \"metric_defect\": " << fmt_double(d_metric) << ",\n"
       << "  \"tolerance\": " << fmt_double(tol) << ",\n"
       << "  \"pass\": " << (pass ? "true" : "false") << "\n}\n";
    emit(js.str(), o.out_json);
    if (!o.out_csv.empty()) write_text_file(o.out_csv, hopf_csv(patch));
    return pass ? kExitOk : kExitNumerical;
}

// --- scan -----------------------------------------------------------------

struct ScanOpts {
    SpeedOpts speed;
    ScanGrid grid{0.1, 2.0, 200, -4.0, 1.0, 200};
    std::string out_csv, boundary_csv_path;
};

int cmd_scan(const ScanOpts& o) {
    ScanResult res = parabolicity_scan(build_speed(o.speed), o.grid);
    emit(scan_csv(res), o.out_csv);
    if (!o.boundary_csv_path.empty()) write_text_file(o.boundary_csv_path, boundary_csv(res));
    return kExitOk;
}

// --- shoot ----------------------------------------------------------------

struct ShootOpts {
    SpeedOpts speed;
    double b_lo = 1.2, b_hi = 1.6;
    int n = 9;
    double criterion_tol = 1e-8;
    std::string out_csv, out_json;
};

int cmd_shoot(const ShootOpts& o) {
    ShootReport rep =
        shoot_for_closure(build_speed(o.speed), o.speed.lambda, o.b_lo, o.b_hi, o.n,
                          o.criterion_tol);
    std::ostringstream js;
    js << "{\n  \"roots\": [";
    for (size_t i = 0; i < rep.roots.size(); ++i)
        js << (i ? ", " : "") << fmt_double(rep.roots[i]);
    js << "]\n}\n";
    emit(js.str(), o.out_json);
    if (!o.out_csv.empty()) write_text_file(o.out_csv, shoot_csv(rep));
    if (rep.roots.empty()) {
        std::cerr << "no closure root bracketed; defects oscillate outside a narrow "
                     "window around a root - try a denser grid (--n)\n";
        return kExitNoSolution;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rotational self-similar solutions of curvature flows"};
    app.require_subcommand(1);

    SpeedOpts sphere_speed;
    std::string sphere_out;
    CLI::App* sphere = app.add_subcommand("sphere", "closed-form spherical solutions");
    add_speed_flags(sphere, sphere_speed);
    sphere->add_option("-o,--output", sphere_out, "write JSON here instead of stdout");

    SolveOpts so;
    CLI::App* solve = app.add_subcommand("solve", "integrate a profile from the axis");
    add_speed_flags(solve, so.speed);
    solve->add_option("--b", so.b, "axis height gamma(0)");
    solve->add_option("--x-start", so.x_start, "series handoff abscissa (default 1e-3 b)");
    solve->add_option("--x-max", so.x_max, "stop when x exceeds this");
    solve->add_option("--tol", so.tol, "integrator tolerance (default 1e-9)");
    solve->add_option("--max-step", so.max_step, "cap on the adaptive step");
    solve->add_option("--fixed-step", so.fixed_step, "constant step, no error control");
    solve->add_option("--record-at", so.record_at, "abscissae to land on exactly")
        ->expected(-1);
    solve->add_option("--config", so.problem_config, "full problem JSON (overrides flags)");
    solve->add_option("-o,--output", so.out_json, "report JSON path (default stdout)");
    solve->add_option("--csv", so.out_csv, "profile CSV path");

    PinchOpts po;
    CLI::App* pinch = app.add_subcommand("pinch", "axis asymptotics of the pinching ratio");
    add_speed_flags(pinch, po.speed);
    pinch->add_option("--b", po.b, "axis height gamma(0)");
    pinch->add_option("--x-max", po.x_max, "integration span (default b)");
    pinch->add_option("--tol", po.tol, "integrator tolerance (default 1e-12)");
    pinch->add_option("-o,--output", po.out_json, "report JSON path (default stdout)");

    VerifyOpts vo;
    CLI::App* verify = app.add_subcommand("verify", "conformal-patch identity checks");
    add_speed_flags(verify, vo.speed);
    verify->add_option("--profile", vo.profile, "sphere | cylinder | ellipsoid | soliton");
    verify->add_option("--R", vo.R, "sphere/cylinder radius");
    verify->add_option("--semi-a", vo.semi_a, "ellipsoid equatorial semi-axis");
    verify->add_option("--semi-c", vo.semi_c, "ellipsoid polar semi-axis");
    verify->add_option("--b", vo.b, "soliton axis height");
    verify->add_option("--seed-x", vo.seed_x, "soliton patch seed abscissa (default 0.6 b)");
    verify->add_option("--u0", vo.u0, "patch start (conformal coordinate)");
    verify->add_option("--u1", vo.u1, "patch end");
    verify->add_option("--step", vo.h, "grid spacing (default 1e-3)");
    verify->add_option("--tol", vo.tol, "defect tolerance (default 1e-5)");
    verify->add_option("-o,--output", vo.out_json, "report JSON path (default stdout)");
    verify->add_option("--csv", vo.out_csv, "patch CSV path");

    ScanOpts sc;
    CLI::App* scan = app.add_subcommand("scan", "parabolicity classification over (H,K)");
    add_speed_flags(scan, sc.speed, /*scan_aliases=*/true);
    scan->add_option("--h0", sc.grid.H0, "H range start");
    scan->add_option("--h1", sc.grid.H1, "H range end");
    scan->add_option("--nh", sc.grid.nH, "H sample count");
    scan->add_option("--k0", sc.grid.K0, "K range start");
    scan->add_option("--k1", sc.grid.K1, "K range end");
    scan->add_option("--nk", sc.grid.nK, "K sample count");
    scan->add_option("-o,--output", sc.out_csv, "grid CSV path (default stdout)");
    scan->add_option("--boundary", sc.boundary_csv_path, "boundary curve CSV path");

    ShootOpts sh;
    CLI::App* shoot = app.add_subcommand("shoot", "closure-defect scan over axis heights");
    add_speed_flags(shoot, sh.speed);
    shoot->add_option("--b-lo", sh.b_lo, "axis height range start");
    shoot->add_option("--b-hi", sh.b_hi, "axis height range end");
    shoot->add_option("--n", sh.n, "grid points (roots live in ~1e-3-wide windows; "
                                   "use a few hundred over unit-size ranges)");
    shoot->add_option("--criterion-tol", sh.criterion_tol, "bisection width target");
    shoot->add_option("-o,--output", sh.out_json, "roots JSON path (default stdout)");
    shoot->add_option("--csv", sh.out_csv, "defect samples CSV path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (sphere->parsed()) return cmd_sphere(sphere_speed, sphere_out);
        if (solve->parsed()) return cmd_solve(so);
        if (pinch->parsed()) return cmd_pinch(po);
        if (verify->parsed()) return cmd_verify(vo);
        if (scan->parsed()) return cmd_scan(sc);
        if (shoot->parsed()) return cmd_shoot(sh);
    } catch (const ArgError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const RootFindFailed& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        // JSON parse errors and file I/O problems are configuration mistakes.
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    return kExitConfig;
}
