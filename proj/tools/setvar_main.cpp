// Command-line front end: path generation, variation functionals, Young
// integrals, Steiner centers, set-valued integrals and verification suites.

#include <CLI11.hpp>
#include <iostream>

#include "setvar/setvar.hpp"

namespace {

using namespace setvar;

std::string vec_json(const Vec& v) {
    std::string s = "[";
    for (int i = 0; i < v.dim; ++i) {
        if (i) s += ",";
        s += fmt17(v[i]);
    }
    return s + "]";
}

void write_text(const std::string& path, const std::string& body) {
    if (path.empty()) {
        std::cout << body;
        return;
    }
    std::ofstream os(path, std::ios::app);
    if (!os) throw io_error("cannot open " + path);
    os << body;
}

int cmd_fbm(double H, std::size_t n, double T, std::uint64_t seed,
            const std::string& out) {
    const SampledPath p = fbm_path({H, n, T, seed});
    if (out.empty()) throw io_error("fbm: --out required");
    write_path_csv(p, out);
    return 0;
}

int cmd_pvar(const std::string& file, double p, const std::string& kind,
             double a, double b, bool use_b, double beta, bool interval,
             const std::string& out) {
    std::string body = "{";
    if (interval) {
        const SetValuedSampledPath F = read_interval_path_csv(file);
        const double hi = use_b ? b : F.horizon();
        const double lo = use_b ? a : F.grid.front();
        const double v = riesz_vp(F, p, lo, hi);
        body += "\"riesz_vp\":" + fmt17(v) +
                ",\"vp_norm\":" + fmt17(vp_norm(F, p)) +
                ",\"holder\":" + fmt17(holder_constant(F, beta));
    } else {
        const SampledPath f = read_path_csv(file);
        const double hi = use_b ? b : f.horizon();
        const double lo = use_b ? a : f.grid.front();
        const double v = kind == "young" ? var_p(f, p, lo, hi)
                                         : riesz_vp(f, p, lo, hi);
        body += "\"" + (kind == "young" ? std::string("var_p")
                                        : std::string("riesz_vp")) +
                "\":" + fmt17(v) + ",\"vp_norm\":" + fmt17(vp_norm(f, p)) +
                ",\"holder\":" + fmt17(holder_constant(f, beta));
    }
    body += "}\n";
    write_text(out, body);
    return 0;
}

int cmd_young(const std::string& ffile, const std::string& gfile, double s,
              double t, double tol, std::size_t max_levels,
              const std::string& method, double rho, double alpha, double p,
              bool bound_report, const std::string& out) {
    const SampledPath f = read_path_csv(ffile);
    const SampledPath g = read_path_csv(gfile);
    std::string body = "{";
    if (method == "fractional") {
        std::string warning;
        const Vec v = young_via_fractional(f, g, rho, std::nullopt,
                                           std::nullopt, &warning);
        body += "\"value\":" + vec_json(v) + ",\"defect\":0,\"levels\":0";
        body += ",\"warning\":\"" + warning + "\"";
    } else {
        const YoungResult r = young_integral(f, g, s, t, tol, max_levels);
        body += "\"value\":" + vec_json(r.value) +
                ",\"defect\":" + fmt17(r.cauchy_defect) +
                ",\"levels\":" + std::to_string(r.levels) +
                ",\"partition_used\":" + std::to_string(r.partition_used);
        body += ",\"warning\":\"" + r.warning + "\"";
    }
    if (bound_report) {
        body += ",\"bound_report\":[";
        const auto rep = young_loeve_report(f, g, s, t, alpha, p);
        for (std::size_t i = 0; i < rep.size(); ++i) {
            if (i) body += ",";
            body += fmt17(rep[i]);
        }
        body += "]";
    }
    body += "}\n";
    write_text(out, body);
    return 0;
}

int cmd_steiner(const std::string& body_file, double c, double ux, double uy,
                double uz, std::size_t family, int sphere_nodes, int ball_radial,
                int ball_angular, const std::string& out) {
    std::ifstream is(body_file);
    if (!is) throw io_error("cannot open " + body_file);
    nlohmann::json j;
    is >> j;
    const ConvexBody C = body_from_json(j);
    const SphereQuadrature q = SphereQuadrature::make(
        std::min(C.dim, 2), sphere_nodes, ball_radial, ball_angular);
    std::string body = "{";
    if (family > 0) {
        body += "\"family\":[";
        const auto fam = density_family(family, C.dim);
        for (std::size_t k = 0; k < fam.size(); ++k) {
            const auto r = steiner_center_detail(C, fam[k], q);
            if (k) body += ",";
            body += "{\"point\":" + vec_json(r.point) +
                    ",\"defect\":" + fmt17(r.defect) +
                    ",\"lipschitz\":" + fmt17(steiner_lipschitz(fam[k])) + "}";
        }
        body += "]";
    } else {
        SteinerDensity mu = SteinerDensity::uniform(C.dim);
        if (c != 0.0) {
            Vec u = Vec::zero(C.dim);
            u[0] = ux;
            if (C.dim > 1) u[1] = uy;
            if (C.dim > 2) u[2] = uz;
            mu = SteinerDensity::tilt(u, c);
        }
        const auto r = steiner_center_detail(C, mu, q);
        body += "\"point\":" + vec_json(r.point) +
                ",\"defect\":" + fmt17(r.defect) +
                ",\"lipschitz\":" + fmt17(steiner_lipschitz(mu));
    }
    body += "}\n";
    write_text(out, body);
    return 0;
}

int cmd_svint(const std::string& phi_file, double x0, const std::string& gfile,
              double t, std::size_t n_selections, double p, double alpha,
              const std::string& out) {
    const SetValuedSampledPath Phi = read_interval_path_csv(phi_file);
    const SampledPath g = read_path_csv(gfile);
    const HukuharaPath hp = HukuharaPath::from_derivative(Vec(x0), Phi);
    std::string warning;
    const double a_hat = estimate_holder_exponent(g);
    if (1.0 / p + a_hat <= 1.0)
        warning = "grid-estimated 1/p + alpha <= 1; Young regime doubtful";
    const ConvexBody hull = sv_young_integral(hp, g, t, n_selections);
    std::string body = "{\"integral\":{\"kind\":\"interval\",\"lo\":" +
                       fmt17(hull.lo[0]) + ",\"hi\":" + fmt17(hull.hi[0]) +
                       "},\"n_selections\":" + std::to_string(n_selections) +
                       ",\"warning\":\"" + warning + "\"}\n";
    write_text(out, body);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"set-valued Young integration toolkit"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    std::string config_file, out, format = "json";

    // fbm
    auto* fbm_cmd = app.add_subcommand("fbm", "generate a seeded fBm path");
    double fH = 0.5, fT = 1.0;
    std::size_t fn = 256;
    std::string fbm_out;
    fbm_cmd->add_option("--H", fH, "Hurst exponent in (0,1)");
    fbm_cmd->add_option("--n", fn, "grid cells");
    fbm_cmd->add_option("--T", fT, "horizon");
    fbm_cmd->add_option("--seed", seed, "RNG seed");
    fbm_cmd->add_option("--out", fbm_out, "output CSV")->required();

    // pvar
    auto* pvar_cmd = app.add_subcommand("pvar", "p-variation functionals");
    std::string pv_file, pv_kind = "riesz", pv_out;
    double pv_p = 2.0, pv_a = 0.0, pv_b = 0.0, pv_beta = 0.5;
    bool pv_interval = false;
    pvar_cmd->add_option("--f", pv_file, "path CSV")->required();
    pvar_cmd->add_option("--p", pv_p, "exponent p >= 1");
    pvar_cmd->add_option("--kind", pv_kind, "young | riesz")
        ->check(CLI::IsMember({"young", "riesz"}));
    auto* opt_a = pvar_cmd->add_option("--a", pv_a, "window start");
    auto* opt_b = pvar_cmd->add_option("--b", pv_b, "window end");
    pvar_cmd->add_option("--beta", pv_beta, "Holder exponent for the report");
    pvar_cmd->add_flag("--interval", pv_interval, "input is t,lo,hi CSV");
    pvar_cmd->add_option("--out", pv_out, "output file (append)");

    // young
    auto* young_cmd = app.add_subcommand("young", "Young integral of f dg");
    std::string y_f, y_g, y_method = "riemann", y_out;
    double y_s = 0.0, y_t = 1.0, y_tol = 1e-8, y_rho = 0.5, y_alpha = 0.7,
           y_p = 2.0;
    std::size_t y_levels = 40;
    bool y_bound = false;
    young_cmd->add_option("--f", y_f, "integrand CSV")->required();
    young_cmd->add_option("--g", y_g, "integrator CSV")->required();
    young_cmd->add_option("--s", y_s, "window start");
    young_cmd->add_option("--t", y_t, "window end");
    young_cmd->add_option("--tol", y_tol, "refinement tolerance");
    young_cmd->add_option("--max-levels", y_levels, "refinement level cap");
    young_cmd->add_option("--method", y_method, "riemann | fractional")
        ->check(CLI::IsMember({"riemann", "fractional"}));
    young_cmd->add_option("--rho", y_rho, "fractional order");
    young_cmd->add_option("--alpha", y_alpha, "Holder exponent of g");
    young_cmd->add_option("--p", y_p, "variation exponent of f");
    young_cmd->add_flag("--bound-report", y_bound,
                        "per-cell Young-Loeve bounds");
    young_cmd->add_option("--out", y_out, "output file (append)");

    // steiner
    auto* st_cmd = app.add_subcommand("steiner", "generalized Steiner centers");
    std::string st_body, st_out;
    double st_c = 0.0, st_ux = 1.0, st_uy = 0.0, st_uz = 0.0;
    std::size_t st_family = 0;
    int st_sphere = 360, st_radial = 40, st_angular = 60;
    st_cmd->add_option("--body", st_body, "body JSON file")->required();
    st_cmd->add_option("--c", st_c, "tilt magnitude, |c| < 1");
    st_cmd->add_option("--ux", st_ux, "tilt direction x");
    st_cmd->add_option("--uy", st_uy, "tilt direction y");
    st_cmd->add_option("--uz", st_uz, "tilt direction z");
    st_cmd->add_option("--family", st_family, "emit the first n family centers");
    st_cmd->add_option("--sphere-nodes", st_sphere, "sphere node budget");
    st_cmd->add_option("--ball-nodes-radial", st_radial, "radial nodes");
    st_cmd->add_option("--ball-nodes-angular", st_angular, "angular nodes");
    st_cmd->add_option("--out", st_out, "output file (append)");

    // svint
    auto* sv_cmd = app.add_subcommand("svint", "set-valued Young integral");
    std::string sv_phi, sv_g, sv_out;
    double sv_x0 = 0.0, sv_t = 1.0, sv_p = 2.0, sv_alpha = 0.7;
    std::size_t sv_n = 16;
    sv_cmd->add_option("--phi", sv_phi, "derivative path CSV (t,lo,hi)")
        ->required();
    sv_cmd->add_option("--x0", sv_x0, "initial point");
    sv_cmd->add_option("--g", sv_g, "integrator CSV")->required();
    sv_cmd->add_option("--t", sv_t, "evaluation time");
    sv_cmd->add_option("--n-selections", sv_n, "selection count");
    sv_cmd->add_option("--p", sv_p, "variation exponent");
    sv_cmd->add_option("--alpha", sv_alpha, "Holder exponent of g");
    sv_cmd->add_option("--out", sv_out, "output file (append)");

    // verify
    auto* ver_cmd = app.add_subcommand("verify", "run a verification suite");
    ExperimentConfig cfg;
    std::string suite;
    bool have_n = false, have_seed = false;
    std::size_t v_n = 1024;
    std::uint64_t v_seed = 42;
    double v_H = 0.8, v_p = 2.0, v_alpha = 0.7, v_beta = 0.9, v_rho = 0.5,
           v_theta = 0.5;
    std::size_t v_nsel = 16;
    ver_cmd->add_option("--suite", suite,
                        "variation|young|steiner|ex1|ex2|th6|th7|cor22|prop3");
    ver_cmd->add_option("--config", config_file, "key=value config file");
    auto* vn = ver_cmd->add_option("--n", v_n, "grid cells (power of two)");
    auto* vs = ver_cmd->add_option("--seed", v_seed, "RNG seed");
    auto* vH = ver_cmd->add_option("--H", v_H, "Hurst exponent");
    auto* vp = ver_cmd->add_option("--p", v_p, "variation exponent");
    auto* va = ver_cmd->add_option("--alpha", v_alpha, "Holder exponent");
    auto* vb = ver_cmd->add_option("--beta", v_beta, "Holder exponent");
    auto* vr = ver_cmd->add_option("--rho", v_rho, "fractional order");
    auto* vt = ver_cmd->add_option("--theta", v_theta, "theta in (0,1]");
    auto* vk = ver_cmd->add_option("--n-selections", v_nsel, "selection count");
    ver_cmd->add_option("--out", out, "report file (append)");
    ver_cmd->add_option("--format", format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
    (void)have_n;
    (void)have_seed;

    CLI11_PARSE(app, argc, argv);

    try {
        if (*fbm_cmd) return cmd_fbm(fH, fn, fT, seed, fbm_out);
        if (*pvar_cmd)
            return cmd_pvar(pv_file, pv_p, pv_kind, pv_a, pv_b,
                            opt_a->count() > 0 && opt_b->count() > 0, pv_beta,
                            pv_interval, pv_out);
        if (*young_cmd)
            return cmd_young(y_f, y_g, y_s, y_t, y_tol, y_levels, y_method,
                             y_rho, y_alpha, y_p, y_bound, y_out);
        if (*st_cmd)
            return cmd_steiner(st_body, st_c, st_ux, st_uy, st_uz, st_family,
                               st_sphere, st_radial, st_angular, st_out);
        if (*sv_cmd)
            return cmd_svint(sv_phi, sv_x0, sv_g, sv_t, sv_n, sv_p, sv_alpha,
                             sv_out);
        if (*ver_cmd) {
            if (!config_file.empty()) load_config_file(cfg, config_file);
            if (!suite.empty()) cfg.suite = suite;
            if (vn->count()) cfg.n = v_n;
            if (vs->count()) cfg.seed = v_seed;
            if (vH->count()) cfg.H = v_H;
            if (vp->count()) cfg.p = v_p;
            if (va->count()) cfg.alpha = v_alpha;
            if (vb->count()) cfg.beta = v_beta;
            if (vr->count()) cfg.rho = v_rho;
            if (vt->count()) cfg.theta = v_theta;
            if (vk->count()) cfg.n_selections = v_nsel;
            if (ver_cmd->get_option("--format")->count()) cfg.format = format;
            if (!out.empty()) cfg.out = out;
            const Report rep = run_experiment(cfg);
            const std::string body = emit_report(rep, cfg.format, cfg.out);
            std::cout << body;
            return rep.all_pass() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
