#pragma once

#include "setvar/config.hpp"
#include "setvar/fbm.hpp"
#include "setvar/report.hpp"
#include "setvar/svcalc.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Deterministic instance generators shared by the verification suites.
// ---------------------------------------------------------------------------

namespace gen {

inline SampledPath random_walk(std::uint64_t seed, std::uint64_t stream,
                               std::size_t n_cells, double T) {
    CounterRng rng{seed, stream};
    std::vector<double> v(n_cells + 1, 0.0);
    const double s = std::sqrt(T / static_cast<double>(n_cells));
    for (std::size_t j = 1; j <= n_cells; ++j)
        v[j] = v[j - 1] + s * rng.normal(j);
    return make_scalar_path(uniform_grid(n_cells, T), v);
}

inline ConvexBody random_polygon(std::uint64_t seed, std::uint64_t stream) {
    CounterRng rng{seed, stream};
    const std::size_t k = 5 + rng.bits(0) % 8;
    const double cx = rng.uniform(1, -3.0, 3.0);
    const double cy = rng.uniform(2, -3.0, 3.0);
    std::vector<double> angles(k);
    for (std::size_t i = 0; i < k; ++i)
        angles[i] = rng.uniform(3 + i, 0.0, 2.0 * std::numbers::pi);
    std::sort(angles.begin(), angles.end());
    std::vector<Vec> pts;
    pts.reserve(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double r = rng.uniform(100 + i, 0.5, 2.0);
        pts.push_back(Vec(cx + r * std::cos(angles[i]),
                          cy + r * std::sin(angles[i])));
    }
    return ConvexBody::polygon(std::move(pts));
}

/// Smooth random interval-valued derivative path [m - w, m + w], w >= 0.3,
/// presented in Hukuhara form.
inline HukuharaPath random_interval_hp(std::uint64_t seed, std::uint64_t stream,
                                       const std::vector<double>& grid) {
    CounterRng rng{seed, stream};
    const double a1 = rng.uniform(0, -1.0, 1.0), a2 = rng.uniform(1, -0.5, 0.5);
    const double ph1 = rng.uniform(2, 0.0, 6.28), ph2 = rng.uniform(3, 0.0, 6.28);
    const double wph = rng.uniform(4, 0.0, 6.28);
    const double x0 = rng.uniform(5, -1.0, 1.0);
    std::vector<ConvexBody> bodies;
    bodies.reserve(grid.size());
    for (double t : grid) {
        const double m = a1 * std::sin(2.0 * std::numbers::pi * t + ph1) +
                         a2 * std::sin(4.0 * std::numbers::pi * t + ph2);
        const double w =
            0.3 + 0.25 * (1.0 + std::sin(2.0 * std::numbers::pi * t + wph));
        bodies.push_back(ConvexBody::interval(m - w, m + w));
    }
    return HukuharaPath::from_derivative(
        Vec(x0), SetValuedSampledPath(grid, std::move(bodies)));
}

inline SampledPath subsample(const SampledPath& f, std::size_t step) {
    std::vector<double> g;
    std::vector<Vec> v;
    for (std::size_t j = 0; j < f.nodes(); j += step) {
        g.push_back(f.grid[j]);
        v.push_back(f.values[j]);
    }
    return SampledPath(std::move(g), std::move(v));
}

}  // namespace gen

// ---------------------------------------------------------------------------
// Suites. Each returns a Report with one record per quantitative check.
// ---------------------------------------------------------------------------

inline Report suite_variation(const ExperimentConfig& cfg) {
    Report rep;
    const double T = cfg.T;
    const SampledPath W = fbm_path({0.5, cfg.n, T, cfg.seed});

    // partition additivity of the Riesz functional at every interior split
    const std::vector<double> pre = riesz_vp_prefix(W, cfg.p, 0.0, T);
    SampledPath rev = W;
    std::reverse(rev.values.begin(), rev.values.end());
    for (std::size_t j = 0; j < rev.nodes(); ++j)
        rev.grid[j] = T - W.grid[W.nodes() - 1 - j];
    const std::vector<double> sufr = riesz_vp_prefix(rev, cfg.p, 0.0, T);
    const double total = pre.back();
    double defect = 0.0;
    for (std::size_t j = 0; j < pre.size(); ++j)
        defect = std::max(
            defect, std::abs(pre[j] + sufr[pre.size() - 1 - j] - total));
    rep.add("prop1a_additivity_defect", defect, 1e-9, defect <= 1e-9);

    // Jensen: V_1 <= (b-a)^{1-1/p} V_p^{1/p} on random paths
    std::size_t violations = 0;
    for (std::size_t i = 0; i < 1000; ++i) {
        const SampledPath f = gen::random_walk(cfg.seed, 10 + i, 64, T);
        const double v1 = riesz_vp(f, 1.0);
        for (double pp : {1.5, 2.0, 3.0}) {
            const double rhs = std::pow(T, 1.0 - 1.0 / pp) *
                               std::pow(riesz_vp(f, pp), 1.0 / pp);
            if (v1 > rhs * (1.0 + 1e-12) + 1e-12) ++violations;
        }
    }
    rep.add("jensen_violations", static_cast<double>(violations), 0.0,
            violations == 0);

    // Riesz identity: V_2(t^2) = int (2t)^2 dt = 4/3
    const SampledPath sq =
        sample_function(10000, 1.0, [](double t) { return t * t; });
    const double v = riesz_vp(sq, 2.0);
    rep.add("riesz_identity_t2", v, 4.0 / 3.0,
            std::abs(v - 4.0 / 3.0) <= 0.01 * (4.0 / 3.0));
    return rep;
}

inline Report suite_young(const ExperimentConfig& cfg) {
    Report rep;
    const SampledPath sq =
        sample_function(1024, 1.0, [](double t) { return t * t; });

    const YoungResult yr = young_integral(sq, sq, 0.0, 1.0, 1e-8, 30);
    rep.add("int_g_dg_half", yr.value[0], 0.5,
            std::abs(yr.value[0] - 0.5) <= 1e-6);

    const double yf = young_via_fractional(sq, sq, 0.5, 1.0, 1.0)[0];
    rep.add("fractional_vs_riemann", std::abs(yf - yr.value[0]), 1e-3,
            std::abs(yf - yr.value[0]) <= 1e-3);

    double rho_spread = 0.0;
    const double y035 = young_via_fractional(sq, sq, 0.35, 1.0, 1.0)[0];
    const double y065 = young_via_fractional(sq, sq, 0.65, 1.0, 1.0)[0];
    rho_spread = std::max({std::abs(y035 - yf), std::abs(y065 - yf),
                           std::abs(y035 - y065)});
    rep.add("rho_invariance_spread", rho_spread, 1e-3, rho_spread <= 1e-3);

    // Young-Loeve with the sewing constant on fBm data: zero violations
    const SampledPath f = fbm_path({cfg.H, cfg.n, cfg.T, cfg.seed});
    const SampledPath g = fbm_path({cfg.H, cfg.n, cfg.T, cfg.seed + 1});
    const double Ma = holder_constant(g, cfg.alpha);
    const std::vector<Vec> pref = young_prefix_pl(f, g);
    CounterRng rng{cfg.seed, 777};
    std::size_t violations = 0;
    double worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < 500; ++k) {
        std::size_t i = rng.bits(2 * k) % (cfg.n + 1);
        std::size_t j = rng.bits(2 * k + 1) % (cfg.n + 1);
        if (i == j) j = (j + 1) % (cfg.n + 1);
        if (i > j) std::swap(i, j);
        const double s = f.grid[i], t = f.grid[j];
        const double lhs =
            std::abs(pref[j][0] - pref[i][0] -
                     f.scalar(i) * (g.scalar(j) - g.scalar(i)));
        const double rhs = young_loeve_bound(f, g, s, t, cfg.alpha, cfg.p, Ma);
        if (lhs > rhs) ++violations;
        if (rhs > 0.0) worst_margin = std::min(worst_margin, rhs - lhs);
    }
    rep.add("young_loeve_violations", static_cast<double>(violations), 0.0,
            violations == 0);
    rep.add("young_loeve_worst_margin", worst_margin, 0.0, worst_margin >= 0.0);
    return rep;
}

inline Report suite_steiner(const ExperimentConfig& cfg) {
    Report rep;
    const SphereQuadrature q1 = SphereQuadrature::make(1);
    const SphereQuadrature q2 = SphereQuadrature::make(2);
    const SteinerDensity uni1 = SteinerDensity::uniform(1);

    double interval_defect = 0.0;
    for (auto [a, b] : std::vector<std::pair<double, double>>{
             {0.0, 1.0}, {-2.0, 1.0}, {3.0, 3.0}, {-5.0, -1.0}}) {
        const Vec st = steiner_center(ConvexBody::interval(a, b), uni1, q1);
        interval_defect =
            std::max(interval_defect, std::abs(st[0] - 0.5 * (a + b)));
    }
    rep.add("interval_uniform_exact", interval_defect, 0.0,
            interval_defect == 0.0);

    const std::size_t n_poly = 200;
    std::vector<ConvexBody> polys;
    polys.reserve(n_poly);
    for (std::size_t i = 0; i < n_poly; ++i)
        polys.push_back(gen::random_polygon(cfg.seed, 500 + i));
    const std::vector<SteinerDensity> fam = density_family(3, 2);

    // membership: pre-projection quadrature defect
    std::vector<double> defects(n_poly, 0.0);
    std::vector<std::array<Vec, 3>> centers(n_poly);
    parallel_for(n_poly, [&](std::size_t i) {
        for (std::size_t m = 0; m < fam.size(); ++m) {
            const auto r = steiner_center_detail(polys[i], fam[m], q2);
            defects[i] = std::max(defects[i], r.defect);
            centers[i][m] = r.point;
        }
    });
    const double mem = *std::max_element(defects.begin(), defects.end());
    rep.add("membership_max_defect", mem, 1e-6, mem <= 1e-6);

    // linearity over scaled Minkowski combinations; negative coefficients
    // only commute with St for the symmetric (uniform) density
    std::vector<double> lin(n_poly / 2, 0.0);
    parallel_for(n_poly / 2, [&](std::size_t pair) {
        const ConvexBody& A = polys[2 * pair];
        const ConvexBody& B = polys[2 * pair + 1];
        for (std::size_t m = 0; m < 2; ++m) {
            const Vec stA = centers[2 * pair][m];
            const Vec stB = centers[2 * pair + 1][m];
            const int lo = fam[m].c == 0.0 ? -2 : 0;
            for (int a = lo; a <= 2; ++a)
                for (int b = lo; b <= 2; ++b) {
                    const ConvexBody comb =
                        minkowski_sum(scale(a, A), scale(b, B));
                    const Vec st = steiner_center(comb, fam[m], q2);
                    lin[pair] = std::max(
                        lin[pair],
                        dist(st, static_cast<double>(a) * stA +
                                     static_cast<double>(b) * stB));
                }
        }
    });
    const double linmax = *std::max_element(lin.begin(), lin.end());
    rep.add("linearity_max_defect", linmax, 1e-6, linmax <= 1e-6);

    // Lipschitz bound against the Hausdorff metric
    std::size_t lip_violations = 0;
    double lip_worst = 0.0;
    for (std::size_t i = 0; i + 1 < n_poly; ++i) {
        const double h = hausdorff(polys[i], polys[i + 1]);
        for (std::size_t m = 0; m < fam.size(); ++m) {
            const double lhs = dist(centers[i][m], centers[i + 1][m]);
            const double bound = steiner_lipschitz(fam[m]) * h + 1e-6;
            lip_worst = std::max(lip_worst, lhs - steiner_lipschitz(fam[m]) * h);
            if (lhs > bound) ++lip_violations;
        }
    }
    rep.add("lipschitz_violations", static_cast<double>(lip_violations), 0.0,
            lip_violations == 0);
    rep.add("lipschitz_worst_excess", lip_worst, 1e-6, lip_worst <= 1e-6);
    return rep;
}

inline Report suite_ex1(const ExperimentConfig& cfg) {
    Report rep;
    const std::size_t n = 4096;
    const double p = 1.5;
    const SampledPath W = fbm_path({0.5, n, cfg.T, cfg.seed});
    double range_lo = W.scalar(0), range_hi = range_lo;
    for (std::size_t j = 0; j < W.nodes(); ++j) {
        range_lo = std::min(range_lo, W.scalar(j));
        range_hi = std::max(range_hi, W.scalar(j));
    }
    const double range = range_hi - range_lo;

    std::vector<double> vp, err;
    for (std::size_t k = 0; k <= 5; ++k) {
        const std::size_t cells = 64u << k;
        const SampledPath Wk =
            interpolate_linear(W, coarse_indices(W.nodes(), cells));
        vp.push_back(riesz_vp(Wk, p, 0.0, cfg.T, 1));
        double e = 0.0;
        for (std::size_t j = 0; j < W.nodes(); ++j)
            e = std::max(e, std::abs(W.scalar(j) - Wk.scalar(j)));
        err.push_back(e);
    }
    double min_step = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k + 1 < vp.size(); ++k)
        min_step = std::min(min_step, vp[k + 1] - vp[k]);
    const bool finite =
        std::all_of(vp.begin(), vp.end(), [](double x) { return std::isfinite(x); });
    rep.add("vp_finite_all_levels", finite ? 1.0 : 0.0, 1.0, finite);
    rep.add("vp_strictly_increasing_min_step", min_step, 0.0, min_step > 0.0);
    rep.add("sup_error_final_vs_range", err.back(), 0.05 * range,
            err.back() < 0.05 * range);
    rep.add("sup_error_trend", err.back(), err.front(),
            err.back() < err.front());
    return rep;
}

inline Report suite_ex2(const ExperimentConfig& cfg) {
    Report rep;
    const std::vector<double> grid = uniform_grid(cfg.n, 1.0);
    std::vector<ConvexBody> phi(grid.size(), ConvexBody::interval(0.0, 1.0));
    const HukuharaPath hp =
        HukuharaPath::from_derivative(Vec(0.0), SetValuedSampledPath(grid, phi));

    std::vector<double> f1(grid.size(), 0.0), f2(grid.size());
    for (std::size_t j = 0; j < grid.size(); ++j)
        f2[j] = grid[j] < 0.5 ? grid[j] : 1.0 - grid[j];
    const SampledPath p1 = make_scalar_path(grid, f1);
    const SampledPath p2 = make_scalar_path(grid, f2);

    const MembershipReport m1 = membership_check(p1, hp.F, 0.0);
    const MembershipReport m2 = membership_check(p2, hp.F, 0.0);
    rep.add("input1_defect", m1.worst_defect, 0.0, m1.worst_defect == 0.0);
    rep.add("input2_defect", m2.worst_defect, 0.0, m2.worst_defect == 0.0);

    const SampledPath stitched = oplus(p1, p2, 0.5);
    const MembershipReport ms = membership_check(stitched, hp.F, 1e-12);
    const double at_T =
        dist_to_body(hp.F.bodies.back(), stitched.values.back());
    rep.add("stitched_defect_at_T", at_T, 0.5, at_T == 0.5);
    rep.add("stitched_worst_is_T", static_cast<double>(ms.worst_node),
            static_cast<double>(grid.size() - 1),
            ms.worst_node == grid.size() - 1 && ms.worst_defect == 0.5);
    return rep;
}

inline Report suite_th6(const ExperimentConfig& cfg) {
    Report rep;
    const std::size_t n_inst = 50;
    const SampledPath g_fine = fbm_path({cfg.H, cfg.n, cfg.T, cfg.seed});
    const SampledPath g_half = gen::subsample(g_fine, 2);

    const auto max_ratio = [&](const SampledPath& g) {
        const double Ma = holder_constant(g, cfg.alpha);
        std::vector<double> ratios(n_inst, 0.0);
        parallel_for(n_inst, [&](std::size_t i) {
            const HukuharaPath hp1 =
                gen::random_interval_hp(cfg.seed, 2000 + 2 * i, g.grid);
            const HukuharaPath hp2 =
                gen::random_interval_hp(cfg.seed, 2001 + 2 * i, g.grid);
            const Th6Report r =
                verify_th6(hp1, hp2, g, cfg.rho, cfg.theta, g.horizon(),
                           cfg.n_selections, cfg.alpha, cfg.beta, Ma);
            ratios[i] = r.ratio;
        });
        return *std::max_element(ratios.begin(), ratios.end());
    };

    const double r_half = max_ratio(g_half);
    const double r_fine = max_ratio(g_fine);
    rep.add("max_ratio_fine", r_fine, 0.0,
            std::isfinite(r_fine) && r_fine >= 0.0);
    const double drift = r_fine / r_half;
    rep.add("grid_doubling_drift", drift, 1.0, drift > 0.5 && drift < 2.0);
    return rep;
}

inline Report suite_th7(const ExperimentConfig& cfg) {
    Report rep;
    const SampledPath g = fbm_path({cfg.H, cfg.n, cfg.T, cfg.seed});
    const HukuharaPath hp1 = gen::random_interval_hp(cfg.seed, 3001, g.grid);
    const HukuharaPath hp2 = gen::random_interval_hp(cfg.seed, 3002, g.grid);
    const Th7Report r = verify_th7(hp1, hp2, g, g.horizon(), 64);
    rep.add("member_identity_defect", r.member_identity_defect, 1e-10,
            r.member_identity_defect <= 1e-10);
    rep.add("hull_inclusion_defect", r.inclusion_defect, 1e-8,
            r.inclusion_defect <= 1e-8);
    const double gap4 = r.gaps.front().second;
    const double gap64 = r.gaps.back().second;
    rep.add("gap_64_vs_4", gap64, gap4, gap64 < gap4);
    return rep;
}

inline Report suite_cor22(const ExperimentConfig& cfg) {
    Report rep;
    const SampledPath g = fbm_path({cfg.H, cfg.n, cfg.T, cfg.seed});
    std::vector<ConvexBody> phi(g.nodes(), ConvexBody::interval(0.0, 1.0));
    const HukuharaPath hp = HukuharaPath::from_derivative(
        Vec(0.0), SetValuedSampledPath(g.grid, phi));
    const Cor22Report r =
        verify_cor22(hp, g, {1, 2, 4, 8, 16}, cfg.n_selections);

    double dmatch = 0.0;
    for (std::size_t k = 0; k < r.schedule.size(); ++k)
        dmatch = std::max(dmatch, std::abs(r.derivative_gaps[k] -
                                           1.0 / r.schedule[k]));
    rep.add("derivative_gap_match", dmatch, 1e-12, dmatch <= 1e-12);

    double worst_increase = 0.0;
    for (std::size_t k = 0; k + 1 < r.integral_gaps.size(); ++k)
        worst_increase = std::max(
            worst_increase, r.integral_gaps[k + 1] - r.integral_gaps[k]);
    rep.add("e_nonincreasing_worst_step", worst_increase, 0.0,
            worst_increase <= 1e-15);

    const double e1 = r.integral_gaps.front(), e16 = r.integral_gaps.back();
    // e_16 <= e_1 / 4, one dyadic step of slack
    rep.add("e16_vs_quarter_e1", e16, e1 / 4.0, e16 <= 0.5 * e1);
    return rep;
}

inline Report suite_prop3(const ExperimentConfig& cfg) {
    Report rep;
    const std::vector<double> grid = uniform_grid(cfg.n, 1.0);
    std::vector<ConvexBody> phi(grid.size(), ConvexBody::interval(0.0, 1.0));
    const HukuharaPath hp =
        HukuharaPath::from_derivative(Vec(0.0), SetValuedSampledPath(grid, phi));
    const SelectionFamily fam = selection_family(hp, 16);

    const SampledPath mid =
        sample_function(cfg.n, 1.0, [](double t) { return 0.5 * t; });
    const ApproxSelectionReport a1 = approximate_selection(mid, fam, 0.05);
    rep.add("midpoint_error", a1.achieved_error, 0.05,
            a1.success && a1.achieved_error < 0.05);

    // non-member target: phi(s) = 1/2 + 0.3 sin(2 pi s) integrated
    std::vector<double> v(grid.size(), 0.0);
    for (std::size_t j = 1; j < grid.size(); ++j) {
        const double w = 0.5 * (grid[j] - grid[j - 1]);
        const auto ph = [](double s) {
            return 0.5 + 0.3 * std::sin(2.0 * std::numbers::pi * s);
        };
        v[j] = v[j - 1] + w * (ph(grid[j]) + ph(grid[j - 1]));
    }
    const SampledPath wig = make_scalar_path(grid, v);
    const MembershipReport mw = membership_check(wig, hp.F, 1e-12);
    rep.add("wiggle_is_selection", mw.worst_defect, 0.0, mw.ok);
    const ApproxSelectionReport a2 = approximate_selection(wig, fam, 1e-4);
    rep.add("negative_control_soft_fail", a2.success ? 1.0 : 0.0, 0.0,
            !a2.success);
    rep.add("negative_control_error_positive", a2.achieved_error, 1e-4,
            a2.achieved_error > 1e-4);
    return rep;
}

// ---------------------------------------------------------------------------

inline Report run_experiment(const ExperimentConfig& cfg) {
    cfg.validate();
    Report rep;
    if (cfg.suite == "variation") rep = suite_variation(cfg);
    else if (cfg.suite == "young") rep = suite_young(cfg);
    else if (cfg.suite == "steiner") rep = suite_steiner(cfg);
    else if (cfg.suite == "ex1") rep = suite_ex1(cfg);
    else if (cfg.suite == "ex2") rep = suite_ex2(cfg);
    else if (cfg.suite == "th6") rep = suite_th6(cfg);
    else if (cfg.suite == "th7") rep = suite_th7(cfg);
    else if (cfg.suite == "cor22") rep = suite_cor22(cfg);
    else if (cfg.suite == "prop3") rep = suite_prop3(cfg);
    else throw unknown_suite("unknown suite: " + cfg.suite);
    rep.suite = cfg.suite;
    rep.seed = cfg.seed;
    return rep;
}

}  // namespace setvar
