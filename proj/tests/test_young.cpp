#include <catch2/catch_amalgamated.hpp>

#include "setvar/setvar.hpp"

using namespace setvar;
using Catch::Approx;

namespace {

std::vector<std::size_t> full_partition(const SampledPath& f) {
    std::vector<std::size_t> idx(f.nodes());
    for (std::size_t j = 0; j < idx.size(); ++j) idx[j] = j;
    return idx;
}

}  // namespace

TEST_CASE("riemann sum examples") {
    const SampledPath g =
        sample_function(16, 1.0, [](double t) { return t * t - t; });
    const SampledPath cf = sample_function(16, 1.0, [](double) { return 2.5; });
    // constant f telescopes for every partition
    REQUIRE(riemann_sum(cf, g, full_partition(cf))[0] ==
            Approx(2.5 * (g.scalar(16) - g.scalar(0))).margin(1e-15));
    REQUIRE(riemann_sum(cf, g, {0, 7, 16})[0] ==
            Approx(2.5 * (g.scalar(16) - g.scalar(0))).margin(1e-15));

    const SampledPath cg = sample_function(16, 1.0, [](double) { return 1.0; });
    const SampledPath f = sample_function(16, 1.0, [](double t) { return t; });
    REQUIRE(riemann_sum(f, cg, full_partition(f))[0] == 0.0);

    // f = g = t with the dyadic two-cell partition: 0*(1/2) + 1/2*(1/2)
    const SampledPath t2 = make_scalar_path({0.0, 0.5, 1.0}, {0.0, 0.5, 1.0});
    REQUIRE(riemann_sum(t2, t2, {0, 1, 2})[0] == 0.25);
}

TEST_CASE("young integral of t^2 dt^2") {
    const SampledPath sq =
        sample_function(1024, 1.0, [](double t) { return t * t; });
    const YoungResult r = young_integral(sq, sq, 0.0, 1.0, 1e-8, 30);
    REQUIRE(std::abs(r.value[0] - 0.5) < 1e-6);
    REQUIRE(r.cauchy_defect < 1e-8);
    REQUIRE(r.partition_used % 1024 == 0);
    // refinement limit equals the piecewise-linear closed form
    REQUIRE(r.value[0] ==
            Approx(young_integral_exact_pl(sq, sq, 0.0, 1.0)[0]).margin(1e-7));
}

TEST_CASE("young integral of constant integrand is exact at level 0") {
    const SampledPath g = gen::random_walk(61, 0, 128, 1.0);
    const SampledPath one =
        sample_function(128, 1.0, [](double) { return 1.0; });
    const YoungResult r = young_integral(one, g, 0.0, 1.0, 1e-14, 4);
    REQUIRE(r.value[0] == Approx(g.scalar(128) - g.scalar(0)).margin(1e-13));
}

TEST_CASE("young integral linearity and window additivity") {
    const SampledPath f1 = gen::random_walk(62, 0, 64, 1.0);
    const SampledPath f2 = gen::random_walk(62, 1, 64, 1.0);
    const SampledPath g = gen::random_walk(62, 2, 64, 1.0);
    std::vector<Vec> combo(f1.nodes());
    for (std::size_t j = 0; j < f1.nodes(); ++j)
        combo[j] = 2.0 * f1.values[j] + (-3.0) * f2.values[j];
    const SampledPath fc(f1.grid, combo);
    const double lhs = young_integral_exact_pl(fc, g, 0.0, 1.0)[0];
    const double rhs = 2.0 * young_integral_exact_pl(f1, g, 0.0, 1.0)[0] -
                       3.0 * young_integral_exact_pl(f2, g, 0.0, 1.0)[0];
    REQUIRE(lhs == Approx(rhs).margin(1e-12));

    const double whole = young_integral_exact_pl(f1, g, 0.0, 1.0)[0];
    const double split = young_integral_exact_pl(f1, g, 0.0, 0.5)[0] +
                         young_integral_exact_pl(f1, g, 0.5, 1.0)[0];
    REQUIRE(whole == Approx(split).margin(1e-13));
}

TEST_CASE("young-loeve bound oracle") {
    REQUIRE(young_constant(0.7, 2.0) ==
            Approx(1.0 / (1.0 - std::pow(2.0, 1.0 - 1.2))));
    REQUIRE_THROWS_AS(young_constant(0.4, 2.0), bad_exponent);

    // constant f: both sides trivial
    const SampledPath g = gen::random_walk(63, 0, 128, 1.0);
    const SampledPath cf = sample_function(128, 1.0, [](double) { return 1.5; });
    const double lhs = std::abs(
        young_integral_exact_pl(cf, g, 0.0, 1.0)[0] -
        1.5 * (g.scalar(128) - g.scalar(0)));
    REQUIRE(lhs < 1e-13);
    REQUIRE(young_loeve_bound(cf, g, 0.0, 1.0, 0.7, 2.0) >= 0.0);

    // linear f and g: closed forms on both sides
    const SampledPath lf = sample_function(64, 1.0, [](double t) { return t; });
    const double l2 = std::abs(young_integral_exact_pl(lf, lf, 0.0, 1.0)[0] -
                               lf.scalar(0) * 1.0);
    REQUIRE(l2 == Approx(0.5));
    const double bound = young_loeve_bound(lf, lf, 0.0, 1.0, 1.0, 1.0);
    REQUIRE(bound == Approx(young_constant(1.0, 1.0) * 1.0 * 1.0));
    REQUIRE(l2 <= bound);
}

TEST_CASE("young-loeve on fbm windows") {
    const SampledPath f = fbm_path({0.8, 1024, 1.0, 9001});
    const SampledPath g = fbm_path({0.8, 1024, 1.0, 9002});
    const double Ma = holder_constant(g, 0.7);
    const auto pref = young_prefix_pl(f, g);
    CounterRng rng{64, 0};
    for (std::size_t k = 0; k < 100; ++k) {
        std::size_t i = rng.bits(2 * k) % f.nodes();
        std::size_t j = rng.bits(2 * k + 1) % f.nodes();
        if (i == j) continue;
        if (i > j) std::swap(i, j);
        const double lhs =
            std::abs(pref[j][0] - pref[i][0] -
                     f.scalar(i) * (g.scalar(j) - g.scalar(i)));
        REQUIRE(lhs <= young_loeve_bound(f, g, f.grid[i], f.grid[j], 0.7, 2.0,
                                         Ma));
    }
}

TEST_CASE("corollary bound for integral differences") {
    const SampledPath g = fbm_path({0.8, 512, 1.0, 9005});
    const double alpha = 0.7, p = 2.0;
    const double Ma = holder_constant(g, alpha);
    for (std::uint64_t i = 0; i < 10; ++i) {
        const SampledPath f1 = gen::random_walk(65, 2 * i, 512, 1.0);
        const SampledPath f2 = gen::random_walk(65, 2 * i + 1, 512, 1.0);
        const auto p1 = young_prefix_pl(f1, g);
        const auto p2 = young_prefix_pl(f2, g);
        std::vector<Vec> diff(p1.size());
        for (std::size_t j = 0; j < p1.size(); ++j) diff[j] = p1[j] - p2[j];
        const SampledPath dpath(f1.grid, diff);
        double sup_diff = 0.0;
        std::vector<Vec> fdiff(f1.nodes());
        for (std::size_t j = 0; j < f1.nodes(); ++j) {
            fdiff[j] = f1.values[j] - f2.values[j];
            sup_diff = std::max(sup_diff, norm(fdiff[j]));
        }
        const SampledPath fd(f1.grid, fdiff);
        double sup_int_diff = 0.0;
        for (const auto& v : dpath.values)
            sup_int_diff = std::max(sup_int_diff, norm(v));
        // grid ||.||_alpha of the integral difference vs the stated bound,
        // with T = 1 so (1 + T^alpha) = 2
        const double lhs = sup_int_diff + holder_constant(dpath, alpha);
        const double rhs =
            (sup_diff + young_constant(alpha, p) *
                            std::pow(var_p(fd, p, 0.0, 1.0), 1.0 / p)) *
            Ma * 2.0;
        REQUIRE(lhs <= rhs + 1e-12);
    }
}

TEST_CASE("fractional derivative examples") {
    // shifted constant path is identically zero
    const SampledPath z = sample_function(64, 1.0, [](double) { return 0.0; });
    REQUIRE(fractional_derivative(z, 0.5, FracSide::lower, 32).value[0] == 0.0);

    // f(t) = t: D^rho_{0+} f (t) = t^{1-rho} / Gamma(2-rho)
    const SampledPath lin =
        sample_function(2048, 1.0, [](double t) { return t; });
    for (double rho : {0.25, 0.5, 0.75}) {
        for (std::size_t k : {512u, 1024u, 1536u}) {
            const double t = lin.grid[k];
            const double expect =
                std::pow(t, 1.0 - rho) / std::tgamma(2.0 - rho);
            const double got =
                fractional_derivative(lin, rho, FracSide::lower, k).value[0];
            REQUIRE(got == Approx(expect).epsilon(2e-4));
        }
    }

    // rho -> 0+ recovers f(t) - f(0) on smooth paths
    const SampledPath smooth = shift_lower(
        sample_function(4096, 1.0, [](double t) { return std::sin(t); }));
    const double v =
        fractional_derivative(smooth, 0.001, FracSide::lower, 2048).value[0];
    REQUIRE(v == Approx(std::sin(0.5)).margin(1e-3));

    REQUIRE_THROWS_AS(fractional_derivative(z, 0.5, FracSide::lower, 0),
                      boundary_point);
    REQUIRE_THROWS_AS(fractional_derivative(z, 1.5, FracSide::lower, 3),
                      bad_exponent);
}

TEST_CASE("fractional representation on smooth pairs") {
    const SampledPath sq =
        sample_function(1024, 1.0, [](double t) { return t * t; });
    const double ref = young_integral_exact_pl(sq, sq, 0.0, 1.0)[0];
    for (double rho : {0.35, 0.5, 0.65}) {
        const double v = young_via_fractional(sq, sq, rho, 1.0, 1.0)[0];
        REQUIRE(v == Approx(ref).margin(1e-3));
    }
    // constant integrand: first term vanishes
    const SampledPath cf =
        sample_function(256, 1.0, [](double) { return 2.0; });
    const SampledPath g = sample_function(256, 1.0, [](double t) {
        return std::cos(3.0 * t);
    });
    const double v = young_via_fractional(cf, g, 0.5, 1.0, 1.0)[0];
    REQUIRE(v == Approx(2.0 * (std::cos(3.0) - 1.0)).margin(1e-6));

    REQUIRE_THROWS_AS(young_via_fractional(sq, sq, 0.95, 1.0, 0.9),
                      bad_exponent);
}

TEST_CASE("fractional representation on holder pairs") {
    // cross-oracle at n = 2^14 within 1e-2
    const std::size_t n = 1 << 14;
    const SampledPath f = fbm_path({0.8, n, 1.0, 9101});
    const SampledPath g = fbm_path({0.8, n, 1.0, 9102});
    const double ref = young_integral_exact_pl(f, g, 0.0, 1.0)[0];
    const double v = young_via_fractional(f, g, 0.5, 0.7, 0.7)[0];
    REQUIRE(v == Approx(ref).margin(1e-2));
}

TEST_CASE("lemma1 ratio") {
    const SampledPath f = gen::random_walk(66, 0, 128, 1.0);
    const SampledPath g = gen::random_walk(66, 1, 128, 1.0);
    REQUIRE(lemma1_ratio(f, f, g, 0.5, 0.5, 0.5) == 0.0);

    SampledPath shifted = f;
    for (auto& v : shifted.values) v += Vec(3.0);
    REQUIRE(lemma1_ratio(f, shifted, g, 0.5, 0.5, 0.5) ==
            Approx(0.0).margin(1e-12));

    // empirical max ratio is stable under grid doubling
    const auto max_ratio = [](std::size_t cells) {
        const SampledPath gg = fbm_path({0.8, cells, 1.0, 9200});
        double m = 0.0;
        for (std::uint64_t i = 0; i < 50; ++i) {
            const SampledPath a = gen::random_walk(67, 2 * i, cells, 1.0);
            const SampledPath b = gen::random_walk(67, 2 * i + 1, cells, 1.0);
            m = std::max(m, lemma1_ratio(a, b, gg, 0.5, 0.5, 0.5));
        }
        return m;
    };
    const double m512 = max_ratio(512);
    const double m1024 = max_ratio(1024);
    REQUIRE(std::isfinite(m512));
    REQUIRE(std::isfinite(m1024));
    REQUIRE(m1024 / m512 < 2.0);
    REQUIRE(m1024 / m512 > 0.5);
}

TEST_CASE("young integral rejects bad windows and reports no convergence") {
    const SampledPath f = gen::random_walk(68, 0, 64, 1.0);
    const SampledPath g = gen::random_walk(68, 1, 64, 1.0);
    REQUIRE_THROWS_AS(young_integral(f, g, 0.1234, 1.0), window_not_on_grid);
    REQUIRE_THROWS_AS(young_integral(f, g, 0.0, 1.0, 0.0, 2),
                      no_convergence);
}
