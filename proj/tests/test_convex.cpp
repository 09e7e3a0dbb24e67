#include <catch2/catch_amalgamated.hpp>

#include "setvar/setvar.hpp"

using namespace setvar;
using Catch::Approx;

namespace {

ConvexBody unit_square() {
    return ConvexBody::polygon(
        {Vec(0.0, 0.0), Vec(1.0, 0.0), Vec(1.0, 1.0), Vec(0.0, 1.0)});
}

ConvexBody rand_interval(CounterRng& rng, std::uint64_t i) {
    const double a = rng.uniform(2 * i, -4.0, 4.0);
    const double w = rng.uniform(2 * i + 1, 0.0, 3.0);
    return ConvexBody::interval(a, a + w);
}

}  // namespace

TEST_CASE("support function") {
    REQUIRE(support(ConvexBody::interval(0, 1), Vec(1.0)) == 1.0);
    REQUIRE(support(ConvexBody::interval(-2, 5), Vec(-1.0)) == 2.0);
    REQUIRE(support(unit_square(), Vec(1.0, 1.0)) == 2.0);
    REQUIRE(support(ConvexBody::box(Vec(-1.0, -1.0), Vec(1.0, 2.0)),
                    Vec(0.0, -1.0)) == 1.0);
}

TEST_CASE("minkowski sum") {
    const ConvexBody s = minkowski_sum(ConvexBody::interval(0, 1),
                                       ConvexBody::interval(2, 3));
    REQUIRE(s.lo[0] == 2.0);
    REQUIRE(s.hi[0] == 4.0);

    const ConvexBody a = ConvexBody::interval(-1, 7);
    const ConvexBody id = minkowski_sum(a, ConvexBody::interval(0, 0));
    REQUIRE(hausdorff(id, a) == 0.0);

    const ConvexBody sq2 = minkowski_sum(unit_square(), unit_square());
    REQUIRE(sq2.verts.size() == 4);
    REQUIRE(support(sq2, Vec(1.0, 0.0)) == Approx(2.0));
    REQUIRE(support(sq2, Vec(0.0, -1.0)) == Approx(0.0));

    REQUIRE_THROWS_AS(
        minkowski_sum(a, ConvexBody::box(Vec(0.0, 0.0), Vec(1.0, 1.0))),
        dimension_mismatch);
}

TEST_CASE("support additivity under minkowski sum") {
    CounterRng rng{7, 0};
    for (std::uint64_t i = 0; i < 50; ++i) {
        const ConvexBody a = rand_interval(rng, i);
        const ConvexBody b = rand_interval(rng, 100 + i);
        const ConvexBody s = minkowski_sum(a, b);
        for (double p : {1.0, -1.0}) {
            REQUIRE(support(s, Vec(p)) ==
                    support(a, Vec(p)) + support(b, Vec(p)));
        }
    }
    for (std::uint64_t i = 0; i < 50; ++i) {
        const ConvexBody a = gen::random_polygon(7, i);
        const ConvexBody b = gen::random_polygon(7, 1000 + i);
        const ConvexBody s = minkowski_sum(a, b);
        CounterRng dir{11, i};
        for (std::uint64_t k = 0; k < 8; ++k) {
            const double th = dir.uniform(k, 0.0, 6.2831853071795865);
            const Vec p(std::cos(th), std::sin(th));
            REQUIRE(support(s, p) ==
                    Approx(support(a, p) + support(b, p)).margin(1e-10));
        }
    }
}

TEST_CASE("scale") {
    const ConvexBody d = scale(2.0, ConvexBody::interval(0, 1));
    REQUIRE(d.lo[0] == 0.0);
    REQUIRE(d.hi[0] == 2.0);
    const ConvexBody f = scale(-1.0, ConvexBody::interval(0, 1));
    REQUIRE(f.lo[0] == -1.0);
    REQUIRE(f.hi[0] == 0.0);
    const ConvexBody z = scale(0.0, gen::random_polygon(3, 0));
    REQUIRE(z.is_point());
}

TEST_CASE("hausdorff examples") {
    REQUIRE(hausdorff(ConvexBody::interval(0, 1), ConvexBody::interval(0, 1)) ==
            0.0);
    REQUIRE(hausdorff(ConvexBody::interval(-5, 5),
                      ConvexBody::interval(0, 0)) == 5.0);
    REQUIRE(hausdorff(ConvexBody::interval(0, 1), ConvexBody::interval(2, 5)) ==
            4.0);
    const ConvexBody sq = unit_square();
    const ConvexBody shifted = translate(sq, Vec(1.0, 0.0));
    REQUIRE(hausdorff(sq, shifted) == Approx(1.0));
}

TEST_CASE("norm examples") {
    REQUIRE(norm(ConvexBody::interval(-2, 1)) == 2.0);
    REQUIRE(norm(ConvexBody::interval(0, 0)) == 0.0);
    REQUIRE(norm(unit_square()) == Approx(std::sqrt(2.0)));
}

TEST_CASE("hausdorff metric axioms on random bodies") {
    CounterRng rng{13, 0};
    for (std::uint64_t i = 0; i < 200; ++i) {
        const ConvexBody a = rand_interval(rng, 3 * i);
        const ConvexBody b = rand_interval(rng, 3 * i + 1);
        const ConvexBody c = rand_interval(rng, 3 * i + 2);
        REQUIRE(hausdorff(a, b) == hausdorff(b, a));
        REQUIRE(hausdorff(a, a) == 0.0);
        REQUIRE(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    }
    for (std::uint64_t i = 0; i < 60; ++i) {
        const ConvexBody a = gen::random_polygon(13, 3 * i);
        const ConvexBody b = gen::random_polygon(13, 3 * i + 1);
        const ConvexBody c = gen::random_polygon(13, 3 * i + 2);
        REQUIRE(hausdorff(a, b) == hausdorff(b, a));
        REQUIRE(hausdorff(a, a) == 0.0);
        REQUIRE(hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c) + 1e-12);
    }
}

TEST_CASE("subadditivity and cancellation") {
    CounterRng rng{17, 0};
    for (std::uint64_t i = 0; i < 500; ++i) {
        const ConvexBody b = rand_interval(rng, 4 * i);
        const ConvexBody c = rand_interval(rng, 4 * i + 1);
        const ConvexBody d = rand_interval(rng, 4 * i + 2);
        const ConvexBody e = rand_interval(rng, 4 * i + 3);
        REQUIRE(hausdorff(minkowski_sum(b, c), minkowski_sum(d, e)) <=
                hausdorff(b, d) + hausdorff(c, e) + 1e-12);
        REQUIRE(hausdorff(minkowski_sum(b, d), minkowski_sum(c, d)) ==
                Approx(hausdorff(b, c)).margin(1e-13));
    }
    for (std::uint64_t i = 0; i < 60; ++i) {
        const ConvexBody b = gen::random_polygon(17, 4 * i);
        const ConvexBody c = gen::random_polygon(17, 4 * i + 1);
        const ConvexBody d = gen::random_polygon(17, 4 * i + 2);
        const ConvexBody e = gen::random_polygon(17, 4 * i + 3);
        REQUIRE(hausdorff(minkowski_sum(b, c), minkowski_sum(d, e)) <=
                hausdorff(b, d) + hausdorff(c, e) + 1e-9);
        REQUIRE(hausdorff(minkowski_sum(b, d), minkowski_sum(c, d)) ==
                Approx(hausdorff(b, c)).margin(1e-9));
    }
}

TEST_CASE("hukuhara difference") {
    const auto c = hukuhara_diff(ConvexBody::interval(0, 3),
                                 ConvexBody::interval(0, 1));
    REQUIRE(c.has_value());
    REQUIRE(c->lo[0] == 0.0);
    REQUIRE(c->hi[0] == 2.0);

    REQUIRE_FALSE(hukuhara_diff(ConvexBody::interval(0, 1),
                                ConvexBody::interval(0, 3))
                      .has_value());

    const ConvexBody a = ConvexBody::interval(-2, 9);
    const auto ident = hukuhara_diff(a, ConvexBody::interval(0, 0));
    REQUIRE(ident.has_value());
    REQUIRE(hausdorff(*ident, a) == 0.0);

    const ConvexBody pa = gen::random_polygon(19, 0);
    const auto pid = hukuhara_diff(pa, ConvexBody::polygon({Vec(0.0, 0.0)}));
    REQUIRE(pid.has_value());
    REQUIRE(hausdorff(*pid, pa) <= 1e-12);
}

TEST_CASE("hukuhara roundtrip on polygon sums") {
    for (std::uint64_t i = 0; i < 40; ++i) {
        const ConvexBody a = gen::random_polygon(23, 2 * i);
        const ConvexBody b = gen::random_polygon(23, 2 * i + 1);
        const ConvexBody sum = minkowski_sum(a, b);
        const auto diff = hukuhara_diff(sum, b);
        REQUIRE(diff.has_value());
        REQUIRE(hausdorff(minkowski_sum(b, *diff), sum) < 1e-9);
        REQUIRE(hausdorff(*diff, a) < 1e-9);
    }
}

TEST_CASE("hukuhara non-existence for incompatible polygons") {
    const ConvexBody wide = ConvexBody::polygon(
        {Vec(0.0, 0.0), Vec(4.0, 0.0), Vec(4.0, 0.5), Vec(0.0, 0.5)});
    const ConvexBody tall = ConvexBody::polygon(
        {Vec(0.0, 0.0), Vec(0.5, 0.0), Vec(0.5, 4.0), Vec(0.0, 4.0)});
    REQUIRE_FALSE(hukuhara_diff(wide, tall).has_value());
}

TEST_CASE("sphere quadrature reproduces measures") {
    const SphereQuadrature q1 = SphereQuadrature::make(1);
    REQUIRE(q1.sphere_measure() == Approx(2.0).margin(1e-8));
    REQUIRE(q1.ball_measure() == Approx(2.0).margin(1e-8));
    const SphereQuadrature q2 = SphereQuadrature::make(2);
    REQUIRE(q2.sphere_measure() ==
            Approx(2.0 * std::numbers::pi).margin(1e-8));
    REQUIRE(q2.ball_measure() == Approx(std::numbers::pi).margin(1e-8));
}

TEST_CASE("density family: normalization, uniqueness, convention") {
    const auto fam = density_family(12, 2);
    REQUIRE(fam[0].c == 0.0);
    const SphereQuadrature q = SphereQuadrature::make(2);
    for (const auto& mu : fam) {
        double mass = 0.0;
        for (std::size_t i = 0; i < q.ball_nodes.size(); ++i)
            mass += q.ball_weights[i] * mu.density(q.ball_nodes[i]);
        REQUIRE(mass / unit_ball_volume(2) == Approx(1.0).margin(1e-10));
        REQUIRE(steiner_lipschitz(mu) > 0.0);
    }
    for (std::size_t i = 0; i < fam.size(); ++i)
        for (std::size_t j = i + 1; j < fam.size(); ++j) {
            const bool same_c = fam[i].c == fam[j].c;
            const bool same_u = dist(fam[i].u, fam[j].u) < 1e-12;
            REQUIRE_FALSE((same_c && same_u));
        }
}

TEST_CASE("steiner center closed forms in d=1") {
    const SphereQuadrature q1 = SphereQuadrature::make(1);
    const SteinerDensity uni = SteinerDensity::uniform(1);
    REQUIRE(steiner_center(ConvexBody::interval(2, 6), uni, q1)[0] == 4.0);

    // tilt: mid + c u (b-a)/4, the definition evaluated by hand on {-1,+1}
    const SteinerDensity tilt = SteinerDensity::tilt(Vec(1.0), 0.5);
    const Vec st = steiner_center(ConvexBody::interval(0, 1), tilt, q1);
    REQUIRE(st[0] == Approx(0.5 + 0.5 * 0.25));
    for (std::uint64_t k = 1; k < 6; ++k) {
        const auto fam = density_family(6, 1);
        REQUIRE(steiner_center(ConvexBody::interval(3, 3), fam[k], q1)[0] ==
                3.0);
    }
}

TEST_CASE("steiner center of boxes agrees with polygon quadrature") {
    const SphereQuadrature q2 = SphereQuadrature::make(2);
    CounterRng rng{29, 0};
    for (std::uint64_t i = 0; i < 20; ++i) {
        const double x0 = rng.uniform(4 * i, -3.0, 3.0);
        const double y0 = rng.uniform(4 * i + 1, -3.0, 3.0);
        const double w = rng.uniform(4 * i + 2, 0.1, 2.0);
        const double h = rng.uniform(4 * i + 3, 0.1, 2.0);
        const ConvexBody box =
            ConvexBody::box(Vec(x0, y0), Vec(x0 + w, y0 + h));
        const ConvexBody poly = to_polygon(box);
        for (const auto& mu : density_family(5, 2)) {
            const Vec closed = steiner_center_closed_form(box, mu);
            const Vec quad = steiner_center_detail(poly, mu, q2).raw;
            REQUIRE(dist(closed, quad) < 1e-9);
        }
    }
}

TEST_CASE("steiner center membership and symmetry") {
    const SphereQuadrature q2 = SphereQuadrature::make(2);
    const SteinerDensity uni = SteinerDensity::uniform(2);
    const ConvexBody sq = translate(unit_square(), Vec(2.5, 3.5));
    const Vec st = steiner_center(sq, uni, q2);
    REQUIRE(st[0] == Approx(3.0).margin(1e-6));
    REQUIRE(st[1] == Approx(4.0).margin(1e-6));

    for (std::uint64_t i = 0; i < 30; ++i) {
        const ConvexBody poly = gen::random_polygon(31, i);
        for (const auto& mu : density_family(4, 2)) {
            const auto r = steiner_center_detail(poly, mu, q2);
            REQUIRE(r.defect < 1e-9);
            REQUIRE(dist_to_body(poly, r.point) == 0.0);
        }
    }
}

TEST_CASE("steiner linearity and lipschitz spot checks") {
    // Negative coefficients commute with St only for symmetric densities
    // (reflection maps the density to its mirror); tilts get the nonnegative
    // cone, which is the provable Minkowski-linearity statement.
    const SphereQuadrature q2 = SphereQuadrature::make(2);
    const ConvexBody A = gen::random_polygon(37, 0);
    const ConvexBody B = gen::random_polygon(37, 1);
    for (const auto& mu : density_family(3, 2)) {
        const Vec stA = steiner_center(A, mu, q2);
        const Vec stB = steiner_center(B, mu, q2);
        const int lo = mu.c == 0.0 ? -2 : 0;
        for (int a = lo; a <= 2; ++a)
            for (int b = lo; b <= 2; ++b) {
                const Vec lhs = steiner_center(
                    minkowski_sum(scale(a, A), scale(b, B)), mu, q2);
                REQUIRE(dist(lhs, static_cast<double>(a) * stA +
                                      static_cast<double>(b) * stB) < 1e-6);
            }
        REQUIRE(dist(stA, stB) <=
                steiner_lipschitz(mu) * hausdorff(A, B) + 1e-6);
    }
}

TEST_CASE("tilted densities break negative-scaling linearity in d=1") {
    // St_tilt(-[0,1]) = -1/2 + c/4 while -St_tilt([0,1]) = -1/2 - c/4
    const SphereQuadrature q1 = SphereQuadrature::make(1);
    const SteinerDensity tilt = SteinerDensity::tilt(Vec(1.0), 0.5);
    const ConvexBody I = ConvexBody::interval(0, 1);
    const double st_neg = steiner_center(scale(-1.0, I), tilt, q1)[0];
    const double neg_st = -steiner_center(I, tilt, q1)[0];
    REQUIRE(st_neg == Approx(-0.5 + 0.125));
    REQUIRE(neg_st == Approx(-0.5 - 0.125));
}

TEST_CASE("steiner lipschitz closed form") {
    REQUIRE(steiner_lipschitz(SteinerDensity::uniform(1)) == 1.0);
    REQUIRE(steiner_lipschitz(SteinerDensity::uniform(2)) == 2.0);
    const SteinerDensity t = SteinerDensity::tilt(Vec(0.0, 1.0), 0.25);
    REQUIRE(steiner_lipschitz(t) == Approx(2.0 * 1.25 + 0.25));
}

TEST_CASE("body json round trip") {
    const std::vector<ConvexBody> bodies = {
        ConvexBody::interval(-1.5, 2.25),
        ConvexBody::box(Vec(0.0, -1.0, 2.0), Vec(1.0, 1.0, 3.0)),
        gen::random_polygon(41, 0)};
    for (const auto& c : bodies) {
        const ConvexBody back = body_from_json(body_to_json(c));
        REQUIRE(back.kind == c.kind);
        REQUIRE(back.dim == c.dim);
        if (c.kind == ConvexBody::Kind::polygon)
            REQUIRE(hausdorff(back, c) == 0.0);
        else
            for (int i = 0; i < c.dim; ++i) {
                REQUIRE(back.lo[i] == c.lo[i]);
                REQUIRE(back.hi[i] == c.hi[i]);
            }
    }
}

TEST_CASE("degenerate polygons") {
    const ConvexBody pt = ConvexBody::polygon({Vec(1.0, 2.0), Vec(1.0, 2.0)});
    REQUIRE(pt.verts.size() == 1);
    REQUIRE(pt.is_point());
    const ConvexBody seg =
        ConvexBody::polygon({Vec(0.0, 0.0), Vec(1.0, 1.0), Vec(0.5, 0.5)});
    REQUIRE(seg.verts.size() == 2);
    REQUIRE(support(seg, Vec(1.0, 1.0)) == Approx(2.0));
    REQUIRE(dist_to_body(seg, Vec(1.0, 0.0)) == Approx(std::sqrt(0.5)));
    const ConvexBody sum = minkowski_sum(seg, pt);
    REQUIRE(sum.verts.size() == 2);
}
