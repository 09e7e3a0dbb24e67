#pragma once

#include <numbers>

#include "setvar/convex.hpp"
#include "setvar/quadrature.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Generalized Steiner centers. The density family is the affine tilt family
//
//   xi(p) = 1 + c <u, p>,   |c| < 1,  u a unit direction,
//
// a C^1 probability density with respect to the normalized Lebesgue measure
// p_V on B(0,1) (the tilt integrates to zero because the ball is centred),
// with constant gradient c*u. The Steiner center is
//
//   St(C) = V^{-1} ( int_Sigma p sigma(p,C) xi(p) dw
//                    - int_B sigma(p,C) grad xi(p) dp ).
// ---------------------------------------------------------------------------

struct SteinerDensity {
    int dim = 1;
    Vec u;           // tilt direction, unit norm (ignored when c == 0)
    double c = 0.0;  // tilt magnitude, |c| < 1

    static SteinerDensity uniform(int dim) {
        SteinerDensity m;
        m.dim = dim;
        m.u = Vec::zero(dim);
        m.u[0] = 1.0;
        return m;
    }

    static SteinerDensity tilt(const Vec& u, double c) {
        if (std::abs(c) >= 1.0)
            throw std::invalid_argument("SteinerDensity: |c| must be < 1");
        const double len = norm(u);
        if (len <= 0.0) throw std::invalid_argument("SteinerDensity: zero u");
        SteinerDensity m;
        m.dim = u.dim;
        m.u = (1.0 / len) * u;
        m.c = c;
        return m;
    }

    double density(const Vec& p) const { return 1.0 + c * dot(u, p); }
    Vec gradient() const { return c * u; }
};

/// Lipschitz constant of St_mu w.r.t. the Hausdorff metric:
/// L = d * max_Sigma xi + max_B ||grad xi|| = d (1 + |c|) + |c|.
inline double steiner_lipschitz(const SteinerDensity& m) {
    return m.dim * (1.0 + std::abs(m.c)) + std::abs(m.c);
}

// ---------------------------------------------------------------------------
// Deterministic density enumeration: member 0 is the uniform density; the
// tilt magnitudes walk the dyadic rationals of (0,1) and the directions walk
// fixed low-discrepancy sequences, so members are pairwise distinct.
// ---------------------------------------------------------------------------

namespace detail {

inline double dyadic_c(std::size_t k) {  // k >= 1: 1/2, 1/4, 3/4, 1/8, 3/8, ...
    std::size_t level = 1, count = 1, idx = k - 1;
    while (idx >= count) {
        idx -= count;
        ++level;
        count <<= 1;
    }
    return static_cast<double>(2 * idx + 1) / static_cast<double>(1ULL << level);
}

inline Vec direction_seq(std::size_t k, int dim) {
    if (dim == 1) return Vec(k % 2 == 1 ? 1.0 : -1.0);
    if (dim == 2) {
        const double golden = 0.6180339887498949;
        const double th = 2.0 * std::numbers::pi * std::fmod(k * golden, 1.0);
        return Vec(std::cos(th), std::sin(th));
    }
    const double a1 = 0.7548776662466927, a2 = 0.5698402909980532;
    const double z = 1.0 - 2.0 * std::fmod(k * a1, 1.0);
    const double th = 2.0 * std::numbers::pi * std::fmod(k * a2, 1.0);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return Vec(r * std::cos(th), r * std::sin(th), z);
}

}  // namespace detail

inline std::vector<SteinerDensity> density_family(std::size_t n, int dim) {
    if (n < 1) throw std::invalid_argument("density_family: n >= 1");
    std::vector<SteinerDensity> fam;
    fam.reserve(n);
    fam.push_back(SteinerDensity::uniform(dim));
    for (std::size_t k = 1; k < n; ++k)
        fam.push_back(SteinerDensity::tilt(detail::direction_seq(k, dim),
                                           detail::dyadic_c(k)));
    return fam;
}

// ---------------------------------------------------------------------------
// Closed forms. In d=1:  St([a,b]) = (a+b)/2 + c u (b-a)/4.  Boxes decompose
// into a centre plus axis segments, and for a segment of half-length h along
// e the tilt contributes gamma_d * h * c * <u,e> * e with gamma_1 = 1/2,
// gamma_2 = 4/(3 pi), gamma_3 = 3/8 (sphere/ball moments of |<p,e>|).
// ---------------------------------------------------------------------------

inline Vec steiner_center_closed_form(const ConvexBody& c,
                                      const SteinerDensity& mu) {
    if (c.kind == ConvexBody::Kind::polygon)
        throw quadrature_unavailable("closed form: intervals/boxes only");
    if (mu.dim != c.dim)
        throw quadrature_unavailable("steiner_center: density dimension");
    static constexpr double gamma[4] = {0.0, 0.5, 4.0 / (3.0 * std::numbers::pi),
                                        3.0 / 8.0};
    Vec st = Vec::zero(c.dim);
    for (int i = 0; i < c.dim; ++i) {
        const double half = 0.5 * (c.hi[i] - c.lo[i]);
        st[i] = 0.5 * (c.lo[i] + c.hi[i]) +
                gamma[c.dim] * half * mu.c * mu.u[i];
    }
    return st;
}

struct SteinerCenterResult {
    Vec raw;        // quadrature/closed-form output before projection
    Vec point;      // metric projection of raw onto C
    double defect;  // dist(raw, C) prior to projection
};

namespace detail {

/// Angles at which the support argmax of a polygon switches vertex (outward
/// edge normal directions), sorted in [0, 2pi).
inline std::vector<double> support_kink_angles(const ConvexBody& poly) {
    std::vector<double> angles;
    for (const auto& n : edge_normals(poly))
        angles.push_back(std::atan2(n[1], n[0]));
    for (auto& a : angles)
        if (a < 0.0) a += 2.0 * std::numbers::pi;
    std::sort(angles.begin(), angles.end());
    angles.erase(std::unique(angles.begin(), angles.end(),
                             [](double a, double b) { return b - a < 1e-14; }),
                 angles.end());
    return angles;
}

}  // namespace detail

/// Generalized Steiner center by quadrature (d=1 in closed form). For
/// polygons the angular nodes of `q` are re-laid as Gauss panels between the
/// support-function kink directions, which keeps the node budget but makes
/// the piecewise-smooth integrands converge to near machine precision; a
/// uniform trapezoid layout across the kinks would stall near 1e-4.
inline SteinerCenterResult steiner_center_detail(const ConvexBody& c,
                                                 const SteinerDensity& mu,
                                                 const SphereQuadrature& q) {
    if (mu.dim != c.dim)
        throw quadrature_unavailable("steiner_center: density dimension");
    SteinerCenterResult out;
    if (c.kind != ConvexBody::Kind::polygon) {
        // intervals and boxes evaluate in closed form; d<=2 still insists on a
        // consistent quadrature handle, d=3 has none to offer
        if (c.dim <= 2 && q.dim != c.dim)
            throw quadrature_unavailable("steiner_center: quadrature dimension");
        out.raw = steiner_center_closed_form(c, mu);
        out.point = project_point(c, out.raw);
        out.defect = dist_to_body(c, out.raw);
        return out;
    }
    if (q.dim != 2)
        throw quadrature_unavailable("steiner_center: need a d=2 quadrature");

    const double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> bounds = detail::support_kink_angles(c);
    if (bounds.empty()) bounds = {0.0};

    const auto panel_nodes = [&](int budget, double frac) {
        return std::max(4, static_cast<int>(std::lround(budget * frac)));
    };

    Vec sphere_term = Vec::zero(2);
    double ball_sigma = 0.0;  // int_B sigma(p, C) dp
    const std::size_t n_panels = bounds.size();
    GaussRule radial = gauss_legendre(std::max(2, q.n_radial), 0.0, 1.0);
    for (std::size_t k = 0; k < n_panels; ++k) {
        const double a = bounds[k];
        const double b =
            k + 1 < n_panels ? bounds[k + 1] : bounds[0] + two_pi;
        if (b - a < 1e-15) continue;
        const double frac = (b - a) / two_pi;
        const GaussRule ang = gauss_legendre(panel_nodes(q.n_sphere, frac), a, b);
        for (std::size_t i = 0; i < ang.nodes.size(); ++i) {
            const Vec p(std::cos(ang.nodes[i]), std::sin(ang.nodes[i]));
            const double s = support(c, p);
            sphere_term += (ang.weights[i] * s * mu.density(p)) * p;
        }
        if (mu.c != 0.0) {
            const GaussRule angb =
                gauss_legendre(panel_nodes(q.n_angular, frac), a, b);
            for (std::size_t i = 0; i < angb.nodes.size(); ++i) {
                const Vec p(std::cos(angb.nodes[i]), std::sin(angb.nodes[i]));
                double acc = 0.0;
                for (std::size_t r = 0; r < radial.nodes.size(); ++r)
                    acc += radial.weights[r] * radial.nodes[r] *
                           support(c, radial.nodes[r] * p);
                ball_sigma += angb.weights[i] * acc;
            }
        }
    }
    const Vec ball_term = ball_sigma * mu.gradient();
    out.raw = (1.0 / unit_ball_volume(2)) * (sphere_term - ball_term);
    out.point = project_point(c, out.raw);
    out.defect = dist_to_body(c, out.raw);
    return out;
}

/// St_mu(C), projected onto C so the membership invariant holds exactly.
inline Vec steiner_center(const ConvexBody& c, const SteinerDensity& mu,
                          const SphereQuadrature& q) {
    return steiner_center_detail(c, mu, q).point;
}

/// Interval shortcut used heavily by the set-valued machinery.
inline double steiner_center_1d(double lo, double hi, const SteinerDensity& mu) {
    return 0.5 * (lo + hi) + 0.25 * mu.c * mu.u[0] * (hi - lo);
}

}  // namespace setvar
