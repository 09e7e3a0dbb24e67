#pragma once

#include <numbers>
#include <vector>

#include "setvar/common.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Gauss-Legendre rule on [-1,1] (Newton on the Legendre recurrence).
// ---------------------------------------------------------------------------

struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussRule gauss_legendre(int n) {
    GaussRule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[i] = x;
        r.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

/// Same rule mapped to [a,b].
inline GaussRule gauss_legendre(int n, double a, double b) {
    GaussRule r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < n; ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
    }
    return r;
}

// ---------------------------------------------------------------------------
// Quadrature nodes on the unit sphere Sigma and the unit ball B(0,1) for
// d in {1,2}. d=1 is exact (Sigma = {-1,+1}); d=2 uses equally weighted
// angular nodes on the circle and a Gauss-Legendre radial x angular polar
// grid on the disk. Node counts are configurable (config keys sphere_nodes,
// ball_nodes_radial, ball_nodes_angular).
// ---------------------------------------------------------------------------

struct SphereQuadrature {
    int dim = 1;
    int n_sphere = 360;
    int n_radial = 40;
    int n_angular = 60;
    std::vector<Vec> sphere_nodes;
    std::vector<double> sphere_weights;
    std::vector<Vec> ball_nodes;
    std::vector<double> ball_weights;

    static SphereQuadrature make(int dim, int n_sphere = 360, int n_radial = 40,
                                 int n_angular = 60) {
        if (dim != 1 && dim != 2)
            throw quadrature_unavailable("SphereQuadrature: d must be 1 or 2");
        SphereQuadrature q;
        q.dim = dim;
        q.n_sphere = n_sphere;
        q.n_radial = n_radial;
        q.n_angular = n_angular;
        if (dim == 1) {
            q.sphere_nodes = {Vec(1.0), Vec(-1.0)};
            q.sphere_weights = {1.0, 1.0};
            const GaussRule g = gauss_legendre(std::max(2, n_radial), -1.0, 1.0);
            for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i) {
                q.ball_nodes.push_back(Vec(g.nodes[i]));
                q.ball_weights.push_back(g.weights[i]);
            }
            return q;
        }
        const double two_pi = 2.0 * std::numbers::pi;
        for (int j = 0; j < n_sphere; ++j) {
            const double th = two_pi * j / n_sphere;
            q.sphere_nodes.push_back(Vec(std::cos(th), std::sin(th)));
            q.sphere_weights.push_back(two_pi / n_sphere);
        }
        const GaussRule gr = gauss_legendre(std::max(2, n_radial), 0.0, 1.0);
        for (int i = 0; i < static_cast<int>(gr.nodes.size()); ++i) {
            const double r = gr.nodes[i];
            for (int j = 0; j < n_angular; ++j) {
                const double th = two_pi * j / n_angular;
                q.ball_nodes.push_back(Vec(r * std::cos(th), r * std::sin(th)));
                // polar Jacobian r folded into the weight
                q.ball_weights.push_back(gr.weights[i] * r * two_pi / n_angular);
            }
        }
        return q;
    }

    double sphere_measure() const {
        double s = 0.0;
        for (double w : sphere_weights) s += w;
        return s;
    }
    double ball_measure() const {
        double s = 0.0;
        for (double w : ball_weights) s += w;
        return s;
    }
};

/// Lebesgue volume of the unit ball in R^d.
inline double unit_ball_volume(int d) {
    switch (d) {
        case 1: return 2.0;
        case 2: return std::numbers::pi;
        case 3: return 4.0 * std::numbers::pi / 3.0;
    }
    throw dimension_mismatch("unit_ball_volume: d > 3");
}

}  // namespace setvar
