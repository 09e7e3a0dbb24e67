#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "setvar/common.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Compact convex bodies in R^d, d in {1,2,3}: intervals (d=1), axis-aligned
// boxes (d=2,3) and convex polygons (d=2) with exact vertex representation.
// Degenerate bodies (singletons, segments) are first-class values.
// ---------------------------------------------------------------------------

struct ConvexBody {
    enum class Kind { interval, box, polygon };

    Kind kind = Kind::interval;
    int dim = 1;
    std::array<double, 3> lo{};   // interval/box bounds
    std::array<double, 3> hi{};
    std::vector<Vec> verts;       // polygon vertices, CCW, strictly convex

    static ConvexBody interval(double a, double b) {
        if (!(a <= b)) throw std::invalid_argument("interval: lo > hi");
        ConvexBody c;
        c.kind = Kind::interval;
        c.dim = 1;
        c.lo[0] = a;
        c.hi[0] = b;
        return c;
    }

    static ConvexBody box(const Vec& a, const Vec& b) {
        if (a.dim != b.dim) throw dimension_mismatch("box: lo/hi dimension");
        if (a.dim == 1) return interval(a[0], b[0]);
        if (a.dim > 3) throw dimension_mismatch("box: d > 3 not supported");
        ConvexBody c;
        c.kind = Kind::box;
        c.dim = a.dim;
        for (int i = 0; i < a.dim; ++i) {
            if (!(a[i] <= b[i])) throw std::invalid_argument("box: lo > hi");
            c.lo[i] = a[i];
            c.hi[i] = b[i];
        }
        return c;
    }

    // Normalizes the input: duplicates collapsed (tol 1e-12 relative to the
    // body scale), convex hull taken, CCW order, collinear vertices dropped.
    static ConvexBody polygon(std::vector<Vec> pts);

    static ConvexBody singleton(const Vec& x) {
        if (x.dim == 1) return interval(x[0], x[0]);
        if (x.dim == 2) return polygon({x});
        return box(x, x);
    }

    bool is_point() const {
        if (kind == Kind::polygon) return verts.size() == 1;
        for (int i = 0; i < dim; ++i)
            if (lo[i] != hi[i]) return false;
        return true;
    }

    /// Barycentre of the stored representation (a point inside the body).
    Vec inner_point() const {
        Vec p = Vec::zero(dim);
        if (kind == Kind::polygon) {
            for (const auto& v : verts) p += v;
            p *= 1.0 / static_cast<double>(verts.size());
        } else {
            for (int i = 0; i < dim; ++i) p[i] = 0.5 * (lo[i] + hi[i]);
        }
        return p;
    }
};

namespace detail {

inline double cross2(const Vec& o, const Vec& a, const Vec& b) {
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

inline double body_scale(const std::vector<Vec>& pts) {
    double s = 1.0;
    for (const auto& p : pts) s = std::max({s, std::abs(p[0]), std::abs(p[1])});
    return s;
}

/// Andrew monotone chain; keeps strictly convex vertices only.
inline std::vector<Vec> hull2(std::vector<Vec> pts) {
    const double eps = 1e-12 * body_scale(pts);
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [eps](const Vec& a, const Vec& b) {
                              return std::abs(a[0] - b[0]) <= eps &&
                                     std::abs(a[1] - b[1]) <= eps;
                          }),
              pts.end());
    const std::size_t n = pts.size();
    if (n <= 2) return pts;
    std::vector<Vec> h(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross2(h[k - 2], h[k - 1], pts[i]) <= eps) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    // collapse a fully collinear hull to its extreme segment
    if (h.size() >= 3) {
        bool collinear = true;
        for (std::size_t i = 2; i < h.size() && collinear; ++i)
            if (std::abs(cross2(h[0], h[1], h[i])) > eps) collinear = false;
        if (collinear) {
            auto lohi = std::minmax_element(
                h.begin(), h.end(), [](const Vec& a, const Vec& b) {
                    return a[0] < b[0] || (a[0] == b[0] && a[1] < b[1]);
                });
            return {*lohi.first, *lohi.second};
        }
    }
    return h;
}

inline double dist_point_segment(const Vec& p, const Vec& a, const Vec& b) {
    const Vec d = b - a;
    const double len2 = dot(d, d);
    if (len2 <= 0.0) return dist(p, a);
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return dist(p, a + t * d);
}

inline Vec closest_point_segment(const Vec& p, const Vec& a, const Vec& b) {
    const Vec d = b - a;
    const double len2 = dot(d, d);
    if (len2 <= 0.0) return a;
    const double t = std::clamp(dot(p - a, d) / len2, 0.0, 1.0);
    return a + t * d;
}

inline bool inside_polygon(const std::vector<Vec>& verts, const Vec& p,
                           double eps) {
    if (verts.size() == 1)
        return std::abs(p[0] - verts[0][0]) <= eps &&
               std::abs(p[1] - verts[0][1]) <= eps;
    if (verts.size() == 2)
        return dist_point_segment(p, verts[0], verts[1]) <= eps;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        const Vec& a = verts[i];
        const Vec& b = verts[(i + 1) % verts.size()];
        if (cross2(a, b, p) < -eps) return false;
    }
    return true;
}

}  // namespace detail

inline ConvexBody ConvexBody::polygon(std::vector<Vec> pts) {
    if (pts.empty()) throw std::invalid_argument("polygon: no vertices");
    for (auto& p : pts) {
        if (p.dim != 2) throw dimension_mismatch("polygon: vertices must be 2-D");
        if (!std::isfinite(p[0]) || !std::isfinite(p[1]))
            throw std::invalid_argument("polygon: non-finite vertex");
    }
    ConvexBody c;
    c.kind = Kind::polygon;
    c.dim = 2;
    c.verts = detail::hull2(std::move(pts));
    return c;
}

/// d=2 view of a body as a polygon (boxes become their corner rectangle).
inline ConvexBody to_polygon(const ConvexBody& c) {
    if (c.kind == ConvexBody::Kind::polygon) return c;
    if (c.dim != 2) throw dimension_mismatch("to_polygon: d != 2");
    return ConvexBody::polygon({Vec(c.lo[0], c.lo[1]), Vec(c.hi[0], c.lo[1]),
                                Vec(c.hi[0], c.hi[1]), Vec(c.lo[0], c.hi[1])});
}

// ---------------------------------------------------------------------------
// Support function: sigma(p, C) = max_{x in C} <p, x>, exact finite max.
// ---------------------------------------------------------------------------

inline double support(const ConvexBody& c, const Vec& p) {
    if (p.dim != c.dim) throw dimension_mismatch("support: direction dimension");
    switch (c.kind) {
        case ConvexBody::Kind::interval:
            return std::max(p[0] * c.lo[0], p[0] * c.hi[0]);
        case ConvexBody::Kind::box: {
            double s = 0.0;
            for (int i = 0; i < c.dim; ++i)
                s += std::max(p[i] * c.lo[i], p[i] * c.hi[i]);
            return s;
        }
        case ConvexBody::Kind::polygon: {
            double s = -std::numeric_limits<double>::infinity();
            for (const auto& v : c.verts) s = std::max(s, dot(p, v));
            return s;
        }
    }
    return 0.0;
}

/// Vertex of C attaining the support maximum in direction p.
inline Vec support_point(const ConvexBody& c, const Vec& p) {
    if (p.dim != c.dim) throw dimension_mismatch("support_point: dimension");
    if (c.kind == ConvexBody::Kind::polygon) {
        Vec best = c.verts[0];
        double s = dot(p, best);
        for (const auto& v : c.verts)
            if (dot(p, v) > s) {
                s = dot(p, v);
                best = v;
            }
        return best;
    }
    Vec x = Vec::zero(c.dim);
    for (int i = 0; i < c.dim; ++i) x[i] = p[i] >= 0.0 ? c.hi[i] : c.lo[i];
    return x;
}

// ---------------------------------------------------------------------------
// Minkowski algebra
// ---------------------------------------------------------------------------

inline ConvexBody minkowski_sum(const ConvexBody& a, const ConvexBody& b) {
    if (a.dim != b.dim) throw dimension_mismatch("minkowski_sum: dimensions");
    using K = ConvexBody::Kind;
    if (a.kind == K::interval && b.kind == K::interval)
        return ConvexBody::interval(a.lo[0] + b.lo[0], a.hi[0] + b.hi[0]);
    if (a.kind == K::box && b.kind == K::box) {
        Vec lo = Vec::zero(a.dim), hi = Vec::zero(a.dim);
        for (int i = 0; i < a.dim; ++i) {
            lo[i] = a.lo[i] + b.lo[i];
            hi[i] = a.hi[i] + b.hi[i];
        }
        return ConvexBody::box(lo, hi);
    }
    if (a.dim == 2) {
        // polygon + polygon (boxes convert); hull of pairwise vertex sums
        const ConvexBody pa = to_polygon(a);
        const ConvexBody pb = to_polygon(b);
        std::vector<Vec> sums;
        sums.reserve(pa.verts.size() * pb.verts.size());
        for (const auto& u : pa.verts)
            for (const auto& v : pb.verts) sums.push_back(u + v);
        return ConvexBody::polygon(std::move(sums));
    }
    throw dimension_mismatch("minkowski_sum: incompatible variants");
}

inline ConvexBody scale(double a, const ConvexBody& c) {
    using K = ConvexBody::Kind;
    if (c.kind == K::polygon) {
        std::vector<Vec> v = c.verts;
        for (auto& p : v) p *= a;
        return ConvexBody::polygon(std::move(v));
    }
    ConvexBody r = c;
    for (int i = 0; i < c.dim; ++i) {
        const double x = a * c.lo[i], y = a * c.hi[i];
        r.lo[i] = std::min(x, y);
        r.hi[i] = std::max(x, y);
    }
    return r;
}

inline ConvexBody translate(const ConvexBody& c, const Vec& t) {
    if (t.dim != c.dim) throw dimension_mismatch("translate: dimension");
    if (c.kind == ConvexBody::Kind::polygon) {
        std::vector<Vec> v = c.verts;
        for (auto& p : v) p += t;
        ConvexBody r = c;
        r.verts = std::move(v);
        return r;
    }
    ConvexBody r = c;
    for (int i = 0; i < c.dim; ++i) {
        r.lo[i] += t[i];
        r.hi[i] += t[i];
    }
    return r;
}

// ---------------------------------------------------------------------------
// Distances
// ---------------------------------------------------------------------------

inline double dist_to_body(const ConvexBody& c, const Vec& x) {
    if (x.dim != c.dim) throw dimension_mismatch("dist_to_body: dimension");
    if (c.kind == ConvexBody::Kind::polygon) {
        const double eps = 1e-14 * detail::body_scale(c.verts);
        if (detail::inside_polygon(c.verts, x, eps)) return 0.0;
        if (c.verts.size() == 1) return dist(x, c.verts[0]);
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c.verts.size(); ++i)
            d = std::min(d, detail::dist_point_segment(
                                x, c.verts[i], c.verts[(i + 1) % c.verts.size()]));
        return d;
    }
    double s = 0.0;
    for (int i = 0; i < c.dim; ++i) {
        const double g = std::max({c.lo[i] - x[i], x[i] - c.hi[i], 0.0});
        s += g * g;
    }
    return std::sqrt(s);
}

/// Metric projection of x onto C.
inline Vec project_point(const ConvexBody& c, const Vec& x) {
    if (x.dim != c.dim) throw dimension_mismatch("project_point: dimension");
    if (c.kind == ConvexBody::Kind::polygon) {
        const double eps = 1e-14 * detail::body_scale(c.verts);
        if (detail::inside_polygon(c.verts, x, eps)) return x;
        if (c.verts.size() == 1) return c.verts[0];
        Vec best = c.verts[0];
        double d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < c.verts.size(); ++i) {
            const Vec q = detail::closest_point_segment(
                x, c.verts[i], c.verts[(i + 1) % c.verts.size()]);
            const double dq = dist(x, q);
            if (dq < d) {
                d = dq;
                best = q;
            }
        }
        return best;
    }
    Vec r = x;
    for (int i = 0; i < c.dim; ++i) r[i] = std::clamp(x[i], c.lo[i], c.hi[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Hausdorff metric. Intervals and boxes use the exact componentwise formula;
// 2-D polygons use the exact vertex rule (dist(.,B) is convex, so its sup
// over A is attained at a vertex of A).
// ---------------------------------------------------------------------------

inline double hausdorff(const ConvexBody& a, const ConvexBody& b) {
    if (a.dim != b.dim) throw dimension_mismatch("hausdorff: dimensions");
    using K = ConvexBody::Kind;
    if (a.kind != K::polygon && b.kind != K::polygon) {
        double h = 0.0;
        for (int i = 0; i < a.dim; ++i)
            h = std::max({h, std::abs(a.lo[i] - b.lo[i]),
                          std::abs(a.hi[i] - b.hi[i])});
        return h;
    }
    const ConvexBody pa = to_polygon(a);
    const ConvexBody pb = to_polygon(b);
    double h = 0.0;
    for (const auto& v : pa.verts) h = std::max(h, dist_to_body(pb, v));
    for (const auto& v : pb.verts) h = std::max(h, dist_to_body(pa, v));
    return h;
}

/// ||A|| = H(A, {0}) = max vertex/corner norm.
inline double norm(const ConvexBody& a) {
    if (a.kind == ConvexBody::Kind::polygon) {
        double s = 0.0;
        for (const auto& v : a.verts) s = std::max(s, norm(v));
        return s;
    }
    double s2 = 0.0;
    for (int i = 0; i < a.dim; ++i)
        s2 += std::max(a.lo[i] * a.lo[i], a.hi[i] * a.hi[i]);
    return std::sqrt(s2);
}

// ---------------------------------------------------------------------------
// Hukuhara difference A % B: the C with B + C = A, when it exists.
// ---------------------------------------------------------------------------

namespace detail {

/// Intersection of halfplanes <n_k, x> <= h_k, clipped against a generous
/// starting square. Returns the vertex list (possibly empty).
inline std::vector<Vec> clip_halfplanes(const std::vector<Vec>& normals,
                                        const std::vector<double>& offsets,
                                        double extent) {
    std::vector<Vec> poly = {Vec(-extent, -extent), Vec(extent, -extent),
                             Vec(extent, extent), Vec(-extent, extent)};
    for (std::size_t k = 0; k < normals.size() && !poly.empty(); ++k) {
        const Vec& n = normals[k];
        const double h = offsets[k];
        std::vector<Vec> next;
        const std::size_t m = poly.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Vec& p = poly[i];
            const Vec& q = poly[(i + 1) % m];
            const double dp = dot(n, p) - h;
            const double dq = dot(n, q) - h;
            if (dp <= 0.0) next.push_back(p);
            if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) {
                const double t = dp / (dp - dq);
                next.push_back(p + t * (q - p));
            }
        }
        poly = std::move(next);
    }
    return poly;
}

inline std::vector<Vec> edge_normals(const ConvexBody& poly) {
    std::vector<Vec> ns;
    const auto& v = poly.verts;
    if (v.size() < 2) return ns;
    const std::size_t m = v.size() == 2 ? 1 : v.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec e = v[(i + 1) % v.size()] - v[i];
        const double len = norm(e);
        if (len <= 0.0) continue;
        ns.push_back(Vec(e[1] / len, -e[0] / len));
        if (v.size() == 2) ns.push_back(Vec(-e[1] / len, e[0] / len));
    }
    return ns;
}

}  // namespace detail

inline std::optional<ConvexBody> hukuhara_diff(const ConvexBody& a,
                                               const ConvexBody& b) {
    if (a.dim != b.dim) throw dimension_mismatch("hukuhara_diff: dimensions");
    using K = ConvexBody::Kind;
    if (a.kind != K::polygon && b.kind != K::polygon) {
        Vec lo = Vec::zero(a.dim), hi = Vec::zero(a.dim);
        for (int i = 0; i < a.dim; ++i) {
            lo[i] = a.lo[i] - b.lo[i];
            hi[i] = a.hi[i] - b.hi[i];
            if (!(lo[i] <= hi[i])) return std::nullopt;
        }
        return ConvexBody::box(lo, hi);
    }
    if (a.dim != 2) throw dimension_mismatch("hukuhara_diff: variants");
    const ConvexBody pa = to_polygon(a);
    const ConvexBody pb = to_polygon(b);
    if (pb.is_point()) {
        Vec t = pb.verts[0];
        return translate(pa, -1.0 * t);
    }
    // Candidate from support differences over the edge normals of A (the
    // normal fan of a summand refines into A's), then verify by rebuilding.
    std::vector<Vec> dirs = detail::edge_normals(pa);
    for (const auto& n : detail::edge_normals(pb)) dirs.push_back(n);
    if (dirs.size() < 3) {
        dirs.push_back(Vec(1.0, 0.0));
        dirs.push_back(Vec(-1.0, 0.0));
        dirs.push_back(Vec(0.0, 1.0));
        dirs.push_back(Vec(0.0, -1.0));
    }
    std::vector<double> offs;
    offs.reserve(dirs.size());
    for (const auto& n : dirs) offs.push_back(support(pa, n) - support(pb, n));
    const double extent = 4.0 * (norm(pa) + norm(pb) + 1.0);
    std::vector<Vec> cand = detail::clip_halfplanes(dirs, offs, extent);
    if (cand.empty()) return std::nullopt;
    const ConvexBody c = ConvexBody::polygon(std::move(cand));
    const double tol = 1e-9 * std::max(1.0, norm(pa));
    if (hausdorff(minkowski_sum(pb, c), pa) > tol) return std::nullopt;
    return c;
}

}  // namespace setvar
