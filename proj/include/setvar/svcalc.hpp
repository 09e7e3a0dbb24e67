#pragma once

#include "setvar/steiner.hpp"
#include "setvar/young.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Set-valued calculus: Aumann integrals, grid Hukuhara derivatives, Steiner
// selection families, derivative-level stitching, and the set-valued Young
// integral approximated from inside by finite selection hulls.
// ---------------------------------------------------------------------------

namespace detail {

inline void require_uniform_kind(const SetValuedSampledPath& F,
                                 const char* who) {
    const auto kind = F.bodies.front().kind;
    for (const auto& c : F.bodies)
        if (c.kind != kind) throw unsupported_variant_mix(who);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Aumann integral of a set-valued path: support functions integrate, so each
// direction's support is the cumulative trapezoid of the nodewise supports.
// Intervals and boxes integrate endpointwise (exact for their piecewise-
// linear endpoint model); polygon values rebuild from the integrated
// supports over the union of edge-normal directions.
// ---------------------------------------------------------------------------

/// All prefix integrals int_0^{t_j} Phi(s) ds as a set-valued path.
inline SetValuedSampledPath aumann_prefix(const SetValuedSampledPath& Phi) {
    detail::require_uniform_kind(Phi, "aumann_integral: mixed body variants");
    const std::size_t n = Phi.nodes();
    const int d = Phi.dim();
    std::vector<ConvexBody> out;
    out.reserve(n);
    if (Phi.bodies.front().kind != ConvexBody::Kind::polygon) {
        Vec lo = Vec::zero(d), hi = Vec::zero(d);
        out.push_back(d == 1 ? ConvexBody::interval(0.0, 0.0)
                             : ConvexBody::box(lo, hi));
        for (std::size_t j = 1; j < n; ++j) {
            const double w = 0.5 * (Phi.grid[j] - Phi.grid[j - 1]);
            for (int i = 0; i < d; ++i) {
                lo[i] += w * (Phi.bodies[j].lo[i] + Phi.bodies[j - 1].lo[i]);
                hi[i] += w * (Phi.bodies[j].hi[i] + Phi.bodies[j - 1].hi[i]);
            }
            out.push_back(d == 1 ? ConvexBody::interval(lo[0], hi[0])
                                 : ConvexBody::box(lo, hi));
        }
        return SetValuedSampledPath(Phi.grid, std::move(out));
    }
    // polygon-valued: gather one direction set for the whole path
    std::vector<Vec> dirs;
    for (const auto& c : Phi.bodies)
        for (const auto& nrm : detail::edge_normals(c)) dirs.push_back(nrm);
    if (dirs.size() < 3)
        dirs = {Vec(1.0, 0.0), Vec(-1.0, 0.0), Vec(0.0, 1.0), Vec(0.0, -1.0)};
    std::sort(dirs.begin(), dirs.end(), [](const Vec& a, const Vec& b) {
        return std::atan2(a[1], a[0]) < std::atan2(b[1], b[0]);
    });
    dirs.erase(std::unique(dirs.begin(), dirs.end(),
                           [](const Vec& a, const Vec& b) {
                               return std::abs(std::atan2(a[1], a[0]) -
                                               std::atan2(b[1], b[0])) < 1e-9;
                           }),
               dirs.end());
    std::vector<double> supp(dirs.size(), 0.0);
    double extent = 1.0;
    out.push_back(ConvexBody::polygon({Vec(0.0, 0.0)}));
    for (std::size_t j = 1; j < n; ++j) {
        const double w = 0.5 * (Phi.grid[j] - Phi.grid[j - 1]);
        for (std::size_t k = 0; k < dirs.size(); ++k)
            supp[k] += w * (support(Phi.bodies[j], dirs[k]) +
                            support(Phi.bodies[j - 1], dirs[k]));
        extent = std::max(extent, norm(Phi.bodies[j]) * Phi.horizon());
        std::vector<Vec> verts =
            detail::clip_halfplanes(dirs, supp, 4.0 * extent + 4.0);
        if (verts.empty()) verts.push_back(Vec(0.0, 0.0));
        out.push_back(ConvexBody::polygon(std::move(verts)));
    }
    return SetValuedSampledPath(Phi.grid, std::move(out));
}

inline ConvexBody aumann_integral(const SetValuedSampledPath& Phi, double t) {
    const SetValuedSampledPath pre = aumann_prefix(Phi);
    std::size_t j = 0;
    const double tol = 1e-9 * Phi.horizon();
    for (; j < Phi.nodes(); ++j)
        if (std::abs(Phi.grid[j] - t) <= tol) break;
    if (j == Phi.nodes())
        throw node_not_on_grid("aumann_integral: t not a grid node");
    return pre.bodies[j];
}

// ---------------------------------------------------------------------------
// Grid Hukuhara derivative: forward difference quotients, last node copying
// its predecessor. A failing cell means widths are not non-decreasing there,
// i.e. F is not Hukuhara differentiable on this grid.
// ---------------------------------------------------------------------------

inline SetValuedSampledPath hukuhara_derivative(const SetValuedSampledPath& F) {
    const std::size_t n = F.nodes();
    std::vector<ConvexBody> out;
    out.reserve(n);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto diff = hukuhara_diff(F.bodies[j + 1], F.bodies[j]);
        if (!diff)
            throw difference_not_exist("hukuhara_derivative: cell " +
                                           std::to_string(j),
                                       j);
        out.push_back(scale(1.0 / (F.grid[j + 1] - F.grid[j]), *diff));
    }
    out.push_back(out.back());
    return SetValuedSampledPath(F.grid, std::move(out));
}

// ---------------------------------------------------------------------------
// Hukuhara-form path: F(t) = {x0} + int_0^t Phi(s) ds.
// ---------------------------------------------------------------------------

struct HukuharaPath {
    Vec x0;
    SetValuedSampledPath Phi;  // the Hukuhara derivative D_H F
    SetValuedSampledPath F;    // reconstructed by Aumann integration
    double sup_phi_norm = 0.0;

    static HukuharaPath from_derivative(const Vec& x0,
                                        const SetValuedSampledPath& Phi) {
        if (x0.dim != Phi.dim())
            throw dimension_mismatch("HukuharaPath: x0 dimension");
        HukuharaPath hp;
        hp.x0 = x0;
        hp.Phi = Phi;
        SetValuedSampledPath pre = aumann_prefix(Phi);
        for (auto& c : pre.bodies) c = translate(c, x0);
        hp.F = std::move(pre);
        for (const auto& c : Phi.bodies)
            hp.sup_phi_norm = std::max(hp.sup_phi_norm, norm(c));
        return hp;
    }

    /// Direct set-valued inputs convert through the grid derivative first;
    /// F(0) must be a singleton.
    static HukuharaPath from_path(const SetValuedSampledPath& F) {
        if (!F.bodies.front().is_point())
            throw std::invalid_argument("HukuharaPath: F(0) must be a point");
        return from_derivative(F.bodies.front().inner_point(),
                               hukuhara_derivative(F));
    }
};

// ---------------------------------------------------------------------------
// Steiner selections: phi(s) = St_mu(Phi(s)) nodewise, f = x0 + cumulative
// trapezoid of phi. The commutation defect records how far f - x0 drifts
// from St_mu applied to the Aumann prefix integrals.
// ---------------------------------------------------------------------------

struct SteinerSelection {
    SampledPath f;
    SampledPath phi;
    SteinerDensity mu;
    double commutation_defect = 0.0;
};

namespace detail {

inline Vec steiner_of_body(const ConvexBody& c, const SteinerDensity& mu,
                           const SphereQuadrature* q) {
    if (c.kind == ConvexBody::Kind::polygon) {
        static const SphereQuadrature default_q = SphereQuadrature::make(2);
        return steiner_center(c, mu, q ? *q : default_q);
    }
    const Vec raw = steiner_center_closed_form(c, mu);
    return project_point(c, raw);
}

}  // namespace detail

inline SteinerSelection steiner_selection(const HukuharaPath& hp,
                                          const SteinerDensity& mu,
                                          const SphereQuadrature* q = nullptr) {
    const std::size_t n = hp.Phi.nodes();
    const int d = hp.Phi.dim();
    std::vector<Vec> phi(n), f(n);
    for (std::size_t j = 0; j < n; ++j)
        phi[j] = detail::steiner_of_body(hp.Phi.bodies[j], mu, q);
    f[0] = hp.x0;
    for (std::size_t j = 1; j < n; ++j)
        f[j] = f[j - 1] + (0.5 * (hp.Phi.grid[j] - hp.Phi.grid[j - 1])) *
                              (phi[j] + phi[j - 1]);
    SteinerSelection sel;
    sel.mu = mu;
    sel.phi = SampledPath(hp.Phi.grid, std::move(phi));
    sel.f = SampledPath(hp.Phi.grid, std::move(f));
    const SetValuedSampledPath pre = aumann_prefix(hp.Phi);
    double defect = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const Vec st = detail::steiner_of_body(pre.bodies[j], mu, q);
        defect = std::max(defect, dist(st + hp.x0, sel.f.values[j]));
    }
    sel.commutation_defect = defect;
    (void)d;
    return sel;
}

struct SelectionFamily {
    std::vector<SteinerSelection> members;
};

inline SelectionFamily selection_family(const HukuharaPath& hp, std::size_t n,
                                        const SphereQuadrature* q = nullptr) {
    SelectionFamily fam;
    fam.members.reserve(n);
    for (const auto& mu : density_family(n, hp.Phi.dim()))
        fam.members.push_back(steiner_selection(hp, mu, q));
    return fam;
}

// ---------------------------------------------------------------------------
// Derivative-level stitching f1 (+)_a f2: keep f1 until a, then continue
// with f2's increments. Closed form: f(t) = f2(t) - f2(a) + f1(a) on [a,T].
// ---------------------------------------------------------------------------

inline SampledPath oplus(const SampledPath& f1, const SampledPath& f2,
                         double a) {
    if (!detail::grids_match(f1.grid, f2.grid))
        throw grid_mismatch("oplus: shared grid required");
    const std::size_t ka = f1.index_of(a);  // throws node_not_on_grid
    std::vector<Vec> v(f1.nodes());
    for (std::size_t j = 0; j < f1.nodes(); ++j)
        v[j] = j < ka ? f1.values[j]
                      : f2.values[j] - f2.values[ka] + f1.values[ka];
    return SampledPath(f1.grid, std::move(v));
}

// ---------------------------------------------------------------------------

struct MembershipReport {
    bool ok = true;
    std::size_t worst_node = 0;
    double worst_defect = 0.0;
};

/// dist(f(t_j), F(t_j)) <= tol at every node, reporting the worst offender.
inline MembershipReport membership_check(const SampledPath& f,
                                         const SetValuedSampledPath& F,
                                         double tol) {
    if (!detail::grids_match(f.grid, F.grid))
        throw grid_mismatch("membership_check: shared grid required");
    MembershipReport rep;
    for (std::size_t j = 0; j < f.nodes(); ++j) {
        const double d = dist_to_body(F.bodies[j], f.values[j]);
        if (d > rep.worst_defect) {
            rep.worst_defect = d;
            rep.worst_node = j;
        }
    }
    rep.ok = rep.worst_defect <= tol;
    return rep;
}

// ---------------------------------------------------------------------------
// Finite approximate selection: the constructive step behind the Castaing
// approximation. Pick the coarsest window delta whose oscillation stays
// under eps/3 for the target and every member, choose the closest member at
// each window start, and stitch with indicator windows. Failure (the family
// is too small) is an outcome, not an error.
// ---------------------------------------------------------------------------

struct ApproxSelectionReport {
    SampledPath stitched;
    double achieved_error = 0.0;
    bool success = false;
    double delta = 0.0;
    std::vector<std::size_t> chosen;  // member index per window
};

namespace detail {

inline double oscillation(const SampledPath& f, std::size_t window_cells) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.nodes(); ++i)
        for (std::size_t j = i + 1; j <= i + window_cells && j < f.nodes(); ++j)
            m = std::max(m, dist(f.values[i], f.values[j]));
    return m;
}

}  // namespace detail

inline ApproxSelectionReport approximate_selection(const SampledPath& f,
                                                   const SelectionFamily& fam,
                                                   double eps) {
    if (fam.members.empty())
        throw std::invalid_argument("approximate_selection: empty family");
    const std::size_t n_cells = f.nodes() - 1;
    std::size_t w = n_cells;
    for (; w > 1; w /= 2) {
        double osc = detail::oscillation(f, w);
        for (const auto& m : fam.members)
            osc = std::max(osc, detail::oscillation(m.f, w));
        if (osc < eps / 3.0) break;
    }
    ApproxSelectionReport rep;
    rep.delta = f.grid[w] - f.grid[0];
    std::vector<Vec> v(f.nodes());
    for (std::size_t start = 0; start < n_cells; start += w) {
        const std::size_t stop = std::min(start + w, n_cells);
        std::size_t best = 0;
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < fam.members.size(); ++k) {
            const double d = dist(f.values[start], fam.members[k].f.values[start]);
            if (d < bd) {
                bd = d;
                best = k;
            }
        }
        rep.chosen.push_back(best);
        const std::size_t upto = stop == n_cells ? n_cells : stop - 1;
        for (std::size_t j = start; j <= upto; ++j)
            v[j] = fam.members[best].f.values[j];
    }
    rep.stitched = SampledPath(f.grid, std::move(v));
    for (std::size_t j = 0; j < f.nodes(); ++j)
        rep.achieved_error = std::max(
            rep.achieved_error, dist(f.values[j], rep.stitched.values[j]));
    rep.success = rep.achieved_error < eps;
    return rep;
}

// ---------------------------------------------------------------------------
// Set-valued Young integral, approximated from inside by the hull of the
// member Young integrals. The closure and the full selection set are not
// finitely computable; convergence in the member count is measured by the
// verification suites, never assumed.
// ---------------------------------------------------------------------------

inline ConvexBody hull_of_points(const std::vector<Vec>& pts) {
    const int d = pts.front().dim;
    if (d == 1) {
        double lo = pts.front()[0], hi = lo;
        for (const auto& p : pts) {
            lo = std::min(lo, p[0]);
            hi = std::max(hi, p[0]);
        }
        return ConvexBody::interval(lo, hi);
    }
    if (d == 2) return ConvexBody::polygon(pts);
    throw dimension_mismatch("hull_of_points: d <= 2");
}

inline ConvexBody sv_young_integral(const HukuharaPath& hp,
                                    const SampledPath& g, double t,
                                    std::size_t n_selections,
                                    const SphereQuadrature* q = nullptr) {
    const SelectionFamily family = selection_family(hp, n_selections, q);
    std::vector<Vec> pts;
    pts.reserve(family.members.size());
    for (const auto& m : family.members)
        pts.push_back(young_integral_exact_pl(m.f, g, 0.0, t));
    return hull_of_points(pts);
}

// ---------------------------------------------------------------------------
// Verification reports for the quantitative statements.
// ---------------------------------------------------------------------------

struct Th6Report {
    double lhs = 0.0;      // H(hull_1, hull_2) at the requested member count
    double bracket = 0.0;  // constant-free right-hand side structure
    double ratio = 0.0;    // lhs / bracket, the empirical C(rho) contribution
};

inline Th6Report verify_th6(const HukuharaPath& hp1, const HukuharaPath& hp2,
                            const SampledPath& g, double rho, double theta,
                            double t, std::size_t n_selections, double alpha,
                            double beta,
                            std::optional<double> m_alpha = std::nullopt) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw bad_exponent("verify_th6: theta in (0,1]");
    Th6Report rep;
    const ConvexBody h1 = sv_young_integral(hp1, g, t, n_selections);
    const ConvexBody h2 = sv_young_integral(hp2, g, t, n_selections);
    rep.lhs = hausdorff(h1, h2);
    const double T = hp1.Phi.horizon();
    double ints = 0.0;
    for (std::size_t j = 1; j < hp1.Phi.nodes(); ++j) {
        const double w = 0.5 * (hp1.Phi.grid[j] - hp1.Phi.grid[j - 1]);
        ints += w * (hausdorff(hp1.Phi.bodies[j], hp2.Phi.bodies[j]) +
                     hausdorff(hp1.Phi.bodies[j - 1], hp2.Phi.bodies[j - 1]));
    }
    const double Ma = m_alpha ? *m_alpha : holder_constant(g, alpha);
    rep.bracket = (ints + (T + std::pow(T, 1.0 - beta)) *
                              (hp1.sup_phi_norm + hp2.sup_phi_norm) *
                              std::pow(theta, beta)) *
                      std::pow(theta, -rho) +
                  Ma * std::pow(T, alpha) * ints;
    rep.ratio = rep.bracket > 0.0 ? rep.lhs / rep.bracket : 0.0;
    return rep;
}

/// Nodewise Minkowski sum of two Hukuhara-form paths (x0 adds, Phi adds).
inline HukuharaPath hukuhara_sum(const HukuharaPath& a, const HukuharaPath& b) {
    if (!detail::grids_match(a.Phi.grid, b.Phi.grid))
        throw grid_mismatch("hukuhara_sum: shared grid required");
    std::vector<ConvexBody> bodies;
    bodies.reserve(a.Phi.nodes());
    for (std::size_t j = 0; j < a.Phi.nodes(); ++j)
        bodies.push_back(minkowski_sum(a.Phi.bodies[j], b.Phi.bodies[j]));
    return HukuharaPath::from_derivative(
        a.x0 + b.x0, SetValuedSampledPath(a.Phi.grid, std::move(bodies)));
}

struct Th7Report {
    double member_identity_defect = 0.0;  // max_k |I(f_k^{1+2}) - I(f_k^1) - I(f_k^2)|
    double inclusion_defect = 0.0;        // hull(sum members) outside hull1 + hull2
    std::vector<std::pair<std::size_t, double>> gaps;  // member count -> gap
};

/// Additivity checks: per-member linearity, hull inclusion at n members, and
/// the Hausdorff gap from the k-member sum hull to the reference sum of
/// n-member hulls, for k = 4, ..., n doubling.
inline Th7Report verify_th7(const HukuharaPath& hp1, const HukuharaPath& hp2,
                            const SampledPath& g, double t, std::size_t n,
                            const SphereQuadrature* q = nullptr) {
    Th7Report rep;
    const HukuharaPath sum = hukuhara_sum(hp1, hp2);
    const SelectionFamily fam1 = selection_family(hp1, n, q);
    const SelectionFamily fam2 = selection_family(hp2, n, q);
    const SelectionFamily fam12 = selection_family(sum, n, q);
    std::vector<Vec> v1(n), v2(n), v12(n);
    for (std::size_t k = 0; k < n; ++k) {
        v1[k] = young_integral_exact_pl(fam1.members[k].f, g, 0.0, t);
        v2[k] = young_integral_exact_pl(fam2.members[k].f, g, 0.0, t);
        v12[k] = young_integral_exact_pl(fam12.members[k].f, g, 0.0, t);
        rep.member_identity_defect = std::max(
            rep.member_identity_defect, norm(v12[k] - v1[k] - v2[k]));
    }
    const ConvexBody rhs =
        minkowski_sum(hull_of_points(v1), hull_of_points(v2));
    const ConvexBody lhs = hull_of_points(v12);
    if (lhs.kind == ConvexBody::Kind::polygon)
        for (const auto& vtx : lhs.verts)
            rep.inclusion_defect =
                std::max(rep.inclusion_defect, dist_to_body(rhs, vtx));
    else
        rep.inclusion_defect =
            std::max(dist_to_body(rhs, Vec(lhs.lo[0])),
                     dist_to_body(rhs, Vec(lhs.hi[0])));
    for (std::size_t k = 4; k <= n; k *= 4) {
        std::vector<Vec> sub(v12.begin(), v12.begin() + k);
        rep.gaps.emplace_back(k, hausdorff(hull_of_points(sub), rhs));
    }
    return rep;
}

struct Cor22Report {
    std::vector<std::size_t> schedule;     // the n in D_H F_n = D_H F + (1/n) B
    std::vector<double> derivative_gaps;   // sup_t H(Phi_n, Phi), expect 1/n
    std::vector<double> integral_gaps;     // e_n = sup_t H(hull_n(t), hull(t))
};

inline Cor22Report verify_cor22(const HukuharaPath& hp, const SampledPath& g,
                                const std::vector<std::size_t>& schedule,
                                std::size_t n_selections) {
    if (hp.Phi.dim() != 1)
        throw dimension_mismatch("verify_cor22: interval-valued paths only");
    Cor22Report rep;
    rep.schedule = schedule;
    const SelectionFamily base = selection_family(hp, n_selections);
    std::vector<std::vector<Vec>> base_pre(n_selections);
    for (std::size_t k = 0; k < n_selections; ++k)
        base_pre[k] = young_prefix_pl(base.members[k].f, g);
    const std::size_t nn = hp.Phi.nodes();
    for (std::size_t m : schedule) {
        std::vector<ConvexBody> bodies;
        bodies.reserve(nn);
        const double r = 1.0 / static_cast<double>(m);
        for (const auto& c : hp.Phi.bodies)
            bodies.push_back(ConvexBody::interval(c.lo[0] - r, c.hi[0] + r));
        const HukuharaPath hpn = HukuharaPath::from_derivative(
            hp.x0, SetValuedSampledPath(hp.Phi.grid, std::move(bodies)));
        double dgap = 0.0;
        for (std::size_t j = 0; j < nn; ++j)
            dgap = std::max(dgap,
                            hausdorff(hpn.Phi.bodies[j], hp.Phi.bodies[j]));
        rep.derivative_gaps.push_back(dgap);
        const SelectionFamily famn = selection_family(hpn, n_selections);
        double e = 0.0;
        std::vector<std::vector<Vec>> pren(n_selections);
        for (std::size_t k = 0; k < n_selections; ++k)
            pren[k] = young_prefix_pl(famn.members[k].f, g);
        for (std::size_t j = 1; j < nn; ++j) {
            double lo1 = base_pre[0][j][0], hi1 = lo1;
            double lo2 = pren[0][j][0], hi2 = lo2;
            for (std::size_t k = 1; k < n_selections; ++k) {
                lo1 = std::min(lo1, base_pre[k][j][0]);
                hi1 = std::max(hi1, base_pre[k][j][0]);
                lo2 = std::min(lo2, pren[k][j][0]);
                hi2 = std::max(hi2, pren[k][j][0]);
            }
            e = std::max(e, std::max(std::abs(lo1 - lo2), std::abs(hi1 - hi2)));
        }
        rep.integral_gaps.push_back(e);
    }
    return rep;
}

}  // namespace setvar
