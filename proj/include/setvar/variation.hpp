#pragma once

#include "setvar/path.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Holder constants and p-variation functionals over grid partitions. All
// suprema run over partitions supported on the sample grid: exact for
// piecewise-linear interpolants, a lower bound for the underlying continuum
// function in general.
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_uniform(const std::vector<double>& g) {
    const double dt = g[1] - g[0];
    for (std::size_t i = 2; i < g.size(); ++i)
        if (std::abs((g[i] - g[i - 1]) - dt) > 1e-12 * std::abs(dt)) return false;
    return true;
}

template <typename DistFn>
double holder_core(const std::vector<double>& g, std::size_t n, DistFn&& d,
                   double beta) {
    double m = 0.0;
    if (is_uniform(g)) {
        std::vector<double> lag_pow(n);
        for (std::size_t l = 1; l < n; ++l)
            lag_pow[l] = 1.0 / std::pow(g[l] - g[0], beta);
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                m = std::max(m, d(i, j) * lag_pow[j - i]);
        return m;
    }
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            m = std::max(m, d(i, j) / std::pow(g[j] - g[i], beta));
    return m;
}

/// Young p-variation DP over sub-partitions of nodes [ia..ib] drawn from the
/// index set `keep` (which must contain ia and ib).
template <typename DistFn>
double var_p_dp(const std::vector<std::size_t>& keep, DistFn&& d, double p) {
    const std::size_t m = keep.size();
    std::vector<double> best(m, 0.0);
    for (std::size_t j = 1; j < m; ++j) {
        double b = -1.0;
        for (std::size_t i = 0; i < j; ++i)
            b = std::max(b, best[i] + pow_p(d(keep[i], keep[j]), p));
        best[j] = b;
    }
    return best.back();
}

/// Local extrema of a scalar sequence between ia and ib (with endpoints).
/// For p >= 1 the Young-variation supremum is attained on such partitions,
/// so the DP may run on this reduced index set.
inline std::vector<std::size_t> scalar_extrema(const SampledPath& f,
                                               std::size_t ia, std::size_t ib) {
    std::vector<std::size_t> keep = {ia};
    std::size_t last = ia;
    std::vector<std::size_t> squeezed;
    for (std::size_t j = ia + 1; j <= ib; ++j)
        if (f.scalar(j) != f.scalar(last)) {
            squeezed.push_back(j);
            last = j;
        }
    int dir = 0;
    std::size_t prev = ia;
    for (std::size_t idx = 0; idx < squeezed.size(); ++idx) {
        const std::size_t j = squeezed[idx];
        const int s = f.scalar(j) > f.scalar(prev) ? 1 : -1;
        if (dir != 0 && s != dir) keep.push_back(prev);
        dir = s;
        prev = j;
    }
    if (keep.back() != ib) keep.push_back(ib);
    return keep;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Holder constant restricted to the grid: max over all node pairs s < t of
// d(f(s), f(t)) / (t-s)^beta. Lower-bounds the continuum M_beta.
// ---------------------------------------------------------------------------

inline double holder_constant(const SampledPath& f, double beta) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw bad_exponent("holder_constant: beta in (0,1]");
    return detail::holder_core(
        f.grid, f.nodes(),
        [&](std::size_t i, std::size_t j) { return dist(f.values[i], f.values[j]); },
        beta);
}

inline double holder_constant(const SetValuedSampledPath& F, double beta) {
    if (!(beta > 0.0 && beta <= 1.0))
        throw bad_exponent("holder_constant: beta in (0,1]");
    return detail::holder_core(
        F.grid, F.nodes(),
        [&](std::size_t i, std::size_t j) { return hausdorff(F.bodies[i], F.bodies[j]); },
        beta);
}

// ---------------------------------------------------------------------------
// Young p-variation: sup over grid sub-partitions of sum d(...)^p.
// ---------------------------------------------------------------------------

namespace detail {

template <typename Path, typename DistFn>
double var_p_impl(const Path& f, DistFn&& d, double p, double a, double b,
                  bool scalar_fast) {
    if (!(p >= 1.0)) throw bad_exponent("var_p: p >= 1");
    std::size_t ia, ib;
    try {
        ia = f.index_of(a);
        ib = f.index_of(b);
    } catch (const node_not_on_grid&) {
        throw window_not_on_grid("var_p: window ends must be grid nodes");
    }
    if (ia >= ib) throw window_not_on_grid("var_p: need a < b");
    std::vector<std::size_t> keep;
    if (scalar_fast) {
        keep = scalar_extrema(static_cast<const SampledPath&>(f), ia, ib);
    } else {
        keep.resize(ib - ia + 1);
        for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = ia + j;
    }
    return var_p_dp(keep, d, p);
}

}  // namespace detail

inline double var_p(const SampledPath& f, double p, double a, double b) {
    return detail::var_p_impl(
        f, [&](std::size_t i, std::size_t j) { return dist(f.values[i], f.values[j]); },
        p, a, b, f.dim() == 1);
}

inline double var_p(const SampledPath& f, double p) {
    return var_p(f, p, f.grid.front(), f.grid.back());
}

/// Full DP without the scalar local-extrema reduction (reference route).
inline double var_p_full_dp(const SampledPath& f, double p, double a, double b) {
    return detail::var_p_impl(
        f, [&](std::size_t i, std::size_t j) { return dist(f.values[i], f.values[j]); },
        p, a, b, false);
}

// ---------------------------------------------------------------------------
// Riesz p-variation: DP with terms d(...)^p / (t_i - t_{i-1})^{p-1}. Refining
// a partition never decreases the sum, so the profile is also the window
// value at each prefix. An optional band caps the partition gap (intended for
// long paths); any band >= 1 reproduces the full value.
// ---------------------------------------------------------------------------

namespace detail {

template <typename DistFn>
std::vector<double> riesz_prefix(const std::vector<double>& g, std::size_t ia,
                                 std::size_t ib, DistFn&& d, double p,
                                 std::size_t band) {
    std::vector<double> best(ib - ia + 1, 0.0);
    for (std::size_t j = 1; j < best.size(); ++j) {
        const std::size_t lo = band > 0 && j > band ? j - band : 0;
        double b = -1.0;
        for (std::size_t i = lo; i < j; ++i) {
            const double dt = g[ia + j] - g[ia + i];
            b = std::max(b, best[i] + pow_p(d(ia + i, ia + j), p) /
                                          pow_p(dt, p - 1.0));
        }
        best[j] = b;
    }
    return best;
}

template <typename Path, typename DistFn>
std::vector<double> riesz_vp_prefix_impl(const Path& f, DistFn&& d, double p,
                                         double a, double b, std::size_t band) {
    if (!(p >= 1.0)) throw bad_exponent("riesz_vp: p >= 1");
    std::size_t ia, ib;
    try {
        ia = f.index_of(a);
        ib = f.index_of(b);
    } catch (const node_not_on_grid&) {
        throw window_not_on_grid("riesz_vp: window ends must be grid nodes");
    }
    if (ia >= ib) throw window_not_on_grid("riesz_vp: need a < b");
    return riesz_prefix(f.grid, ia, ib, d, p, band);
}

}  // namespace detail

/// Values V_p(f, [a, t_j]) for every node t_j of the window, by one DP pass.
inline std::vector<double> riesz_vp_prefix(const SampledPath& f, double p,
                                           double a, double b,
                                           std::size_t band = 0) {
    return detail::riesz_vp_prefix_impl(
        f, [&](std::size_t i, std::size_t j) { return dist(f.values[i], f.values[j]); },
        p, a, b, band);
}

inline double riesz_vp(const SampledPath& f, double p, double a, double b,
                       std::size_t band = 0) {
    return riesz_vp_prefix(f, p, a, b, band).back();
}

inline double riesz_vp(const SampledPath& f, double p) {
    return riesz_vp(f, p, f.grid.front(), f.grid.back());
}

inline std::vector<double> riesz_vp_prefix(const SetValuedSampledPath& F,
                                           double p, double a, double b,
                                           std::size_t band = 0) {
    return detail::riesz_vp_prefix_impl(
        F, [&](std::size_t i, std::size_t j) { return hausdorff(F.bodies[i], F.bodies[j]); },
        p, a, b, band);
}

inline double riesz_vp(const SetValuedSampledPath& F, double p, double a,
                       double b, std::size_t band = 0) {
    return riesz_vp_prefix(F, p, a, b, band).back();
}

inline double riesz_vp(const SetValuedSampledPath& F, double p) {
    return riesz_vp(F, p, F.grid.front(), F.grid.back());
}

// ---------------------------------------------------------------------------

/// ||f||_{V_p} = sup_t ||f(t)|| + V_p(f)^{1/p}.
inline double vp_norm(const SampledPath& f, double p) {
    double sup = 0.0;
    for (const auto& v : f.values) sup = std::max(sup, norm(v));
    return sup + std::pow(riesz_vp(f, p), 1.0 / p);
}

inline double vp_norm(const SetValuedSampledPath& F, double p) {
    double sup = 0.0;
    for (const auto& c : F.bodies) sup = std::max(sup, norm(c));
    return sup + std::pow(riesz_vp(F, p), 1.0 / p);
}

// ---------------------------------------------------------------------------
// Grid estimate of the Holder exponent: least-squares slope of log sup
// increment against log lag over dyadic lags. Sup-based, hence biased low
// for rough paths.
// ---------------------------------------------------------------------------

inline double estimate_holder_exponent(const SampledPath& f) {
    const std::size_t n = f.nodes();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = 0;
    for (std::size_t lag = 1; lag <= (n - 1) / 4; lag *= 2) {
        double sup = 0.0;
        for (std::size_t j = 0; j + lag < n; ++j)
            sup = std::max(sup, dist(f.values[j], f.values[j + lag]));
        if (sup <= 0.0) continue;
        const double x = std::log(f.grid[lag] - f.grid[0]);
        const double y = std::log(sup);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return 1.0;  // constant path: any exponent fits
    const double denom = m * sxx - sx * sx;
    return std::clamp((m * sxy - sx * sy) / denom, 0.0, 1.0);
}

}  // namespace setvar
