#pragma once

#include <lapacke.h>

#include "setvar/path.hpp"
#include "setvar/rng.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Seeded fractional Brownian paths by exact Cholesky factorization of the
// covariance R(s,t) = (s^{2H} + t^{2H} - |t-s|^{2H})/2 on a uniform grid.
// O(n^3) but exact in distribution, which is what the verification harnesses
// need; the grid size is capped accordingly.
// ---------------------------------------------------------------------------

struct FbmSpec {
    double H = 0.5;
    std::size_t n = 256;  // grid cells; nodes are t_j = j T / n
    double T = 1.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(H > 0.0 && H < 1.0)) throw std::invalid_argument("FbmSpec: H in (0,1)");
        if (n < 2) throw std::invalid_argument("FbmSpec: n >= 2");
        if (!(T > 0.0)) throw std::invalid_argument("FbmSpec: T > 0");
        if (n > (1u << 14)) throw size_too_large("FbmSpec: n beyond Cholesky cap 2^14");
    }
};

/// Holds the factorized covariance so many paths of one spec can be drawn
/// cheaply; draw i is a pure function of (seed, stream), bit-stable.
class FbmSampler {
  public:
    explicit FbmSampler(const FbmSpec& spec) : spec_(spec) {
        spec.validate();
        const std::size_t n = spec.n;
        const double dt = spec.T / static_cast<double>(n);
        std::vector<double> pw(n + 1);
        for (std::size_t k = 0; k <= n; ++k)
            pw[k] = std::pow(static_cast<double>(k) * dt, 2.0 * spec.H);
        chol_.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                chol_[i * n + j] =
                    0.5 * (pw[i + 1] + pw[j + 1] - pw[i > j ? i - j : j - i]);
        if (!factorize(n)) {
            // one jitter retry on the diagonal, then give up
            double dmax = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                dmax = std::max(dmax, pw[i + 1]);
            rebuild(pw, n);
            for (std::size_t i = 0; i < n; ++i) chol_[i * n + i] += 1e-12 * dmax;
            if (!factorize(n))
                throw not_positive_definite("fbm covariance not positive definite");
        }
    }

    const FbmSpec& spec() const { return spec_; }

    SampledPath path(std::uint64_t stream = 0) const {
        const std::size_t n = spec_.n;
        CounterRng rng{spec_.seed, stream};
        std::vector<double> z(n);
        for (std::size_t k = 0; k < n; ++k) z[k] = rng.normal(k);
        std::vector<double> v(n + 1, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            double s = 0.0;
            for (std::size_t k = 0; k <= i; ++k) s += chol_[i * n + k] * z[k];
            v[i + 1] = s;
        }
        return make_scalar_path(uniform_grid(n, spec_.T), v);
    }

  private:
    void rebuild(const std::vector<double>& pw, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                chol_[i * n + j] =
                    0.5 * (pw[i + 1] + pw[j + 1] - pw[i > j ? i - j : j - i]);
    }

    bool factorize(std::size_t n) {
        const lapack_int info = LAPACKE_dpotrf(
            LAPACK_COL_MAJOR, 'U', static_cast<lapack_int>(n), chol_.data(),
            static_cast<lapack_int>(n));
        if (info != 0) return false;
        // column-major upper 'U' is row-major lower L with L L^T = R;
        // zero out the strict upper part so path() can use a plain loop
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) chol_[i * n + j] = 0.0;
        return true;
    }

    FbmSpec spec_;
    std::vector<double> chol_;
};

/// One seeded path; H = 1/2 reduces to a Wiener path.
inline SampledPath fbm_path(const FbmSpec& spec) { return FbmSampler(spec).path(0); }

// ---------------------------------------------------------------------------
// Piecewise-linear regularization: the path agreeing with `f` on the coarse
// node subset (which must include both endpoints), evaluated back on the
// full grid.
// ---------------------------------------------------------------------------

inline SampledPath interpolate_linear(const SampledPath& f,
                                      const std::vector<std::size_t>& coarse) {
    if (coarse.size() < 2 || coarse.front() != 0 ||
        coarse.back() != f.nodes() - 1)
        throw node_not_on_grid("interpolate_linear: endpoints required");
    for (std::size_t k = 1; k < coarse.size(); ++k)
        if (coarse[k] <= coarse[k - 1] || coarse[k] >= f.nodes())
            throw node_not_on_grid("interpolate_linear: nodes not on grid");
    std::vector<Vec> v(f.nodes(), Vec::zero(f.dim()));
    for (std::size_t k = 1; k < coarse.size(); ++k) {
        const std::size_t a = coarse[k - 1], b = coarse[k];
        const double ta = f.grid[a], tb = f.grid[b];
        for (std::size_t j = a; j <= b; ++j) {
            const double w = (f.grid[j] - ta) / (tb - ta);
            v[j] = f.values[a] + w * (f.values[b] - f.values[a]);
        }
    }
    return SampledPath(f.grid, std::move(v));
}

/// Every (n_cells / m)-th node, for dyadic coarsenings of a uniform grid.
inline std::vector<std::size_t> coarse_indices(std::size_t n_nodes,
                                               std::size_t m_cells) {
    const std::size_t n_cells = n_nodes - 1;
    if (m_cells == 0 || n_cells % m_cells != 0)
        throw node_not_on_grid("coarse_indices: cells must divide the grid");
    std::vector<std::size_t> idx;
    idx.reserve(m_cells + 1);
    const std::size_t step = n_cells / m_cells;
    for (std::size_t j = 0; j <= n_cells; j += step) idx.push_back(j);
    return idx;
}

}  // namespace setvar
