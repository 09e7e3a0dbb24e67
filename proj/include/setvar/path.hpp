#pragma once

#include <vector>

#include "setvar/common.hpp"
#include "setvar/convex.hpp"

namespace setvar {

// ---------------------------------------------------------------------------
// Sampled paths on a strictly increasing grid t_0 < ... < t_n.
// ---------------------------------------------------------------------------

struct SampledPath {
    std::vector<double> grid;
    std::vector<Vec> values;

    SampledPath() = default;
    SampledPath(std::vector<double> g, std::vector<Vec> v)
        : grid(std::move(g)), values(std::move(v)) {
        validate();
    }

    void validate() const {
        if (grid.size() < 2 || grid.size() != values.size())
            throw std::invalid_argument("SampledPath: need n >= 1 cells");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw std::invalid_argument("SampledPath: grid not increasing");
        const int d = values.front().dim;
        for (const auto& v : values) {
            if (v.dim != d)
                throw dimension_mismatch("SampledPath: mixed dimensions");
            for (int k = 0; k < d; ++k)
                if (!std::isfinite(v[k]))
                    throw std::invalid_argument("SampledPath: non-finite value");
        }
    }

    std::size_t nodes() const { return grid.size(); }
    int dim() const { return values.front().dim; }
    double horizon() const { return grid.back(); }

    double scalar(std::size_t j) const { return values[j][0]; }

    /// Index of a grid node equal to t (tolerance-scaled), or throws.
    std::size_t index_of(double t) const {
        const double span = grid.back() - grid.front();
        auto it = std::lower_bound(grid.begin(), grid.end(), t - 1e-9 * span);
        if (it != grid.end() && std::abs(*it - t) <= 1e-9 * span)
            return static_cast<std::size_t>(it - grid.begin());
        throw node_not_on_grid("node not on grid");
    }
};

inline SampledPath make_scalar_path(std::vector<double> grid,
                                    const std::vector<double>& v) {
    std::vector<Vec> vals;
    vals.reserve(v.size());
    for (double x : v) vals.push_back(Vec(x));
    return SampledPath(std::move(grid), std::move(vals));
}

inline std::vector<double> uniform_grid(std::size_t n_cells, double T) {
    std::vector<double> g(n_cells + 1);
    for (std::size_t j = 0; j <= n_cells; ++j)
        g[j] = T * static_cast<double>(j) / static_cast<double>(n_cells);
    return g;
}

template <typename Fn>
SampledPath sample_function(std::size_t n_cells, double T, Fn&& f) {
    std::vector<double> g = uniform_grid(n_cells, T);
    std::vector<double> v(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g[j]);
    return make_scalar_path(std::move(g), v);
}

// ---------------------------------------------------------------------------

struct SetValuedSampledPath {
    std::vector<double> grid;
    std::vector<ConvexBody> bodies;

    SetValuedSampledPath() = default;
    SetValuedSampledPath(std::vector<double> g, std::vector<ConvexBody> b)
        : grid(std::move(g)), bodies(std::move(b)) {
        if (grid.size() < 2 || grid.size() != bodies.size())
            throw std::invalid_argument("SetValuedSampledPath: sizes");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw std::invalid_argument(
                    "SetValuedSampledPath: grid not increasing");
        const int d = bodies.front().dim;
        for (const auto& c : bodies)
            if (c.dim != d)
                throw dimension_mismatch("SetValuedSampledPath: dimensions");
    }

    std::size_t nodes() const { return grid.size(); }
    int dim() const { return bodies.front().dim; }
    double horizon() const { return grid.back(); }

    std::size_t index_of(double t) const {
        const double span = grid.back() - grid.front();
        auto it = std::lower_bound(grid.begin(), grid.end(), t - 1e-9 * span);
        if (it != grid.end() && std::abs(*it - t) <= 1e-9 * span)
            return static_cast<std::size_t>(it - grid.begin());
        throw node_not_on_grid("node not on grid");
    }
};

/// Interval-valued path from endpoint samples.
inline SetValuedSampledPath make_interval_path(std::vector<double> grid,
                                               const std::vector<double>& lo,
                                               const std::vector<double>& hi) {
    std::vector<ConvexBody> b;
    b.reserve(lo.size());
    for (std::size_t j = 0; j < lo.size(); ++j)
        b.push_back(ConvexBody::interval(lo[j], hi[j]));
    return SetValuedSampledPath(std::move(grid), std::move(b));
}

}  // namespace setvar
