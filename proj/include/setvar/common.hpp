#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace setvar {

// ---------------------------------------------------------------------------
// Error types
// ---------------------------------------------------------------------------

struct dimension_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct window_not_on_grid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct node_not_on_grid : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct bad_exponent : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct grid_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct boundary_point : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct quadrature_unavailable : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct unsupported_variant_mix : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct invalid_config : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct unknown_suite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct size_too_large : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_positive_definite : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Riemann sums failed to stabilize below the tolerance within the level
/// budget; typically means 1/p + alpha <= 1 or under-resolved data.
struct no_convergence : std::runtime_error {
    double defect;
    no_convergence(const std::string& what, double d)
        : std::runtime_error(what), defect(d) {}
};

/// Forward Hukuhara difference failed at grid cell `cell`.
struct difference_not_exist : std::runtime_error {
    std::size_t cell;
    difference_not_exist(const std::string& what, std::size_t j)
        : std::runtime_error(what), cell(j) {}
};

// ---------------------------------------------------------------------------
// Small fixed-capacity vector for points in R^d, d <= 3
// ---------------------------------------------------------------------------

struct Vec {
    std::array<double, 3> c{0.0, 0.0, 0.0};
    int dim = 1;

    Vec() = default;
    explicit Vec(double x) : c{x, 0.0, 0.0}, dim(1) {}
    Vec(double x, double y) : c{x, y, 0.0}, dim(2) {}
    Vec(double x, double y, double z) : c{x, y, z}, dim(3) {}

    static Vec zero(int d) {
        Vec v;
        v.dim = d;
        return v;
    }

    double& operator[](int i) { return c[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return c[static_cast<std::size_t>(i)]; }

    Vec& operator+=(const Vec& o) {
        for (int i = 0; i < dim; ++i) c[i] += o.c[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        for (int i = 0; i < dim; ++i) c[i] -= o.c[i];
        return *this;
    }
    Vec& operator*=(double a) {
        for (int i = 0; i < dim; ++i) c[i] *= a;
        return *this;
    }
    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double s, Vec a) { return a *= s; }
    friend Vec operator*(Vec a, double s) { return a *= s; }
};

inline double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (int i = 0; i < std::min(a.dim, b.dim); ++i) s += a[i] * b[i];
    return s;
}

inline double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

inline double dist(const Vec& a, const Vec& b) { return norm(a - b); }

// ---------------------------------------------------------------------------
// Numeric helpers
// ---------------------------------------------------------------------------

/// x^p for x >= 0 with a fast path for small integer p and a guard at x = 0.
inline double pow_p(double x, double p) {
    if (x <= 0.0) return 0.0;
    if (p == 1.0) return x;
    if (p == 2.0) return x * x;
    if (p == 3.0) return x * x * x;
    return std::exp(p * std::log(x));
}

inline bool nearly_equal(double a, double b, double tol) {
    return std::abs(a - b) <= tol;
}

/// Format a double with 17 significant digits (round-trip exact).
inline std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

// ---------------------------------------------------------------------------
// Worker pool: fork-join over an index range. Worker count is capped by the
// SETVAR_THREADS environment variable; results must be written per-index so
// scheduling never affects the outcome.
// ---------------------------------------------------------------------------

inline unsigned max_workers() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("SETVAR_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1 && v < 1024) hw = std::min(hw, static_cast<unsigned>(v));
    }
    return hw;
}

template <typename Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = std::min<std::size_t>(max_workers(), n);
    if (workers <= 1 || n < 4) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = w * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace setvar
