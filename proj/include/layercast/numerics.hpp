#pragma once

#include <cmath>
#include <functional>

namespace layercast::num {

// Adaptive Gauss-Kronrod (15-point Kronrod, embedded 7-point Gauss) on [a, b].
// Subdivides until |K15 - G7| <= max(abs_tol, rel_tol * |K15|) on each panel,
// with the absolute budget split across panels. Integrable endpoint
// singularities are handled by the recursive bisection; depth is capped.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, double rel_tol = 1e-9, int max_depth = 60);

struct RootResult {
    double root;
    double residual;   // f(root)
    int iterations;
};

// Bisection on [lo, hi]; requires f(lo) and f(hi) of opposite sign (a zero at
// either end is accepted as the root). Runs to interval width <= x_tol.
RootResult bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol);

// Scans [lo, hi] on a geometric grid for a sign change of f, then bisects.
// Throws numerical_error with diagnostics if no bracket is found.
RootResult bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol, int scan_points = 128);

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double x) { return 10.0 * std::log10(x); }

} // namespace layercast::num
