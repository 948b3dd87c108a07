#include "layercast/numerics.hpp"

#include <algorithm>
#include <sstream>

#include "layercast/errors.hpp"

namespace layercast::num {
namespace {

// Kronrod-15 abscissae on [0, 1] (symmetric) with Kronrod and embedded
// Gauss-7 weights, as tabulated in QUADPACK (dqk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double err;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double resk = 0.0, resg = 0.0;
    for (int j = 0; j < 8; ++j) {
        const double dx = h * kXgk[j];
        const double fsum = (j == 7) ? f(c) : f(c - dx) + f(c + dx);
        resk += kWgk[j] * fsum;
        if (j % 2 == 1) resg += kWg[j / 2] * fsum; // odd indices are the Gauss-7 nodes
    }
    return {resk * h, std::abs((resk - resg) * h)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double abs_tol, double rel_tol, int depth) {
    const PanelResult r = gk15(f, a, b);
    if (!std::isfinite(r.kronrod)) {
        throw numerical_error("quadrature: non-finite integrand value on panel");
    }
    const double tol = std::max(abs_tol, rel_tol * std::abs(r.kronrod));
    if (r.err <= tol || depth <= 0) {
        if (depth <= 0 && r.err > 64.0 * std::max(tol, 1e-300)) {
            throw numerical_error("quadrature: panel failed to converge at max depth");
        }
        return r.kronrod;
    }
    const double m = 0.5 * (a + b);
    return integrate_rec(f, a, m, 0.5 * abs_tol, rel_tol, depth - 1) +
           integrate_rec(f, m, b, 0.5 * abs_tol, rel_tol, depth - 1);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const double sign = (a < b) ? 1.0 : -1.0;
    if (a > b) std::swap(a, b);
    return sign * integrate_rec(f, a, b, abs_tol, rel_tol, max_depth);
}

RootResult bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if ((flo < 0.0) == (fhi < 0.0)) {
        std::ostringstream msg;
        msg << "bisect: root not bracketed, f(" << lo << ")=" << flo
            << ", f(" << hi << ")=" << fhi;
        throw numerical_error(msg.str());
    }
    int it = 0;
    while (hi - lo > x_tol && it < 200) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break; // interval at floating-point resolution
        const double fm = f(mid);
        ++it;
        if (fm == 0.0) return {mid, 0.0, it};
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    const double root = 0.5 * (lo + hi);
    return {root, f(root), it};
}

RootResult bracketed_root(const std::function<double(double)>& f, double lo, double hi,
                          double x_tol, int scan_points) {
    if (!(lo > 0.0 && hi > lo)) {
        throw validation_error("bracketed_root: requires 0 < lo < hi");
    }
    const double ratio = std::pow(hi / lo, 1.0 / scan_points);
    double a = lo;
    double fa = f(a);
    if (fa == 0.0) return {a, 0.0, 0};
    for (int i = 1; i <= scan_points; ++i) {
        const double b = (i == scan_points) ? hi : lo * std::pow(ratio, i);
        const double fb = f(b);
        if (fb == 0.0) return {b, 0.0, 0};
        if ((fa < 0.0) != (fb < 0.0)) {
            return bisect(f, a, b, x_tol);
        }
        a = b;
        fa = fb;
    }
    std::ostringstream msg;
    msg << "bracketed_root: no sign change of f on [" << lo << ", " << hi
        << "] over " << scan_points << " scan points; f(lo)=" << f(lo)
        << ", f(hi)=" << f(hi);
    throw numerical_error(msg.str());
}

} // namespace layercast::num
