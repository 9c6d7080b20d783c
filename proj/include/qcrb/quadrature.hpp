#pragma once

// Adaptive Gauss-Kronrod (7,15) quadrature on finite panels.
// The error estimate is the difference between the 15-point Kronrod rule and
// its embedded 7-point Gauss rule; panels are bisected until the estimate
// meets the requested tolerance.  Integrands with known kinks should pass the
// kink locations as panel breakpoints.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

namespace qcrb {

struct QuadResult {
    double value = 0.0;
    double error = 0.0;   // accumulated error estimate
    bool converged = false;
    long evaluations = 0;
};

namespace detail {

// Kronrod-15 abscissae on [0,1] side (symmetric) and weights; the odd-index
// abscissae are the Gauss-7 points.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct PanelEstimate {
    double k15;
    double err;
};

template <class F>
PanelEstimate gk15_panel(const F& f, double a, double b, long& evals) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double k15 = 0.0, g7 = 0.0;
    for (int i = 0; i < 8; ++i) {
        const double dx = h * kGK15Nodes[i];
        const double f1 = f(c - dx);
        const double f2 = (i == 7) ? f1 : f(c + dx);
        evals += (i == 7) ? 1 : 2;
        const double sum = (i == 7) ? f1 : f1 + f2;
        k15 += kK15Weights[i] * sum;
        if (i % 2 == 1) g7 += kG7Weights[i / 2] * sum;
    }
    k15 *= h;
    g7 *= h;
    return {k15, std::abs(k15 - g7)};
}

template <class F>
double gk15_recurse(const F& f, double a, double b, double tol, int depth,
                    int max_depth, double& err_acc, long& evals) {
    const PanelEstimate e = gk15_panel(f, a, b, evals);
    if (e.err <= tol || depth >= max_depth) {
        err_acc += e.err;
        return e.k15;
    }
    const double m = 0.5 * (a + b);
    return gk15_recurse(f, a, m, 0.5 * tol, depth + 1, max_depth, err_acc, evals) +
           gk15_recurse(f, m, b, 0.5 * tol, depth + 1, max_depth, err_acc, evals);
}

}  // namespace detail

// Integrate f over [a, b] to the given tolerances (max depth 48 bisections).
template <class F>
QuadResult integrate_adaptive(const F& f, double a, double b, double rel_tol,
                              double abs_tol = 1e-300, int max_depth = 48) {
    if (!(a <= b)) throw std::invalid_argument("integrate_adaptive: a > b");
    QuadResult out;
    if (a == b) {
        out.converged = true;
        return out;
    }
    const detail::PanelEstimate rough = detail::gk15_panel(f, a, b, out.evaluations);
    const double tol = std::max(abs_tol, rel_tol * std::abs(rough.k15));
    out.value = detail::gk15_recurse(f, a, b, tol, 0, max_depth, out.error, out.evaluations);
    out.converged = out.error <= std::max(abs_tol, rel_tol * std::abs(out.value)) * 4.0 + 1e-300;
    return out;
}

// Same, but with interior breakpoints (e.g. integrand kinks) as fixed panel
// boundaries.  Breakpoints outside (a, b) are ignored.
template <class F>
QuadResult integrate_with_breakpoints(const F& f, double a, double b,
                                      const std::vector<double>& breakpoints,
                                      double rel_tol, double abs_tol = 1e-300) {
    std::vector<double> pts{a};
    for (double p : breakpoints)
        if (p > a && p < b) pts.push_back(p);
    pts.push_back(b);
    std::sort(pts.begin(), pts.end());
    QuadResult out;
    out.converged = true;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        QuadResult piece = integrate_adaptive(f, pts[i], pts[i + 1], rel_tol, abs_tol);
        out.value += piece.value;
        out.error += piece.error;
        out.evaluations += piece.evaluations;
        out.converged = out.converged && piece.converged;
    }
    return out;
}

}  // namespace qcrb
