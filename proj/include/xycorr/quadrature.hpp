#pragma once

#include <cmath>
#include <set>
#include <sstream>
#include <utility>

#include "xycorr/errors.hpp"

namespace xycorr {

struct QuadratureOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_depth = 40;
    int max_panels = 200000;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1].
// Nodes are strictly interior, so the integrand is never evaluated at the
// panel endpoints (the model integrands have removable 0/0 limits there).
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,  //
    0.949107912342758524526189684047851,  //
    0.864864423359769072789712788640926,  //
    0.741531185599394439863864773280788,  //
    0.586087235467691130294144838258730,  //
    0.405845151377397166906606412076961,  //
    0.207784955007898467600689403773245,  //
    0.0};

inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,  //
    0.063092092629978553290700663189204,  //
    0.104790010322250183839876322541518,  //
    0.140653259715525918745189590510238,  //
    0.169004726639267902826583426598550,  //
    0.190350578064785409913256402421014,  //
    0.204432940075298892414161999234649,  //
    0.209482141084727828012999174891714};

// Weights of the embedded 7-point Gauss rule (nodes 1, 3, 5, 7 above).
inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,  //
    0.279705391489276667901467771423780,  //
    0.381830050505118944950369775488975,  //
    0.417959183673469387755102040816327};

template <class F>
std::pair<double, double> gauss_kronrod_15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[2 * i] = f(c - h * kGK15Nodes[i]);
        fv[2 * i + 1] = f(c + h * kGK15Nodes[i]);
    }
    fv[14] = f(c);
    double kronrod = kK15Weights[7] * fv[14];
    for (int i = 0; i < 7; ++i) kronrod += kK15Weights[i] * (fv[2 * i] + fv[2 * i + 1]);
    double gauss = kG7Weights[3] * fv[14];
    for (int i = 0; i < 3; ++i) gauss += kG7Weights[i] * (fv[2 * (2 * i + 1)] + fv[2 * (2 * i + 1) + 1]);
    return {h * kronrod, std::abs(h * (kronrod - gauss))};
}

struct Panel {
    double a, b, value, error;
    int depth;
};

struct PanelWorst {
    bool operator()(const Panel& p, const Panel& q) const {
        if (p.error != q.error) return p.error > q.error;
        return p.a < q.a;  // deterministic tie-break
    }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]: the panel
/// with the largest error estimate is bisected until the summed error drops
/// below max(abs_tol, rel_tol * |integral|). Throws QuadratureNoConvergence
/// when the worst panel reaches max_depth with the budget still exceeded.
template <class F>
double integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    if (!(b > a)) return 0.0;
    std::multiset<detail::Panel, detail::PanelWorst> panels;
    auto [v0, e0] = detail::gauss_kronrod_15(f, a, b);
    panels.insert({a, b, v0, e0, 0});

    int n_panels = 1;
    for (;;) {
        double total_value = 0.0, total_error = 0.0;
        for (const auto& p : panels) {
            total_value += p.value;
            total_error += p.error;
        }
        if (total_error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(total_value)))
            return total_value;

        const detail::Panel worst = *panels.begin();
        if (worst.depth >= opt.max_depth || n_panels >= opt.max_panels) {
            std::ostringstream os;
            os << "quadrature did not converge on [" << a << ", " << b << "]: residual error "
               << total_error << " after " << n_panels << " panels (worst depth " << worst.depth
               << ")";
            throw QuadratureNoConvergence(os.str());
        }
        panels.erase(panels.begin());
        const double mid = 0.5 * (worst.a + worst.b);
        auto [vl, el] = detail::gauss_kronrod_15(f, worst.a, mid);
        auto [vr, er] = detail::gauss_kronrod_15(f, mid, worst.b);
        panels.insert({worst.a, mid, vl, el, worst.depth + 1});
        panels.insert({mid, worst.b, vr, er, worst.depth + 1});
        ++n_panels;
    }
}

}  // namespace xycorr
