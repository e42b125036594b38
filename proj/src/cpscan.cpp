#include "xycorr/cpscan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace xycorr {

namespace {

constexpr double kFlatTol = 1e-12;

void check_uniform(const std::vector<double>& grid) {
    if (grid.size() < 5) throw GridTooSmall("derivative stencils need at least 5 grid points");
    const double h = grid[1] - grid[0];
    if (h <= 0.0) throw NonUniformGrid("grid is not strictly increasing");
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double step = grid[i] - grid[i - 1];
        if (step <= 0.0) throw NonUniformGrid("grid is not strictly increasing");
        if (std::abs(step - h) > 1e-12) {
            std::ostringstream os;
            os << "grid spacing varies by " << std::abs(step - h) << " at index " << i;
            throw NonUniformGrid(os.str());
        }
    }
}

/// Vertex of the parabola through (x0 - h, y0), (x0, y1), (x0 + h, y2),
/// clamped to the central interval. Falls back to x0 on a degenerate fit.
double parabolic_vertex(double x0, double h, double y0, double y1, double y2) {
    const double denom = y0 - 2.0 * y1 + y2;
    if (denom == 0.0) return x0;
    const double offset = 0.5 * h * (y0 - y2) / denom;
    return x0 + std::clamp(offset, -h, h);
}

}  // namespace

std::vector<double> uniform_grid(double lo, double hi, double step) {
    if (!(step > 0.0) || !(hi >= lo)) throw DomainError("uniform_grid: need hi >= lo and step > 0");
    const int n = static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = lo + i * step;
    return grid;
}

MeasureCurve build_measure_curve(double gamma, double kT, int r, MeasureKind measure, double lo,
                                 double hi, double step) {
    MeasureCurve c{gamma, kT, r, measure, uniform_grid(lo, hi, step), {}};
    c.values.reserve(c.lambdas.size());
    for (double lambda : c.lambdas)
        c.values.push_back(evaluate(measure, reduced_state({gamma, lambda, kT}, r)));
    return c;
}

MeasureCurve numeric_derivative(const MeasureCurve& c, int order) {
    if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
    check_uniform(c.lambdas);
    const std::size_t n = c.lambdas.size();
    const double h = c.lambdas[1] - c.lambdas[0];
    const std::vector<double>& f = c.values;

    MeasureCurve d = c;
    if (order == 1) {
        d.values[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
        for (std::size_t i = 1; i + 1 < n; ++i) d.values[i] = (f[i + 1] - f[i - 1]) / (2.0 * h);
        d.values[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
    } else {
        d.values[0] = (f[0] - 2.0 * f[1] + f[2]) / (h * h);
        for (std::size_t i = 1; i + 1 < n; ++i)
            d.values[i] = (f[i + 1] - 2.0 * f[i] + f[i - 1]) / (h * h);
        d.values[n - 1] = (f[n - 1] - 2.0 * f[n - 2] + f[n - 3]) / (h * h);
    }
    return d;
}

CpEstimate estimate_cp_from_curve(const MeasureCurve& curve, int deriv_order) {
    const MeasureCurve deriv = numeric_derivative(curve, deriv_order);
    const double step = curve.lambdas[1] - curve.lambdas[0];

    // Only interior samples compete: the refinement parabola needs both
    // neighbors, and an extremum pinned to the window edge estimates nothing.
    std::size_t best = 1;
    for (std::size_t i = 2; i + 1 < deriv.values.size(); ++i)
        if (std::abs(deriv.values[i]) > std::abs(deriv.values[best])) best = i;

    if (std::abs(deriv.values[best]) < kFlatTol) {
        std::ostringstream os;
        os << "measure " << to_string(curve.measure) << " is flat over ["
           << curve.lambdas.front() << ", " << curve.lambdas.back() << "] (max |derivative| "
           << std::abs(deriv.values[best]) << ")";
        throw FlatCurve(os.str());
    }

    double lambda_hat = deriv.lambdas[best];
    // At kT = 0 the true derivative diverges at the CP; the grid extremum is
    // the estimate. At kT > 0 the extremum is smooth and worth refining.
    if (curve.kT > 0.0) {
        lambda_hat = parabolic_vertex(deriv.lambdas[best], step,
                                      std::abs(deriv.values[best - 1]),
                                      std::abs(deriv.values[best]),
                                      std::abs(deriv.values[best + 1]));
    }
    return CpEstimate{lambda_hat, deriv_order, deriv.values[best], curve.lambdas.front(),
                      curve.lambdas.back()};
}

CpEstimate estimate_cp(double gamma, double kT, int r, MeasureKind measure,
                       const CpScanOptions& opt) {
    const MeasureCurve curve =
        build_measure_curve(gamma, kT, r, measure, opt.window_lo, opt.window_hi, opt.step);
    return estimate_cp_from_curve(curve, opt.deriv_order);
}

double factorization_lambda(double gamma) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        std::ostringstream os;
        os << "factorization line requires gamma in (0, 1), got " << gamma;
        throw DomainError(os.str());
    }
    return 1.0 / std::sqrt(1.0 - gamma * gamma);
}

namespace {

/// Locates where the kT = 0 concurrence curve touches zero, nearest target.
double concurrence_zero_near(double gamma, int r, const FactorizationOptions& opt, double target) {
    const std::vector<double> grid = uniform_grid(opt.window_lo, opt.window_hi, opt.step);
    std::vector<double> conc(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        conc[i] = concurrence_xstate(reduced_state({gamma, grid[i], 0.0}, r));

    // Candidates: interior local minima that already dip close to zero.
    double best = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        if (conc[i] > conc[i - 1] || conc[i] > conc[i + 1]) continue;
        if (conc[i] > 1e-3) continue;
        if (std::isnan(best) || std::abs(grid[i] - target) < std::abs(best - target))
            best = grid[i];
    }
    if (std::isnan(best))
        throw NotFound("no concurrence zero inside the factorization search window");

    // Golden-section refinement of the dip.
    constexpr double kInvPhi = 0.6180339887498949;
    auto eval = [&](double lambda) {
        return concurrence_xstate(reduced_state({gamma, lambda, 0.0}, r));
    };
    double a = best - 2.0 * opt.step, b = best + 2.0 * opt.step;
    double c = b - kInvPhi * (b - a), d = a + kInvPhi * (b - a);
    double fc = eval(c), fd = eval(d);
    for (int iter = 0; iter < 60 && (b - a) > 1e-10; ++iter) {
        if (fc < fd) {
            b = d, d = c, fd = fc;
            c = b - kInvPhi * (b - a);
            fc = eval(c);
        } else {
            a = c, c = d, fc = fd;
            d = a + kInvPhi * (b - a);
            fd = eval(d);
        }
    }
    const double lambda_zero = 0.5 * (a + b);
    if (eval(lambda_zero) > 1e-6)
        throw NotFound("concurrence does not reach zero inside the search window");
    return lambda_zero;
}

/// Locates the non-analytic feature of d(WYSIM)/d lambda nearest target,
/// excluding the critical-point divergence around lambda = 1. The kink in
/// WYSIM shows up as the sharpest change of its first derivative, i.e. as the
/// extremal |second difference| of the curve.
double wysim_feature_near(double gamma, int r, const FactorizationOptions& opt, double target) {
    const MeasureCurve curve = build_measure_curve(gamma, 0.0, r, MeasureKind::Wysim,
                                                   opt.window_lo, opt.window_hi, opt.step);
    const MeasureCurve d2 = numeric_derivative(curve, 2);

    // Significance floor: quadrature noise makes |d2| wiggle everywhere, the
    // feature stands orders of magnitude above it.
    std::vector<double> mags;
    for (std::size_t i = 1; i + 1 < d2.values.size(); ++i) {
        if (std::abs(d2.lambdas[i] - 1.0) < opt.cp_exclusion) continue;
        mags.push_back(std::abs(d2.values[i]));
    }
    if (mags.empty()) throw NotFound("factorization window excluded entirely");
    std::nth_element(mags.begin(), mags.begin() + static_cast<std::ptrdiff_t>(mags.size() / 2),
                     mags.end());
    const double floor_mag = 10.0 * std::max(mags[mags.size() / 2], kFlatTol);

    double best = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 1; i + 1 < d2.values.size(); ++i) {
        if (std::abs(d2.lambdas[i] - 1.0) < opt.cp_exclusion) continue;
        const double mag = std::abs(d2.values[i]);
        if (mag < floor_mag) continue;
        if (mag < std::abs(d2.values[i - 1]) || mag < std::abs(d2.values[i + 1])) continue;
        if (std::isnan(best) || std::abs(d2.lambdas[i] - target) < std::abs(best - target))
            best = d2.lambdas[i];
    }
    if (std::isnan(best))
        throw NotFound("no feature in d(WYSIM)/d lambda inside the search window");
    return best;
}

}  // namespace

FactorizationDetection detect_factorization(double gamma, int r, const FactorizationOptions& opt) {
    const double target = factorization_lambda(gamma);
    FactorizationDetection det{};
    det.concurrence_zero = concurrence_zero_near(gamma, r, opt, target);
    det.wysim_feature = wysim_feature_near(gamma, r, opt, target);
    return det;
}

std::vector<LongRangePoint> long_range_profile(double gamma, double kT, double lambda,
                                               const std::vector<MeasureKind>& measures,
                                               int r_max) {
    if (r_max < 2) throw DomainError("long_range_profile requires r_max >= 2");
    std::vector<LongRangePoint> out;
    out.reserve(static_cast<std::size_t>(r_max) * measures.size());
    for (int r = 1; r <= r_max; ++r) {
        const XState s = reduced_state({gamma, lambda, kT}, r);
        for (MeasureKind kind : measures) out.push_back({r, kind, evaluate(kind, s)});
    }
    return out;
}

}  // namespace xycorr
