#pragma once

#include <vector>

#include "xycorr/measures.hpp"
#include "xycorr/xymodel.hpp"

namespace xycorr {

/// A correlation measure sampled on a uniform lambda grid at fixed
/// (gamma, kT, r). Uniform spacing is required by the difference stencils.
struct MeasureCurve {
    double gamma = 0.0;
    double kT = 0.0;
    int r = 1;
    MeasureKind measure = MeasureKind::Min;
    std::vector<double> lambdas;
    std::vector<double> values;
};

/// Uniform grid lo, lo + step, ..., covering [lo, hi].
std::vector<double> uniform_grid(double lo, double hi, double step);

/// Samples the measure over reduced_state({gamma, lambda, kT}, r) on the grid.
MeasureCurve build_measure_curve(double gamma, double kT, int r, MeasureKind measure, double lo,
                                 double hi, double step);

/// Central differences of the stated order (1 or 2) on the interior, one-sided
/// 3-point stencils at the ends. Requires >= 5 uniformly spaced points.
MeasureCurve numeric_derivative(const MeasureCurve& c, int order);

struct CpEstimate {
    double lambda_hat;
    int deriv_order;
    double extremum_value;  // derivative value at the located extremum
    double window_lo, window_hi;
};

struct CpScanOptions {
    double window_lo = 0.5;
    double window_hi = 1.5;
    double step = 1e-3;
    int deriv_order = 1;
};

/// Estimates the finite-temperature critical point as the lambda of the
/// global interior extremum of |d^order measure / d lambda^order| in the
/// window, refined by parabolic interpolation through the three neighboring
/// samples. At kT = 0 the derivative diverges and the bare grid point is
/// returned. Throws FlatCurve when max |derivative| < 1e-12.
CpEstimate estimate_cp(double gamma, double kT, int r, MeasureKind measure,
                       const CpScanOptions& opt = {});

/// The extremum-location stage of estimate_cp on an already sampled curve.
CpEstimate estimate_cp_from_curve(const MeasureCurve& curve, int deriv_order);

/// Non-trivial factorization point lambda* = 1 / sqrt(1 - gamma^2) of the
/// line gamma^2 + lambda^-2 = 1. Throws DomainError outside gamma in (0, 1).
double factorization_lambda(double gamma);

struct FactorizationDetection {
    double concurrence_zero;  // where the concurrence curve touches zero
    double wysim_feature;     // non-analytic feature of d(WYSIM)/d lambda
};

struct FactorizationOptions {
    double window_lo = 0.9;
    double window_hi = 2.0;
    double step = 1e-3;
    double cp_exclusion = 0.03;  // half-width of the excluded region around lambda = 1
};

/// Ground-state (kT = 0) factorization-point detection at distance r: the
/// concurrence zero nearest lambda* and the extremal feature of the WYSIM
/// derivative nearest lambda*, the critical-point feature at lambda = 1
/// excluded. Throws NotFound when a detector sees no feature in the window.
FactorizationDetection detect_factorization(double gamma, int r,
                                            const FactorizationOptions& opt = {});

struct LongRangePoint {
    int r;
    MeasureKind measure;
    double value;
};

/// Evaluates each measure on reduced_state at r = 1..r_max.
std::vector<LongRangePoint> long_range_profile(double gamma, double kT, double lambda,
                                               const std::vector<MeasureKind>& measures,
                                               int r_max);

}  // namespace xycorr
