#pragma once

#include <span>
#include <vector>

#include "heteroedge/types.hpp"

namespace heteroedge {

// Result of one least-squares polynomial fit.
struct FitResult {
  std::vector<double> coefficients;  // highest-degree first, size = degree + 1
  int degree = 0;
  double adjusted_r2 = 0;
  double residual_sse = 0;
};

// Evaluate a highest-degree-first coefficient vector at x (Horner).
double eval_poly(std::span<const double> coeffs, double x);

// Least-squares polynomial fit via normal equations with partial pivoting.
// Requires n >= degree + 2 samples and at least degree + 1 distinct xs.
// adjusted_r2 = 1 - (1 - R^2)(n - 1)/(n - degree - 1); an exact fit of a
// constant target scores 1.0.
FitResult fit_polynomial(std::span<const double> xs, std::span<const double> ys, int degree);

// Fit all seven cost curves from profiling rows. T1, T3, M1 are quadratics
// in r; T2, M2 quadratics in (1-r); E1 cubic in r; E2 cubic in (1-r).
// Per-row energy targets are derived as power * time (watt-seconds).
// Requires >= 5 samples spanning >= 4 distinct split ratios.
CostCurves build_cost_curves(std::span<const ProfileSample> samples);

// A curve prediction; negative time/memory/energy values are clamped to 0
// and flagged, since low-order fits can dip below zero near the boundaries.
struct Prediction {
  double value = 0;
  bool clamped = false;
};

// Evaluate one fitted curve at split ratio r (the curve's native variable,
// r or 1-r, is applied internally).
Prediction predict(const CostCurves& curves, Curve which, double r);

}  // namespace heteroedge
