#include "heteroedge/fit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

namespace heteroedge {

namespace {

// Solve the dense n x n system A x = b by Gaussian elimination with partial
// pivoting. The fixed pivoting rule keeps results bit-reproducible run to run.
std::vector<double> solve_linear(std::vector<double> a, std::vector<double> b, int n) {
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    double best = std::fabs(a[static_cast<std::size_t>(col) * n + col]);
    for (int row = col + 1; row < n; ++row) {
      const double v = std::fabs(a[static_cast<std::size_t>(row) * n + col]);
      if (v > best) {
        best = v;
        pivot = row;
      }
    }
    if (best < 1e-12) throw Error(Errc::DEGENERATE_DESIGN, "rank-deficient normal equations");
    if (pivot != col) {
      for (int j = 0; j < n; ++j)
        std::swap(a[static_cast<std::size_t>(pivot) * n + j], a[static_cast<std::size_t>(col) * n + j]);
      std::swap(b[pivot], b[col]);
    }
    for (int row = col + 1; row < n; ++row) {
      const double f = a[static_cast<std::size_t>(row) * n + col] / a[static_cast<std::size_t>(col) * n + col];
      if (f == 0.0) continue;
      for (int j = col; j < n; ++j)
        a[static_cast<std::size_t>(row) * n + j] -= f * a[static_cast<std::size_t>(col) * n + j];
      b[row] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (int row = n - 1; row >= 0; --row) {
    double s = b[row];
    for (int j = row + 1; j < n; ++j) s -= a[static_cast<std::size_t>(row) * n + j] * x[j];
    x[row] = s / a[static_cast<std::size_t>(row) * n + row];
  }
  return x;
}

template <std::size_t N>
std::array<double, N> to_array(const std::vector<double>& v) {
  std::array<double, N> out{};
  std::copy_n(v.begin(), N, out.begin());
  return out;
}

FitResult fit_curve(Curve which, std::span<const double> xs, std::span<const double> ys, int degree) {
  try {
    return fit_polynomial(xs, ys, degree);
  } catch (const Error& e) {
    throw Error(e.code(), std::string(to_string(which)) + ": " + e.what());
  }
}

}  // namespace

double eval_poly(std::span<const double> coeffs, double x) {
  double acc = 0.0;
  for (const double c : coeffs) acc = acc * x + c;
  return acc;
}

FitResult fit_polynomial(std::span<const double> xs, std::span<const double> ys, int degree) {
  if (degree != 2 && degree != 3) throw Error(Errc::RANGE_ERROR, "degree must be 2 or 3");
  const std::size_t n = xs.size();
  if (ys.size() != n) throw Error(Errc::DIMENSION_MISMATCH, "xs/ys length mismatch");
  const std::size_t min_n = static_cast<std::size_t>(degree) + 2;
  if (n < min_n)
    throw Error(Errc::INSUFFICIENT_SAMPLES,
                "need at least " + std::to_string(min_n) + " samples, got " + std::to_string(n));
  std::set<double> distinct(xs.begin(), xs.end());
  if (distinct.size() < static_cast<std::size_t>(degree) + 1)
    throw Error(Errc::DEGENERATE_DESIGN, "fewer than degree+1 distinct x values");

  const int nc = degree + 1;
  // Normal equations: sums of x powers up to 2*degree, and x^j * y moments.
  std::vector<double> xsums(2 * degree + 1, 0.0);
  std::vector<double> rhs(nc, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double xp = 1.0;
    for (double& s : xsums) {
      s += xp;
      xp *= xs[i];
    }
    double xy = ys[i];
    for (int j = 0; j < nc; ++j) {
      rhs[j] += xy;
      xy *= xs[i];
    }
  }
  // Row j, column l holds sum(x^(j+l)); coefficients come out lowest-first.
  std::vector<double> a(static_cast<std::size_t>(nc) * nc, 0.0);
  for (int j = 0; j < nc; ++j)
    for (int l = 0; l < nc; ++l) a[static_cast<std::size_t>(j) * nc + l] = xsums[j + l];

  const std::vector<double> low_first = solve_linear(std::move(a), std::move(rhs), nc);

  FitResult out;
  out.degree = degree;
  out.coefficients.assign(low_first.rbegin(), low_first.rend());

  double sse = 0.0;
  const double mean = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(n);
  double sst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = ys[i] - eval_poly(out.coefficients, xs[i]);
    sse += e * e;
    sst += (ys[i] - mean) * (ys[i] - mean);
  }
  out.residual_sse = sse;
  if (sst == 0.0) {
    // Constant target: an exact fit deserves a perfect score.
    out.adjusted_r2 = (sse == 0.0) ? 1.0 : 0.0;
  } else {
    const double r2 = 1.0 - sse / sst;
    out.adjusted_r2 =
        1.0 - (1.0 - r2) * (static_cast<double>(n) - 1.0) / (static_cast<double>(n) - degree - 1.0);
  }
  return out;
}

CostCurves build_cost_curves(std::span<const ProfileSample> samples) {
  if (samples.size() < 5)
    throw Error(Errc::INSUFFICIENT_SAMPLES, "need at least 5 profile samples");
  std::set<double> ratios;
  for (const auto& s : samples) {
    if (auto err = validate_sample(s)) throw *err;
    ratios.insert(s.split_ratio);
  }
  if (ratios.size() < 4)
    throw Error(Errc::DEGENERATE_DESIGN, "need at least 4 distinct split ratios");

  const std::size_t n = samples.size();
  std::vector<double> r(n), one_minus_r(n);
  std::vector<double> t1(n), t2(n), t3(n), m1(n), m2(n), e1(n), e2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = samples[i];
    r[i] = s.split_ratio;
    one_minus_r[i] = 1.0 - s.split_ratio;
    t1[i] = s.t_aux_s;
    t2[i] = s.t_pri_s;
    t3[i] = s.t_off_s;
    m1[i] = s.m_aux_pct;
    m2[i] = s.m_pri_pct;
    e1[i] = s.p_aux_w * s.t_aux_s;  // watt-seconds = joules
    e2[i] = s.p_pri_w * s.t_pri_s;
  }

  CostCurves out;
  const FitResult f_t1 = fit_curve(Curve::T1, r, t1, 2);
  const FitResult f_t2 = fit_curve(Curve::T2, one_minus_r, t2, 2);
  const FitResult f_t3 = fit_curve(Curve::T3, r, t3, 2);
  const FitResult f_e1 = fit_curve(Curve::E1, r, e1, 3);
  const FitResult f_e2 = fit_curve(Curve::E2, one_minus_r, e2, 3);
  const FitResult f_m1 = fit_curve(Curve::M1, r, m1, 2);
  const FitResult f_m2 = fit_curve(Curve::M2, one_minus_r, m2, 2);

  out.t1_coeffs = to_array<3>(f_t1.coefficients);
  out.t2_coeffs = to_array<3>(f_t2.coefficients);
  out.t3_coeffs = to_array<3>(f_t3.coefficients);
  out.e1_coeffs = to_array<4>(f_e1.coefficients);
  out.e2_coeffs = to_array<4>(f_e2.coefficients);
  out.m1_coeffs = to_array<3>(f_m1.coefficients);
  out.m2_coeffs = to_array<3>(f_m2.coefficients);
  out.fit_quality[static_cast<std::size_t>(Curve::T1)] = f_t1.adjusted_r2;
  out.fit_quality[static_cast<std::size_t>(Curve::T2)] = f_t2.adjusted_r2;
  out.fit_quality[static_cast<std::size_t>(Curve::T3)] = f_t3.adjusted_r2;
  out.fit_quality[static_cast<std::size_t>(Curve::E1)] = f_e1.adjusted_r2;
  out.fit_quality[static_cast<std::size_t>(Curve::E2)] = f_e2.adjusted_r2;
  out.fit_quality[static_cast<std::size_t>(Curve::M1)] = f_m1.adjusted_r2;
  out.fit_quality[static_cast<std::size_t>(Curve::M2)] = f_m2.adjusted_r2;
  return out;
}

Prediction predict(const CostCurves& curves, Curve which, double r) {
  if (r < 0.0 || r > 1.0) throw Error(Errc::RANGE_ERROR, "r outside [0,1]");
  double raw = 0.0;
  switch (which) {
    case Curve::T1: raw = eval_poly(curves.t1_coeffs, r); break;
    case Curve::T2: raw = eval_poly(curves.t2_coeffs, 1.0 - r); break;
    case Curve::T3: raw = eval_poly(curves.t3_coeffs, r); break;
    case Curve::E1: raw = eval_poly(curves.e1_coeffs, r); break;
    case Curve::E2: raw = eval_poly(curves.e2_coeffs, 1.0 - r); break;
    case Curve::M1: raw = eval_poly(curves.m1_coeffs, r); break;
    case Curve::M2: raw = eval_poly(curves.m2_coeffs, 1.0 - r); break;
    default: throw Error(Errc::UNKNOWN_CURVE, "unknown curve id");
  }
  if (raw < 0.0) return {0.0, true};
  return {raw, false};
}

}  // namespace heteroedge
