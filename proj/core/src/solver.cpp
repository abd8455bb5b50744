#include "heteroedge/solver.hpp"

#include <algorithm>
#include <cmath>

#include "heteroedge/energy.hpp"

namespace heteroedge {

namespace {

constexpr double kGridStep = 0.001;
constexpr double kRefineTol = 1e-5;
// Below this predicted execution time the device does no meaningful work, so
// its E/T power estimate is numerically meaningless; treat the draw as zero.
constexpr double kIdleTimeEps = 1e-9;

double predicted_power(const CostCurves& curves, Curve energy, Curve time, double r) {
  const double t = predict(curves, time, r).value;
  if (t <= kIdleTimeEps) return 0.0;
  return predict(curves, energy, r).value / t;
}

SplitDecision decision_at(double r, bool is_feasible, GatingReason reason,
                          const CostCurves& curves) {
  SplitDecision d;
  d.ratio = r;
  d.feasible = is_feasible;
  d.gating_reason = reason;
  d.predicted_total_time_s = objective_value(Objective{curves}, r);
  d.predicted_energy_j =
      r * predict(curves, Curve::E1, r).value + (1.0 - r) * predict(curves, Curve::E2, r).value;
  d.predicted_memory_aux_pct = predict(curves, Curve::M1, r).value;
  d.predicted_memory_pri_pct = predict(curves, Curve::M2, r).value;
  return d;
}

SplitDecision all_local_fallback(GatingReason reason, const CostCurves& curves) {
  return decision_at(0.0, false, reason, curves);
}

// Golden-section refinement of f over [lo, hi] down to kRefineTol, returning
// the best evaluated point (not the midpoint, so the result is never worse
// than any probe).
std::pair<double, double> golden_refine(const auto& f, double lo, double hi) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = f(c), fd = f(d);
  double best_x = fc <= fd ? c : d;
  double best_f = std::min(fc, fd);
  while (b - a > kRefineTol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = f(d);
    }
    if (fc < best_f) {
      best_f = fc;
      best_x = c;
    }
    if (fd < best_f) {
      best_f = fd;
      best_x = d;
    }
  }
  return {best_x, best_f};
}

SplitDecision solve_impl(const Objective& obj, const ConstraintSet& constraints,
                         const CostCurves& curves, double available_power_w) {
  const auto penalized = [&](double r) {
    return feasible(r, constraints, curves, available_power_w).ok
               ? objective_value(obj, r)
               : std::numeric_limits<double>::infinity();
  };

  // Dense scan of the open interval; ascending order makes "keep strictly
  // better" the smallest-r tie-break.
  double best_r = -1.0;
  double best_f = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 999; ++i) {
    const double r = static_cast<double>(i) * kGridStep;
    const double v = penalized(r);
    if (v < best_f) {
      best_f = v;
      best_r = r;
    }
  }
  if (best_r < 0.0) return all_local_fallback(GatingReason::NO_FEASIBLE_RATIO, curves);

  const double lo = std::max(best_r - kGridStep, kGridStep / 2.0);
  const double hi = std::min(best_r + kGridStep, 1.0 - kGridStep / 2.0);
  const auto [refined_r, refined_f] = golden_refine(penalized, lo, hi);
  const double r_star = refined_f < best_f ? refined_r : best_r;

  return decision_at(r_star, true, GatingReason::SOLVED, curves);
}

}  // namespace

const char* to_string(ConstraintId c) noexcept {
  switch (c) {
    case ConstraintId::C1_LATENCY: return "C1_LATENCY";
    case ConstraintId::C3_RATIO_BOUNDS: return "C3_RATIO_BOUNDS";
    case ConstraintId::C5_POWER_AUX: return "C5_POWER_AUX";
    case ConstraintId::C5_POWER_PRI: return "C5_POWER_PRI";
    case ConstraintId::C6_MEMORY_AUX: return "C6_MEMORY_AUX";
    case ConstraintId::C6_MEMORY_PRI: return "C6_MEMORY_PRI";
  }
  return "?";
}

double objective_value(const Objective& obj, double r) {
  if (r < 0.0 || r > 1.0) throw Error(Errc::RANGE_ERROR, "r outside [0,1]");
  const double t1 = predict(obj.curves, Curve::T1, r).value;
  const double t2 = predict(obj.curves, Curve::T2, r).value;
  const double t3 = predict(obj.curves, Curve::T3, r).value;
  return r * (t1 + t3) + (1.0 - r) * t2;
}

Feasibility feasible(double r, const ConstraintSet& constraints, const CostCurves& curves,
                     double available_power_w) {
  Feasibility out;
  if (!(r > 0.0 && r < 1.0)) out.violations.push_back(ConstraintId::C3_RATIO_BOUNDS);

  const double t_bound = constraints.tau_s / static_cast<double>(constraints.k_devices);
  if (r >= 0.0 && r <= 1.0) {
    if (objective_value(Objective{curves}, r) > t_bound)
      out.violations.push_back(ConstraintId::C1_LATENCY);
    if (predicted_power(curves, Curve::E1, Curve::T1, r) > constraints.w_max_aux_w)
      out.violations.push_back(ConstraintId::C5_POWER_AUX);
    const double pri_cap = std::min(constraints.w_max_pri_w, available_power_w);
    if (predicted_power(curves, Curve::E2, Curve::T2, r) > pri_cap)
      out.violations.push_back(ConstraintId::C5_POWER_PRI);
    if (predict(curves, Curve::M1, r).value > constraints.m_max_aux_pct)
      out.violations.push_back(ConstraintId::C6_MEMORY_AUX);
    if (predict(curves, Curve::M2, r).value > constraints.m_max_pri_pct)
      out.violations.push_back(ConstraintId::C6_MEMORY_PRI);
  }
  out.ok = out.violations.empty();
  return out;
}

SplitDecision solve(const Objective& obj, const ConstraintSet& constraints,
                    const CostCurves& curves, double available_power_w) {
  return solve_impl(obj, constraints, curves, available_power_w);
}

double availability_factor(double m1_free_pct, double m2_free_pct) {
  if (m1_free_pct < 0 || m1_free_pct > 100 || m2_free_pct < 0 || m2_free_pct > 100)
    throw Error(Errc::RANGE_ERROR, "free memory percent outside [0,100]");
  return std::min(m1_free_pct, m2_free_pct) / 100.0;
}

SplitDecision select_split(const SplitState& state) {
  // 1. Mobility gate.
  if (state.current_latency_s >= state.constraints.beta_s)
    return all_local_fallback(GatingReason::LATENCY_HALT, state.curves);

  // 2. Memory gate.
  const double lambda =
      availability_factor(state.free_memory_aux_pct, state.free_memory_pri_pct);
  if (lambda < state.lambda_threshold)
    return all_local_fallback(GatingReason::MEMORY_GATE, state.curves);

  // 3. Battery gate (disabled when the floor is 0). When available power is
  // below the floor, offload more aggressively: inflate the primary's time
  // curve in the objective only.
  double p_available = std::numeric_limits<double>::infinity();
  if (state.constraints.power_floor_w > 0) {
    p_available = available_power_watts(state.battery);
    if (p_available < state.constraints.power_floor_w) {
      Objective biased{state.curves};
      for (double& c : biased.curves.t2_coeffs) c *= state.battery_aggressiveness;
      SplitDecision d = solve(biased, state.constraints, state.curves, p_available);
      if (d.gating_reason == GatingReason::SOLVED) d.gating_reason = GatingReason::BATTERY_GATE;
      return d;
    }
  }

  // 4. Normal solve.
  return solve(Objective{state.curves}, state.constraints, state.curves, p_available);
}

}  // namespace heteroedge
