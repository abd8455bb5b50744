#pragma once

#include <limits>
#include <vector>

#include "heteroedge/fit.hpp"
#include "heteroedge/types.hpp"

namespace heteroedge {

// The split-ratio objective: T(r) = r*(T1(r) + T3(r)) + (1-r)*T2(1-r),
// built on clamped curve predictions.
struct Objective {
  CostCurves curves;
};

double objective_value(const Objective& obj, double r);

// Constraint identifiers for feasibility traces. C5/C6 are evaluated per
// device; C2/C4 are configuration-time checks (see validate(ConstraintSet)
// and validate(CpuModel)) and never appear in per-ratio traces.
enum class ConstraintId {
  C1_LATENCY,
  C3_RATIO_BOUNDS,
  C5_POWER_AUX,
  C5_POWER_PRI,
  C6_MEMORY_AUX,
  C6_MEMORY_PRI,
};
const char* to_string(ConstraintId c) noexcept;

struct Feasibility {
  bool ok = false;
  std::vector<ConstraintId> violations;  // all violations, not just the first
};

// Evaluate every per-ratio constraint at r:
//   C1: T(r) <= tau/k
//   C3: 0 < r < 1 (strict)
//   C5: predicted device power (E/T) within its rating; the primary's cap is
//       additionally bounded by the battery's currently available power
//   C6: predicted device memory within its cap
// Infeasibility is data, not an error.
Feasibility feasible(double r, const ConstraintSet& constraints, const CostCurves& curves,
                     double available_power_w = std::numeric_limits<double>::infinity());

// Minimize the objective over the open interval (0,1): a dense scan on the
// 0.001 grid picks the best feasible cell, then golden-section refinement
// narrows it to 1e-5 in r. Ties break toward the smallest r. If no ratio is
// feasible the decision falls back to all-local (ratio 0, NO_FEASIBLE_RATIO).
SplitDecision solve(const Objective& obj, const ConstraintSet& constraints,
                    const CostCurves& curves,
                    double available_power_w = std::numeric_limits<double>::infinity());

// Device availability factor: min of the two free-memory fractions.
double availability_factor(double m1_free_pct, double m2_free_pct);

// Inputs for the full gated decision sequence.
struct SplitState {
  CostCurves curves;
  ConstraintSet constraints;
  double current_latency_s = 0;
  BatteryState battery;
  double free_memory_aux_pct = 100;
  double free_memory_pri_pct = 100;
  double lambda_threshold = 0.2;        // memory gate floor on the availability factor
  double battery_aggressiveness = 1.5;  // objective bias applied when battery-gated
};

// Gated split selection, in order:
//   1. latency gate:  current latency >= beta          -> LATENCY_HALT, ratio 0
//   2. memory gate:   availability factor < threshold  -> MEMORY_GATE, ratio 0
//   3. battery gate:  available power < power floor    -> re-solve with the
//      primary's time curve scaled by the aggressiveness factor, which biases
//      the optimum toward more offloading (BATTERY_GATE); feasibility and the
//      reported predictions still use the unbiased curves
//   4. otherwise solve normally (SOLVED)
SplitDecision select_split(const SplitState& state);

}  // namespace heteroedge
