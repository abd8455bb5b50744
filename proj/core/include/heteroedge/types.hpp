#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "heteroedge/error.hpp"

namespace heteroedge {

// One measured profiling row for a (primary, auxiliary) device pair.
// Times in seconds, power in watts, memory in percent of device memory.
struct ProfileSample {
  double split_ratio = 0;  // fraction of the batch offloaded, [0,1]
  double t_aux_s = 0;      // auxiliary execution time
  double p_aux_w = 0;      // auxiliary power draw
  double m_aux_pct = 0;    // auxiliary memory utilization
  double t_pri_s = 0;      // primary execution time
  double t_off_s = 0;      // offload (network) latency
  double p_pri_w = 0;      // primary power draw
  double m_pri_pct = 0;    // primary memory utilization
};

// Identifies one of the seven fitted cost curves.
enum class Curve { T1, T2, T3, E1, E2, M1, M2 };
inline constexpr std::size_t kCurveCount = 7;
const char* to_string(Curve c) noexcept;

// Fitted polynomial cost model, the solver's entire input.
// T1, T3, M1, E1 are polynomials in r; T2, M2, E2 in (1-r).
// Coefficient vectors are highest-degree first.
struct CostCurves {
  std::array<double, 3> t1_coeffs{};  // quadratic in r
  std::array<double, 3> t2_coeffs{};  // quadratic in (1-r)
  std::array<double, 3> t3_coeffs{};  // quadratic in r
  std::array<double, 4> e1_coeffs{};  // cubic in r
  std::array<double, 4> e2_coeffs{};  // cubic in (1-r)
  std::array<double, 3> m1_coeffs{};  // quadratic in r
  std::array<double, 3> m2_coeffs{};  // quadratic in (1-r)
  std::array<double, kCurveCount> fit_quality{};  // adjusted R^2, indexed by Curve
};

// Numeric bounds for the constrained split-ratio problem plus the
// battery and mobility gate thresholds.
struct ConstraintSet {
  double tau_s = 0;            // single-device baseline latency
  int k_devices = 1;           // participating device count
  double p_max_w = 0;          // cap on solver-host power draw (config-time check)
  double s_max_hz = 0;         // cap on CPU speed, cycles/s (config-time check)
  double w_max_aux_w = 0;      // power rating, auxiliary device
  double w_max_pri_w = 0;      // power rating, primary device
  double m_max_aux_pct = 0;    // memory cap, auxiliary device
  double m_max_pri_pct = 0;    // memory cap, primary device
  double beta_s = 0;           // offload-latency halt threshold
  double power_floor_w = 0;    // battery gate: minimum available power for
                               // normal (non-aggressive) operation
};

enum class GatingReason {
  SOLVED,
  LATENCY_HALT,
  MEMORY_GATE,
  BATTERY_GATE,
  NO_FEASIBLE_RATIO,
};
const char* to_string(GatingReason g) noexcept;

// The solver's output.
struct SplitDecision {
  double ratio = 0;
  double predicted_total_time_s = 0;
  double predicted_energy_j = 0;
  double predicted_memory_aux_pct = 0;
  double predicted_memory_pri_pct = 0;
  bool feasible = false;
  GatingReason gating_reason = GatingReason::NO_FEASIBLE_RATIO;
};

// Computational task description. cycles = cycles_per_bit * input_bits.
struct WorkloadSpec {
  double input_bits = 0;
  double cycles_per_bit = 0;
  int batch_size = 0;
  double bytes_per_image = 0;
};

// Grayscale (1 channel) or RGB (3 channel) raster, 8-bit, row-major.
struct Frame {
  int width = 0;
  int height = 0;
  int channels = 1;
  std::vector<std::uint8_t> pixels;
};

// Battery bookkeeping for the availability equations. Energies in joules.
struct BatteryState {
  double capacity_j = 0;      // C0
  double discharge_rate = 0;  // k, fraction in [0,1]
  double e_dnn_j = 0;
  double e_drive_j = 0;
  double t_dnn_s = 0;
  double t_drive_s = 0;
};

// Battery capacity is often quoted in mAh; convert with a nominal pack voltage.
BatteryState battery_from_mah(double mah, double volts, double discharge_rate);

// Kinematic state of the two-node pair.
struct MobilityState {
  double v_primary_mps = 0;
  double v_auxiliary_mps = 0;
  double elapsed_s = 0;
  double initial_distance_m = 0;
};

// Invariant checks. nullopt means the value is well-formed; otherwise the
// returned error names the violated field.
std::optional<Error> validate_sample(const ProfileSample& s);
std::optional<Error> validate(const ConstraintSet& c);
std::optional<Error> validate(const WorkloadSpec& w);
std::optional<Error> validate(const Frame& f);
std::optional<Error> validate(const BatteryState& b);
std::optional<Error> validate(const MobilityState& m);

}  // namespace heteroedge
