#include "heteroedge/types.hpp"

#include <cmath>

namespace heteroedge {

namespace {

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }
bool nonneg(double v) { return v >= 0.0; }
bool pct(double v) { return v >= 0.0 && v <= 100.0; }

std::optional<Error> range_error(const char* field) {
  return Error(Errc::RANGE_ERROR, field);
}

}  // namespace

const char* to_string(Curve c) noexcept {
  switch (c) {
    case Curve::T1: return "T1";
    case Curve::T2: return "T2";
    case Curve::T3: return "T3";
    case Curve::E1: return "E1";
    case Curve::E2: return "E2";
    case Curve::M1: return "M1";
    case Curve::M2: return "M2";
  }
  return "?";
}

const char* to_string(GatingReason g) noexcept {
  switch (g) {
    case GatingReason::SOLVED: return "SOLVED";
    case GatingReason::LATENCY_HALT: return "LATENCY_HALT";
    case GatingReason::MEMORY_GATE: return "MEMORY_GATE";
    case GatingReason::BATTERY_GATE: return "BATTERY_GATE";
    case GatingReason::NO_FEASIBLE_RATIO: return "NO_FEASIBLE_RATIO";
  }
  return "?";
}

std::optional<Error> validate_sample(const ProfileSample& s) {
  if (!in_unit(s.split_ratio)) return range_error("split_ratio");
  if (!nonneg(s.t_aux_s)) return range_error("t_aux_s");
  if (!nonneg(s.p_aux_w)) return range_error("p_aux_w");
  if (!pct(s.m_aux_pct)) return range_error("m_aux_pct");
  if (!nonneg(s.t_pri_s)) return range_error("t_pri_s");
  if (!nonneg(s.t_off_s)) return range_error("t_off_s");
  if (!nonneg(s.p_pri_w)) return range_error("p_pri_w");
  if (!pct(s.m_pri_pct)) return range_error("m_pri_pct");
  // Boundary rows: nothing runs on a device that receives no work.
  if (s.split_ratio == 0.0 && (s.t_aux_s != 0.0 || s.t_off_s != 0.0))
    return range_error("t_aux_s/t_off_s must be 0 at split_ratio=0");
  if (s.split_ratio == 1.0 && s.t_pri_s != 0.0)
    return range_error("t_pri_s must be 0 at split_ratio=1");
  return std::nullopt;
}

std::optional<Error> validate(const ConstraintSet& c) {
  if (!(c.tau_s > 0)) return range_error("tau_s");
  if (c.k_devices < 1) return range_error("k_devices");
  if (!(c.beta_s > 0)) return range_error("beta_s");
  if (!(c.p_max_w > 0)) return range_error("p_max_w");
  if (!(c.s_max_hz > 0)) return range_error("s_max_hz");
  if (!(c.w_max_aux_w > 0)) return range_error("w_max_aux_w");
  if (!(c.w_max_pri_w > 0)) return range_error("w_max_pri_w");
  if (!(c.m_max_aux_pct > 0)) return range_error("m_max_aux_pct");
  if (!(c.m_max_pri_pct > 0)) return range_error("m_max_pri_pct");
  if (!nonneg(c.power_floor_w)) return range_error("power_floor_w");
  return std::nullopt;
}

std::optional<Error> validate(const WorkloadSpec& w) {
  if (!(w.input_bits > 0)) return range_error("input_bits");
  if (!(w.cycles_per_bit > 0)) return range_error("cycles_per_bit");
  if (w.batch_size <= 0) return range_error("batch_size");
  if (!(w.bytes_per_image > 0)) return range_error("bytes_per_image");
  return std::nullopt;
}

std::optional<Error> validate(const Frame& f) {
  if (f.width <= 0) return range_error("width");
  if (f.height <= 0) return range_error("height");
  if (f.channels != 1 && f.channels != 3) return range_error("channels");
  const std::size_t expect = static_cast<std::size_t>(f.width) * f.height * f.channels;
  if (f.pixels.size() != expect)
    return Error(Errc::DIMENSION_MISMATCH, "pixel buffer length != width*height*channels");
  return std::nullopt;
}

std::optional<Error> validate(const BatteryState& b) {
  if (!in_unit(b.discharge_rate)) return range_error("discharge_rate");
  if (!nonneg(b.capacity_j)) return range_error("capacity_j");
  if (!nonneg(b.e_dnn_j)) return range_error("e_dnn_j");
  if (!nonneg(b.e_drive_j)) return range_error("e_drive_j");
  if (!nonneg(b.t_dnn_s)) return range_error("t_dnn_s");
  if (!nonneg(b.t_drive_s)) return range_error("t_drive_s");
  return std::nullopt;
}

std::optional<Error> validate(const MobilityState& m) {
  if (!nonneg(m.v_primary_mps)) return range_error("v_primary_mps");
  if (!nonneg(m.v_auxiliary_mps)) return range_error("v_auxiliary_mps");
  if (!nonneg(m.elapsed_s)) return range_error("elapsed_s");
  if (!nonneg(m.initial_distance_m)) return range_error("initial_distance_m");
  return std::nullopt;
}

BatteryState battery_from_mah(double mah, double volts, double discharge_rate) {
  BatteryState b;
  b.capacity_j = mah / 1000.0 * volts * 3600.0;  // mAh * V -> J
  b.discharge_rate = discharge_rate;
  return b;
}

}  // namespace heteroedge
