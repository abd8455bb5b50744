#include "heteroedge/energy.hpp"

#include <numeric>

namespace heteroedge {

namespace {

void check_speed(const CpuModel& model, double speed_hz) {
  if (!(speed_hz > 0) || speed_hz > model.speed_max)
    throw Error(Errc::SPEED_OUT_OF_RANGE, "speed must satisfy 0 < S <= S_max");
}

}  // namespace

std::optional<Error> validate(const CpuModel& m) {
  if (!(m.mu > 0)) return Error(Errc::RANGE_ERROR, "mu");
  if (!(m.speed_max > 0)) return Error(Errc::RANGE_ERROR, "speed_max");
  return std::nullopt;
}

double cpu_cycles(const WorkloadSpec& workload) {
  return workload.cycles_per_bit * workload.input_bits;
}

double exec_time(double cycles, const CpuModel& model, double speed_hz) {
  check_speed(model, speed_hz);
  return cycles / speed_hz;
}

double exec_energy(double cycles, const CpuModel& model, double speed_hz) {
  check_speed(model, speed_hz);
  return cycles * model.mu * speed_hz * speed_hz;
}

double cpu_power(const CpuModel& model, double speed_hz) {
  return model.mu * speed_hz * speed_hz * speed_hz;
}

std::pair<double, double> split_exec(double t1_s, double t2_s, double e1_j, double e2_j, double r) {
  if (r < 0.0 || r > 1.0) throw Error(Errc::RANGE_ERROR, "r outside [0,1]");
  return {t1_s * r + t2_s * (1.0 - r), e1_j * r + e2_j * (1.0 - r)};
}

double offload_energy(double t_off_s, std::span<const double> node_powers_w) {
  if (t_off_s < 0) throw Error(Errc::RANGE_ERROR, "t_off_s");
  if (node_powers_w.empty()) throw Error(Errc::RANGE_ERROR, "node_powers_w empty");
  for (const double p : node_powers_w)
    if (p < 0) throw Error(Errc::RANGE_ERROR, "node power < 0");
  const double total = std::accumulate(node_powers_w.begin(), node_powers_w.end(), 0.0);
  return t_off_s * total;
}

double total_latency(double t_exec_s, double t_off_s, double t_solver_s) {
  return t_exec_s + t_off_s + t_solver_s;
}

double total_energy(double e_exec_j, double e_solver_j, double e_off_j) {
  return e_exec_j + e_solver_j + e_off_j;
}

double available_energy(const BatteryState& b) {
  return b.capacity_j * b.discharge_rate - b.e_dnn_j - b.e_drive_j;
}

double available_power(const BatteryState& b) {
  const double total_time_s = b.t_dnn_s + b.t_drive_s;
  if (b.discharge_rate == 1.0 || total_time_s == 0.0)
    throw Error(Errc::DIV_BY_ZERO, "(1-k) and t_dnn+t_drive must be nonzero");
  return available_energy(b) / ((1.0 - b.discharge_rate) * total_time_s / 3600.0);
}

double available_power_watts(const BatteryState& b) {
  const double total_time_s = b.t_dnn_s + b.t_drive_s;
  if (b.discharge_rate == 1.0 || total_time_s == 0.0)
    throw Error(Errc::DIV_BY_ZERO, "(1-k) and t_dnn+t_drive must be nonzero");
  return available_energy(b) / ((1.0 - b.discharge_rate) * total_time_s);
}

double joules_to_watt_hours(double joules) {
  return joules / 3600.0;
}

}  // namespace heteroedge
