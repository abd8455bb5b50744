#pragma once

#include <span>
#include <utility>

#include "heteroedge/types.hpp"

namespace heteroedge {

// CPU power model P = mu * S^3; energy per cycle is mu * S^2.
struct CpuModel {
  double mu = 0;         // chip coefficient
  double speed_max = 0;  // S_max, cycles/second
};

std::optional<Error> validate(const CpuModel& m);

// Total CPU cycles for a workload: cycles_per_bit * input_bits.
double cpu_cycles(const WorkloadSpec& workload);

// cycles / speed. Speed must lie in (0, speed_max].
double exec_time(double cycles, const CpuModel& model, double speed_hz);

// cycles * mu * S^2. Speed must lie in (0, speed_max].
double exec_energy(double cycles, const CpuModel& model, double speed_hz);

// Instantaneous CPU power at speed S: mu * S^3.
double cpu_power(const CpuModel& model, double speed_hz);

// Split-weighted execution cost: (t1*r + t2*(1-r), e1*r + e2*(1-r)).
std::pair<double, double> split_exec(double t1_s, double t2_s, double e1_j, double e2_j, double r);

// Offload energy: transfer time times the summed power of the participating
// nodes (sender + receiver).
double offload_energy(double t_off_s, std::span<const double> node_powers_w);

// T = T_exec + T_o + T_s.
double total_latency(double t_exec_s, double t_off_s, double t_solver_s);

// E = E_exec + E_s + E_o. Callers compute e_solver = P_k * T_s.
double total_energy(double e_exec_j, double e_solver_j, double e_off_j);

// Available battery energy: C0 * k - E_dnn - E_drive. May go negative when
// the pack is depleted; callers interpret.
double available_energy(const BatteryState& b);

// The availability quotient applied verbatim:
//   P = E_available / ((1 - k)(t_dnn + t_drive) / 3600)
// The /3600 converts seconds to hours, so the result is in watts only when
// the stored energies are in watt-hours. BatteryState keeps joules; use
// available_power_watts for a watts answer, or pre-convert with
// joules_to_watt_hours.
double available_power(const BatteryState& b);

// Same quotient with the joules->watt-hours conversion folded in; the two
// /3600 factors cancel, leaving E_available_J / ((1 - k)(t_dnn + t_drive)).
double available_power_watts(const BatteryState& b);

double joules_to_watt_hours(double joules);

}  // namespace heteroedge
