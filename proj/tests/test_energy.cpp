#include <doctest.h>

#include <array>
#include <random>

#include "heteroedge/energy.hpp"

using namespace heteroedge;

TEST_CASE("cpu cycles are cycles-per-bit times input bits") {
  WorkloadSpec w;
  w.cycles_per_bit = 10;
  w.input_bits = 8;
  w.batch_size = 1;
  w.bytes_per_image = 1;
  CHECK(cpu_cycles(w) == 80.0);
  w.cycles_per_bit = 1;
  w.input_bits = 1;
  CHECK(cpu_cycles(w) == 1.0);
  // 737 cycles/bit on a 1920x1080 8-bit frame, cross-checked externally.
  w.cycles_per_bit = 737;
  w.input_bits = 1920.0 * 1080.0 * 8.0;
  CHECK(cpu_cycles(w) == 12225945600.0);
}

TEST_CASE("exec time and speed range") {
  const CpuModel m{1.0, 200.0};
  CHECK(exec_time(100, m, 100) == 1.0);
  CHECK(exec_time(0, m, 100) == 0.0);
  CHECK_THROWS_WITH_AS(exec_time(100, m, 250), doctest::Contains("SPEED_OUT_OF_RANGE"), Error);
  CHECK_THROWS_AS(exec_time(100, m, 0), Error);
}

TEST_CASE("exec energy follows mu * S^2 per cycle") {
  const CpuModel m{1.0, 10.0};
  CHECK(exec_energy(5, m, 1) == 5.0);
  // Doubling speed quadruples energy at fixed cycles.
  CHECK(exec_energy(7, m, 4) == 4.0 * exec_energy(7, m, 2));
}

TEST_CASE("energy equals power times time identically") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> mu(1e-12, 1e-6), speed(1e3, 1e9), cyc(1.0, 1e12);
  for (int i = 0; i < 1000; ++i) {
    const CpuModel m{mu(rng), 1e9};
    const double s = speed(rng), c = cyc(rng);
    const double lhs = exec_energy(c, m, s);
    const double rhs = cpu_power(m, s) * exec_time(c, m, s);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs)));
  }
}

TEST_CASE("split execution weights the two devices") {
  CHECK(split_exec(13.88, 28.35, 1, 2, 0.0) == std::pair{28.35, 2.0});
  CHECK(split_exec(13.88, 28.35, 1, 2, 1.0) == std::pair{13.88, 1.0});
  const auto [t, e] = split_exec(13.88, 28.35, 1, 2, 0.5);
  CHECK(t == doctest::Approx(21.115).epsilon(1e-12));
  CHECK_THROWS_AS(split_exec(1, 1, 1, 1, 1.5), Error);
}

TEST_CASE("split execution is affine in r") {
  // Zero second differences across an r grid.
  for (int i = 1; i < 100; ++i) {
    const double r0 = (i - 1) / 100.0, r1 = i / 100.0, r2 = (i + 1) / 100.0;
    const double f0 = split_exec(17, 66, 100, 400, r0).first;
    const double f1 = split_exec(17, 66, 100, 400, r1).first;
    const double f2 = split_exec(17, 66, 100, 400, r2).first;
    CHECK(std::abs((f2 - f1) - (f1 - f0)) < 1e-9);
  }
}

TEST_CASE("offload energy sums the participating node powers") {
  CHECK(offload_energy(0.0, std::array{3.0, 4.0}) == 0.0);
  CHECK(offload_energy(2.0, std::array{3.0, 4.0}) == 14.0);
  // Distributive in the power list.
  const double split = offload_energy(1.56, std::array{2.5}) + offload_energy(1.56, std::array{3.5});
  CHECK(offload_energy(1.56, std::array{2.5, 3.5}) == doctest::Approx(split).epsilon(1e-12));
  CHECK_THROWS_AS(offload_energy(-1.0, std::array{1.0}), Error);
  CHECK_THROWS_AS(offload_energy(1.0, std::span<const double>{}), Error);
}

TEST_CASE("total latency and energy are plain sums") {
  CHECK(total_latency(1, 2, 3) == 6.0);
  CHECK(total_latency(0, 0, 0) == 0.0);
  CHECK(total_energy(1, 2, 3) == total_energy(3, 2, 1));
}

TEST_CASE("available energy bookkeeping") {
  BatteryState b;
  b.capacity_j = 100;
  b.discharge_rate = 1.0;
  CHECK(available_energy(b) == 100.0);
  b.capacity_j = 125;
  b.discharge_rate = 0.8;
  b.e_dnn_j = 60;
  b.e_drive_j = 50;
  CHECK(available_energy(b) == doctest::Approx(-10.0).epsilon(1e-12));  // depleted

  // 4000 mAh at 11.1 V, k = 0.7, 5.5 W DNN for 55 s, 17.5 W drive for
  // 1350 s; frozen from independent arithmetic.
  BatteryState ugv = battery_from_mah(4000, 11.1, 0.7);
  ugv.e_dnn_j = 5.5 * 55.0;
  ugv.e_drive_j = 17.5 * 1350.0;
  ugv.t_dnn_s = 55;
  ugv.t_drive_s = 1350;
  CHECK(available_energy(ugv) == doctest::Approx(87960.5).epsilon(1e-12));

  SUBCASE("availability quotient, verbatim and in watts") {
    CHECK(available_power(ugv) == doctest::Approx(751264.0569395017).epsilon(1e-12));
    CHECK(available_power_watts(ugv) == doctest::Approx(208.68446026097268).epsilon(1e-12));
  }
}

TEST_CASE("availability quotient with a unit-hour denominator") {
  BatteryState b;
  b.capacity_j = 500;
  b.discharge_rate = 0.7;
  b.t_dnn_s = 600;
  b.t_drive_s = 3000;  // total 3600 s
  const double x = available_energy(b);
  CHECK(available_power(b) == doctest::Approx(x / 0.3).epsilon(1e-12));

  b.discharge_rate = 1.0;
  CHECK_THROWS_WITH_AS(available_power(b), doctest::Contains("DIV_BY_ZERO"), Error);
  b.discharge_rate = 0.5;
  b.t_dnn_s = b.t_drive_s = 0;
  CHECK_THROWS_AS(available_power(b), Error);
}

TEST_CASE("available power rises with available energy") {
  BatteryState b;
  b.discharge_rate = 0.7;
  b.t_dnn_s = 60;
  b.t_drive_s = 1200;
  double prev = -1e18;
  for (double cap = 1000; cap <= 20000; cap += 1000) {
    b.capacity_j = cap;
    const double p = available_power_watts(b);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("joules to watt-hours helper") {
  CHECK(joules_to_watt_hours(3600.0) == 1.0);
  CHECK(joules_to_watt_hours(0.0) == 0.0);
}
