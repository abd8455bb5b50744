// Acceptance suite: one pass/fail line per criterion. Each criterion is
// self-contained and pins its tolerances in code.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "heteroedge/compression.hpp"
#include "heteroedge/energy.hpp"
#include "heteroedge/fit.hpp"
#include "heteroedge/netmodel.hpp"
#include "heteroedge/profile_csv.hpp"
#include "heteroedge/runtime/scenario.hpp"
#include "heteroedge/serialize.hpp"
#include "heteroedge/solver.hpp"

using namespace heteroedge;
using namespace heteroedge::runtime;

namespace {

int g_failures = 0;
std::string g_detail;

void detail(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof(buf), fmt, args);
  va_end(args);
  if (!g_detail.empty()) g_detail += "; ";
  g_detail += buf;
}

void criterion(int number, const char* name, bool ok) {
  std::printf("[%s] criterion %2d: %s%s%s\n", ok ? "PASS" : "FAIL", number, name,
              g_detail.empty() ? "" : " -- ", g_detail.c_str());
  if (!ok) ++g_failures;
  g_detail.clear();
}

ConstraintSet paper_caps() {
  ConstraintSet c;
  c.tau_s = 68.34;
  c.k_devices = 2;
  c.p_max_w = 15;
  c.s_max_hz = 1e9;
  c.w_max_aux_w = 7;
  c.w_max_pri_w = 7;
  c.m_max_aux_pct = 65;
  c.m_max_pri_pct = 65;
  c.beta_s = 5;
  return c;
}

std::vector<ProfileSample> bundled_profile() {
  return load_profile_csv(HETEROEDGE_DATA_DIR "/profile_testbed.csv");
}

// Physically-shaped random profiles for the solver property suites.
std::vector<ProfileSample> random_profile(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const double a1 = -6.0 + 12.0 * u01(rng);
  const double b1 = std::abs(2.0 * a1) + 2.0 + 20.0 * u01(rng);
  const double a2 = -6.0 + 12.0 * u01(rng);
  const double b2 = std::abs(2.0 * a2) + 2.0 + 40.0 * u01(rng);
  const double a3 = 0.5 * u01(rng);
  const double b3 = std::abs(2.0 * a3) + 0.2 + 1.5 * u01(rng);
  const double p1b = 1 + 2 * u01(rng), p1s = 3 * u01(rng);
  const double p2b = 1 + 2 * u01(rng), p2s = 3 * u01(rng);
  const double m1b = 5 + 10 * u01(rng), m1s = 30 + 30 * u01(rng);
  const double m2b = 5 + 10 * u01(rng), m2s = 30 + 30 * u01(rng);
  std::vector<ProfileSample> out;
  for (const double r : {0.0, 0.2, 0.4, 0.6, 0.8, 1.0}) {
    const double x = 1.0 - r;
    ProfileSample s;
    s.split_ratio = r;
    s.t_aux_s = a1 * r * r + b1 * r;
    s.t_pri_s = a2 * x * x + b2 * x;
    s.t_off_s = a3 * r * r + b3 * r;
    s.p_aux_w = r > 0 ? p1b + p1s * r : 0.5;
    s.p_pri_w = x > 0 ? p2b + p2s * x : 0.5;
    s.m_aux_pct = m1b + m1s * r;
    s.m_pri_pct = m2b + m2s * x;
    out.push_back(s);
  }
  return out;
}

// --- criterion 1 -----------------------------------------------------------

bool c1_optimal_ratio() {
  const auto start = std::chrono::steady_clock::now();
  const CostCurves curves = build_cost_curves(bundled_profile());
  const SplitDecision d = solve(Objective{curves}, paper_caps(), curves);
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  detail("r*=%.4f, solve+fit %.3f s", d.ratio, elapsed);
  return d.feasible && d.ratio >= 0.60 && d.ratio <= 0.80 && elapsed < 1.0;
}

// --- criterion 2 -----------------------------------------------------------

bool c2_total_time_reduction() {
  auto cfg = load_scenario(HETEROEDGE_DATA_DIR "/scenario_static.json");
  const RunReport solved = run_scenario(cfg);
  auto baseline_cfg = cfg;
  baseline_cfg.force_ratio = 0.0;
  const RunReport baseline = run_scenario(baseline_cfg);
  const double ratio = solved.t_total_s / baseline.t_total_s;
  detail("%.2f s vs %.2f s baseline (%.1f%%)", solved.t_total_s, baseline.t_total_s, 100 * ratio);
  return ratio <= 0.55;
}

// --- criterion 3 -----------------------------------------------------------

bool c3_boundary_consistency() {
  const CostCurves curves = build_cost_curves(bundled_profile());
  const Objective obj{curves};
  const double at0 = objective_value(obj, 0.001);
  const double at1 = objective_value(obj, 0.999);
  const double want1 = 19.001 + 1.56;
  detail("T(0+)=%.2f (68.34), T(1-)=%.2f (%.2f)", at0, at1, want1);
  return std::abs(at0 - 68.34) / 68.34 <= 0.10 && std::abs(at1 - want1) / want1 <= 0.10;
}

// --- criterion 4 -----------------------------------------------------------

bool c4_fit_quality() {
  const auto samples = bundled_profile();
  std::vector<double> t1, m1, p1, t2, m2;
  for (const auto& s : samples) {
    t1.push_back(s.t_aux_s);
    m1.push_back(s.m_aux_pct);
    p1.push_back(s.p_aux_w);
    t2.push_back(s.t_pri_s);
    m2.push_back(s.m_pri_pct);
  }
  // Memory and power as quadratic functions of inference time.
  const double mem_aux = fit_polynomial(t1, m1, 2).adjusted_r2;
  const double pow_aux = fit_polynomial(t1, p1, 2).adjusted_r2;
  const double mem_pri = fit_polynomial(t2, m2, 2).adjusted_r2;
  detail("adjR2: M|T aux %.4f, P|T aux %.4f, M|T pri %.4f", mem_aux, pow_aux, mem_pri);
  return mem_aux >= 0.95 && pow_aux >= 0.95 && mem_pri >= 0.95;
}

// --- criterion 5 -----------------------------------------------------------

bool c5_mobility_halt() {
  // Calibrate the latency-distance model from samples anchored at
  // L(26) = 13.9 s, then run the mobile case.
  const double a1 = 14.7 / 676.0, a2 = 0.05, a3 = 0.5;
  std::vector<std::pair<double, double>> samples;
  for (const double d : {2.0, 6.0, 10.0, 14.0, 18.0, 22.0, 26.0})
    samples.emplace_back(d, a1 * d * d - a2 * d + a3);
  const LatencyDistanceModel model = fit_latency_distance(samples);
  if (std::abs(model.latency_s(26.0) - 13.9) / 13.9 > 0.10) {
    detail("calibration missed: L(26)=%.2f", model.latency_s(26.0));
    return false;
  }

  auto cfg = load_scenario(HETEROEDGE_DATA_DIR "/scenario_mobile.json");
  cfg.latency_model = model;
  cfg.mobility->v_primary_mps = 1.0;
  cfg.mobility->v_auxiliary_mps = 3.0;
  cfg.constraints.beta_s = 5.0;
  const RunReport report = run_scenario(cfg);

  bool halted = false;
  double first_halt_d = 0;
  bool frames_after_halt = false;
  for (const auto& b : report.batches) {
    if (b.halted && !halted) {
      halted = true;
      first_halt_d = b.distance_m;
    }
    if (halted && b.offload_count > 0) frames_after_halt = true;
  }
  detail("first halt at %.1f m, halts=%zu, frames after halt: %s", first_halt_d,
         report.halts.size(), frames_after_halt ? "yes" : "none");
  return halted && first_halt_d < 26.0 && !frames_after_halt;
}

// --- criterion 6 -----------------------------------------------------------

bool c6_compression_saving() {
  // Rectangle-mask corpus: ~72% background, textured foreground.
  std::mt19937_64 rng(606);
  const int w = 100, h = 100, frames = 200;
  const int side = 53;  // 53x53 = 28.09% coverage
  double ratio_sum = 0;
  for (int f = 0; f < frames; ++f) {
    Frame frame;
    frame.width = w;
    frame.height = h;
    frame.channels = 1;
    frame.pixels.resize(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x)
        frame.pixels[static_cast<std::size_t>(y) * w + x] =
            static_cast<std::uint8_t>(40 + 25 * ((x / 3 + y / 2 + f) % 5));

    BinaryMask mask;
    mask.width = w;
    mask.height = h;
    mask.bits.assign(static_cast<std::size_t>(w) * h, 0);
    const int x0 = static_cast<int>(rng() % (w - side + 1));
    const int y0 = static_cast<int>(rng() % (h - side + 1));
    for (int y = y0; y < y0 + side; ++y)
      for (int x = x0; x < x0 + side; ++x) mask.bits[static_cast<std::size_t>(y) * w + x] = 1;

    const MaskedFrame mf = apply_mask(frame, mask);
    ratio_sum += static_cast<double>(mf.compressed_bytes) / static_cast<double>(mf.raw_bytes);
  }
  const double mean_saving = 1.0 - ratio_sum / frames;

  // Exact round trip over 10,000 random buffers.
  std::uniform_int_distribution<int> len(0, 512), byte(0, 255), runlen(1, 60);
  int round_trips = 0;
  for (int trial = 0; trial < 10000; ++trial) {
    std::vector<std::uint8_t> buf;
    if (trial % 2 == 0) {
      const int n = len(rng);
      for (int i = 0; i < n; ++i) buf.push_back(static_cast<std::uint8_t>(byte(rng)));
    } else {
      const int n = len(rng);
      while (static_cast<int>(buf.size()) < n)
        buf.insert(buf.end(), static_cast<std::size_t>(runlen(rng)),
                   static_cast<std::uint8_t>(byte(rng)));
    }
    if (rle_decode(rle_encode(buf)) == buf) ++round_trips;
  }
  detail("mean saving %.1f%%, %d/10000 exact round trips", 100 * mean_saving, round_trips);
  return mean_saving >= 0.25 && round_trips == 10000;
}

// --- criterion 7 -----------------------------------------------------------

bool c7_solver_properties() {
  std::mt19937_64 rng(707);
  int instances = 0, grid_ok = 0, det_ok = 0, cap_ok = 0, battery_ok = 0;
  while (instances < 100) {
    const auto profile = random_profile(rng);
    CostCurves curves;
    try {
      curves = build_cost_curves(profile);
    } catch (const Error&) {
      continue;
    }
    ++instances;

    ConstraintSet caps = paper_caps();
    caps.tau_s = 1e9;
    caps.w_max_aux_w = 1e9;
    caps.w_max_pri_w = 1e9;
    caps.m_max_aux_pct = 100;
    caps.m_max_pri_pct = 100;
    const SplitDecision d = solve(Objective{curves}, caps, curves);

    // Grid-global optimality.
    bool grid_good = true;
    if (d.feasible) {
      const double best = objective_value(Objective{curves}, d.ratio);
      for (int i = 1; i <= 999 && grid_good; ++i) {
        const double r = i / 1000.0;
        if (!feasible(r, caps, curves).ok) continue;
        if (objective_value(Objective{curves}, r) < best - 1e-12) grid_good = false;
      }
    }
    grid_ok += grid_good;

    // Determinism across 10 repeated solves, bitwise.
    bool det_good = true;
    for (int k = 0; k < 10 && det_good; ++k) {
      const SplitDecision again = solve(Objective{curves}, caps, curves);
      det_good = again.ratio == d.ratio &&
                 again.predicted_total_time_s == d.predicted_total_time_s &&
                 again.predicted_energy_j == d.predicted_energy_j &&
                 again.feasible == d.feasible;
    }
    det_ok += det_good;

    // Tightening a cap never lowers the optimal objective.
    bool cap_good = true;
    if (d.feasible) {
      ConstraintSet tight = caps;
      tight.m_max_pri_pct = std::max(1.0, d.predicted_memory_pri_pct - 1.0);
      const SplitDecision d2 = solve(Objective{curves}, tight, curves);
      if (d2.feasible)
        cap_good = objective_value(Objective{curves}, d2.ratio) >=
                   objective_value(Objective{curves}, d.ratio) - 1e-12;
    }
    cap_ok += cap_good;

    // Battery gating never offloads less.
    SplitState state;
    state.curves = curves;
    state.constraints = caps;
    state.battery.discharge_rate = 0.5;
    state.battery.t_dnn_s = 500;
    state.battery.t_drive_s = 500;
    state.battery.capacity_j = 2.0 * (50.0 * 0.5 * 1000.0);  // 50 W available
    const SplitDecision ungated = select_split(state);
    state.constraints.power_floor_w = 100.0;
    const SplitDecision gated = select_split(state);
    battery_ok += gated.ratio >= ungated.ratio;
  }
  detail("of %d instances: grid %d, determinism %d, cap %d, battery %d", instances, grid_ok,
         det_ok, cap_ok, battery_ok);
  return grid_ok == instances && det_ok == instances && cap_ok == instances &&
         battery_ok == instances;
}

// --- criterion 8 -----------------------------------------------------------

bool c8_conservation_and_determinism() {
  auto cfg = load_scenario(HETEROEDGE_DATA_DIR "/scenario_static.json");
  cfg.num_batches = 3;
  cfg.batch_size = 50;
  cfg.masking_enabled = true;
  cfg.dedup_threshold = 0.97;
  cfg.frames.identical_run = 2;
  cfg.seed = 2024;

  const RunReport r1 = run_scenario(cfg);
  const RunReport r2 = run_scenario(cfg);
  const bool conserved = r1.images_local + r1.images_offloaded + r1.images_deduped ==
                         static_cast<std::uint64_t>(cfg.batch_size) * cfg.num_batches;
  const bool identical = report_to_json(r1) == report_to_json(r2);

  // Forced-ratio sweep directionality on the static scenario.
  auto sweep_cfg = load_scenario(HETEROEDGE_DATA_DIR "/scenario_static.json");
  double prev_off = -1, prev_exec = 1e18;
  bool off_nondecreasing = true, exec_nonincreasing = true;
  for (int i = 2; i <= 9; ++i) {
    auto one = sweep_cfg;
    one.force_ratio = i / 10.0;
    const RunReport r = run_scenario(one);
    const double exec = r.t_total_s - r.t_offload_s - r.t_solver_s;
    if (r.t_offload_s < prev_off - 1e-9) off_nondecreasing = false;
    if (exec > prev_exec + 1e-9) exec_nonincreasing = false;
    prev_off = r.t_offload_s;
    prev_exec = exec;
  }
  detail("conserved=%d identical=%d T3 nondecr=%d T1+T2 nonincr=%d (deduped %llu)", conserved,
         identical, off_nondecreasing, exec_nonincreasing,
         static_cast<unsigned long long>(r1.images_deduped));
  return conserved && identical && off_nondecreasing && exec_nonincreasing;
}

// --- criterion 9 -----------------------------------------------------------

bool c9_model_identities() {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> mu(1e-12, 1e-6), speed(1e3, 1e9), cyc(1.0, 1e12);
  int energy_ok = 0;
  for (int i = 0; i < 1000; ++i) {
    const CpuModel m{mu(rng), 1e9};
    const double s = speed(rng), c = cyc(rng);
    const double lhs = exec_energy(c, m, s);
    const double rhs = cpu_power(m, s) * exec_time(c, m, s);
    if (std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), std::abs(rhs))) ++energy_ok;
  }

  bool affine = true;
  for (int i = 1; i < 200 && affine; ++i) {
    const double r0 = (i - 1) / 200.0, r1 = i / 200.0, r2 = (i + 1) / 200.0;
    const auto [f0, e0] = split_exec(17.2, 66.8, 120.0, 400.0, r0);
    const auto [f1, e1] = split_exec(17.2, 66.8, 120.0, 400.0, r1);
    const auto [f2, e2] = split_exec(17.2, 66.8, 120.0, 400.0, r2);
    if (std::abs((f2 - f1) - (f1 - f0)) > 1e-9) affine = false;
    if (std::abs((e2 - e1) - (e1 - e0)) > 1e-9) affine = false;
  }

  std::uniform_real_distribution<double> bw(1e3, 1e8), snr(0.1, 1e4), dist(0.5, 50.0),
      loss(0.5, 4.0);
  bool monotone = true;
  for (int i = 0; i < 500 && monotone; ++i) {
    const LinkSpec l{bw(rng), loss(rng), snr(rng), 1.0};
    const double d = dist(rng);
    if (data_rate(l, d) < data_rate(l, d * 1.5) - 1e-9) monotone = false;
    const LinkSpec wider{l.bandwidth_hz * 2, l.path_loss_exponent, l.tx_power_w, l.noise_power_w};
    const LinkSpec hotter{l.bandwidth_hz, l.path_loss_exponent, l.tx_power_w * 2, l.noise_power_w};
    if (data_rate(wider, d) <= data_rate(l, d)) monotone = false;
    if (data_rate(hotter, d) <= data_rate(l, d)) monotone = false;
  }
  detail("energy identity %d/1000, affine=%d, shannon monotone=%d", energy_ok, affine, monotone);
  return energy_ok == 1000 && affine && monotone;
}

// --- criterion 10 ----------------------------------------------------------

bool c10_transport_equivalence() {
  auto cfg = load_scenario(HETEROEDGE_DATA_DIR "/scenario_mobile.json");
  cfg.masking_enabled = true;
  const RunReport inproc = run_scenario(cfg, TransportKind::INPROC);
  const RunReport socket = run_scenario(cfg, TransportKind::SOCKET);

  bool same = inproc.batches.size() == socket.batches.size();
  for (std::size_t i = 0; same && i < inproc.batches.size(); ++i) {
    const auto& a = inproc.batches[i];
    const auto& b = socket.batches[i];
    same = a.ratio == b.ratio && a.reason == b.reason && a.offload_count == b.offload_count &&
           a.local_count == b.local_count && a.deduped == b.deduped;
  }
  same = same && inproc.images_offloaded == socket.images_offloaded &&
         inproc.images_local == socket.images_local &&
         report_to_json(inproc) == report_to_json(socket);
  detail("batches=%zu, offloaded %llu vs %llu", inproc.batches.size(),
         static_cast<unsigned long long>(inproc.images_offloaded),
         static_cast<unsigned long long>(socket.images_offloaded));
  return same;
}

}  // namespace

int main() {
  criterion(1, "optimal split ratio in [0.60, 0.80] under the testbed caps, < 1 s",
            c1_optimal_ratio());
  criterion(2, "solved-run total time <= 55% of the all-local baseline", c2_total_time_reduction());
  criterion(3, "objective boundaries within 10% of the measured endpoints",
            c3_boundary_consistency());
  criterion(4, "memory/power vs time quadratics reach adjusted R^2 >= 0.95", c4_fit_quality());
  criterion(5, "mobile run halts before 26 m and stays local afterwards", c5_mobility_halt());
  criterion(6, "masked-corpus RLE saving >= 25% and exact round trips", c6_compression_saving());
  criterion(7, "solver optimality/determinism/monotonicity on 100 random instances",
            c7_solver_properties());
  criterion(8, "runtime conservation, byte-identical reruns, sweep directionality",
            c8_conservation_and_determinism());
  criterion(9, "energy identity, affine split, Shannon monotonicity", c9_model_identities());
  criterion(10, "inproc and socket transports decide identically", c10_transport_equivalence());

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
