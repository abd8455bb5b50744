// Operator entry point: fit cost curves from profile CSVs, solve for split
// ratios, run static/mobile scenarios, sweep forced ratios, and apply masks
// to image files.
//
// Exit codes: 0 success, 2 input error, 3 no-feasible/halt fallback,
// 4 transport error.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "heteroedge/error.hpp"
#include "heteroedge/fit.hpp"
#include "heteroedge/image_io.hpp"
#include "heteroedge/log.hpp"
#include "heteroedge/profile_csv.hpp"
#include "heteroedge/runtime/scenario.hpp"
#include "heteroedge/serialize.hpp"
#include "heteroedge/solver.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFallback = 3;
constexpr int kExitTransport = 4;

using heteroedge::Curve;

void print_curves(const heteroedge::CostCurves& curves) {
  const auto line = [&](Curve c, std::span<const double> coeffs, const char* var) {
    std::printf("%-3s (%s): [", heteroedge::to_string(c), var);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      std::printf("%s%.6g", i ? ", " : "", coeffs[i]);
    std::printf("]  adjusted R^2 = %.4f\n",
                curves.fit_quality[static_cast<std::size_t>(c)]);
  };
  line(Curve::T1, curves.t1_coeffs, "r");
  line(Curve::T2, curves.t2_coeffs, "1-r");
  line(Curve::T3, curves.t3_coeffs, "r");
  line(Curve::E1, curves.e1_coeffs, "r");
  line(Curve::E2, curves.e2_coeffs, "1-r");
  line(Curve::M1, curves.m1_coeffs, "r");
  line(Curve::M2, curves.m2_coeffs, "1-r");
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw heteroedge::Error(heteroedge::Errc::CONFIG_ERROR, "cannot write " + path.string());
  out << text;
}

int cmd_fit(const std::string& profile, const std::string& out_path) {
  const auto samples = heteroedge::load_profile_csv(profile);
  const auto curves = heteroedge::build_cost_curves(samples);
  std::printf("fitted %zu samples from %s\n", samples.size(), profile.c_str());
  print_curves(curves);
  if (!out_path.empty()) {
    heteroedge::save_curves(out_path, curves);
    std::printf("curves written to %s\n", out_path.c_str());
  }
  return kExitOk;
}

int cmd_solve(const std::string& curves_path, const std::string& constraints_path,
              double current_latency, double available_power) {
  const auto curves = heteroedge::load_curves(curves_path);
  const auto constraints = heteroedge::load_constraints(constraints_path);
  if (auto err = heteroedge::validate(constraints)) throw *err;

  heteroedge::SplitDecision d;
  if (current_latency >= constraints.beta_s) {
    heteroedge::SplitState state;
    state.curves = curves;
    state.constraints = constraints;
    state.current_latency_s = current_latency;
    // Gates other than latency are neutral here; battery data comes from
    // scenarios, not the standalone solve command.
    state.battery.capacity_j = 1;
    state.battery.t_dnn_s = 1;
    d = heteroedge::select_split(state);
  } else {
    d = heteroedge::solve(heteroedge::Objective{curves}, constraints, curves,
                          available_power > 0 ? available_power
                                              : std::numeric_limits<double>::infinity());
  }
  std::cout << heteroedge::decision_to_json(d);
  return d.gating_reason == heteroedge::GatingReason::SOLVED ? kExitOk : kExitFallback;
}

heteroedge::runtime::TransportKind parse_transport(const std::string& name) {
  if (name == "inproc") return heteroedge::runtime::TransportKind::INPROC;
  if (name == "socket") return heteroedge::runtime::TransportKind::SOCKET;
  throw heteroedge::Error(heteroedge::Errc::CONFIG_ERROR, "transport must be inproc or socket");
}

int run_one(heteroedge::runtime::ScenarioConfig cfg, const std::string& transport,
            const std::string& out_dir, const std::string& tag) {
  const auto t_begin = std::chrono::steady_clock::now();
  const auto report = heteroedge::runtime::run_scenario(cfg, parse_transport(transport));
  const double wall_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  HETEROEDGE_LOG_INFO("run", tag, " wall time ", wall_s, " s");

  std::printf("split_ratio_used=%.4g t_total=%.4g s t_offload=%.4g s e_total=%.4g J "
              "local=%llu offloaded=%llu deduped=%llu halts=%zu\n",
              report.split_ratio_used, report.t_total_s, report.t_offload_s, report.e_total_j,
              static_cast<unsigned long long>(report.images_local),
              static_cast<unsigned long long>(report.images_offloaded),
              static_cast<unsigned long long>(report.images_deduped), report.halts.size());
  // Derived per-image figure; per-batch seconds in the report are the
  // primary measurement, this is a convenience conversion.
  const auto processed = report.images_local + report.images_offloaded;
  if (processed > 0)
    std::printf("derived ms/image=%.3f over %llu processed images\n",
                1000.0 * report.t_total_s / static_cast<double>(processed),
                static_cast<unsigned long long>(processed));
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    const auto base = std::filesystem::path(out_dir);
    write_text(base / ("report" + tag + ".json"), heteroedge::report_to_json(report));
    write_text(base / ("batches" + tag + ".csv"), heteroedge::report_batches_csv(report));
    std::printf("report written to %s\n", (base / ("report" + tag + ".json")).c_str());
  }
  return report.halts.empty() ? kExitOk : kExitFallback;
}

int cmd_run(const std::string& scenario_path, const std::string& transport,
            const std::string& out_dir, double force_ratio, bool force_set,
            std::uint64_t seed, bool seed_set) {
  auto cfg = heteroedge::load_scenario(scenario_path);
  if (force_set) cfg.force_ratio = force_ratio;
  if (seed_set) cfg.seed = seed;
  return run_one(std::move(cfg), transport, out_dir, "");
}

int cmd_sweep(const std::string& scenario_path, const std::string& transport,
              const std::string& out_dir, std::vector<double> ratios) {
  if (ratios.empty())
    for (int i = 2; i <= 9; ++i) ratios.push_back(i / 10.0);
  auto cfg = heteroedge::load_scenario(scenario_path);

  std::string summary = "r,t_total,t_off,t_pri_plus_aux,e_total,m1_peak,m2_peak\n";
  int rc = kExitOk;
  for (const double r : ratios) {
    auto one = cfg;
    one.force_ratio = r;
    char tag[32];
    std::snprintf(tag, sizeof(tag), "_r%.3g", r);
    rc = std::max(rc, run_one(one, transport, out_dir, tag));
    const auto report = heteroedge::runtime::run_scenario(one, parse_transport(transport));
    char buf[256];
    std::snprintf(buf, sizeof(buf), "%.3g,%.9g,%.9g,%.9g,%.9g,%.9g,%.9g\n", r, report.t_total_s,
                  report.t_offload_s, report.t_total_s - report.t_offload_s - report.t_solver_s,
                  report.e_total_j, report.m_peak_aux_pct, report.m_peak_pri_pct);
    summary += buf;
  }
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    write_text(std::filesystem::path(out_dir) / "sweep.csv", summary);
    std::printf("sweep written to %s/sweep.csv\n", out_dir.c_str());
  } else {
    std::fputs(summary.c_str(), stdout);
  }
  return rc;
}

int cmd_mask(const std::vector<std::string>& frame_paths,
             const std::vector<std::string>& mask_paths, const std::string& out_dir) {
  if (frame_paths.size() != mask_paths.size())
    throw heteroedge::Error(heteroedge::Errc::CONFIG_ERROR,
                            "need one mask per frame (counts differ)");
  double ratio_sum = 0;
  for (std::size_t i = 0; i < frame_paths.size(); ++i) {
    const auto frame = heteroedge::load_frame(frame_paths[i]);
    const auto mask = heteroedge::load_mask(mask_paths[i]);
    const auto masked = heteroedge::apply_mask(frame, mask);
    const double ratio =
        static_cast<double>(masked.compressed_bytes) / static_cast<double>(masked.raw_bytes);
    ratio_sum += ratio;
    std::printf("%s: raw=%zu B rle=%zu B (%.1f%% of raw)\n", frame_paths[i].c_str(),
                masked.raw_bytes, masked.compressed_bytes, 100.0 * ratio);
    if (!out_dir.empty()) {
      std::filesystem::create_directories(out_dir);
      const auto stem = std::filesystem::path(frame_paths[i]).stem().string();
      heteroedge::save_frame(std::filesystem::path(out_dir) / (stem + "_masked.pgm"),
                             masked.frame);
    }
  }
  std::printf("mean compressed size: %.1f%% of raw (%.1f%% saving)\n",
              100.0 * ratio_sum / frame_paths.size(),
              100.0 * (1.0 - ratio_sum / frame_paths.size()));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heteroedge: split-ratio offload planning over profiled cost curves"};
  app.require_subcommand(1);

  std::string profile, curves_path, constraints_path, scenario_path;
  std::string out_path, transport = "inproc";
  double force_ratio = 0, current_latency = 0, available_power = 0;
  std::uint64_t seed = 0;
  std::vector<double> ratios;
  std::vector<std::string> frame_paths, mask_paths;

  auto* fit = app.add_subcommand("fit", "fit cost curves from a profile CSV");
  fit->add_option("--profile", profile, "profile CSV path")->required();
  fit->add_option("--out", out_path, "write curves JSON here");

  auto* solve = app.add_subcommand("solve", "solve the split ratio for fitted curves");
  solve->add_option("--curves", curves_path, "curves JSON path")->required();
  solve->add_option("--constraints", constraints_path, "constraints JSON path")->required();
  solve->add_option("--current-latency", current_latency, "measured offload latency (s)");
  solve->add_option("--available-power", available_power, "available battery power (W)");

  auto* run = app.add_subcommand("run", "run a scenario end to end");
  run->add_option("--scenario", scenario_path, "scenario JSON path")->required();
  run->add_option("--transport", transport, "inproc|socket")
      ->check(CLI::IsMember({"inproc", "socket"}));
  run->add_option("--out", out_path, "output directory");
  auto* force_opt = run->add_option("--force-ratio", force_ratio, "bypass the solver");
  auto* seed_opt = run->add_option("--seed", seed, "override scenario seed");

  auto* sweep = app.add_subcommand("sweep", "run a forced-ratio sweep");
  sweep->add_option("--scenario", scenario_path, "scenario JSON path")->required();
  sweep->add_option("--transport", transport, "inproc|socket")
      ->check(CLI::IsMember({"inproc", "socket"}));
  sweep->add_option("--out", out_path, "output directory");
  sweep->add_option("--ratios", ratios, "ratios to force (default 0.2..0.9)");

  auto* mask = app.add_subcommand("mask", "apply masks to frames, report compression");
  mask->add_option("--frames", frame_paths, "PGM/PPM frame paths")->required();
  mask->add_option("--masks", mask_paths, "PBM mask paths")->required();
  mask->add_option("--out", out_path, "output directory for masked frames");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*fit) return cmd_fit(profile, out_path);
    if (*solve) return cmd_solve(curves_path, constraints_path, current_latency, available_power);
    if (*run)
      return cmd_run(scenario_path, transport, out_path, force_ratio, !force_opt->empty(), seed,
                     !seed_opt->empty());
    if (*sweep) return cmd_sweep(scenario_path, transport, out_path, ratios);
    if (*mask) return cmd_mask(frame_paths, mask_paths, out_path);
  } catch (const heteroedge::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case heteroedge::Errc::TRANSPORT_DOWN:
      case heteroedge::Errc::BACKPRESSURE:
        return kExitTransport;
      default:
        return kExitInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
