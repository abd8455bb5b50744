// CLI integration: drives the heteroedge binary as a subprocess and checks
// output files and exit codes.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int failures = 0;

void check(bool ok, const std::string& what) {
  if (ok) {
    std::printf("[ OK ] %s\n", what.c_str());
  } else {
    std::printf("[FAIL] %s\n", what.c_str());
    ++failures;
  }
}

struct Outcome {
  int exit_code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const fs::path out_file = fs::temp_directory_path() / "heteroedge_cli_out.txt";
  const std::string cmd =
      std::string(HETEROEDGE_CLI) + " " + args + " > " + out_file.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  Outcome o;
  o.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(out_file);
  std::ostringstream ss;
  ss << in.rdbuf();
  o.out = ss.str();
  return o;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  const std::string data = HETEROEDGE_DATA_DIR;
  const fs::path work = fs::temp_directory_path() / "heteroedge_cli_test";
  fs::remove_all(work);
  fs::create_directories(work);

  // fit: bundled profile, writes curves JSON.
  const fs::path curves = work / "curves.json";
  auto o = run("fit --profile " + data + "/profile_testbed.csv --out " + curves.string());
  check(o.exit_code == 0, "fit exits 0 on the bundled profile");
  check(o.out.find("adjusted R^2") != std::string::npos, "fit prints adjusted R^2 per curve");
  check(fs::exists(curves), "fit writes the curves file");

  // fit: empty file is an input error (exit 2).
  const fs::path empty = work / "empty.csv";
  std::ofstream(empty).close();
  o = run("fit --profile " + empty.string());
  check(o.exit_code == 2, "fit exits 2 on an empty profile");
  check(o.out.find("no samples") != std::string::npos, "fit names the empty-input failure");

  // fit: malformed row reports its line number.
  const fs::path mangled = work / "mangled.csv";
  {
    std::ofstream f(mangled);
    f << "split_ratio,t_aux_s,p_aux_w,m_aux_pct,t_pri_s,t_off_s,p_pri_w,m_pri_pct\n";
    f << "0,0,0.95,10.2,68.34,0,5.89,69.82\n";
    f << "0.5,13.88,oops,45.61,28.35,0.89,5.63,52.54\n";
  }
  o = run("fit --profile " + mangled.string());
  check(o.exit_code == 2, "fit exits 2 on a malformed row");
  check(o.out.find("line 3") != std::string::npos, "fit reports the failing line number");

  // fit: exact quadratic reaches adjusted R^2 = 1.
  const fs::path exact = work / "exact.csv";
  {
    std::ofstream f(exact);
    f << "split_ratio,t_aux_s,p_aux_w,m_aux_pct,t_pri_s,t_off_s,p_pri_w,m_pri_pct\n";
    for (const double r : {0.0, 0.25, 0.5, 0.75, 1.0}) {
      const double x = 1 - r;
      f << r << "," << 10 * r * r + r << ",2," << 10 + 5 * r << "," << 20 * x * x + x << ","
        << 0.5 * r << ",3," << 10 + 5 * x << "\n";
    }
  }
  o = run("fit --profile " + exact.string());
  check(o.exit_code == 0, "fit exits 0 on synthetic exact data");
  check(o.out.find("1.0000") != std::string::npos, "exact fit reports adjusted R^2 = 1");

  // solve: paper-like caps give a ~0.7 ratio, exit 0.
  const fs::path caps = work / "caps.json";
  std::ofstream(caps) << R"({"tau_s":68.34,"k_devices":2,"w_max_aux_w":7,"w_max_pri_w":7,)"
                      << R"("m_max_aux_pct":65,"m_max_pri_pct":65,"beta_s":5})";
  o = run("solve --curves " + curves.string() + " --constraints " + caps.string());
  check(o.exit_code == 0, "solve exits 0 when a ratio is found");
  check(o.out.find("\"gating_reason\": \"SOLVED\"") != std::string::npos, "solve reports SOLVED");
  check(o.out.find("0.74") != std::string::npos, "solve lands near the 0.7 optimum");

  // solve: zero-ish memory caps leave nothing feasible, exit 3.
  const fs::path zero_caps = work / "caps0.json";
  std::ofstream(zero_caps) << R"({"tau_s":68.34,"k_devices":2,"w_max_aux_w":7,"w_max_pri_w":7,)"
                           << R"("m_max_aux_pct":0.5,"m_max_pri_pct":0.5,"beta_s":5})";
  o = run("solve --curves " + curves.string() + " --constraints " + zero_caps.string());
  check(o.exit_code == 3, "solve exits 3 with no feasible ratio");
  check(o.out.find("NO_FEASIBLE_RATIO") != std::string::npos, "solve names the fallback");

  // solve: measured latency above beta halts.
  o = run("solve --curves " + curves.string() + " --constraints " + caps.string() +
          " --current-latency 13.9");
  check(o.exit_code == 3, "solve exits 3 on a latency halt");
  check(o.out.find("LATENCY_HALT") != std::string::npos, "solve names the halt");

  // run: static scenario writes a report and per-batch CSV.
  o = run("run --scenario " + data + "/scenario_static.json --out " + (work / "static").string());
  check(o.exit_code == 0, "run exits 0 on the static scenario");
  check(fs::exists(work / "static/report.json"), "run writes report.json");
  check(fs::exists(work / "static/batches.csv"), "run writes batches.csv");
  const std::string batch_csv = slurp(work / "static/batches.csv");
  check(batch_csv.rfind("batch,r,t_total,t_off,e_total,m1,m2,distance,halted", 0) == 0,
        "per-batch CSV carries the documented header");

  // run: mobile scenario halts (exit 3) with strictly increasing distance.
  o = run("run --scenario " + data + "/scenario_mobile.json --out " + (work / "mobile").string());
  check(o.exit_code == 3, "mobile run exits 3 after halting");
  {
    std::ifstream csv(work / "mobile/batches.csv");
    std::string line;
    std::getline(csv, line);  // header
    double prev = -1;
    bool increasing = true;
    while (std::getline(csv, line)) {
      const auto last_comma = line.find_last_of(',');
      const auto pre = line.substr(0, last_comma);
      const double d = std::stod(pre.substr(pre.find_last_of(',') + 1));
      if (d <= prev) increasing = false;
      prev = d;
    }
    check(increasing, "mobile distance column strictly increases");
  }

  // run: forced all-local ratio.
  o = run("run --scenario " + data + "/scenario_static.json --force-ratio 0");
  check(o.exit_code == 0, "forced all-local run exits 0");
  check(o.out.find("offloaded=0") != std::string::npos, "forced r=0 offloads nothing");

  // run over the socket transport matches inproc counters.
  o = run("run --scenario " + data + "/scenario_static.json --transport socket");
  check(o.exit_code == 0, "socket run exits 0");
  check(o.out.find("offloaded=75") != std::string::npos, "socket run offloads the same count");

  // sweep: eight default ratios, summary CSV.
  o = run("sweep --scenario " + data + "/scenario_static.json --out " + (work / "sweep").string());
  check(o.exit_code == 0, "sweep exits 0");
  const std::string sweep_csv = slurp(work / "sweep/sweep.csv");
  check(std::count(sweep_csv.begin(), sweep_csv.end(), '\n') == 9, "sweep has 8 rows + header");
  check(fs::exists(work / "sweep/report_r0.7.json"), "sweep writes per-ratio reports");

  // mask: frame/mask files through the compression path.
  const fs::path frame_p = work / "frame.pgm";
  const fs::path mask_p = work / "mask.pbm";
  {
    std::ofstream f(frame_p, std::ios::binary);
    f << "P5\n8 8\n255\n";
    for (int i = 0; i < 64; ++i) f.put(static_cast<char>(200));
    std::ofstream m(mask_p, std::ios::binary);
    m << "P4\n8 8\n";
    // Top four rows masked on, bottom four off.
    for (int i = 0; i < 4; ++i) m.put(static_cast<char>(0xFF));
    for (int i = 0; i < 4; ++i) m.put(static_cast<char>(0x00));
  }
  o = run("mask --frames " + frame_p.string() + " --masks " + mask_p.string() + " --out " +
          (work / "masked").string());
  check(o.exit_code == 0, "mask exits 0");
  check(o.out.find("saving") != std::string::npos, "mask reports the saving");
  check(fs::exists(work / "masked/frame_masked.pgm"), "mask writes the masked frame");

  // Unknown input paths are input errors.
  o = run("run --scenario /nonexistent.json");
  check(o.exit_code == 2, "missing scenario file exits 2");

  std::printf("%s: %d failure(s)\n", failures == 0 ? "PASSED" : "FAILED", failures);
  return failures == 0 ? 0 : 1;
}
