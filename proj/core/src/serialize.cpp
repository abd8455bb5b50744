#include "heteroedge/serialize.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace heteroedge {

namespace {

using nlohmann::json;

json read_json(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(Errc::CONFIG_ERROR, std::string("invalid JSON in ") + what);
  return j;
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::CONFIG_ERROR, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double need_num(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw Error(Errc::CONFIG_ERROR, std::string("missing numeric field '") + key + "'");
  return j.at(key).get<double>();
}

double opt_num(const json& j, const char* key, double fallback) {
  return j.contains(key) ? j.at(key).get<double>() : fallback;
}

template <std::size_t N>
std::array<double, N> coeff_array(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != N)
    throw Error(Errc::CONFIG_ERROR,
                std::string("field '") + key + "' must be an array of " + std::to_string(N));
  std::array<double, N> out{};
  for (std::size_t i = 0; i < N; ++i) out[i] = j.at(key).at(i).get<double>();
  return out;
}

constexpr std::array<Curve, kCurveCount> kAllCurves = {
    Curve::T1, Curve::T2, Curve::T3, Curve::E1, Curve::E2, Curve::M1, Curve::M2};

json battery_to_json(const BatteryState& b) {
  return json{{"capacity_j", b.capacity_j},   {"discharge_rate", b.discharge_rate},
              {"e_dnn_j", b.e_dnn_j},         {"e_drive_j", b.e_drive_j},
              {"t_dnn_s", b.t_dnn_s},         {"t_drive_s", b.t_drive_s}};
}

BatteryState battery_from(const json& j) {
  BatteryState b;
  if (j.contains("capacity_mah")) {
    // (mAh, volts) pairs are accepted as an alternative to joules.
    b = battery_from_mah(need_num(j, "capacity_mah"), need_num(j, "pack_voltage_v"),
                         need_num(j, "discharge_rate"));
  } else {
    b.capacity_j = opt_num(j, "capacity_j", 0);
    b.discharge_rate = opt_num(j, "discharge_rate", 0);
  }
  b.e_dnn_j = opt_num(j, "e_dnn_j", 0);
  b.e_drive_j = opt_num(j, "e_drive_j", 0);
  b.t_dnn_s = opt_num(j, "t_dnn_s", 0);
  b.t_drive_s = opt_num(j, "t_drive_s", 0);
  return b;
}

ConstraintSet constraints_from(const json& j) {
  ConstraintSet c;
  c.tau_s = need_num(j, "tau_s");
  c.k_devices = static_cast<int>(opt_num(j, "k_devices", 2));
  c.p_max_w = opt_num(j, "p_max_w", 1e9);
  c.s_max_hz = opt_num(j, "s_max_hz", 1e12);
  c.w_max_aux_w = need_num(j, "w_max_aux_w");
  c.w_max_pri_w = need_num(j, "w_max_pri_w");
  c.m_max_aux_pct = need_num(j, "m_max_aux_pct");
  c.m_max_pri_pct = need_num(j, "m_max_pri_pct");
  c.beta_s = opt_num(j, "beta_s", 1e9);
  // The battery-gate floor; "e_max" is accepted as an alias.
  c.power_floor_w = opt_num(j, "power_floor_w", opt_num(j, "e_max", 0));
  return c;
}

json constraints_to(const ConstraintSet& c) {
  return json{{"tau_s", c.tau_s},
              {"k_devices", c.k_devices},
              {"p_max_w", c.p_max_w},
              {"s_max_hz", c.s_max_hz},
              {"w_max_aux_w", c.w_max_aux_w},
              {"w_max_pri_w", c.w_max_pri_w},
              {"m_max_aux_pct", c.m_max_aux_pct},
              {"m_max_pri_pct", c.m_max_pri_pct},
              {"beta_s", c.beta_s},
              {"power_floor_w", c.power_floor_w}};
}

}  // namespace

std::string curves_to_json(const CostCurves& curves) {
  json fq;
  for (const Curve c : kAllCurves)
    fq[to_string(c)] = curves.fit_quality[static_cast<std::size_t>(c)];
  const json j{{"t1_coeffs", curves.t1_coeffs}, {"t2_coeffs", curves.t2_coeffs},
               {"t3_coeffs", curves.t3_coeffs}, {"e1_coeffs", curves.e1_coeffs},
               {"e2_coeffs", curves.e2_coeffs}, {"m1_coeffs", curves.m1_coeffs},
               {"m2_coeffs", curves.m2_coeffs}, {"fit_quality", fq}};
  return j.dump(2) + "\n";
}

CostCurves curves_from_json(const std::string& text) {
  const json j = read_json(text, "curves");
  CostCurves c;
  c.t1_coeffs = coeff_array<3>(j, "t1_coeffs");
  c.t2_coeffs = coeff_array<3>(j, "t2_coeffs");
  c.t3_coeffs = coeff_array<3>(j, "t3_coeffs");
  c.e1_coeffs = coeff_array<4>(j, "e1_coeffs");
  c.e2_coeffs = coeff_array<4>(j, "e2_coeffs");
  c.m1_coeffs = coeff_array<3>(j, "m1_coeffs");
  c.m2_coeffs = coeff_array<3>(j, "m2_coeffs");
  if (j.contains("fit_quality"))
    for (const Curve cv : kAllCurves) {
      const char* name = to_string(cv);
      if (j.at("fit_quality").contains(name))
        c.fit_quality[static_cast<std::size_t>(cv)] = j.at("fit_quality").at(name).get<double>();
    }
  return c;
}

CostCurves load_curves(const std::filesystem::path& path) {
  return curves_from_json(slurp(path));
}

void save_curves(const std::filesystem::path& path, const CostCurves& curves) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::CONFIG_ERROR, "cannot write " + path.string());
  out << curves_to_json(curves);
}

std::string constraints_to_json(const ConstraintSet& c) {
  return constraints_to(c).dump(2) + "\n";
}

ConstraintSet constraints_from_json(const std::string& text) {
  return constraints_from(read_json(text, "constraints"));
}

ConstraintSet load_constraints(const std::filesystem::path& path) {
  return constraints_from_json(slurp(path));
}

std::string decision_to_json(const SplitDecision& d) {
  const json j{{"ratio", d.ratio},
               {"predicted_total_time_s", d.predicted_total_time_s},
               {"predicted_energy_j", d.predicted_energy_j},
               {"predicted_memory_aux_pct", d.predicted_memory_aux_pct},
               {"predicted_memory_pri_pct", d.predicted_memory_pri_pct},
               {"feasible", d.feasible},
               {"gating_reason", to_string(d.gating_reason)}};
  return j.dump(2) + "\n";
}

runtime::ScenarioConfig scenario_from_json(const std::string& text) {
  const json j = read_json(text, "scenario");
  runtime::ScenarioConfig c;
  const std::string mode = j.value("mode", "STATIC");
  if (mode == "STATIC")
    c.mode = runtime::ScenarioMode::STATIC;
  else if (mode == "MOBILE")
    c.mode = runtime::ScenarioMode::MOBILE;
  else
    throw Error(Errc::CONFIG_ERROR, "mode must be STATIC or MOBILE");

  c.batch_size = static_cast<int>(opt_num(j, "batch_size", 100));
  c.num_batches = static_cast<int>(opt_num(j, "num_batches", 1));
  c.bytes_per_image = opt_num(j, "bytes_per_image", 80000);

  if (j.contains("link")) {
    const json& l = j.at("link");
    LinkSpec link;
    link.bandwidth_hz = need_num(l, "bandwidth_hz");
    link.path_loss_exponent = opt_num(l, "path_loss_exponent", 0);
    link.tx_power_w = need_num(l, "tx_power_w");
    link.noise_power_w = need_num(l, "noise_power_w");
    c.link = link;
  }
  c.static_distance_m = opt_num(j, "static_distance_m", 4.0);
  if (j.contains("latency_model")) {
    const json& l = j.at("latency_model");
    c.latency_model = LatencyDistanceModel{need_num(l, "a1"), need_num(l, "a2"), need_num(l, "a3")};
  }
  if (j.contains("mobility")) {
    const json& m = j.at("mobility");
    MobilityState mob;
    mob.v_primary_mps = need_num(m, "v_primary_mps");
    mob.v_auxiliary_mps = need_num(m, "v_auxiliary_mps");
    mob.initial_distance_m = opt_num(m, "initial_distance_m", 0);
    c.mobility = mob;
  }
  if (!j.contains("constraints")) throw Error(Errc::CONFIG_ERROR, "missing 'constraints'");
  c.constraints = constraints_from(j.at("constraints"));
  if (j.contains("battery")) c.battery = battery_from(j.at("battery"));
  c.profile_source = j.value("profile_source", "");
  c.masking_enabled = j.value("masking_enabled", false);
  c.dedup_threshold = opt_num(j, "dedup_threshold", 0);
  c.seed = j.value("seed", std::uint64_t{0});
  c.lambda_threshold = opt_num(j, "lambda_threshold", 0.2);
  c.battery_aggressiveness = opt_num(j, "battery_aggressiveness", 1.5);
  c.free_memory_aux_pct = opt_num(j, "free_memory_aux_pct", 100);
  c.free_memory_pri_pct = opt_num(j, "free_memory_pri_pct", 100);
  c.solver_time_s = opt_num(j, "solver_time_s", 0);
  c.solver_power_w = opt_num(j, "solver_power_w", 0);
  c.detector_latency_per_image_s = opt_num(j, "detector_latency_per_image_s", 0.0035);
  c.comms_power_w = opt_num(j, "comms_power_w", 0);
  c.profile_batch_size = opt_num(j, "profile_batch_size", 100);
  if (j.contains("frames")) {
    const json& f = j.at("frames");
    c.frames.width = static_cast<int>(opt_num(f, "width", 64));
    c.frames.height = static_cast<int>(opt_num(f, "height", 64));
    c.frames.channels = static_cast<int>(opt_num(f, "channels", 1));
    c.frames.mask_coverage = opt_num(f, "mask_coverage", 0.28);
    c.frames.identical_run = static_cast<int>(opt_num(f, "identical_run", 1));
  }
  if (j.contains("force_ratio")) c.force_ratio = need_num(j, "force_ratio");
  return c;
}

runtime::ScenarioConfig load_scenario(const std::filesystem::path& path) {
  try {
    runtime::ScenarioConfig cfg = scenario_from_json(slurp(path));
    // A relative profile path resolves against the scenario file's directory.
    if (!cfg.profile_source.empty()) {
      const std::filesystem::path p = cfg.profile_source;
      if (p.is_relative()) cfg.profile_source = (path.parent_path() / p).string();
    }
    return cfg;
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

std::string scenario_to_json(const runtime::ScenarioConfig& c) {
  json j;
  j["mode"] = c.mode == runtime::ScenarioMode::STATIC ? "STATIC" : "MOBILE";
  j["batch_size"] = c.batch_size;
  j["num_batches"] = c.num_batches;
  j["bytes_per_image"] = c.bytes_per_image;
  if (c.link)
    j["link"] = json{{"bandwidth_hz", c.link->bandwidth_hz},
                     {"path_loss_exponent", c.link->path_loss_exponent},
                     {"tx_power_w", c.link->tx_power_w},
                     {"noise_power_w", c.link->noise_power_w}};
  j["static_distance_m"] = c.static_distance_m;
  if (c.latency_model)
    j["latency_model"] =
        json{{"a1", c.latency_model->a1}, {"a2", c.latency_model->a2}, {"a3", c.latency_model->a3}};
  if (c.mobility)
    j["mobility"] = json{{"v_primary_mps", c.mobility->v_primary_mps},
                         {"v_auxiliary_mps", c.mobility->v_auxiliary_mps},
                         {"initial_distance_m", c.mobility->initial_distance_m}};
  j["constraints"] = constraints_to(c.constraints);
  j["battery"] = battery_to_json(c.battery);
  j["profile_source"] = c.profile_source;
  j["masking_enabled"] = c.masking_enabled;
  j["dedup_threshold"] = c.dedup_threshold;
  j["seed"] = c.seed;
  j["lambda_threshold"] = c.lambda_threshold;
  j["battery_aggressiveness"] = c.battery_aggressiveness;
  j["free_memory_aux_pct"] = c.free_memory_aux_pct;
  j["free_memory_pri_pct"] = c.free_memory_pri_pct;
  j["solver_time_s"] = c.solver_time_s;
  j["solver_power_w"] = c.solver_power_w;
  j["detector_latency_per_image_s"] = c.detector_latency_per_image_s;
  j["comms_power_w"] = c.comms_power_w;
  j["profile_batch_size"] = c.profile_batch_size;
  j["frames"] = json{{"width", c.frames.width},
                     {"height", c.frames.height},
                     {"channels", c.frames.channels},
                     {"mask_coverage", c.frames.mask_coverage},
                     {"identical_run", c.frames.identical_run}};
  if (c.force_ratio) j["force_ratio"] = *c.force_ratio;
  return j.dump(2) + "\n";
}

std::string report_to_json(const runtime::RunReport& r) {
  json halts = json::array();
  for (const auto& h : r.halts)
    halts.push_back(json{{"time_s", h.time_s}, {"reason", to_string(h.reason)}});
  json batches = json::array();
  for (const auto& b : r.batches)
    batches.push_back(json{{"batch", b.batch},
                           {"ratio", b.ratio},
                           {"reason", to_string(b.reason)},
                           {"deduped", b.deduped},
                           {"local_count", b.local_count},
                           {"offload_count", b.offload_count},
                           {"t_pri_s", b.t_pri_s},
                           {"t_aux_s", b.t_aux_s},
                           {"t_off_s", b.t_off_s},
                           {"t_total_s", b.t_total_s},
                           {"e_total_j", b.e_total_j},
                           {"m_aux_pct", b.m_aux_pct},
                           {"m_pri_pct", b.m_pri_pct},
                           {"distance_m", b.distance_m},
                           {"halted", b.halted}});
  const json j{{"split_ratio_used", r.split_ratio_used},
               {"images_local", r.images_local},
               {"images_offloaded", r.images_offloaded},
               {"images_deduped", r.images_deduped},
               {"t_total_s", r.t_total_s},
               {"t_offload_s", r.t_offload_s},
               {"t_solver_s", r.t_solver_s},
               {"e_total_j", r.e_total_j},
               {"m_peak_aux_pct", r.m_peak_aux_pct},
               {"m_peak_pri_pct", r.m_peak_pri_pct},
               {"halts", halts},
               {"batches", batches}};
  return j.dump(2) + "\n";
}

std::string report_batches_csv(const runtime::RunReport& r) {
  // %.17g keeps the emit->ingest round trip lossless for doubles.
  std::string out = "batch,r,t_total,t_off,e_total,m1,m2,distance,halted\n";
  char buf[400];
  for (const auto& b : r.batches) {
    std::snprintf(buf, sizeof(buf), "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%d\n",
                  b.batch, b.ratio, b.t_total_s, b.t_off_s, b.e_total_j, b.m_aux_pct,
                  b.m_pri_pct, b.distance_m, b.halted ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace heteroedge
