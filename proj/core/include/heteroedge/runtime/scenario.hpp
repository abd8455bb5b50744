#pragma once

#include <optional>
#include <string>
#include <vector>

#include "heteroedge/compression.hpp"
#include "heteroedge/netmodel.hpp"
#include "heteroedge/runtime/transport.hpp"
#include "heteroedge/types.hpp"

namespace heteroedge::runtime {

enum class ScenarioMode { STATIC, MOBILE };
enum class TransportKind { INPROC, SOCKET };

// Deterministic synthetic frame source. Frames are flat gradients keyed by
// a phase counter; identical_run > 1 repeats each phase so dedup has work.
struct SyntheticFrames {
  int width = 64;
  int height = 64;
  int channels = 1;
  double mask_coverage = 0.28;  // object-rectangle share of each mask
  int identical_run = 1;
};

struct ScenarioConfig {
  ScenarioMode mode = ScenarioMode::STATIC;
  int batch_size = 100;
  int num_batches = 1;
  double bytes_per_image = 80000;

  std::optional<LinkSpec> link;  // STATIC latency source
  double static_distance_m = 4.0;
  std::optional<LatencyDistanceModel> latency_model;  // MOBILE latency source
  std::optional<MobilityState> mobility;

  ConstraintSet constraints;
  BatteryState battery;
  std::string profile_source;
  bool masking_enabled = false;
  double dedup_threshold = 0;  // 0 disables dedup
  std::uint64_t seed = 0;

  double lambda_threshold = 0.2;
  double battery_aggressiveness = 1.5;
  double free_memory_aux_pct = 100;
  double free_memory_pri_pct = 100;

  double solver_time_s = 0;    // modeled T_s per batch
  double solver_power_w = 0;   // P_k for E_s = P_k * T_s
  double detector_latency_per_image_s = 0.0035;  // mask generation overhead
  double comms_power_w = 0;    // summed sender+receiver power for E_o
  double profile_batch_size = 100;  // images per batch in the profile rows

  SyntheticFrames frames;
  std::optional<double> force_ratio;  // bypass gating and solving
};

std::optional<Error> validate(const ScenarioConfig& c);

struct BatchRecord {
  int batch = 0;
  double ratio = 0;
  GatingReason reason = GatingReason::SOLVED;
  int deduped = 0;
  int local_count = 0;
  int offload_count = 0;
  double t_pri_s = 0;  // primary busy time incl. detector overhead
  double t_aux_s = 0;
  double t_off_s = 0;
  double t_total_s = 0;  // t_solver + t_pri + t_aux + t_off
  double e_total_j = 0;
  double m_aux_pct = 0;
  double m_pri_pct = 0;
  double distance_m = 0;
  bool halted = false;
};

struct HaltEvent {
  double time_s = 0;
  GatingReason reason = GatingReason::LATENCY_HALT;
};

struct RunReport {
  double split_ratio_used = 0;  // ratio of the first non-halted batch
  std::uint64_t images_local = 0;
  std::uint64_t images_offloaded = 0;  // counted from RESULT messages
  std::uint64_t images_deduped = 0;
  double t_total_s = 0;
  double t_offload_s = 0;
  double t_solver_s = 0;
  double e_total_j = 0;
  double m_peak_aux_pct = 0;
  double m_peak_pri_pct = 0;
  std::vector<HaltEvent> halts;
  std::vector<BatchRecord> batches;
};

// Partition of one batch; the first round(r*N) frames offload (round half
// to even), order preserved.
struct SplitBatches {
  std::vector<Frame> local;
  std::vector<Frame> offload;
};
SplitBatches split_batch(std::vector<Frame> frames, double r);
int offload_count(int batch_size, double r);

// Execute a full scenario: load profile, fit curves, then per batch
// dedup -> mask -> gated solve -> split -> offload over the transport ->
// collect results -> account model times/energies on the virtual clock.
// With a fixed seed the in-process run is fully deterministic.
RunReport run_scenario(const ScenarioConfig& config,
                       TransportKind transport = TransportKind::INPROC);

// Deterministic synthetic frame generator (exposed for tests and the CLI).
Frame synth_frame(const SyntheticFrames& spec, std::uint64_t global_index);
BinaryMask synth_mask(const SyntheticFrames& spec, std::uint64_t global_index,
                      std::uint64_t seed);

}  // namespace heteroedge::runtime
