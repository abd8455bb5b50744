#include "heteroedge/runtime/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <thread>

#include "heteroedge/energy.hpp"
#include "heteroedge/fit.hpp"
#include "heteroedge/image_io.hpp"
#include "heteroedge/log.hpp"
#include "heteroedge/profile_csv.hpp"
#include "heteroedge/runtime/socket_transport.hpp"
#include "heteroedge/runtime/wire.hpp"
#include "heteroedge/solver.hpp"

namespace heteroedge::runtime {

namespace {

constexpr double kSocketAwaitTimeoutS = 30.0;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

int round_half_even(double x) {
  const double floor_x = std::floor(x);
  const double frac = x - floor_x;
  if (frac > 0.5) return static_cast<int>(floor_x) + 1;
  if (frac < 0.5) return static_cast<int>(floor_x);
  const auto lo = static_cast<long long>(floor_x);
  return static_cast<int>(lo % 2 == 0 ? lo : lo + 1);
}

// Auxiliary node logic: count each received frame batch, answer with a
// RESULT. Transport-agnostic; the inproc driver pumps it inline while the
// socket runner gives it a thread.
class AuxLogic {
 public:
  AuxLogic(Transport& t, int batch_size) : transport_(t), batch_size_(batch_size) {}

  void on_frames(const Message& m) {
    const auto entries = decode_frame_batch(m.payload);
    ResultInfo info;
    info.processed = static_cast<std::uint32_t>(entries.size());
    std::uint64_t bytes = 0;
    for (const auto& e : entries) bytes += e.bytes.size();
    info.bytes_received = bytes;
    info.batch_index = entries.empty()
                           ? 0
                           : static_cast<std::uint32_t>(entries.front().id /
                                                        static_cast<std::uint64_t>(batch_size_));
    Message reply;
    reply.topic = kTopicResults;
    reply.kind = MessageKind::RESULT;
    reply.payload = encode_result(info);
    transport_.publish(std::move(reply));
  }

 private:
  Transport& transport_;
  int batch_size_;
};

struct Endpoints {
  VirtualClock clock;
  double frame_latency_hint = 0;  // inproc delivery latency for FRAME_BATCH

  Transport* primary = nullptr;
  std::shared_ptr<Subscription> results;
  std::function<void()> pump_aux;                        // inproc only
  std::function<std::optional<Message>()> take_result;   // non-blocking
  std::function<std::optional<Message>()> await_result;  // end-of-run drain
};

SplitDecision forced_decision(const CostCurves& curves, const ConstraintSet& constraints,
                              double ratio) {
  SplitDecision d;
  d.ratio = ratio;
  d.gating_reason = GatingReason::SOLVED;
  d.feasible = feasible(ratio, constraints, curves).ok;
  d.predicted_total_time_s = objective_value(Objective{curves}, ratio);
  d.predicted_energy_j = ratio * predict(curves, Curve::E1, ratio).value +
                         (1.0 - ratio) * predict(curves, Curve::E2, ratio).value;
  d.predicted_memory_aux_pct = predict(curves, Curve::M1, ratio).value;
  d.predicted_memory_pri_pct = predict(curves, Curve::M2, ratio).value;
  return d;
}

bool is_halt(GatingReason g) {
  return g == GatingReason::LATENCY_HALT || g == GatingReason::MEMORY_GATE ||
         g == GatingReason::NO_FEASIBLE_RATIO;
}

RunReport drive_primary(const ScenarioConfig& cfg, const CostCurves& curves, Endpoints& ep) {
  RunReport report;
  const double scale_norm = 1.0 / cfg.profile_batch_size;

  // Offloaded batches are pipelined: the primary fires the next batch as
  // soon as its own share is done and collects RESULTs as they arrive.
  std::deque<int> awaiting;
  std::uint64_t last_result_seq = 0;
  bool seen_result = false;
  const auto accept = [&](const Message& res) {
    if (seen_result && res.sequence == last_result_seq) return;  // duplicate
    seen_result = true;
    last_result_seq = res.sequence;
    const ResultInfo info = decode_result(res.payload);
    if (awaiting.empty() || static_cast<int>(info.batch_index) != awaiting.front())
      throw Error(Errc::TRANSPORT_DOWN, "RESULT for unexpected batch");
    awaiting.pop_front();
    report.images_offloaded += info.processed;
  };
  const auto drain_available = [&] {
    if (ep.pump_aux) ep.pump_aux();
    while (!awaiting.empty()) {
      const auto res = ep.take_result();
      if (!res) break;
      accept(*res);
    }
  };

  for (int b = 0; b < cfg.num_batches; ++b) {
    const double t0 = ep.clock.now();
    BatchRecord rec;
    rec.batch = b;

    double distance = cfg.static_distance_m;
    if (cfg.mode == ScenarioMode::MOBILE) {
      MobilityState mob = *cfg.mobility;
      mob.elapsed_s = t0;
      distance = distance_at(mob);
    }
    rec.distance_m = distance;

    // Frame acquisition and dedup.
    std::vector<Frame> frames;
    frames.reserve(static_cast<std::size_t>(cfg.batch_size));
    for (int i = 0; i < cfg.batch_size; ++i)
      frames.push_back(synth_frame(cfg.frames, static_cast<std::uint64_t>(b) * cfg.batch_size + i));
    std::vector<Frame> kept;
    if (cfg.dedup_threshold > 0) {
      DedupResult dd = dedup_stream(frames, cfg.dedup_threshold);
      kept = std::move(dd.kept);
      rec.deduped = static_cast<int>(dd.dropped);
    } else {
      kept = std::move(frames);
    }
    const int kept_n = static_cast<int>(kept.size());

    // Masking: wire bytes per frame plus detector overhead on the primary.
    // Byte accounting is normalized to the configured image size; the
    // synthetic raster only sets the compression ratio.
    std::vector<FrameEntry> entries(static_cast<std::size_t>(kept_n));
    std::vector<double> nominal_bytes(static_cast<std::size_t>(kept_n), cfg.bytes_per_image);
    double t_detect = 0;
    for (int i = 0; i < kept_n; ++i) {
      auto& e = entries[static_cast<std::size_t>(i)];
      e.id = static_cast<std::uint64_t>(b) * cfg.batch_size + static_cast<std::uint64_t>(i);
      if (cfg.masking_enabled) {
        const BinaryMask mask = synth_mask(cfg.frames, e.id, cfg.seed);
        MaskedFrame mf = apply_mask(kept[static_cast<std::size_t>(i)], mask);
        nominal_bytes[static_cast<std::size_t>(i)] =
            cfg.bytes_per_image * static_cast<double>(mf.compressed_bytes) /
            static_cast<double>(mf.raw_bytes);
        e.rle = true;
        e.bytes = std::move(mf.rle_payload);
      } else {
        e.rle = false;
        e.bytes = frame_to_bytes(kept[static_cast<std::size_t>(i)]);
      }
    }
    if (cfg.masking_enabled) t_detect = cfg.detector_latency_per_image_s * kept_n;

    // Latency the gate sees: the full remaining batch in the static case,
    // the distance model in the mobile case.
    double gate_latency = 0;
    if (cfg.mode == ScenarioMode::STATIC) {
      const double rate = data_rate(*cfg.link, distance);
      double all_bits = 0;
      for (const double nb : nominal_bytes) all_bits += nb * 8.0;
      gate_latency = offload_latency(all_bits, rate);
    } else {
      gate_latency = std::max(cfg.latency_model->latency_s(distance), 0.0);
    }

    SplitDecision decision;
    if (cfg.force_ratio) {
      decision = forced_decision(curves, cfg.constraints, *cfg.force_ratio);
    } else {
      SplitState state;
      state.curves = curves;
      state.constraints = cfg.constraints;
      state.current_latency_s = gate_latency;
      state.battery = cfg.battery;
      state.free_memory_aux_pct = cfg.free_memory_aux_pct;
      state.free_memory_pri_pct = cfg.free_memory_pri_pct;
      state.lambda_threshold = cfg.lambda_threshold;
      state.battery_aggressiveness = cfg.battery_aggressiveness;
      decision = select_split(state);
    }
    rec.ratio = decision.ratio;
    rec.reason = decision.gating_reason;
    rec.halted = is_halt(decision.gating_reason);
    if (rec.halted) report.halts.push_back({t0, decision.gating_reason});

    const int k_off = offload_count(kept_n, decision.ratio);
    rec.offload_count = k_off;
    rec.local_count = kept_n - k_off;
    const double r_eff = kept_n > 0 ? static_cast<double>(k_off) / kept_n : 0.0;
    const double scale = kept_n * scale_norm;

    const double t_pri_exec = scale * predict(curves, Curve::T2, r_eff).value;
    const double t_aux = k_off > 0 ? scale * predict(curves, Curve::T1, r_eff).value : 0.0;
    double t_off = 0;
    if (k_off > 0) {
      if (cfg.mode == ScenarioMode::STATIC) {
        double bits = 0;
        for (int i = 0; i < k_off; ++i) bits += nominal_bytes[static_cast<std::size_t>(i)] * 8.0;
        t_off = offload_latency(bits, data_rate(*cfg.link, distance));
      } else {
        t_off = std::max(cfg.latency_model->latency_s(distance), 0.0);
      }
    }
    const double ts = cfg.solver_time_s;

    ep.clock.advance(t_detect + ts);

    if (k_off > 0) {
      Message m;
      m.topic = kTopicFrames;
      m.kind = MessageKind::FRAME_BATCH;
      m.payload = encode_frame_batch(std::span(entries).first(static_cast<std::size_t>(k_off)));
      ep.frame_latency_hint = t_off;
      ep.primary->publish(std::move(m));
      awaiting.push_back(b);
    }

    ep.clock.advance(t_pri_exec);
    drain_available();

    const double e_exec = scale * (r_eff * predict(curves, Curve::E1, r_eff).value +
                                   (1.0 - r_eff) * predict(curves, Curve::E2, r_eff).value);
    const double e_solver = cfg.solver_power_w * ts;
    const double e_off = t_off > 0 && cfg.comms_power_w > 0
                             ? offload_energy(t_off, std::array{cfg.comms_power_w})
                             : 0.0;

    rec.t_pri_s = t_detect + t_pri_exec;
    rec.t_aux_s = t_aux;
    rec.t_off_s = t_off;
    rec.t_total_s = total_latency(rec.t_pri_s + rec.t_aux_s, t_off, ts);
    rec.e_total_j = total_energy(e_exec, e_solver, e_off);
    rec.m_aux_pct = predict(curves, Curve::M1, r_eff).value;
    rec.m_pri_pct = predict(curves, Curve::M2, r_eff).value;

    report.images_local += static_cast<std::uint64_t>(rec.local_count);
    report.images_deduped += static_cast<std::uint64_t>(rec.deduped);
    report.t_total_s += rec.t_total_s;
    report.t_offload_s += t_off;
    report.t_solver_s += ts;
    report.e_total_j += rec.e_total_j;
    report.m_peak_aux_pct = std::max(report.m_peak_aux_pct, rec.m_aux_pct);
    report.m_peak_pri_pct = std::max(report.m_peak_pri_pct, rec.m_pri_pct);
    report.batches.push_back(rec);

    HETEROEDGE_LOG_DEBUG("batch ", b, ": r=", rec.ratio, " reason=", to_string(rec.reason),
                         " t_total=", rec.t_total_s, " d=", distance);
  }

  // Let the pipeline tail finish: collect every outstanding RESULT.
  while (!awaiting.empty()) {
    const auto res = ep.await_result();
    if (!res) throw Error(Errc::TRANSPORT_DOWN, "missing RESULT for batch " +
                                                    std::to_string(awaiting.front()));
    accept(*res);
  }

  for (const auto& rec : report.batches) {
    if (!rec.halted) {
      report.split_ratio_used = rec.ratio;
      break;
    }
  }
  return report;
}

}  // namespace

std::optional<Error> validate(const ScenarioConfig& c) {
  const auto cfg_err = [](const std::string& what) {
    return Error(Errc::CONFIG_ERROR, what);
  };
  if (c.batch_size <= 0) return cfg_err("batch_size must be > 0");
  if (c.num_batches <= 0) return cfg_err("num_batches must be > 0");
  if (!(c.bytes_per_image > 0)) return cfg_err("bytes_per_image must be > 0");
  if (!(c.profile_batch_size > 0)) return cfg_err("profile_batch_size must be > 0");
  if (c.dedup_threshold < 0 || c.dedup_threshold > 1) return cfg_err("dedup_threshold outside [0,1]");
  if (c.force_ratio && (*c.force_ratio < 0 || *c.force_ratio > 1))
    return cfg_err("force_ratio outside [0,1]");
  if (c.mode == ScenarioMode::STATIC) {
    if (!c.link) return cfg_err("STATIC mode requires a link spec");
    if (auto e = heteroedge::validate(*c.link)) return cfg_err(e->what());
    if (!(c.static_distance_m > 0) && c.link->path_loss_exponent > 0)
      return cfg_err("static_distance_m must be > 0 under path loss");
  } else {
    if (!c.latency_model || !c.mobility)
      return cfg_err("MOBILE mode requires latency_model and mobility");
    if (auto e = heteroedge::validate(*c.mobility)) return cfg_err(e->what());
  }
  if (auto e = heteroedge::validate(c.constraints)) return cfg_err(e->what());
  if (c.constraints.power_floor_w > 0) {
    if (auto e = heteroedge::validate(c.battery)) return cfg_err(e->what());
    if (c.battery.discharge_rate == 1.0 || c.battery.t_dnn_s + c.battery.t_drive_s <= 0)
      return cfg_err("battery gate enabled but battery state is degenerate");
  }
  if (c.frames.width <= 0 || c.frames.height <= 0) return cfg_err("frame dimensions");
  if (c.frames.channels != 1 && c.frames.channels != 3) return cfg_err("frame channels");
  if (c.frames.mask_coverage <= 0 || c.frames.mask_coverage > 1)
    return cfg_err("mask_coverage outside (0,1]");
  if (c.frames.identical_run < 1) return cfg_err("identical_run must be >= 1");
  if (c.profile_source.empty()) return cfg_err("profile_source missing");
  return std::nullopt;
}

int offload_count(int batch_size, double r) {
  if (r < 0 || r > 1) throw Error(Errc::RANGE_ERROR, "r outside [0,1]");
  return round_half_even(r * batch_size);
}

SplitBatches split_batch(std::vector<Frame> frames, double r) {
  const int k = offload_count(static_cast<int>(frames.size()), r);
  SplitBatches out;
  out.offload.assign(std::make_move_iterator(frames.begin()),
                     std::make_move_iterator(frames.begin() + k));
  out.local.assign(std::make_move_iterator(frames.begin() + k),
                   std::make_move_iterator(frames.end()));
  return out;
}

Frame synth_frame(const SyntheticFrames& spec, std::uint64_t global_index) {
  Frame f;
  f.width = spec.width;
  f.height = spec.height;
  f.channels = spec.channels;
  f.pixels.resize(static_cast<std::size_t>(spec.width) * spec.height * spec.channels);
  const std::uint64_t phase = (global_index / static_cast<std::uint64_t>(spec.identical_run)) * 17;
  std::size_t p = 0;
  for (int y = 0; y < spec.height; ++y) {
    for (int x = 0; x < spec.width; ++x) {
      for (int c = 0; c < spec.channels; ++c)
        f.pixels[p++] = static_cast<std::uint8_t>((phase + static_cast<std::uint64_t>(y) + c) & 0xff);
    }
  }
  return f;
}

BinaryMask synth_mask(const SyntheticFrames& spec, std::uint64_t global_index,
                      std::uint64_t seed) {
  BinaryMask m;
  m.width = spec.width;
  m.height = spec.height;
  m.bits.assign(static_cast<std::size_t>(spec.width) * spec.height, 0);
  const double side = std::sqrt(spec.mask_coverage);
  const int rw = std::max(1, static_cast<int>(std::lround(spec.width * side)));
  const int rh = std::max(1, static_cast<int>(std::lround(spec.height * side)));
  std::uint64_t s = splitmix64(seed ^ splitmix64(global_index));
  const int x0 = static_cast<int>(s % static_cast<std::uint64_t>(spec.width - rw + 1));
  s = splitmix64(s);
  const int y0 = static_cast<int>(s % static_cast<std::uint64_t>(spec.height - rh + 1));
  for (int y = y0; y < y0 + rh; ++y)
    for (int x = x0; x < x0 + rw; ++x)
      m.bits[static_cast<std::size_t>(y) * spec.width + x] = 1;
  return m;
}

RunReport run_scenario(const ScenarioConfig& config, TransportKind transport) {
  if (auto err = validate(config)) throw *err;
  const std::vector<ProfileSample> samples = load_profile_csv(config.profile_source);
  const CostCurves curves = build_cost_curves(samples);

  if (transport == TransportKind::INPROC) {
    Endpoints ep;
    InprocTransport bus(ep.clock, [&ep](const Message& m) {
      return m.kind == MessageKind::FRAME_BATCH ? ep.frame_latency_hint : 0.0;
    });
    auto aux_frames = bus.subscribe(kTopicFrames);
    auto aux_ctrl = bus.subscribe(kTopicControl);
    ep.results = bus.subscribe(kTopicResults);
    ep.primary = &bus;
    AuxLogic aux(bus, config.batch_size);
    ep.pump_aux = [&] {
      while (auto m = aux_frames->poll()) aux.on_frames(*m);
    };
    ep.take_result = [&]() { return ep.results->poll(); };
    ep.await_result = [&]() -> std::optional<Message> {
      // Advance virtual time to the next due delivery until a RESULT lands.
      for (int guard = 0; guard < 1000; ++guard) {
        if (auto m = ep.results->poll()) return m;
        const auto due = bus.next_delivery_time();
        if (!due) return std::nullopt;
        ep.clock.advance_to(*due);
        ep.pump_aux();
      }
      return std::nullopt;
    };
    RunReport report = drive_primary(config, curves, ep);
    Message end;
    end.topic = kTopicControl;
    end.kind = MessageKind::CONTROL;
    end.payload = encode_control(ControlOp::END_OF_RUN);
    bus.publish(std::move(end));
    return report;
  }

  // Socket transport: the auxiliary node runs on its own thread behind a
  // loopback TCP connection; decisions and accounting stay model-driven, so
  // they match the in-process run exactly.
  std::uint16_t port = 0;
  const int listen_fd = SocketTransport::listen_on(port);
  std::exception_ptr aux_error;
  std::thread aux_thread([&] {
    try {
      auto t = SocketTransport::accept_peer(listen_fd);
      auto frames_sub = t->subscribe(kTopicFrames);
      auto ctrl = t->subscribe(kTopicControl);
      AuxLogic aux(*t, config.batch_size);
      while (true) {
        if (auto c = ctrl->poll()) break;
        if (auto m = frames_sub->await(0.02)) aux.on_frames(*m);
      }
    } catch (...) {
      aux_error = std::current_exception();
    }
  });

  RunReport report;
  try {
    auto pri = SocketTransport::connect_to("127.0.0.1", port);
    Endpoints ep;
    ep.primary = pri.get();
    ep.results = pri->subscribe(kTopicResults);
    ep.take_result = [sub = ep.results]() { return sub->poll(); };
    ep.await_result = [sub = ep.results]() { return sub->await(kSocketAwaitTimeoutS); };
    report = drive_primary(config, curves, ep);
    Message end;
    end.topic = kTopicControl;
    end.kind = MessageKind::CONTROL;
    end.payload = encode_control(ControlOp::END_OF_RUN);
    pri->publish(std::move(end));
    aux_thread.join();
  } catch (...) {
    if (aux_thread.joinable()) {
      ::close(listen_fd);
      aux_thread.join();
    }
    throw;
  }
  ::close(listen_fd);
  if (aux_error) std::rethrow_exception(aux_error);
  return report;
}

}  // namespace heteroedge::runtime
