#include "heteroedge/netmodel.hpp"

#include <cmath>

#include "heteroedge/fit.hpp"

namespace heteroedge {

std::optional<Error> validate(const LinkSpec& l) {
  if (!(l.bandwidth_hz > 0)) return Error(Errc::RANGE_ERROR, "bandwidth_hz");
  if (!(l.noise_power_w > 0)) return Error(Errc::RANGE_ERROR, "noise_power_w");
  if (l.path_loss_exponent < 0) return Error(Errc::RANGE_ERROR, "path_loss_exponent");
  if (l.tx_power_w < 0) return Error(Errc::RANGE_ERROR, "tx_power_w");
  return std::nullopt;
}

double data_rate(const LinkSpec& link, double distance_m) {
  if (auto err = validate(link)) throw *err;
  const double u = link.path_loss_exponent;
  double attenuation = 1.0;
  if (u > 0.0) {
    if (distance_m <= 0.0)
      throw Error(Errc::ZERO_DISTANCE_WITH_LOSS, "distance must be > 0 when path loss applies");
    attenuation = std::pow(distance_m, -u);
  }
  const double snr = attenuation * link.tx_power_w / link.noise_power_w;
  return link.bandwidth_hz * std::log2(1.0 + snr);
}

double offload_latency(double payload_bits, double rate_bps) {
  if (payload_bits < 0) throw Error(Errc::RANGE_ERROR, "payload_bits");
  if (!(rate_bps > 0)) throw Error(Errc::ZERO_RATE, "rate must be > 0");
  return payload_bits / rate_bps;
}

LatencyDistanceModel fit_latency_distance(
    std::span<const std::pair<double, double>> distance_latency_samples) {
  if (distance_latency_samples.size() < 4)
    throw Error(Errc::INSUFFICIENT_SAMPLES, "need at least 4 (distance, latency) samples");
  std::vector<double> ds, ls;
  ds.reserve(distance_latency_samples.size());
  ls.reserve(distance_latency_samples.size());
  for (const auto& [d, l] : distance_latency_samples) {
    ds.push_back(d);
    ls.push_back(l);
  }
  const FitResult fit = fit_polynomial(ds, ls, 2);
  // fit gives L = c2*d^2 + c1*d + c0; the model's sign convention is
  // L = a1*d^2 - a2*d + a3.
  LatencyDistanceModel m;
  m.a1 = fit.coefficients[0];
  m.a2 = -fit.coefficients[1];
  m.a3 = fit.coefficients[2];
  return m;
}

double distance_at(const MobilityState& mob) {
  return mob.initial_distance_m + (mob.v_primary_mps + mob.v_auxiliary_mps) * mob.elapsed_s;
}

bool should_halt(double latency_s, double beta_s) {
  return latency_s >= beta_s;
}

}  // namespace heteroedge
