#pragma once

#include <span>
#include <utility>
#include <vector>

#include "heteroedge/types.hpp"

namespace heteroedge {

// Channel description for the Shannon-Hartley rate model.
struct LinkSpec {
  double bandwidth_hz = 0;        // B
  double path_loss_exponent = 0;  // u; 0 models a lossless medium
  double tx_power_w = 0;          // P_t
  double noise_power_w = 0;       // N0
};

std::optional<Error> validate(const LinkSpec& l);

// Empirical latency-vs-distance quadratic: L(d) = a1*d^2 - a2*d + a3.
// Calibrated from measured (distance, latency) pairs; only meaningful on the
// measured distance range, so callers clamp L at 0.
struct LatencyDistanceModel {
  double a1 = 0;
  double a2 = 0;
  double a3 = 0;

  double latency_s(double distance_m) const {
    return a1 * distance_m * distance_m - a2 * distance_m + a3;
  }
};

// Achievable data rate in bits/second:
//   rate = B * log2(1 + d^(-u) * P_t / N0)
// Distance is irrelevant when the medium is lossless (u = 0).
double data_rate(const LinkSpec& link, double distance_m);

// Transfer latency of a payload at a given rate: bits / (bits/second).
double offload_latency(double payload_bits, double rate_bps);

// Least-squares calibration of the latency-distance quadratic.
// Requires >= 4 samples with >= 3 distinct distances.
LatencyDistanceModel fit_latency_distance(
    std::span<const std::pair<double, double>> distance_latency_samples);

// Node separation after elapsed time, both nodes moving apart.
double distance_at(const MobilityState& mob);

// Mobility gate: stop offloading once latency meets or exceeds beta.
bool should_halt(double latency_s, double beta_s);

}  // namespace heteroedge
