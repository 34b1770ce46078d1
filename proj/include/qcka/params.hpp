#pragma once

#include <vector>

namespace qcka {

// Full configuration of a Bell-pair star network: an untrusted central source
// feeding Alice and n-1 Bobs over one pair stream each. Values default to the
// reference detector/fiber constants used throughout the docs.
struct SystemParams {
  int n_participants = 3;             // Alice + (n-1) Bobs, n >= 3
  double lambda = 0.1;                // source brightness; expected pair number is 2*lambda
  double detector_efficiency = 0.56;  // eta_d
  double fiber_loss_db_per_km = 0.16;
  std::vector<double> distances_km = {50.0, 50.0};  // central node -> Bob_i, n-1 entries
  double dark_count_yield = 1e-7;     // per-pulse background click probability, each arm
  double background_error = 0.5;      // error rate of noise-induced clicks
  double misalignment = 0.02;         // intrinsic optical error, in [0, 0.5]
  double ec_efficiency = 1.16;        // error-correction inefficiency f >= 1
  double basis_z_prob = 0.9;          // Z-basis probability for every party (finite mode)
  double eps_cor = 1.2e-9;            // correctness failure probability
  double eps_sec = 1.2e-9;            // secrecy failure probability
  double eps_chernoff = 1e-10;        // tail-bound failure probability
  double total_pulses = 1e11;         // pulses allocated per pair stream (finite mode)
};

// Returns the record unchanged when every invariant holds; otherwise throws
// std::invalid_argument naming the offending field.
SystemParams validate(SystemParams params);

// One-way transmittance of a single arm: eta_d * 10^(-alpha*L/10).
double arm_transmittance(double detector_efficiency, double loss_db_per_km,
                         double distance_km);

// Per-stream transmittances. The star is symmetric per pair: the Alice-side
// arm of stream i has the same length as Bob_i's arm.
struct ChannelEfficiencies {
  std::vector<double> to_alice;
  std::vector<double> to_bob;
};

ChannelEfficiencies channel_efficiencies(const SystemParams& params);

}  // namespace qcka
