#pragma once

#include <span>
#include <vector>

#include "qcka/params.hpp"

namespace qcka {

// Binary Shannon entropy with H(0) = H(1) = 0. Throws std::domain_error
// outside [0, 1].
double binary_entropy(double x);

// Probability that an odd number of the independent per-pair errors occur:
// (1 - prod_i (1 - 2 e_i)) / 2.
double error_x_total(std::span<const double> pair_errors);

// Same quantity for equal per-pair error, evaluated as the finite binomial
// sum over odd error multiplicities. Deliberately a second algebraic route.
double error_x_total_symmetric(int n_participants, double pair_error);

// Probability that at least one pair errs: 1 - prod_i (1 - e_i).
double error_z_total(std::span<const double> pair_errors);

struct ConferenceRates {
  double q_z_group = 0.0;               // group gain, min over streams
  double error_x = 0.0;                 // parity error across all pairs
  double error_z = 0.0;                 // any-pair error
  std::vector<double> marginal_z;       // per-Bob disagreement rate with Alice
  double rate = 0.0;                    // key bits per source pulse, floored at 0
  bool positive = false;                // false when the entropy budget is spent
};

// Asymptotic conference key rate:
// Q * {1 - H(error_x) - f * max_i H(marginal_i)}.
ConferenceRates asymptotic_rate(const SystemParams& params);

// Reference rate for an n-photon entanglement-source star with the same
// geometry: one photon per arm per pulse, all n arms must click in the same
// pulse (gain = prod_i [1-(1-Y0)(1-eta_i)], Alice's arm uses the first
// distance entry). Conditional on a coincidence, each arm's bit is flipped
// with the misalignment probability when its click is photonic and is random
// when a dark count is involved; errors combine pairwise against Alice for
// the Z term and as an n-arm parity for the X term. Captures the O(eta^n)
// gain scaling; not a reproduction of any published curve.
double nbb84_baseline_rate(const SystemParams& params);

}  // namespace qcka
