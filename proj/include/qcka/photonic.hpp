#pragma once

#include <vector>

#include "qcka/params.hpp"

namespace qcka {

// Pair-number distribution of the downconversion source:
// P(k) = (k+1) lambda^k / (1+lambda)^(k+2), normalized over k >= 0.
double pair_emission_prob(int k, double lambda);

// Probability that a k-pair emission yields a click on both ends of one link,
// threshold detectors with background clicks folded in:
// [1-(1-Y0A)(1-eta_A)^k] [1-(1-Y0B)(1-eta_B)^k] P(k).
double gain_k(int k, double eta_a, double eta_b, double y0a, double y0b,
              double lambda);

// Closed form of sum_k gain_k.
double gain_z(double eta_a, double eta_b, double y0a, double y0b, double lambda);

// Direct series evaluation of sum_k gain_k, terminated once the geometric
// bound on the remaining tail drops below tail_bound. Second, independent
// route to the same quantity; kept public for consistency checking.
double gain_z_series(double eta_a, double eta_b, double y0a, double y0b,
                     double lambda, double tail_bound = 1e-15);

// Error rate between the two ends of a valid event. The correlated fraction
// shrinks as multi-pair emissions and background clicks grow; the result is
// clamped to [0, 1/2]. Throws std::domain_error when the gain vanishes.
double pair_qber(double eta_a, double eta_b, double y0a, double y0b,
                 double lambda, double e0, double ed);

struct PairLinkRates {
  double q_z;     // coincidence gain in the Z basis
  double q_x;     // gain in the X basis, equal to q_z by construction
  double e_pair;  // link error rate
};

// Per-stream observables derived from validated system parameters.
std::vector<PairLinkRates> link_rates(const SystemParams& params);

}  // namespace qcka
