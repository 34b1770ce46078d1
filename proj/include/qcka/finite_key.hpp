#pragma once

#include "qcka/params.hpp"

namespace qcka {

struct SiftCounts {
  double n_z = 0;  // matched groups measured in Z by every party
  double n_x = 0;  // matched groups measured in X by every party
};

// Group budget per basis: round(N * Q * p^2) and round(N * Q * (1-p)^2),
// with the group gain limited by the scarcest stream.
SiftCounts sift_counts(const SystemParams& params);

// Tail bound on the expectation behind an observed count:
// m* = m + beta + sqrt(2 beta m + beta^2), beta = -ln(eps).
double chernoff_expected_upper(double observed, double beta);

// Tail bound on an observation given a bound on its expectation:
// m_bar = m* + beta/2 + sqrt(2 beta m* + beta^2/4).
double chernoff_observed_upper(double expected, double beta);

// Rescales the X-sample error bound onto the Z sample. Throws
// std::domain_error when n_x = 0: the phase error is unestimable.
double phase_error_transfer(double m_x_star, double n_z, double n_x);

struct FiniteKeyResult {
  double n_z = 0, n_x = 0;
  double m_x = 0;        // expected error count in the X sample
  double m_x_star = 0;   // its expectation bound
  double m_zt_star = 0;  // expected phase-error count bound in the Z sample
  double m_zt_bar = 0;   // observed phase-error count bound
  double phi_z = 0;      // phase error rate bound, clamped to [0, 1]
  double l_qcka = 0;     // extractable key length in bits, floored at 0
  double r_finite = 0;   // l_qcka / N
};

// Composable finite-size key length:
//   n_z {1 - H(phi_z) - f max_i H(e_i)} - log2(2(n-1)/eps_cor) - 2 log2(1/(2 eps_sec)),
// with phi_z estimated from the X sample through the two tail bounds above.
// phi_z >= 1/2 exhausts the entropy budget and yields zero. Throws
// std::domain_error when either basis ends up with no groups.
FiniteKeyResult finite_key_length(const SystemParams& params);

}  // namespace qcka
