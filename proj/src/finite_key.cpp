#include "qcka/finite_key.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcka/photonic.hpp"
#include "qcka/rates.hpp"

namespace qcka {

SiftCounts sift_counts(const SystemParams& params) {
  const std::vector<PairLinkRates> links = link_rates(params);
  double q_min = 1.0;
  for (const PairLinkRates& link : links) q_min = std::min(q_min, link.q_z);

  const double pz = params.basis_z_prob;
  SiftCounts counts;
  counts.n_z = std::round(params.total_pulses * q_min * pz * pz);
  counts.n_x = std::round(params.total_pulses * q_min * (1.0 - pz) * (1.0 - pz));
  return counts;
}

double chernoff_expected_upper(double observed, double beta) {
  return observed + beta + std::sqrt(2.0 * beta * observed + beta * beta);
}

double chernoff_observed_upper(double expected, double beta) {
  return expected + beta / 2.0 +
         std::sqrt(2.0 * beta * expected + beta * beta / 4.0);
}

double phase_error_transfer(double m_x_star, double n_z, double n_x) {
  if (n_x <= 0.0)
    throw std::domain_error(
        "phase_error_transfer: empty X sample, phase error unestimable");
  return m_x_star * n_z / n_x;
}

FiniteKeyResult finite_key_length(const SystemParams& params) {
  const std::vector<PairLinkRates> links = link_rates(params);
  std::vector<double> errors;
  errors.reserve(links.size());
  double worst_entropy = 0.0;
  for (const PairLinkRates& link : links) {
    errors.push_back(link.e_pair);
    worst_entropy = std::max(worst_entropy, binary_entropy(link.e_pair));
  }

  const SiftCounts counts = sift_counts(params);
  if (counts.n_z < 1.0 || counts.n_x < 1.0)
    throw std::domain_error("finite_key_length: degenerate sift, a basis has no groups");

  FiniteKeyResult out;
  out.n_z = counts.n_z;
  out.n_x = counts.n_x;

  const double beta = -std::log(params.eps_chernoff);
  out.m_x = counts.n_x * error_x_total(errors);
  out.m_x_star = chernoff_expected_upper(out.m_x, beta);
  out.m_zt_star = phase_error_transfer(out.m_x_star, counts.n_z, counts.n_x);
  out.m_zt_bar = chernoff_observed_upper(out.m_zt_star, beta);
  out.phi_z = std::clamp(out.m_zt_bar / counts.n_z, 0.0, 1.0);

  // Beyond 1/2 the entropy bound is vacuous; no key is extractable.
  if (out.phi_z >= 0.5) return out;

  const double overhead =
      std::log2(2.0 * (params.n_participants - 1) / params.eps_cor) +
      2.0 * std::log2(1.0 / (2.0 * params.eps_sec));
  const double length =
      counts.n_z * (1.0 - binary_entropy(out.phi_z) -
                    params.ec_efficiency * worst_entropy) -
      overhead;
  out.l_qcka = std::max(0.0, length);
  out.r_finite = out.l_qcka / params.total_pulses;
  return out;
}

}  // namespace qcka
