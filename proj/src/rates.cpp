#include "qcka/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qcka/photonic.hpp"

namespace qcka {

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw std::domain_error("binary_entropy: argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double error_x_total(std::span<const double> pair_errors) {
  double product = 1.0;
  for (double e : pair_errors) product *= 1.0 - 2.0 * e;
  return 0.5 * (1.0 - product);
}

double error_x_total_symmetric(int n_participants, double pair_error) {
  const int pairs = n_participants - 1;
  if (pairs < 1)
    throw std::invalid_argument("error_x_total_symmetric: need n >= 2");
  // sum over odd error multiplicities m = 2i+1 of C(pairs, m) e^m (1-e)^(pairs-m)
  const int t = (n_participants % 2 == 0) ? n_participants / 2 - 1
                                          : (n_participants - 3) / 2;
  double sum = 0.0;
  for (int i = 0; i <= t; ++i) {
    const int m = 2 * i + 1;
    double binom = 1.0;
    for (int j = 0; j < m; ++j)
      binom *= static_cast<double>(pairs - j) / (j + 1);
    sum += binom * std::pow(pair_error, m) *
           std::pow(1.0 - pair_error, pairs - m);
  }
  return sum;
}

double error_z_total(std::span<const double> pair_errors) {
  double product = 1.0;
  for (double e : pair_errors) product *= 1.0 - e;
  return 1.0 - product;
}

ConferenceRates asymptotic_rate(const SystemParams& params) {
  const std::vector<PairLinkRates> links = link_rates(params);

  ConferenceRates out;
  out.marginal_z.reserve(links.size());
  double q_min = 1.0;
  double worst_entropy = 0.0;
  std::vector<double> errors;
  errors.reserve(links.size());
  for (const PairLinkRates& link : links) {
    q_min = std::min(q_min, link.q_z);
    errors.push_back(link.e_pair);
    out.marginal_z.push_back(link.e_pair);
    worst_entropy = std::max(worst_entropy, binary_entropy(link.e_pair));
  }

  out.q_z_group = q_min;
  out.error_x = error_x_total(errors);
  out.error_z = error_z_total(errors);

  const double bracket = 1.0 - binary_entropy(out.error_x) -
                         params.ec_efficiency * worst_entropy;
  out.positive = bracket > 0.0;
  out.rate = out.positive ? q_min * bracket : 0.0;
  return out;
}

double nbb84_baseline_rate(const SystemParams& params) {
  const ChannelEfficiencies eff = channel_efficiencies(params);
  const double y0 = params.dark_count_yield;

  // n arms: Alice shares the first distance entry, then one per Bob.
  std::vector<double> etas;
  etas.reserve(eff.to_bob.size() + 1);
  etas.push_back(eff.to_alice.front());
  etas.insert(etas.end(), eff.to_bob.begin(), eff.to_bob.end());

  double gain = 1.0;
  std::vector<double> flip;  // per-arm bit-flip probability given a click
  flip.reserve(etas.size());
  for (double eta : etas) {
    const double click = 1.0 - (1.0 - y0) * (1.0 - eta);
    gain *= click;
    const double photonic = eta * (1.0 - y0) / click;  // click without any dark
    flip.push_back(params.misalignment * photonic +
                   params.background_error * (1.0 - photonic));
  }

  // X test: parity of all n arm flips. Z key: any Bob disagreeing with Alice,
  // where a pair disagrees when exactly one of its two arms flips.
  double parity = 1.0;
  for (double f : flip) parity *= 1.0 - 2.0 * f;
  const double error_x = 0.5 * (1.0 - parity);

  double all_agree = 1.0;
  for (std::size_t i = 1; i < flip.size(); ++i) {
    const double pair_error =
        flip[0] * (1.0 - flip[i]) + flip[i] * (1.0 - flip[0]);
    all_agree *= 1.0 - pair_error;
  }
  const double error_z = 1.0 - all_agree;

  const double bracket = 1.0 - binary_entropy(error_x) -
                         params.ec_efficiency * binary_entropy(error_z);
  return bracket > 0.0 ? gain * bracket : 0.0;
}

}  // namespace qcka
