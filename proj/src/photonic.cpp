#include "qcka/photonic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcka {

double pair_emission_prob(int k, double lambda) {
  if (k < 0) return 0.0;
  if (lambda == 0.0) return k == 0 ? 1.0 : 0.0;
  // (k+1) lambda^k / (1+lambda)^(k+2), in log space to survive large k
  const double log_p = std::log1p(static_cast<double>(k)) +
                       k * std::log(lambda) -
                       (k + 2) * std::log1p(lambda);
  return std::exp(log_p);
}

double gain_k(int k, double eta_a, double eta_b, double y0a, double y0b,
              double lambda) {
  const double click_a = 1.0 - (1.0 - y0a) * std::pow(1.0 - eta_a, k);
  const double click_b = 1.0 - (1.0 - y0b) * std::pow(1.0 - eta_b, k);
  return click_a * click_b * pair_emission_prob(k, lambda);
}

double gain_z(double eta_a, double eta_b, double y0a, double y0b,
              double lambda) {
  const auto sq = [](double x) { return x * x; };
  return 1.0 - (1.0 - y0a) / sq(1.0 + eta_a * lambda) -
         (1.0 - y0b) / sq(1.0 + eta_b * lambda) +
         (1.0 - y0a) * (1.0 - y0b) /
             sq(1.0 + eta_a * lambda + eta_b * lambda - eta_a * eta_b * lambda);
}

double gain_z_series(double eta_a, double eta_b, double y0a, double y0b,
                     double lambda, double tail_bound) {
  double sum = 0.0;
  for (int k = 0; k <= 1'000'000; ++k) {
    sum += gain_k(k, eta_a, eta_b, y0a, y0b, lambda);
    // P(k+1)/P(k) = (k+2)/(k+1) * lambda/(1+lambda) and decreases in k, so
    // the remaining emission mass (an upper bound on the remaining gain) is
    // geometrically bounded once that ratio is below 1.
    const double r =
        (static_cast<double>(k) + 2.0) / (k + 1.0) * lambda / (1.0 + lambda);
    if (r < 1.0) {
      const double tail = pair_emission_prob(k, lambda) * r / (1.0 - r);
      if (tail < tail_bound) break;
    }
  }
  return sum;
}

double pair_qber(double eta_a, double eta_b, double y0a, double y0b,
                 double lambda, double e0, double ed) {
  const double q = gain_z(eta_a, eta_b, y0a, y0b, lambda);
  if (q <= 0.0)
    throw std::domain_error("pair_qber: zero gain, error rate undefined");
  const double numerator =
      2.0 * (e0 - ed) * eta_a * eta_b * lambda * (1.0 + lambda);
  const double denominator =
      q * (1.0 + eta_a * lambda) * (1.0 + eta_b * lambda) *
      (1.0 + eta_a * lambda + eta_b * lambda - eta_a * eta_b * lambda);
  const double e = e0 - numerator / denominator;
  return std::clamp(e, 0.0, 0.5);
}

std::vector<PairLinkRates> link_rates(const SystemParams& params) {
  const ChannelEfficiencies eff = channel_efficiencies(params);
  std::vector<PairLinkRates> rates;
  rates.reserve(eff.to_alice.size());
  for (std::size_t i = 0; i < eff.to_alice.size(); ++i) {
    PairLinkRates r;
    r.q_z = gain_z(eff.to_alice[i], eff.to_bob[i], params.dark_count_yield,
                   params.dark_count_yield, params.lambda);
    r.q_x = r.q_z;
    r.e_pair = pair_qber(eff.to_alice[i], eff.to_bob[i],
                         params.dark_count_yield, params.dark_count_yield,
                         params.lambda, params.background_error,
                         params.misalignment);
    rates.push_back(r);
  }
  return rates;
}

}  // namespace qcka
