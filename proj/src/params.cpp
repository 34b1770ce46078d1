#include "qcka/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qcka {

namespace {

[[noreturn]] void fail(const std::string& message) {
  throw std::invalid_argument(message);
}

void require_prob(double value, const char* field, bool allow_zero,
                  bool allow_one) {
  if (!std::isfinite(value) || value < 0.0 || value > 1.0 ||
      (!allow_zero && value == 0.0) || (!allow_one && value == 1.0)) {
    fail(std::string(field) + " out of range");
  }
}

}  // namespace

SystemParams validate(SystemParams params) {
  if (params.n_participants < 3) fail("conference requires n >= 3");
  if (!std::isfinite(params.lambda) || params.lambda <= 0.0)
    fail("lambda must be positive and finite");
  require_prob(params.detector_efficiency, "detector_efficiency",
               /*allow_zero=*/false, /*allow_one=*/true);
  if (!std::isfinite(params.fiber_loss_db_per_km) ||
      params.fiber_loss_db_per_km < 0.0)
    fail("fiber_loss_db_per_km must be non-negative");
  const std::size_t expected =
      static_cast<std::size_t>(params.n_participants - 1);
  if (params.distances_km.size() != expected)
    fail("distances_km must have exactly n-1 = " + std::to_string(expected) +
         " entries, got " + std::to_string(params.distances_km.size()));
  for (double d : params.distances_km) {
    if (!std::isfinite(d) || d < 0.0) fail("distances_km entries must be >= 0");
  }
  if (!std::isfinite(params.dark_count_yield) || params.dark_count_yield < 0.0 ||
      params.dark_count_yield >= 1.0)
    fail("dark_count_yield out of range");
  require_prob(params.background_error, "background_error", true, true);
  if (!std::isfinite(params.misalignment) || params.misalignment < 0.0 ||
      params.misalignment > 0.5)
    fail("misalignment out of range");
  if (!std::isfinite(params.ec_efficiency) || params.ec_efficiency < 1.0)
    fail("ec_efficiency must be >= 1");
  require_prob(params.basis_z_prob, "basis_z_prob", false, false);
  require_prob(params.eps_cor, "eps_cor", false, false);
  require_prob(params.eps_sec, "eps_sec", false, false);
  require_prob(params.eps_chernoff, "eps_chernoff", false, false);
  if (!std::isfinite(params.total_pulses) || params.total_pulses < 1.0)
    fail("total_pulses must be >= 1");
  return params;
}

double arm_transmittance(double detector_efficiency, double loss_db_per_km,
                         double distance_km) {
  return detector_efficiency *
         std::pow(10.0, -loss_db_per_km * distance_km / 10.0);
}

ChannelEfficiencies channel_efficiencies(const SystemParams& params) {
  ChannelEfficiencies eff;
  eff.to_alice.reserve(params.distances_km.size());
  eff.to_bob.reserve(params.distances_km.size());
  for (double d : params.distances_km) {
    const double eta = arm_transmittance(params.detector_efficiency,
                                         params.fiber_loss_db_per_km, d);
    eff.to_alice.push_back(eta);
    eff.to_bob.push_back(eta);
  }
  return eff;
}

}  // namespace qcka
