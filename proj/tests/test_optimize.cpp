#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "doctest.h"
#include "qcka/finite_key.hpp"
#include "qcka/optimize.hpp"
#include "qcka/rates.hpp"

namespace {

qcka::SystemParams star_params(int n, double distance) {
  qcka::SystemParams p;
  p.n_participants = n;
  p.distances_km.assign(static_cast<std::size_t>(n - 1), distance);
  return p;
}

double dense_grid_best(const qcka::SystemParams& params, int points) {
  double best = 0.0;
  for (int i = 0; i <= points; ++i) {
    qcka::SystemParams p = params;
    p.lambda = std::pow(10.0, -6.0 + 6.0 * i / points);
    best = std::max(best, qcka::asymptotic_rate(p).rate);
  }
  return best;
}

}  // namespace

TEST_CASE("asymptotic optimizer") {
  SUBCASE("noiseless toy has an interior maximum") {
    qcka::SystemParams p = star_params(3, 0.0);
    p.dark_count_yield = 0.0;
    p.misalignment = 0.0;  // multi-pair background errors still punish lambda
    const auto result = qcka::optimize_asymptotic(p);
    CHECK(result.converged);
    CHECK(result.best_lambda > 1e-5);
    CHECK(result.best_lambda < 0.999);
    const double oracle = dense_grid_best(p, 10'000);
    CHECK(result.best_rate >= oracle * (1.0 - 1e-3));
  }

  SUBCASE("matches a dense grid at intercity distance") {
    const qcka::SystemParams p = star_params(3, 200.0);
    const auto result = qcka::optimize_asymptotic(p);
    const double oracle = dense_grid_best(p, 10'000);
    CHECK(result.converged);
    CHECK(result.best_rate >= oracle * (1.0 - 1e-3));
    CHECK(result.best_rate <= oracle * (1.0 + 1e-3));
  }

  SUBCASE("infeasible region reports no convergence") {
    const auto result = qcka::optimize_asymptotic(star_params(3, 1000.0));
    CHECK_FALSE(result.converged);
    CHECK(result.best_rate == 0.0);
  }

  SUBCASE("deterministic") {
    const qcka::SystemParams p = star_params(4, 120.0);
    const auto a = qcka::optimize_asymptotic(p);
    const auto b = qcka::optimize_asymptotic(p);
    CHECK(a.best_lambda == b.best_lambda);
    CHECK(a.best_rate == b.best_rate);
    CHECK(a.evaluations == b.evaluations);
  }
}

TEST_CASE("finite optimizer") {
  SUBCASE("enormous budgets push p_z to the bound") {
    qcka::SystemParams p = star_params(3, 50.0);
    p.total_pulses = 1e24;
    const auto result = qcka::optimize_finite(p);
    CHECK(result.converged);
    CHECK(result.best_pz == doctest::Approx(0.999).epsilon(1e-9));
  }

  SUBCASE("matches a dense 2-D grid within a percent") {
    qcka::SystemParams p = star_params(3, 50.0);
    p.total_pulses = 1e10;
    const auto result = qcka::optimize_finite(p);
    CHECK(result.converged);

    double oracle = 0.0;
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 50; ++j) {
        qcka::SystemParams probe = p;
        probe.lambda = std::pow(10.0, -4.0 + 4.0 * i / 100.0);
        probe.basis_z_prob = 0.5 + 0.499 * j / 50.0;
        try {
          oracle = std::max(oracle, qcka::finite_key_length(probe).r_finite);
        } catch (const std::domain_error&) {
        }
      }
    }
    CHECK(result.best_rate >= oracle * 0.99);
  }

  SUBCASE("hopeless budgets return zero without converging") {
    qcka::SystemParams p = star_params(3, 50.0);
    p.total_pulses = 1e3;
    const auto result = qcka::optimize_finite(p);
    CHECK_FALSE(result.converged);
    CHECK(result.best_rate == 0.0);
  }

  SUBCASE("deterministic") {
    qcka::SystemParams p = star_params(5, 80.0);
    p.total_pulses = 1e11;
    const auto a = qcka::optimize_finite(p);
    const auto b = qcka::optimize_finite(p);
    CHECK(a.best_lambda == b.best_lambda);
    CHECK(a.best_pz == b.best_pz);
    CHECK(a.best_rate == b.best_rate);
  }
}
