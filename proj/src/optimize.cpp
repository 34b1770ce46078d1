#include "qcka/optimize.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "qcka/finite_key.hpp"
#include "qcka/rates.hpp"

namespace qcka {

namespace {

constexpr int kGridPoints = 64;
constexpr double kLambdaRelTol = 1e-4;
constexpr double kInvPhi = 0.6180339887498949;  // (sqrt(5)-1)/2

using Objective = std::function<double(double)>;

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> grid(points);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points; ++i)
    grid[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  return grid;
}

std::vector<double> linear_grid(double lo, double hi, int points) {
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * i / (points - 1);
  return grid;
}

// Golden-section ascent on [lo, hi]; relative tolerance on the argument.
double golden_max(const Objective& f, double lo, double hi, double rel_tol,
                  long& evaluations, double* best_value) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  evaluations += 2;
  while (b - a > rel_tol * (std::abs(a) + std::abs(b)) * 0.5) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
    ++evaluations;
  }
  const double x = fc > fd ? c : d;
  if (best_value) *best_value = std::max(fc, fd);
  return x;
}

struct GridSearch {
  double best_x = 0.0;
  double best_f = 0.0;
  bool all_zero = true;
};

// Grid pass plus golden refinement around every local maximum; unimodality in
// lambda is typical but unproven, so each candidate bracket is refined.
GridSearch search_1d(const Objective& f, const std::vector<double>& grid,
                     double rel_tol, long& evaluations) {
  const int points = static_cast<int>(grid.size());
  std::vector<double> values(points);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < points; ++i) values[i] = f(grid[i]);
  evaluations += points;

  GridSearch result;
  for (int i = 0; i < points; ++i) {
    if (values[i] > 0.0) result.all_zero = false;
    if (values[i] > result.best_f) {
      result.best_f = values[i];
      result.best_x = grid[i];
    }
  }
  if (result.all_zero) {
    result.best_x = grid.front();
    return result;
  }

  for (int i = 0; i < points; ++i) {
    const double left = i > 0 ? values[i - 1] : -1.0;
    const double right = i + 1 < points ? values[i + 1] : -1.0;
    if (values[i] <= 0.0 || values[i] < left || values[i] < right) continue;
    const double lo = i > 0 ? grid[i - 1] : grid[i];
    const double hi = i + 1 < points ? grid[i + 1] : grid[i];
    if (hi <= lo) continue;
    double refined_f = 0.0;
    const double refined_x =
        golden_max(f, lo, hi, rel_tol, evaluations, &refined_f);
    if (refined_f > result.best_f) {
      result.best_f = refined_f;
      result.best_x = refined_x;
    }
  }
  return result;
}

}  // namespace

OptimizationResult optimize_asymptotic(const SystemParams& params,
                                       LambdaBounds bounds) {
  if (!(bounds.lo > 0.0 && bounds.lo < bounds.hi))
    throw std::invalid_argument("optimize_asymptotic: bad lambda bounds");

  OptimizationResult result;
  const Objective objective = [&params](double lambda) {
    SystemParams p = params;
    p.lambda = lambda;
    return asymptotic_rate(p).rate;
  };

  const GridSearch search =
      search_1d(objective, log_grid(bounds.lo, bounds.hi, kGridPoints),
                kLambdaRelTol, result.evaluations);
  result.best_lambda = search.best_x;
  result.best_rate = search.best_f;
  result.converged = !search.all_zero;
  return result;
}

OptimizationResult optimize_finite(const SystemParams& params,
                                   LambdaBounds lambda_bounds,
                                   PzBounds pz_bounds) {
  if (!(lambda_bounds.lo > 0.0 && lambda_bounds.lo < lambda_bounds.hi))
    throw std::invalid_argument("optimize_finite: bad lambda bounds");
  if (!(pz_bounds.lo >= 0.5 && pz_bounds.lo < pz_bounds.hi && pz_bounds.hi < 1.0))
    throw std::invalid_argument("optimize_finite: bad p_z bounds");

  OptimizationResult result;
  const auto rate_at = [&params](double lambda, double pz) {
    SystemParams p = params;
    p.lambda = lambda;
    p.basis_z_prob = pz;
    try {
      return finite_key_length(p).r_finite;
    } catch (const std::domain_error&) {
      return 0.0;  // degenerate sift: nothing extractable here
    }
  };

  // Coarse joint grid seeds the coordinate search; the feasible (lambda, p_z)
  // pocket can be invisible from a single axis-aligned slice.
  const std::vector<double> lambda_seed =
      log_grid(lambda_bounds.lo, lambda_bounds.hi, kGridPoints);
  const std::vector<double> pz_seed = linear_grid(pz_bounds.lo, pz_bounds.hi, 17);
  double lambda = std::sqrt(lambda_bounds.lo * lambda_bounds.hi);
  double pz = std::clamp(0.9, pz_bounds.lo, pz_bounds.hi);
  {
    const auto total = static_cast<std::int64_t>(lambda_seed.size() * pz_seed.size());
    std::vector<double> values(static_cast<std::size_t>(total));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < total; ++i) {
      const std::size_t li = static_cast<std::size_t>(i) / pz_seed.size();
      const std::size_t pi = static_cast<std::size_t>(i) % pz_seed.size();
      values[static_cast<std::size_t>(i)] = rate_at(lambda_seed[li], pz_seed[pi]);
    }
    result.evaluations += total;
    double best = 0.0;
    for (std::int64_t i = 0; i < total; ++i) {
      if (values[static_cast<std::size_t>(i)] > best) {
        best = values[static_cast<std::size_t>(i)];
        lambda = lambda_seed[static_cast<std::size_t>(i) / pz_seed.size()];
        pz = pz_seed[static_cast<std::size_t>(i) % pz_seed.size()];
      }
    }
  }
  bool any_positive = false;

  for (int round = 0; round < 3; ++round) {
    const Objective over_lambda = [&](double l) { return rate_at(l, pz); };
    const GridSearch ls = search_1d(
        over_lambda, log_grid(lambda_bounds.lo, lambda_bounds.hi, kGridPoints),
        kLambdaRelTol, result.evaluations);
    if (!ls.all_zero) {
      lambda = ls.best_x;
      any_positive = true;
    }

    const Objective over_pz = [&](double p) { return rate_at(lambda, p); };
    const GridSearch ps =
        search_1d(over_pz, linear_grid(pz_bounds.lo, pz_bounds.hi, 33),
                  kLambdaRelTol, result.evaluations);
    if (!ps.all_zero) {
      pz = ps.best_x;
      any_positive = true;
    }
  }

  result.best_lambda = lambda;
  result.best_pz = pz;
  result.best_rate = rate_at(lambda, pz);
  ++result.evaluations;
  result.converged = any_positive && result.best_rate > 0.0;
  if (!result.converged) result.best_rate = 0.0;
  return result;
}

}  // namespace qcka
