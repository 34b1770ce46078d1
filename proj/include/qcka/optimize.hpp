#pragma once

#include "qcka/params.hpp"

namespace qcka {

struct LambdaBounds {
  double lo = 1e-6;
  double hi = 1.0;
};

struct PzBounds {
  double lo = 0.5;
  double hi = 0.999;
};

struct OptimizationResult {
  double best_lambda = 0.0;
  double best_pz = 0.0;  // meaningful in finite mode only
  double best_rate = 0.0;
  long evaluations = 0;
  bool converged = false;  // false when the objective was zero everywhere probed
};

// Maximizes the asymptotic rate over lambda: 64-point log-spaced grid, then
// golden-section refinement (relative tolerance 1e-4 on lambda) around every
// local maximum of the grid. Deterministic; grid evaluations may run in
// parallel.
OptimizationResult optimize_asymptotic(const SystemParams& params,
                                       LambdaBounds bounds = {});

// Maximizes the finite-size rate over (lambda, p_z) by alternating coordinate
// search, three rounds of grid + golden-section per coordinate.
OptimizationResult optimize_finite(const SystemParams& params,
                                   LambdaBounds lambda_bounds = {},
                                   PzBounds pz_bounds = {});

}  // namespace qcka
