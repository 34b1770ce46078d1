#include "qcka/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qcka/finite_key.hpp"
#include "qcka/optimize.hpp"
#include "qcka/photonic.hpp"
#include "qcka/rates.hpp"

namespace qcka {

namespace {

std::vector<double> sweep_values(const SweepSpec& spec) {
  if (!(spec.min <= spec.max))
    throw std::invalid_argument("sweep: min must be <= max");
  std::vector<double> values;
  if (spec.variable == SweepVariable::Pulses) {
    if (!(spec.step > 1.0))
      throw std::invalid_argument("sweep: pulse sweeps step multiplicatively, step must be > 1");
    if (!(spec.min >= 1.0))
      throw std::invalid_argument("sweep: pulses must be >= 1");
    for (double v = spec.min; v <= spec.max * (1.0 + 1e-12); v *= spec.step)
      values.push_back(v);
  } else {
    if (!(spec.step > 0.0))
      throw std::invalid_argument("sweep: step must be > 0");
    const auto count =
        static_cast<std::size_t>((spec.max - spec.min) / spec.step + 1e-9) + 1;
    values.reserve(count);
    for (std::size_t i = 0; i < count; ++i)
      values.push_back(spec.min + spec.step * static_cast<double>(i));
  }
  return values;
}

SystemParams params_at(const SweepSpec& spec, double value) {
  SystemParams p = spec.params;
  switch (spec.variable) {
    case SweepVariable::Distance:
      std::fill(p.distances_km.begin(), p.distances_km.end(), value);
      break;
    case SweepVariable::Misalignment:
      p.misalignment = value;
      break;
    case SweepVariable::Pulses:
      p.total_pulses = value;
      break;
  }
  return p;
}

SweepRow evaluate_point(const SweepSpec& spec, double value) {
  SystemParams p = validate(params_at(spec, value));
  SweepRow row;
  row.n = p.n_participants;

  if (spec.mode == SweepMode::Finite) {
    if (spec.optimize) {
      const OptimizationResult best = optimize_finite(p);
      p.lambda = best.best_lambda;
      p.basis_z_prob = best.best_pz;
    }
    row.lambda = p.lambda;
    row.p_z = p.basis_z_prob;
    try {
      const FiniteKeyResult fk = finite_key_length(p);
      row.phi_z = fk.phi_z;
      row.rate = fk.r_finite;
    } catch (const std::domain_error&) {
      row.phi_z = 1.0;
      row.rate = 0.0;
    }
  } else {
    if (spec.optimize) {
      const OptimizationResult best = optimize_asymptotic(p);
      p.lambda = best.best_lambda;
    }
    row.lambda = p.lambda;
    const ConferenceRates rates = asymptotic_rate(p);
    row.rate = rates.rate;
    if (spec.mode == SweepMode::Compare)
      row.baseline_rate = nbb84_baseline_rate(p);
  }

  row.l_km = p.distances_km.front();
  const ConferenceRates rates = asymptotic_rate(p);
  row.q_z = rates.q_z_group;
  row.e_pair =
      *std::max_element(rates.marginal_z.begin(), rates.marginal_z.end());
  row.e_x_n = rates.error_x;
  return row;
}

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  validate(spec.params);
  const std::vector<double> values = sweep_values(spec);
  std::vector<SweepRow> rows(values.size());
  const auto count = static_cast<std::int64_t>(values.size());
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t i = 0; i < count; ++i)
    rows[static_cast<std::size_t>(i)] =
        evaluate_point(spec, values[static_cast<std::size_t>(i)]);
  return rows;
}

std::string to_csv(const SweepRow& row) {
  std::string out;
  out += format_number(row.l_km);
  out += ',';
  out += std::to_string(row.n);
  out += ',';
  out += format_number(row.lambda);
  out += ',';
  if (row.p_z) out += format_number(*row.p_z);
  out += ',';
  out += format_number(row.q_z);
  out += ',';
  out += format_number(row.e_pair);
  out += ',';
  out += format_number(row.e_x_n);
  out += ',';
  if (row.phi_z) out += format_number(*row.phi_z);
  out += ',';
  out += format_number(row.rate);
  out += ',';
  if (row.baseline_rate) out += format_number(*row.baseline_rate);
  return out;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
  out << kSweepCsvHeader << '\n';
  for (const SweepRow& row : rows) out << to_csv(row) << '\n';
}

}  // namespace qcka
