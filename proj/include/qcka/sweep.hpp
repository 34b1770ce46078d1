#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcka/params.hpp"

namespace qcka {

enum class SweepVariable : std::uint8_t { Distance, Misalignment, Pulses };
enum class SweepMode : std::uint8_t { Asymptotic, Finite, Compare };

// Distance and misalignment sweeps step additively; pulse sweeps step
// multiplicatively (step > 1), matching decade grids.
struct SweepSpec {
  SweepVariable variable = SweepVariable::Distance;
  double min = 0;
  double max = 0;
  double step = 1;
  SweepMode mode = SweepMode::Asymptotic;
  SystemParams params;
  bool optimize = true;  // re-optimize free parameters at every grid point
};

struct SweepRow {
  double l_km = 0;
  int n = 0;
  double lambda = 0;
  std::optional<double> p_z;     // finite mode
  double q_z = 0;
  double e_pair = 0;
  double e_x_n = 0;
  std::optional<double> phi_z;   // finite mode
  double rate = 0;
  std::optional<double> baseline_rate;  // compare mode
};

// Grid points evaluate in a worker pool; rows come back ordered by the sweep
// variable regardless of completion order. Throws std::invalid_argument on a
// degenerate spec (step <= 0, min > max, ...).
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

inline constexpr const char* kSweepCsvHeader =
    "L_km,n,lambda,p_z,q_z,e_pair,e_x_n,phi_z,rate,baseline_rate";

std::string to_csv(const SweepRow& row);
void write_csv(std::ostream& out, std::span<const SweepRow> rows);

}  // namespace qcka
