#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>
#include <string>

#include "doctest.h"
#include "qcka/sweep.hpp"

using qcka::SweepMode;
using qcka::SweepSpec;
using qcka::SweepVariable;

namespace {

SweepSpec base_spec() {
  SweepSpec spec;
  spec.params.n_participants = 3;
  spec.params.distances_km = {50.0, 50.0};
  spec.min = 0.0;
  spec.max = 40.0;
  spec.step = 20.0;
  spec.optimize = false;  // keep unit runs cheap
  return spec;
}

}  // namespace

TEST_CASE("CSV schema is pinned") {
  CHECK(std::string(qcka::kSweepCsvHeader) ==
        "L_km,n,lambda,p_z,q_z,e_pair,e_x_n,phi_z,rate,baseline_rate");
}

TEST_CASE("asymptotic rows leave finite-only and compare-only cells empty") {
  const auto rows = qcka::run_sweep(base_spec());
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].l_km == 0.0);
  CHECK(rows[1].l_km == 20.0);
  CHECK(rows[2].l_km == 40.0);
  for (const auto& row : rows) {
    CHECK_FALSE(row.p_z.has_value());
    CHECK_FALSE(row.phi_z.has_value());
    CHECK_FALSE(row.baseline_rate.has_value());
    CHECK(row.rate >= 0.0);
  }
  const std::string csv = qcka::to_csv(rows[0]);
  // empty p_z, phi_z and baseline cells
  CHECK(csv.find(",,") != std::string::npos);

  std::ostringstream out;
  qcka::write_csv(out, rows);
  CHECK(out.str().find(qcka::kSweepCsvHeader) == 0);
}

TEST_CASE("compare mode fills the baseline column") {
  SweepSpec spec = base_spec();
  spec.mode = SweepMode::Compare;
  const auto rows = qcka::run_sweep(spec);
  for (const auto& row : rows) {
    REQUIRE(row.baseline_rate.has_value());
    CHECK(*row.baseline_rate >= 0.0);
  }
}

TEST_CASE("finite mode emits the sampling parameters") {
  SweepSpec spec = base_spec();
  spec.mode = SweepMode::Finite;
  spec.params.total_pulses = 1e12;
  const auto rows = qcka::run_sweep(spec);
  for (const auto& row : rows) {
    REQUIRE(row.p_z.has_value());
    REQUIRE(row.phi_z.has_value());
  }
}

TEST_CASE("hopeless pulse budgets produce a zero column") {
  SweepSpec spec = base_spec();
  spec.mode = SweepMode::Finite;
  spec.optimize = true;
  spec.variable = SweepVariable::Pulses;
  spec.min = 1e3;
  spec.max = 1e3;
  spec.step = 10.0;
  const auto rows = qcka::run_sweep(spec);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].rate == 0.0);
}

TEST_CASE("pulse sweeps step multiplicatively") {
  SweepSpec spec = base_spec();
  spec.mode = SweepMode::Finite;
  spec.variable = SweepVariable::Pulses;
  spec.min = 1e9;
  spec.max = 1e12;
  spec.step = 10.0;
  spec.optimize = false;
  spec.params.lambda = 0.03;
  spec.params.basis_z_prob = 0.9;
  const auto rows = qcka::run_sweep(spec);
  REQUIRE(rows.size() == 4);
  // rates grow with the budget
  CHECK(rows[0].rate <= rows[1].rate);
  CHECK(rows[1].rate <= rows[2].rate);
  CHECK(rows[2].rate <= rows[3].rate);
}

TEST_CASE("degenerate specs are rejected") {
  SweepSpec spec = base_spec();
  spec.step = 0.0;
  CHECK_THROWS_AS(qcka::run_sweep(spec), std::invalid_argument);

  spec = base_spec();
  spec.min = 10.0;
  spec.max = 0.0;
  CHECK_THROWS_AS(qcka::run_sweep(spec), std::invalid_argument);

  spec = base_spec();
  spec.variable = SweepVariable::Pulses;
  spec.min = 1e6;
  spec.max = 1e7;
  spec.step = 1.0;  // multiplicative sweeps need step > 1
  CHECK_THROWS_AS(qcka::run_sweep(spec), std::invalid_argument);
}

TEST_CASE("misalignment sweeps degrade the rate monotonically") {
  SweepSpec spec = base_spec();
  spec.variable = SweepVariable::Misalignment;
  spec.min = 0.0;
  spec.max = 0.08;
  spec.step = 0.02;
  const auto rows = qcka::run_sweep(spec);
  REQUIRE(rows.size() == 5);
  for (std::size_t i = 1; i < rows.size(); ++i)
    CHECK(rows[i].rate <= rows[i - 1].rate);
}

TEST_CASE("serialization is deterministic") {
  SweepSpec spec = base_spec();
  spec.mode = SweepMode::Compare;
  std::ostringstream first, second;
  qcka::write_csv(first, qcka::run_sweep(spec));
  qcka::write_csv(second, qcka::run_sweep(spec));
  CHECK(first.str() == second.str());
}
