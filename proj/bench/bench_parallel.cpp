// Compares the serial reference simulation path against the OpenMP-blocked
// kernel and checks that both produce identical tallies.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qcka/montecarlo.hpp"
#include "qcka/sweep.hpp"

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

bool same_tallies(const qcka::SimReport& a, const qcka::SimReport& b) {
  return a.tally.groups_z == b.tally.groups_z &&
         a.tally.groups_x == b.tally.groups_x &&
         a.tally.errors_x == b.tally.errors_x &&
         a.tally.errors_z_any == b.tally.errors_z_any &&
         qcka::report_csv_row(a) == qcka::report_csv_row(b);
}

}  // namespace

int main(int argc, char** argv) {
  std::int64_t pulses = argc > 1 ? std::atoll(argv[1]) : 4'000'000;

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; parallel path runs single-threaded\n");
#endif

  for (const char* fidelity : {"bit", "click"}) {
    qcka::SimConfig config;
    config.fidelity = fidelity[0] == 'b' ? qcka::Fidelity::BitLevel
                                         : qcka::Fidelity::ClickLevel;
    config.pulses = pulses;
    config.seed = 42;
    config.params.n_participants = 4;
    config.params.distances_km.assign(3, 25.0);
    config.params.basis_z_prob = 0.5;
    if (config.fidelity == qcka::Fidelity::BitLevel) {
      config.gain_override = 0.05;
      config.error_override = 0.03;
    }

    auto start = std::chrono::steady_clock::now();
    const qcka::SimReport serial = qcka::simulate_reference(config);
    const double t_serial = seconds_since(start);

    start = std::chrono::steady_clock::now();
    const qcka::SimReport parallel = qcka::simulate(config);
    const double t_parallel = seconds_since(start);

    std::printf(
        "%5s-level  %lld pulses  serial %.3fs  parallel %.3fs  speedup %.2fx  "
        "identical=%s\n",
        fidelity, static_cast<long long>(pulses), t_serial, t_parallel,
        t_serial / t_parallel, same_tallies(serial, parallel) ? "yes" : "NO");
    if (!same_tallies(serial, parallel)) return 1;
  }

  // sweep kernel: grid points across the worker pool
  qcka::SweepSpec spec;
  spec.variable = qcka::SweepVariable::Distance;
  spec.min = 0;
  spec.max = 200;
  spec.step = 10;
  spec.mode = qcka::SweepMode::Asymptotic;
  spec.params.n_participants = 4;
  spec.params.distances_km.assign(3, 0.0);

  const auto start = std::chrono::steady_clock::now();
  const auto rows = qcka::run_sweep(spec);
  std::printf("sweep      %zu optimized points in %.3fs\n", rows.size(),
              seconds_since(start));
  return 0;
}
