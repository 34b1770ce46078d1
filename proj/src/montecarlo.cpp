#include "qcka/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "qcka/photonic.hpp"
#include "qcka/rates.hpp"
#include "qcka/rng.hpp"

namespace qcka {

namespace {

constexpr std::int64_t kBlockPulses = 1 << 16;

struct StreamModel {
  // bit-level operating point
  double q = 0.0;
  double e = 0.0;
  // click-level physics
  double eta_a = 0.0, eta_b = 0.0;
  double y0 = 0.0;
};

struct PulseOutcome {
  bool click_a = false;
  bool click_b = false;
  Basis basis_a = Basis::Z;
  Basis basis_b = Basis::Z;
  std::uint8_t bit_a = 0;
  std::uint8_t bit_b = 0;
};

// Pair count of one emission: walk the cumulative distribution.
int sample_pair_count(PulseRng& rng, double lambda) {
  const double u = rng.uniform();
  double p = pair_emission_prob(0, lambda);
  double cumulative = p;
  int k = 0;
  while (u >= cumulative && k < 10'000) {
    // P(k+1) = P(k) * (k+2)/(k+1) * lambda/(1+lambda)
    p *= (static_cast<double>(k) + 2.0) / (k + 1.0) * lambda / (1.0 + lambda);
    cumulative += p;
    ++k;
  }
  return k;
}

PulseOutcome sample_bit_level(PulseRng& rng, const StreamModel& model,
                              double pz) {
  PulseOutcome out;
  const bool detected = rng.bernoulli(model.q);
  out.basis_a = rng.bernoulli(pz) ? Basis::Z : Basis::X;
  out.basis_b = rng.bernoulli(pz) ? Basis::Z : Basis::X;
  out.bit_a = rng.bit();
  const bool flip = rng.bernoulli(model.e);
  out.click_a = out.click_b = detected;
  out.bit_b = out.bit_a ^ static_cast<std::uint8_t>(flip);
  return out;
}

PulseOutcome sample_click_level(PulseRng& rng, const StreamModel& model,
                                double pz, double lambda, double e0,
                                double ed) {
  PulseOutcome out;
  const int pairs = sample_pair_count(rng, lambda);
  int arrived_a = 0, arrived_b = 0, delivered_both = 0;
  for (int j = 0; j < pairs; ++j) {
    const bool a = rng.bernoulli(model.eta_a);
    const bool b = rng.bernoulli(model.eta_b);
    arrived_a += a;
    arrived_b += b;
    delivered_both += a && b;
  }
  const bool dark_a = rng.bernoulli(model.y0);
  const bool dark_b = rng.bernoulli(model.y0);
  out.click_a = arrived_a > 0 || dark_a;
  out.click_b = arrived_b > 0 || dark_b;
  out.basis_a = rng.bernoulli(pz) ? Basis::Z : Basis::X;
  out.basis_b = rng.bernoulli(pz) ? Basis::Z : Basis::X;
  out.bit_a = rng.bit();
  // A coincidence inherits the optical misalignment only when a unique pair
  // fed both sides and no dark count fired; anything ambiguous is background.
  const bool correlated = delivered_both == 1 && !dark_a && !dark_b;
  const bool flip = rng.bernoulli(correlated ? ed : e0);
  out.bit_b = out.bit_a ^ static_cast<std::uint8_t>(flip);
  return out;
}

struct StreamCounters {
  std::int64_t coincidences = 0;
  std::int64_t wrong_z = 0;
  std::int64_t wrong_x = 0;
};

struct BlockData {
  std::vector<SiftedStream> sifted;     // per stream
  std::vector<StreamCounters> counters; // per stream
};

std::vector<StreamModel> build_models(const SimConfig& config) {
  const SystemParams& p = config.params;
  const ChannelEfficiencies eff = channel_efficiencies(p);
  const std::vector<PairLinkRates> links = link_rates(p);
  std::vector<StreamModel> models(links.size());
  for (std::size_t i = 0; i < links.size(); ++i) {
    models[i].q = config.gain_override >= 0.0 ? config.gain_override : links[i].q_z;
    models[i].e =
        config.error_override >= 0.0 ? config.error_override : links[i].e_pair;
    models[i].eta_a = eff.to_alice[i];
    models[i].eta_b = eff.to_bob[i];
    models[i].y0 = p.dark_count_yield;
  }
  return models;
}

PulseOutcome sample_pulse(const SimConfig& config,
                          const std::vector<StreamModel>& models, int stream,
                          std::int64_t pulse) {
  PulseRng rng(config.seed, static_cast<std::uint64_t>(stream),
               static_cast<std::uint64_t>(pulse));
  const SystemParams& p = config.params;
  if (config.fidelity == Fidelity::BitLevel)
    return sample_bit_level(rng, models[stream], p.basis_z_prob);
  return sample_click_level(rng, models[stream], p.basis_z_prob, p.lambda,
                            p.background_error, p.misalignment);
}

void record_outcome(const PulseOutcome& outcome, std::int64_t pulse,
                    SiftedStream& sifted, StreamCounters& counters) {
  if (!(outcome.click_a && outcome.click_b)) return;
  ++counters.coincidences;
  if (outcome.basis_a != outcome.basis_b) return;
  const ValidEvent event{pulse, outcome.bit_a, outcome.bit_b};
  if (outcome.basis_a == Basis::Z) {
    sifted.z.push_back(event);
    counters.wrong_z += outcome.bit_a != outcome.bit_b;
  } else {
    sifted.x.push_back(event);
    counters.wrong_x += outcome.bit_a != outcome.bit_b;
  }
}

SimReport finalize(const SimConfig& config,
                   const std::vector<StreamModel>& models,
                   std::vector<SiftedStream> sifted,
                   const std::vector<StreamCounters>& counters,
                   double seconds) {
  SimReport report;
  report.fidelity = config.fidelity;
  report.seed = config.seed;
  report.pulses = config.pulses;
  report.n_participants = config.params.n_participants;
  report.lambda = config.params.lambda;
  report.p_z = config.params.basis_z_prob;
  report.seconds = seconds;

  std::vector<double> errors_ana;
  for (std::size_t i = 0; i < models.size(); ++i) {
    StreamReport sr;
    sr.coincidences = counters[i].coincidences;
    sr.valid_z = static_cast<std::int64_t>(sifted[i].z.size());
    sr.valid_x = static_cast<std::int64_t>(sifted[i].x.size());
    sr.wrong_z = counters[i].wrong_z;
    sr.wrong_x = counters[i].wrong_x;
    sr.q_emp = static_cast<double>(sr.coincidences) / config.pulses;
    sr.e_emp_z = sr.valid_z > 0 ? static_cast<double>(sr.wrong_z) / sr.valid_z : 0.0;
    sr.e_emp_x = sr.valid_x > 0 ? static_cast<double>(sr.wrong_x) / sr.valid_x : 0.0;
    const std::int64_t valid = sr.valid_z + sr.valid_x;
    sr.e_emp = valid > 0
                   ? static_cast<double>(sr.wrong_z + sr.wrong_x) / valid
                   : 0.0;
    if (config.fidelity == Fidelity::BitLevel) {
      sr.q_ana = models[i].q;
      sr.e_ana = models[i].e;
    } else {
      sr.q_ana = gain_z(models[i].eta_a, models[i].eta_b, models[i].y0,
                        models[i].y0, config.params.lambda);
      sr.e_ana = pair_qber(models[i].eta_a, models[i].eta_b, models[i].y0,
                           models[i].y0, config.params.lambda,
                           config.params.background_error,
                           config.params.misalignment);
    }
    errors_ana.push_back(sr.e_ana);
    report.streams.push_back(sr);
  }

  report.tally = tally_matched(sifted);
  report.error_x_ana = error_x_total(errors_ana);
  report.error_z_ana = error_z_total(errors_ana);
  return report;
}

}  // namespace

SimReport simulate_reference(const SimConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate(config.params);
  if (config.pulses < 1)
    throw std::invalid_argument("simulate: pulses must be >= 1");

  const std::vector<StreamModel> models = build_models(config);
  const int n_streams = static_cast<int>(models.size());
  std::vector<SiftedStream> sifted(n_streams);
  std::vector<StreamCounters> counters(n_streams);

  for (std::int64_t pulse = 0; pulse < config.pulses; ++pulse) {
    for (int s = 0; s < n_streams; ++s) {
      const PulseOutcome outcome = sample_pulse(config, models, s, pulse);
      record_outcome(outcome, pulse, sifted[s], counters[s]);
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return finalize(config, models, std::move(sifted), counters, seconds);
}

SimReport simulate(const SimConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  validate(config.params);
  if (config.pulses < 1)
    throw std::invalid_argument("simulate: pulses must be >= 1");

  const std::vector<StreamModel> models = build_models(config);
  const int n_streams = static_cast<int>(models.size());
  const std::int64_t n_blocks =
      (config.pulses + kBlockPulses - 1) / kBlockPulses;
  std::vector<BlockData> blocks(static_cast<std::size_t>(n_blocks));

#pragma omp parallel for schedule(dynamic)
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    BlockData& block = blocks[static_cast<std::size_t>(b)];
    block.sifted.resize(n_streams);
    block.counters.resize(n_streams);
    const std::int64_t begin = b * kBlockPulses;
    const std::int64_t end = std::min(begin + kBlockPulses, config.pulses);
    for (std::int64_t pulse = begin; pulse < end; ++pulse) {
      for (int s = 0; s < n_streams; ++s) {
        const PulseOutcome outcome = sample_pulse(config, models, s, pulse);
        record_outcome(outcome, pulse, block.sifted[s], block.counters[s]);
      }
    }
  }

  // Merge in block order: identical event ordering to the serial path.
  std::vector<SiftedStream> sifted(n_streams);
  std::vector<StreamCounters> counters(n_streams);
  for (const BlockData& block : blocks) {
    for (int s = 0; s < n_streams; ++s) {
      sifted[s].z.insert(sifted[s].z.end(), block.sifted[s].z.begin(),
                         block.sifted[s].z.end());
      sifted[s].x.insert(sifted[s].x.end(), block.sifted[s].x.begin(),
                         block.sifted[s].x.end());
      counters[s].coincidences += block.counters[s].coincidences;
      counters[s].wrong_z += block.counters[s].wrong_z;
      counters[s].wrong_x += block.counters[s].wrong_x;
    }
  }

  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return finalize(config, models, std::move(sifted), counters, seconds);
}

std::vector<std::vector<PairEvent>> generate_events(const SimConfig& config) {
  validate(config.params);
  const std::vector<StreamModel> models = build_models(config);
  const int n_streams = static_cast<int>(models.size());
  std::vector<std::vector<PairEvent>> events(n_streams);
  for (auto& stream : events)
    stream.reserve(static_cast<std::size_t>(config.pulses));

  for (std::int64_t pulse = 0; pulse < config.pulses; ++pulse) {
    for (int s = 0; s < n_streams; ++s) {
      const PulseOutcome outcome = sample_pulse(config, models, s, pulse);
      PairEvent event;
      event.stream = s;
      event.slot = pulse;
      if (outcome.click_a) {
        event.alice_basis = outcome.basis_a;
        event.alice_bit = outcome.bit_a;
      }
      if (outcome.click_b) {
        event.bob_basis = outcome.basis_b;
        event.bob_bit = outcome.bit_b;
      }
      events[s].push_back(event);
    }
  }
  return events;
}

namespace {

const char* basis_name(Basis basis) { return basis == Basis::Z ? "Z" : "X"; }

std::string format_number(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

}  // namespace

void write_event_csv(std::ostream& out,
                     std::span<const std::vector<PairEvent>> streams) {
  out << "stream,slot,alice_basis,alice_bit,bob_basis,bob_bit\n";
  for (const std::vector<PairEvent>& stream : streams) {
    for (const PairEvent& e : stream) {
      out << e.stream << ',' << e.slot << ',';
      if (e.alice_basis)
        out << basis_name(*e.alice_basis) << ',' << int(e.alice_bit) << ',';
      else
        out << ",,";
      if (e.bob_basis)
        out << basis_name(*e.bob_basis) << ',' << int(e.bob_bit);
      else
        out << ',';
      out << '\n';
    }
  }
}

std::string report_csv_header() {
  return "fidelity,n,pulses,seed,lambda,p_z,groups_z,groups_x,"
         "q_emp,q_ana,e_emp,e_ana,e_x_emp,e_x_ana,e_z_emp,e_z_ana,"
         "max_sigma_dev,max_e_rel_dev";
}

std::string report_csv_row(const SimReport& r) {
  double q_emp = 0, q_ana = 0, e_emp = 0, e_ana = 0;
  for (const StreamReport& s : r.streams) {
    q_emp += s.q_emp;
    q_ana += s.q_ana;
    e_emp += s.e_emp;
    e_ana += s.e_ana;
  }
  const double inv = r.streams.empty() ? 0.0 : 1.0 / r.streams.size();
  std::ostringstream out;
  out << (r.fidelity == Fidelity::BitLevel ? "bit" : "click") << ','
      << r.n_participants << ',' << r.pulses << ',' << r.seed << ','
      << format_number(r.lambda) << ',' << format_number(r.p_z) << ','
      << r.tally.groups_z << ',' << r.tally.groups_x << ','
      << format_number(q_emp * inv) << ',' << format_number(q_ana * inv) << ','
      << format_number(e_emp * inv) << ',' << format_number(e_ana * inv) << ','
      << format_number(r.tally.error_x()) << ','
      << format_number(r.error_x_ana) << ','
      << format_number(r.tally.error_z()) << ','
      << format_number(r.error_z_ana) << ','
      << format_number(max_sigma_deviation(r)) << ','
      << format_number(max_error_rel_deviation(r));
  return out.str();
}

namespace {

double sigma_dev(double emp, double ana, double samples) {
  if (samples <= 0.0) return 0.0;
  if (ana <= 0.0 || ana >= 1.0)
    return emp == ana ? 0.0 : std::numeric_limits<double>::infinity();
  return std::abs(emp - ana) / std::sqrt(ana * (1.0 - ana) / samples);
}

}  // namespace

double max_sigma_deviation(const SimReport& r) {
  double worst = 0.0;
  for (const StreamReport& s : r.streams) {
    worst = std::max(worst,
                     sigma_dev(s.q_emp, s.q_ana, static_cast<double>(r.pulses)));
  }
  worst = std::max(worst, sigma_dev(r.tally.error_x(), r.error_x_ana,
                                    static_cast<double>(r.tally.groups_x)));
  worst = std::max(worst, sigma_dev(r.tally.error_z(), r.error_z_ana,
                                    static_cast<double>(r.tally.groups_z)));
  for (std::size_t i = 0; i < r.streams.size(); ++i) {
    worst = std::max(
        worst, sigma_dev(r.tally.marginal_z(static_cast<int>(i)),
                         r.streams[i].e_ana,
                         static_cast<double>(r.tally.groups_z)));
  }
  return worst;
}

double max_error_rel_deviation(const SimReport& r) {
  double worst = 0.0;
  for (const StreamReport& s : r.streams) {
    if (s.e_ana <= 0.0) {
      if (s.e_emp > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    worst = std::max(worst, std::abs(s.e_emp - s.e_ana) / s.e_ana);
  }
  return worst;
}

std::string report_summary(const SimReport& r) {
  std::ostringstream out;
  out << "simulation: " << (r.fidelity == Fidelity::BitLevel ? "bit" : "click")
      << "-level, n=" << r.n_participants << ", pulses=" << r.pulses
      << ", seed=" << r.seed << ", lambda=" << format_number(r.lambda)
      << ", p_z=" << format_number(r.p_z) << "\n";
  out << "stream      q_emp        q_ana     sigma      e_emp        e_ana    "
         "rel_dev\n";
  for (std::size_t i = 0; i < r.streams.size(); ++i) {
    const StreamReport& s = r.streams[i];
    char line[160];
    const double q_sigma =
        sigma_dev(s.q_emp, s.q_ana, static_cast<double>(r.pulses));
    const double rel =
        s.e_ana > 0.0 ? (s.e_emp - s.e_ana) / s.e_ana : 0.0;
    std::snprintf(line, sizeof(line),
                  "%6zu  %11.5e  %11.5e  %7.2f  %11.5e  %11.5e  %8.4f\n", i,
                  s.q_emp, s.q_ana, q_sigma, s.e_emp, s.e_ana, rel);
    out << line;
  }
  char line[200];
  std::snprintf(line, sizeof(line),
                "groups: Z=%lld X=%lld\n"
                "E_X     emp=%.6f ana=%.6f\n"
                "E_Z     emp=%.6f ana=%.6f\n",
                static_cast<long long>(r.tally.groups_z),
                static_cast<long long>(r.tally.groups_x), r.tally.error_x(),
                r.error_x_ana, r.tally.error_z(), r.error_z_ana);
  out << line;
  for (std::size_t i = 0; i < r.streams.size(); ++i) {
    std::snprintf(line, sizeof(line), "E_Z^1,%zu emp=%.6f ana=%.6f\n", i + 1,
                  r.tally.marginal_z(static_cast<int>(i)), r.streams[i].e_ana);
    out << line;
  }
  std::snprintf(line, sizeof(line),
                "max deviation: %.3f sigma; pair-error model: %.4f relative\n"
                "wall clock: %.3f s\n",
                max_sigma_deviation(r), max_error_rel_deviation(r), r.seconds);
  out << line;
  return out.str();
}

}  // namespace qcka
