#include "qcka/ghz.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qcka {

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1 || num_qubits > 14)
    throw std::invalid_argument("StateVector: register size must be 1..14 qubits");
  amps_.assign(std::size_t{1} << num_qubits, {0.0, 0.0});
}

StateVector StateVector::bell_product(int n_participants) {
  if (n_participants < 2 || n_participants > 8)
    throw std::invalid_argument("bell_product: n must be in [2, 8]");
  const int pairs = n_participants - 1;
  StateVector state(2 * pairs);
  const double amp = std::pow(0.5, pairs / 2.0);
  // sum over a_i = b_i patterns; qubit q sits at bit (num_qubits-1-q)
  for (std::size_t pattern = 0; pattern < (std::size_t{1} << pairs); ++pattern) {
    std::size_t index = 0;
    for (int i = 0; i < pairs; ++i) {
      if (pattern >> i & 1) {
        index |= std::size_t{1} << (state.num_qubits_ - 1 - qubit_a(i + 1));
        index |= std::size_t{1} << (state.num_qubits_ - 1 - qubit_b(i + 1));
      }
    }
    state.amps_[index] = {amp, 0.0};
  }
  return state;
}

double StateVector::norm() const {
  double sum = 0.0;
  for (const std::complex<double>& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

void StateVector::apply_cnot(int control, int target) {
  if (control < 0 || control >= num_qubits_ || target < 0 ||
      target >= num_qubits_ || control == target)
    throw std::invalid_argument("apply_cnot: bad qubit indices");
  const std::size_t control_mask =
      std::size_t{1} << (num_qubits_ - 1 - control);
  const std::size_t target_mask = std::size_t{1} << (num_qubits_ - 1 - target);
  for (std::size_t index = 0; index < amps_.size(); ++index) {
    if ((index & control_mask) && !(index & target_mask))
      std::swap(amps_[index], amps_[index | target_mask]);
  }
}

void apply_virtual_circuit(StateVector& state, int n_participants) {
  if (2 * (n_participants - 1) != state.num_qubits())
    throw std::invalid_argument("apply_virtual_circuit: register/participant mismatch");
  for (int i = 2; i < n_participants; ++i)
    state.apply_cnot(qubit_a(1), qubit_a(i));
  for (int i = 2; i < n_participants; ++i)
    state.apply_cnot(qubit_a(i), qubit_b(i));
}

void apply_virtual_circuit_reversed(StateVector& state, int n_participants) {
  if (2 * (n_participants - 1) != state.num_qubits())
    throw std::invalid_argument("apply_virtual_circuit: register/participant mismatch");
  for (int i = n_participants - 1; i >= 2; --i)
    state.apply_cnot(qubit_a(i), qubit_b(i));
  for (int i = n_participants - 1; i >= 2; --i)
    state.apply_cnot(qubit_a(1), qubit_a(i));
}

namespace {

void check_subsystem(const StateVector& state, std::span<const int> subsystem) {
  if (subsystem.empty())
    throw std::invalid_argument("subsystem must not be empty");
  std::vector<bool> seen(static_cast<std::size_t>(state.num_qubits()), false);
  for (int q : subsystem) {
    if (q < 0 || q >= state.num_qubits())
      throw std::invalid_argument("subsystem qubit out of range");
    if (seen[static_cast<std::size_t>(q)])
      throw std::invalid_argument("duplicate subsystem qubit");
    seen[static_cast<std::size_t>(q)] = true;
  }
}

}  // namespace

double ghz_fidelity(const StateVector& state, std::span<const int> subsystem) {
  check_subsystem(state, subsystem);
  const int n = state.num_qubits();
  std::size_t sub_mask = 0;
  for (int q : subsystem) sub_mask |= std::size_t{1} << (n - 1 - q);

  // <GHZ| rho |GHZ> = (1/2) sum_env |psi(sub=0,env) + psi(sub=1,env)|^2
  double overlap = 0.0;
  const std::size_t size = state.size();
  for (std::size_t index = 0; index < size; ++index) {
    if (index & sub_mask) continue;  // enumerate environment patterns only
    const std::complex<double> a0 = state.amplitude(index);
    const std::complex<double> a1 = state.amplitude(index | sub_mask);
    overlap += 0.5 * std::norm(a0 + a1);
  }
  return std::sqrt(overlap);
}

double plus_fidelity(const StateVector& state, int qubit) {
  const int subsystem[1] = {qubit};
  // |+> is the single-qubit GHZ state under the same formula
  return ghz_fidelity(state, subsystem);
}

std::vector<double> measurement_distribution(const StateVector& state) {
  std::vector<double> probs(state.size());
  for (std::size_t i = 0; i < state.size(); ++i)
    probs[i] = std::norm(state.amplitude(i));
  return probs;
}

}  // namespace qcka
