#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qcka {

// Dense statevector over the 2(n-1)-qubit register (a1, b1, a2, b2, ...).
// Qubit q occupies bit (num_qubits-1-q) of the amplitude index, so |a1 b1 a2 b2>
// reads left to right.
class StateVector {
 public:
  explicit StateVector(int num_qubits);

  // |Phi+>^(n-1) with pair (a_i, b_i) on qubits (2i-2, 2i-1). Participant
  // counts outside [2, 8] are rejected: the register is capped at 14 qubits.
  static StateVector bell_product(int n_participants);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amps_.size(); }
  std::complex<double> amplitude(std::size_t index) const { return amps_[index]; }
  double norm() const;

  void apply_cnot(int control, int target);

 private:
  int num_qubits_;
  std::vector<std::complex<double>> amps_;
};

// Register positions of a_i and b_i, i in 1..n-1.
inline int qubit_a(int i) { return 2 * (i - 1); }
inline int qubit_b(int i) { return 2 * (i - 1) + 1; }

// The entangling schedule: local CNOTs a1 -> a_i in order, then non-local
// CNOTs a_i -> b_i, for i = 2..n-1. Leaves {a1, b1, ..., b_{n-1}} in the
// n-party GHZ state and every a_i (i >= 2) in |+>.
void apply_virtual_circuit(StateVector& state, int n_participants);

// Applies the same gates in reverse order; undoes apply_virtual_circuit.
void apply_virtual_circuit_reversed(StateVector& state, int n_participants);

// Uhlmann fidelity sqrt(<GHZ| rho |GHZ>) of the reduced state of `subsystem`
// with the GHZ state of matching size. Throws on out-of-range or duplicate
// qubit indices.
double ghz_fidelity(const StateVector& state, std::span<const int> subsystem);

// Uhlmann fidelity of one qubit's reduced state with |+>.
double plus_fidelity(const StateVector& state, int qubit);

// Computational-basis outcome distribution |amplitude|^2.
std::vector<double> measurement_distribution(const StateVector& state);

}  // namespace qcka
