#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace hv {

using cdouble = std::complex<double>;

// Complex amplitude vector over the occupation basis. Bit b of a basis
// index holds the occupation of qubit b+1.
struct StateVector {
  std::vector<cdouble> amp;

  StateVector() = default;
  explicit StateVector(std::size_t dim) : amp(dim, cdouble{0.0, 0.0}) {}

  std::size_t dimension() const { return amp.size(); }
  int qubits() const;
  double norm() const;
  void normalize();

  cdouble& operator[](std::size_t i) { return amp[i]; }
  const cdouble& operator[](std::size_t i) const { return amp[i]; }
};

// |index> with amplitude 1.
StateVector basis_state(int qubits, std::size_t index);

// Haar-ish random normalized state, deterministic in seed.
StateVector random_state(int qubits, std::uint64_t seed);

cdouble inner(const StateVector& a, const StateVector& b);

// |<a|b>|, the unsquared overlap.
double state_fidelity(const StateVector& a, const StateVector& b);

// exp(-i phi (s+_a s-_b + s+_b s-_a)): rotates the amplitude pairs with
// occupations (1_a 0_b) and (0_a 1_b) by [cos, -i sin; -i sin, cos];
// (0,0) and (1,1) configurations are untouched.
void apply_t_gate(StateVector& state, int a, int b, double phi);

enum class PhaseMode { both_occupied, first_occupied_second_empty };

// Multiplies amplitudes whose (a, b) occupations match the mode by
// exp(i phi). OnsiteGate uses both_occupied, the CZ variant uses
// first_occupied_second_empty with phi = pi + dphi.
void apply_phase_pair_gate(StateVector& state, int a, int b, double phi,
                           PhaseMode mode);

}  // namespace hv
