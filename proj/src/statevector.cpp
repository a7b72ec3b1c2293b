#include "statevector.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hv {

int StateVector::qubits() const {
  int q = 0;
  while ((std::size_t{1} << q) < amp.size()) ++q;
  return q;
}

double StateVector::norm() const {
  double s = 0.0;
  for (const cdouble& a : amp) s += std::norm(a);
  return std::sqrt(s);
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::runtime_error("cannot normalize the zero vector");
  const double inv = 1.0 / n;
  for (cdouble& a : amp) a *= inv;
}

StateVector basis_state(int qubits, std::size_t index) {
  StateVector s(std::size_t{1} << qubits);
  s.amp[index] = 1.0;
  return s;
}

StateVector random_state(int qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  StateVector s(std::size_t{1} << qubits);
  for (cdouble& a : s.amp) a = cdouble{unif(rng), unif(rng)};
  s.normalize();
  return s;
}

cdouble inner(const StateVector& a, const StateVector& b) {
  if (a.dimension() != b.dimension())
    throw std::invalid_argument("state dimensions differ");
  cdouble s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amp.size(); ++i)
    s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  return std::abs(inner(a, b));
}

void apply_t_gate(StateVector& state, int a, int b, double phi) {
  if (a == b) throw std::invalid_argument("t gate needs two distinct qubits");
  const std::size_t bit_a = std::size_t{1} << (a - 1);
  const std::size_t bit_b = std::size_t{1} << (b - 1);
  const std::size_t lo = std::min(bit_a, bit_b);
  const std::size_t hi = std::max(bit_a, bit_b);
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  cdouble* amp = state.amp.data();
  const std::size_t dim = state.dimension();
  // Nested block walk over indices with both gate bits clear; the inner
  // run is contiguous.
  for (std::size_t outer = 0; outer < dim; outer += hi << 1) {
    for (std::size_t mid = outer; mid < outer + hi; mid += lo << 1) {
      for (std::size_t base = mid; base < mid + lo; ++base) {
        const std::size_t ia = base | bit_a;  // (1_a 0_b)
        const std::size_t ib = base | bit_b;  // (0_a 1_b)
        const cdouble xa = amp[ia];
        const cdouble xb = amp[ib];
        amp[ia] = cdouble{c * xa.real() + s * xb.imag(),
                          c * xa.imag() - s * xb.real()};
        amp[ib] = cdouble{c * xb.real() + s * xa.imag(),
                          c * xb.imag() - s * xa.real()};
      }
    }
  }
}

void apply_phase_pair_gate(StateVector& state, int a, int b, double phi,
                           PhaseMode mode) {
  if (a == b)
    throw std::invalid_argument("phase pair gate needs two distinct qubits");
  const std::size_t bit_a = std::size_t{1} << (a - 1);
  const std::size_t bit_b = std::size_t{1} << (b - 1);
  const std::size_t lo = std::min(bit_a, bit_b);
  const std::size_t hi = std::max(bit_a, bit_b);
  // phi == pi exactly (a noiseless CZ) multiplies by -1; special-cased so a
  // zero over-rotation CZ pair is an exact involution.
  const cdouble mult = phi == std::numbers::pi
                           ? cdouble{-1.0, 0.0}
                           : cdouble{std::cos(phi), std::sin(phi)};
  const std::size_t pattern =
      mode == PhaseMode::both_occupied ? (bit_a | bit_b) : bit_a;
  cdouble* amp = state.amp.data();
  const std::size_t dim = state.dimension();
  for (std::size_t outer = 0; outer < dim; outer += hi << 1) {
    for (std::size_t mid = outer; mid < outer + hi; mid += lo << 1) {
      cdouble* block = amp + (mid | pattern);
      for (std::size_t i = 0; i < lo; ++i) block[i] *= mult;
    }
  }
}

}  // namespace hv
