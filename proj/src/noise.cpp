#include "noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace hv {

double fidelity_to_sigma(double fbar_min) {
  if (!(fbar_min > 0.0) || fbar_min > 1.0)
    throw std::domain_error("gate fidelity must lie in (0, 1]");
  return std::sqrt(2.0 * (1.0 - fbar_min));
}

NoiseTable sample_noise(std::size_t slots, int steps, const FidelitySpec& spec,
                        std::uint64_t seed) {
  if (steps < 1) throw std::invalid_argument("steps must be positive");
  NoiseTable table;
  table.seed = seed;
  table.sigma = spec.sigma;
  table.deltas.assign(slots * steps, 0.0);
  if (spec.sigma == 0.0) return table;

  // Box-Muller keeps the stream independent of the standard library's
  // normal_distribution implementation.
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double spare = 0.0;
  bool have_spare = false;
  for (std::size_t i = 0; i < slots; ++i) {
    double d;
    if (have_spare) {
      d = spec.sigma * spare;
      have_spare = false;
    } else {
      double u1 = unif(rng);
      while (u1 <= 0.0) u1 = unif(rng);
      const double u2 = unif(rng);
      const double r = std::sqrt(-2.0 * std::log(u1));
      d = spec.sigma * (r * std::cos(2.0 * std::numbers::pi * u2));
      spare = r * std::sin(2.0 * std::numbers::pi * u2);
      have_spare = true;
    }
    for (int k = 0; k < steps; ++k) table.deltas[k * slots + i] = d;
  }
  return table;
}

NoiseTable sample_noise(std::size_t gate_count, const FidelitySpec& spec,
                        std::uint64_t seed) {
  return sample_noise(gate_count, 1, spec, seed);
}

NoiseTable sample_noise(const Circuit& circuit, const FidelitySpec& spec,
                        std::uint64_t seed) {
  int steps = 0;
  for (const Circuit::Slice& s : circuit.layout)
    steps = std::max(steps, s.step);
  if (steps < 1 || circuit.gates.size() % steps != 0)
    throw std::invalid_argument("circuit layout is not step-uniform");
  const std::size_t slots = circuit.gates.size() / steps;
  // Confirm the step blocks are contiguous and equally sized; the physical
  // gate identity is the position within the step.
  for (const Circuit::Slice& s : circuit.layout) {
    const std::size_t base = (s.step - 1) * slots;
    if (s.begin < base || s.end > base + slots)
      throw std::invalid_argument("circuit layout is not step-uniform");
  }
  return sample_noise(slots, steps, spec, seed);
}

}  // namespace hv
