#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "circuit.hpp"

namespace hv {

// Over-rotation standard deviation for an averaged minimal gate fidelity:
// E[cos dphi] = fbar to second order gives sigma = sqrt(2 (1 - fbar)).
// Throws std::domain_error outside (0, 1].
double fidelity_to_sigma(double fbar_min);

struct FidelitySpec {
  double fbar_min = 1.0;
  double sigma = 0.0;

  static FidelitySpec from_fbar(double fbar) {
    return {fbar, fidelity_to_sigma(fbar)};
  }
};

// Frozen over-rotations for one error realization, one entry per gate
// instance of the circuit. The over-rotation belongs to the physical gate:
// the per-step gate sequence is identical in every step, and a given slot
// keeps its miscalibration each time it fires, so the per-step draws are
// repeated across steps. Every objective evaluation of a run sees the same
// deltas.
struct NoiseTable {
  std::vector<double> deltas;
  std::uint64_t seed = 0;
  double sigma = 0.0;

  bool is_zero() const { return sigma == 0.0; }
};

// `slots` independent Normal(0, sigma^2) draws tiled over `steps`
// repetitions; deterministic in the seed.
NoiseTable sample_noise(std::size_t slots, int steps, const FidelitySpec& spec,
                        std::uint64_t seed);

// One independent draw per entry (steps = 1).
NoiseTable sample_noise(std::size_t gate_count, const FidelitySpec& spec,
                        std::uint64_t seed);

// Per-physical-gate table matching the circuit layout.
NoiseTable sample_noise(const Circuit& circuit, const FidelitySpec& spec,
                        std::uint64_t seed);

}  // namespace hv
