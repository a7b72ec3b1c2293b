#pragma once

#include <vector>

#include "circuit.hpp"
#include "hamiltonian.hpp"
#include "noise.hpp"

namespace hv {

// Grid of total evolution times, expressed as tau * t (dimensionless).
struct TauGrid {
  double min_tau_t = 0.25;
  double max_tau_t = 10.0;
  int points = 40;

  std::vector<double> values(double t) const;  // physical taus
};

// Parameters reproducing one Trotterized ramp of duration tau: the hopping
// groups get theta = -tau/n per step and the interaction is switched on
// linearly, theta_5 = -(tau/n)(k/n). The circuit is the VHA circuit at
// these parameters, so gate counts match step for step.
ThetaMatrix adiabatic_parameters(int n, double tau);

struct AdiabaticResult {
  double tau = 0.0;        // maximizer (physical units)
  double fidelity = 0.0;   // |<psi_g|psi_f>| at the maximizer
  double energy = 0.0;     // <psi_f|H|psi_f> at the maximizer
};

// Scans the grid with a frozen noise table and returns the tau that
// maximizes the final state fidelity. tau = 0 (no evolution) is always a
// candidate, so the result never falls below the bare initial overlap at
// zero noise; the coarse maximizer is refined by two local zoom passes.
AdiabaticResult optimize_tau(const Lattice& lat, int n, const NoiseTable& noise,
                             const TauGrid& grid, const GroundTruth& gt);

// Fidelity and energy of the ramp at one fixed tau under the given noise.
AdiabaticResult evaluate_ramp(const Lattice& lat, int n, double tau,
                              const NoiseTable& noise, const GroundTruth& gt);

}  // namespace hv
