#pragma once

#include <string>
#include <vector>

#include "circuit.hpp"
#include "hamiltonian.hpp"
#include "noise.hpp"

namespace hv {

enum class StartFamily { baseline, improved };

struct StartSet {
  std::string id;
  ThetaMatrix theta;
};

// Start parameter sets for the optimization. The baseline family holds the
// three physically motivated sets (adiabatic-like, ramped, even); the
// improved family extends them with a short-time adiabatic set and ten
// uniform grids r/t, 14 sets in total.
std::vector<StartSet> start_parameter_sets(int n, StartFamily family,
                                           const Lattice& lat);

StartFamily parse_start_family(const std::string& name);
std::string to_string(StartFamily family);

// Energy of the noisy ansatz state: compiles the circuit for theta, applies
// it with the frozen over-rotations to psi0 and evaluates <psi_f|H|psi_f>.
// Deterministic in (theta, noise).
double objective(const ThetaMatrix& theta, const Lattice& lat,
                 const NoiseTable& noise, const StateVector& psi0,
                 const SparseOperator& h);

// Final state of the noisy circuit at the given parameters.
StateVector vha_final_state(const Lattice& lat, const ThetaMatrix& theta,
                            const NoiseTable& noise, const StateVector& psi0);

struct StartOutcome {
  std::string id;
  double energy = 0.0;
  double fidelity = 0.0;
  long evaluations = 0;
  bool converged = false;
};

struct VhaResult {
  ThetaMatrix best_theta;
  double final_energy = 0.0;
  double final_fidelity = 0.0;
  long evaluations = 0;  // summed over all starts
  std::string start_set_id;
  bool converged = false;
  std::vector<StartOutcome> starts;
};

struct OptimizeOptions {
  double ftol_scale = 1e-8;   // convergence threshold in units of t
  long evals_per_dim = 400;   // evaluation cap per start: evals_per_dim * 5n
  int threads = 1;            // parallelism across starts
};

// Multi-start derivative-free minimization of the objective. Each start
// runs restarted Nelder-Mead until the energy stops improving or its
// evaluation budget is exhausted; the result with the lowest energy wins
// and its fidelity against psig is reported.
VhaResult optimize(const Lattice& lat, int n, const NoiseTable& noise,
                   StartFamily family, const GroundTruth& gt,
                   const OptimizeOptions& opts = {});

// Evaluates the noisy circuit at parameters obtained elsewhere (typically a
// zero-noise optimum) without re-optimizing; returns |<psi_g|psi_f>|.
double frozen_parameter_transfer(const Lattice& lat,
                                 const ThetaMatrix& theta_star,
                                 const NoiseTable& noise,
                                 const GroundTruth& gt);

}  // namespace hv
