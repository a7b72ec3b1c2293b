#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "adiabatic.hpp"
#include "hamiltonian.hpp"
#include "lattice.hpp"
#include "vha.hpp"

namespace hv {

enum class Method { vha, adiabatic, frozen_transfer };

Method parse_method(const std::string& name);
std::string to_string(Method method);

// Everything a table run needs. The config file is flat key=value text with
// the same keys as the CLI flags; command-line overrides win.
struct ExperimentConfig {
  int ncols = 2;
  int nrows = 2;
  double t = 1.0;
  double U = 2.0;
  Method method = Method::vha;
  std::vector<int> n_values = {2, 3, 4, 5};
  std::vector<double> fidelities = {1.0};
  int runs = 0;  // 0 = per-method default (1 noiseless, 100 vha, 10^4 adiabatic)
  std::uint64_t base_seed = 20250501;
  StartFamily starts = StartFamily::baseline;
  TauGrid tau_grid;
  std::string out;  // CSV path; empty writes no file
  int threads = 2;
  int qubit_cap = kDefaultQubitCap;

  Lattice lattice() const;
  int runs_for(double fbar) const;
};

// Parses "key = value" lines; '#' starts a comment. Unknown keys throw.
ExperimentConfig load_config_file(const std::string& path);
void apply_config_line(ExperimentConfig& cfg, const std::string& key,
                       const std::string& value);

// One realization of one (method, n, fbar) cell.
struct RunRecord {
  std::string lattice;
  Method method = Method::vha;
  int n = 0;
  double fbar = 1.0;
  std::uint64_t seed = 0;
  std::string start_set;  // tau for the adiabatic method
  double tau = 0.0;
  double energy = 0.0;
  double fidelity = 0.0;
  long evaluations = 0;
  bool converged = true;
};

struct CellSummary {
  int n = 0;
  double fbar = 1.0;
  int runs = 0;
  double mean_fidelity = 0.0;
  double std_fidelity = 0.0;
  double mean_energy = 0.0;
};

struct TableResult {
  std::vector<RunRecord> records;
  std::vector<CellSummary> cells;
  std::string csv;      // full CSV content, one row per realization
  std::string summary;  // formatted table, percent with two decimals
};

// Runs every (n, fbar) cell of the grid. Writes the CSV to cfg.out when set.
TableResult run_table(const ExperimentConfig& cfg);

// E_g, <psi0|H|psi0>, the initial overlap, the Hilbert dimension and the
// per-step gate count for the configured lattice.
std::string ground_truth_report(const ExperimentConfig& cfg);

// Cached exact ground truth per (ncols, nrows, t, U); the 3x3 eigensolve is
// expensive enough to share.
std::shared_ptr<const GroundTruth> cached_ground_truth(const Lattice& lat,
                                                       int qubit_cap);

// Zero-noise optimum reused by the frozen-transfer method, cached per
// (lattice, n, family).
std::shared_ptr<const VhaResult> cached_noiseless_optimum(
    const Lattice& lat, int n, StartFamily family, int threads);

}  // namespace hv
