#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lattice.hpp"
#include "statevector.hpp"

namespace Eigen {
template <typename, int, int, int, int, int>
class Matrix;
}

namespace hv {

// Largest qubit register the dense/sparse machinery will accept.
inline constexpr int kDefaultQubitCap = 20;

// A hopping term -t (s+_a s-_b S + h.c.) between qubits a < b, where S is
// the Jordan-Wigner string over the qubits strictly between a and b. The
// string contributes a factor -1 per occupied intermediate qubit.
struct HopTerm {
  int a = 0;
  int b = 0;
  double coeff = 0.0;
  std::size_t bit_a = 0;
  std::size_t bit_b = 0;
  std::size_t string_mask = 0;
};

// Hermitian operator in the occupation basis, stored as hopping terms plus
// a diagonal. All coefficients are real, so the matrix is real symmetric.
class SparseOperator {
 public:
  explicit SparseOperator(int qubits);

  int qubits() const { return qubits_; }
  std::size_t dimension() const { return std::size_t{1} << qubits_; }

  void add_hop(int a, int b, double coeff);
  void add_pair_diag(int a, int b, double coeff);  // coeff * n_a * n_b
  void add_single_diag(int q, double coeff);       // coeff * n_q
  void add_shift(double c);                        // coeff * identity

  SparseOperator& operator+=(const SparseOperator& other);

  const std::vector<HopTerm>& hops() const { return hops_; }
  const std::vector<double>& diagonal() const;

  // y = A x. Real overload serves the Lanczos iteration.
  void matvec(const StateVector& x, StateVector& y) const;
  void matvec(const double* x, double* y) const;

  // <psi|A|psi>. Checks that the accumulated imaginary part is negligible.
  double expectation(const StateVector& psi) const;

 private:
  void rebuild_diagonal() const;

  int qubits_;
  std::vector<HopTerm> hops_;
  std::vector<std::pair<int, double>> single_diags_;
  std::vector<std::array<int, 2>> pair_diag_qubits_;
  std::vector<double> pair_diag_coeffs_;
  double shift_ = 0.0;
  mutable std::vector<double> diagonal_;
  mutable bool diagonal_valid_ = false;
};

// Dense matrix of the operator, for oracle checks on small systems.
// Throws if the dimension exceeds 1 << 14.
using DenseMatrix =
    Eigen::Matrix<std::complex<double>, -1, -1, 0, -1, -1>;
DenseMatrix to_dense(const SparseOperator& op);

// Jordan-Wigner image of the term group H_alpha, with coefficients -t for
// hops and +U for on-site terms.
SparseOperator build_sub_hamiltonian(const Lattice& lat, const TermGroup& group,
                                     int qubit_cap = kDefaultQubitCap);

// Full Hamiltonian: sum of the five groups.
SparseOperator build_hamiltonian(const Lattice& lat,
                                 int qubit_cap = kDefaultQubitCap);

// Same as build_hamiltonian but with the couplings overridden; used for the
// U = 0 reference problem.
SparseOperator build_hamiltonian_with(const Lattice& lat, double t, double U,
                                      int qubit_cap = kDefaultQubitCap);

// Total particle number for one spin species (diagonal).
SparseOperator build_number_operator(const Lattice& lat, Spin spin);

struct EigenpairResult {
  double energy = 0.0;
  StateVector vector;
  int matvecs = 0;
  double residual = 0.0;
  bool used_dense_fallback = false;
};

// Smallest eigenpair via thick-restart Lanczos; falls back to a dense solve
// for dimension <= 4096 if the iteration stalls. Throws on non-convergence
// with the residual in the message.
EigenpairResult ground_state(const SparseOperator& op);

// Smallest eigenpair within one (N_up, N_down) sector. The operator must
// conserve both spin numbers; the Krylov space is seeded inside the sector
// and stays there exactly.
EigenpairResult sector_ground_state(const SparseOperator& op, int sites,
                                    int n_up, int n_down);

// On-site strength (units of t) of the degeneracy-lifting perturbation.
// 0.02 t reproduces the published initial-state overlaps; with the default
// U = 2t it equals U/100.
inline constexpr double kReferencePerturbation = 0.02;

struct ReferenceState {
  StateVector psi0;
  double noninteracting_energy = 0.0;  // energy of the U=0 ground manifold
  int subspace_dimension = 0;          // degenerate ground space of H(U=0)
  int n_up = 0;
  int n_down = 0;
};

// Reference state |psi_0>: the ground state of the non-interacting model
// with the degeneracy lifted by a weak on-site interaction. The degenerate
// manifold is first resolved by projecting the unit-coefficient on-site
// operator into it (first-order perturbation theory), which pins down the
// particle-number sector; when the manifold is degenerate the state is then
// refined to the sector-restricted ground state of H(U = perturbation * t),
// a gapped problem solved by a seeded Lanczos iteration. Deterministic up
// to a fixed sign convention. perturbation = 0 returns the projection
// (epsilon -> 0) state itself.
ReferenceState noninteracting_reference_state(
    const Lattice& lat, double degeneracy_tol = 1e-9, int subspace_cap = 64,
    double perturbation = kReferencePerturbation);

struct GroundTruth {
  StateVector psi0;
  StateVector psig;
  double eg = 0.0;              // ground energy of the full H
  double e0_expectation = 0.0;  // <psi0|H|psi0>
  double initial_fidelity = 0.0;
};

GroundTruth compute_ground_truth(const Lattice& lat,
                                 int qubit_cap = kDefaultQubitCap);

}  // namespace hv
