#include "hamiltonian.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>

#include "lanczos.hpp"

namespace hv {

namespace {

inline int parity_sign(std::size_t bits) {
  return (std::popcount(bits) & 1) ? -1 : 1;
}

void check_cap(int qubits, int cap) {
  if (qubits > cap)
    throw std::domain_error("qubit register of size " + std::to_string(qubits) +
                            " exceeds the configured cap of " +
                            std::to_string(cap));
}

}  // namespace

SparseOperator::SparseOperator(int qubits) : qubits_(qubits) {
  if (qubits < 1 || qubits > 62)
    throw std::invalid_argument("unsupported qubit count");
}

void SparseOperator::add_hop(int a, int b, double coeff) {
  if (a == b || a < 1 || b < 1 || a > qubits_ || b > qubits_)
    throw std::invalid_argument("invalid hop qubits");
  if (a > b) std::swap(a, b);
  HopTerm term;
  term.a = a;
  term.b = b;
  term.coeff = coeff;
  term.bit_a = std::size_t{1} << (a - 1);
  term.bit_b = std::size_t{1} << (b - 1);
  term.string_mask = ((std::size_t{1} << (b - 1)) - 1) &
                     ~((std::size_t{1} << a) - 1);
  hops_.push_back(term);
}

void SparseOperator::add_pair_diag(int a, int b, double coeff) {
  pair_diag_qubits_.push_back({a, b});
  pair_diag_coeffs_.push_back(coeff);
  diagonal_valid_ = false;
}

void SparseOperator::add_single_diag(int q, double coeff) {
  single_diags_.emplace_back(q, coeff);
  diagonal_valid_ = false;
}

void SparseOperator::add_shift(double c) {
  shift_ += c;
  diagonal_valid_ = false;
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& other) {
  if (other.qubits_ != qubits_)
    throw std::invalid_argument("operator dimensions differ");
  hops_.insert(hops_.end(), other.hops_.begin(), other.hops_.end());
  single_diags_.insert(single_diags_.end(), other.single_diags_.begin(),
                       other.single_diags_.end());
  pair_diag_qubits_.insert(pair_diag_qubits_.end(),
                           other.pair_diag_qubits_.begin(),
                           other.pair_diag_qubits_.end());
  pair_diag_coeffs_.insert(pair_diag_coeffs_.end(),
                           other.pair_diag_coeffs_.begin(),
                           other.pair_diag_coeffs_.end());
  shift_ += other.shift_;
  diagonal_valid_ = false;
  return *this;
}

void SparseOperator::rebuild_diagonal() const {
  const std::size_t dim = dimension();
  diagonal_.assign(dim, shift_);
  for (const auto& [q, c] : single_diags_) {
    const std::size_t bit = std::size_t{1} << (q - 1);
    for (std::size_t i = 0; i < dim; ++i)
      if (i & bit) diagonal_[i] += c;
  }
  for (std::size_t k = 0; k < pair_diag_coeffs_.size(); ++k) {
    const std::size_t bits = (std::size_t{1} << (pair_diag_qubits_[k][0] - 1)) |
                             (std::size_t{1} << (pair_diag_qubits_[k][1] - 1));
    const double c = pair_diag_coeffs_[k];
    for (std::size_t i = 0; i < dim; ++i)
      if ((i & bits) == bits) diagonal_[i] += c;
  }
  diagonal_valid_ = true;
}

const std::vector<double>& SparseOperator::diagonal() const {
  if (!diagonal_valid_) rebuild_diagonal();
  return diagonal_;
}

namespace {

// Walks the basis indices with both hop bits clear in contiguous runs. The
// string parity is constant over each run (string bits sit above the low
// bit), so the body gets it precomputed.
template <typename Body>
inline void for_each_hop_run(std::size_t dim, const HopTerm& t, Body&& body) {
  const std::size_t lo = std::min(t.bit_a, t.bit_b);
  const std::size_t hi = std::max(t.bit_a, t.bit_b);
  for (std::size_t outer = 0; outer < dim; outer += hi << 1) {
    for (std::size_t mid = outer; mid < outer + hi; mid += lo << 1) {
      const int sign = parity_sign(mid & t.string_mask);
      body(mid, lo, sign);
    }
  }
}

}  // namespace

void SparseOperator::matvec(const StateVector& x, StateVector& y) const {
  const std::size_t dim = dimension();
  if (x.dimension() != dim || y.dimension() != dim)
    throw std::invalid_argument("matvec dimension mismatch");
  const std::vector<double>& diag = diagonal();
  for (std::size_t i = 0; i < dim; ++i) y.amp[i] = diag[i] * x.amp[i];
  for (const HopTerm& t : hops_) {
    const cdouble* xa = x.amp.data();
    cdouble* ya = y.amp.data();
    for_each_hop_run(dim, t, [&](std::size_t run, std::size_t len, int sign) {
      const double c = t.coeff * sign;
      const cdouble* x10 = xa + (run | t.bit_a);
      const cdouble* x01 = xa + (run | t.bit_b);
      cdouble* y10 = ya + (run | t.bit_a);
      cdouble* y01 = ya + (run | t.bit_b);
      for (std::size_t i = 0; i < len; ++i) {
        y10[i] += c * x01[i];
        y01[i] += c * x10[i];
      }
    });
  }
}

void SparseOperator::matvec(const double* x, double* y) const {
  const std::size_t dim = dimension();
  const std::vector<double>& diag = diagonal();
  for (std::size_t i = 0; i < dim; ++i) y[i] = diag[i] * x[i];
  for (const HopTerm& t : hops_) {
    for_each_hop_run(dim, t, [&](std::size_t run, std::size_t len, int sign) {
      const double c = t.coeff * sign;
      const double* x10 = x + (run | t.bit_a);
      const double* x01 = x + (run | t.bit_b);
      double* y10 = y + (run | t.bit_a);
      double* y01 = y + (run | t.bit_b);
      for (std::size_t i = 0; i < len; ++i) {
        y10[i] += c * x01[i];
        y01[i] += c * x10[i];
      }
    });
  }
}

double SparseOperator::expectation(const StateVector& psi) const {
  const std::size_t dim = dimension();
  if (psi.dimension() != dim)
    throw std::invalid_argument("expectation dimension mismatch");
  const std::vector<double>& diag = diagonal();
  double re = 0.0;
  double im = 0.0;
  const cdouble* a = psi.amp.data();
  for (std::size_t i = 0; i < dim; ++i) re += diag[i] * std::norm(a[i]);
  for (const HopTerm& t : hops_) {
    double term_re = 0.0;
    double term_im = 0.0;
    for_each_hop_run(dim, t, [&](std::size_t run, std::size_t len, int sign) {
      const cdouble* x10 = a + (run | t.bit_a);
      const cdouble* x01 = a + (run | t.bit_b);
      double block_re = 0.0, block_im = 0.0;
      for (std::size_t i = 0; i < len; ++i) {
        const cdouble contrib =
            std::conj(x10[i]) * x01[i] + std::conj(x01[i]) * x10[i];
        block_re += contrib.real();
        block_im += contrib.imag();
      }
      term_re += sign * block_re;
      term_im += sign * block_im;
    });
    re += t.coeff * term_re;
    im += t.coeff * term_im;
  }
  if (std::abs(im) > 1e-10 * (1.0 + std::abs(re)))
    throw std::runtime_error("expectation value has a non-negligible imaginary part");
  return re;
}

DenseMatrix to_dense(const SparseOperator& op) {
  const std::size_t dim = op.dimension();
  if (dim > 4096)
    throw std::domain_error("dense materialization limited to dimension 4096");
  DenseMatrix mat(dim, dim);
  StateVector x(dim), y(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::fill(x.amp.begin(), x.amp.end(), cdouble{0.0, 0.0});
    x.amp[col] = 1.0;
    op.matvec(x, y);
    for (std::size_t row = 0; row < dim; ++row) mat(row, col) = y.amp[row];
  }
  return mat;
}

SparseOperator build_sub_hamiltonian(const Lattice& lat, const TermGroup& group,
                                     int qubit_cap) {
  check_cap(lat.qubits(), qubit_cap);
  SparseOperator op(lat.qubits());
  const int m = lat.sites();
  if (group.alpha == 5) {
    for (int site : group.sites) op.add_pair_diag(site, site + m, lat.U);
  } else {
    for (const Edge& e : group.edges) {
      op.add_hop(e.j, e.jprime, -lat.t);
      op.add_hop(e.j + m, e.jprime + m, -lat.t);
    }
  }
  return op;
}

SparseOperator build_hamiltonian_with(const Lattice& lat, double t, double U,
                                      int qubit_cap) {
  Lattice scaled = lat;
  scaled.t = t;
  scaled.U = U;
  check_cap(lat.qubits(), qubit_cap);
  SparseOperator op(lat.qubits());
  for (const TermGroup& g : term_groups(scaled))
    op += build_sub_hamiltonian(scaled, g, qubit_cap);
  return op;
}

SparseOperator build_hamiltonian(const Lattice& lat, int qubit_cap) {
  return build_hamiltonian_with(lat, lat.t, lat.U, qubit_cap);
}

SparseOperator build_number_operator(const Lattice& lat, Spin spin) {
  SparseOperator op(lat.qubits());
  const int offset = spin == Spin::up ? 0 : lat.sites();
  for (int site = 1; site <= lat.sites(); ++site)
    op.add_single_diag(site + offset, 1.0);
  return op;
}

namespace {

// Shared Lanczos-then-dense driver. In the dense fallback each eigenvector
// is projected through `project` (identity for the unrestricted search);
// since the operator commutes with the projector, a surviving projection is
// itself an eigenvector of the same eigenvalue.
EigenpairResult lowest_eigenpair_driver(
    const SparseOperator& op, const std::vector<double>* initial,
    const std::function<void(StateVector&)>& project) {
  const std::size_t dim = op.dimension();
  LanczosOptions opts;
  opts.initial = initial;
  LanczosResult lr = lowest_eigenpair_lanczos(
      [&op](const double* x, double* y) { op.matvec(x, y); }, dim, opts);

  EigenpairResult res;
  res.matvecs = lr.matvecs;
  if (lr.converged) {
    res.energy = lr.eigenvalue;
    res.residual = lr.residual;
    res.vector = StateVector(dim);
    for (std::size_t i = 0; i < dim; ++i) res.vector.amp[i] = lr.eigenvector[i];
    return res;
  }
  if (dim <= 4096) {
    // Dense fallback; the operator is real symmetric by construction.
    Eigen::MatrixXd dense(dim, dim);
    std::vector<double> x(dim, 0.0), y(dim);
    for (std::size_t col = 0; col < dim; ++col) {
      x[col] = 1.0;
      op.matvec(x.data(), y.data());
      x[col] = 0.0;
      for (std::size_t row = 0; row < dim; ++row) dense(row, col) = y[row];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
      StateVector candidate(dim);
      for (std::size_t i = 0; i < dim; ++i)
        candidate.amp[i] = es.eigenvectors()(i, k);
      project(candidate);
      if (candidate.norm() < 1e-6) continue;
      candidate.normalize();
      res.energy = es.eigenvalues()(k);
      res.vector = std::move(candidate);
      res.used_dense_fallback = true;
      res.residual = 0.0;
      return res;
    }
    throw std::runtime_error("no dense eigenvector survives the sector projection");
  }
  throw std::runtime_error("ground state eigensolver did not converge: residual " +
                           std::to_string(lr.residual) + " after " +
                           std::to_string(lr.matvecs) + " matvecs");
}

}  // namespace

EigenpairResult ground_state(const SparseOperator& op) {
  return lowest_eigenpair_driver(op, nullptr, [](StateVector&) {});
}

EigenpairResult sector_ground_state(const SparseOperator& op, int sites,
                                    int n_up, int n_down) {
  const std::size_t dim = op.dimension();
  const std::size_t site_mask = (std::size_t{1} << sites) - 1;
  auto in_sector = [&](std::size_t index) {
    return std::popcount(index & site_mask) == n_up &&
           std::popcount((index >> sites) & site_mask) == n_down;
  };

  // Seed inside the sector; a spin-number-conserving matvec keeps every
  // Krylov vector there exactly (out-of-sector entries stay hard zero).
  std::vector<double> seed(dim, 0.0);
  std::mt19937_64 rng(0x5ec70f5eedull + n_up * 64 + n_down);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  bool any = false;
  for (std::size_t i = 0; i < dim; ++i) {
    if (in_sector(i)) {
      seed[i] = unif(rng);
      any = true;
    }
  }
  if (!any) throw std::invalid_argument("empty particle-number sector");

  auto project = [&](StateVector& v) {
    for (std::size_t i = 0; i < dim; ++i)
      if (!in_sector(i)) v.amp[i] = cdouble{0.0, 0.0};
  };
  return lowest_eigenpair_driver(op, &seed, project);
}

namespace {

// Sparse real vector over basis indices, kept sorted by index.
using SparseVec = std::vector<std::pair<std::size_t, double>>;

// Applies the creation operator for a single-particle orbital. `orbital`
// holds site amplitudes, `offset` is 0 for spin up and M for spin down.
// Fermionic signs follow from the Jordan-Wigner string: one factor -1 per
// occupied qubit below the created one.
SparseVec apply_creation(const SparseVec& in, const std::vector<double>& orbital,
                         int offset) {
  std::map<std::size_t, double> acc;
  const int m = static_cast<int>(orbital.size());
  for (const auto& [idx, amp] : in) {
    for (int site = 1; site <= m; ++site) {
      if (orbital[site - 1] == 0.0) continue;
      const int q = site + offset;
      const std::size_t bit = std::size_t{1} << (q - 1);
      if (idx & bit) continue;
      const int sign = parity_sign(idx & (bit - 1));
      acc[idx | bit] += sign * amp * orbital[site - 1];
    }
  }
  SparseVec out;
  out.reserve(acc.size());
  for (const auto& [idx, amp] : acc)
    if (amp != 0.0) out.emplace_back(idx, amp);
  return out;
}

double sparse_weighted_dot(const SparseVec& a, const SparseVec& b,
                           const std::function<double(std::size_t)>& weight) {
  double s = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first)
      ++ia;
    else if (ib->first < ia->first)
      ++ib;
    else {
      s += ia->second * ib->second * weight(ia->first);
      ++ia;
      ++ib;
    }
  }
  return s;
}

}  // namespace

ReferenceState noninteracting_reference_state(const Lattice& lat,
                                              double degeneracy_tol,
                                              int subspace_cap,
                                              double perturbation) {
  const int m = lat.sites();
  check_cap(lat.qubits(), kDefaultQubitCap);

  // Single-particle hopping matrix; its filled orbitals generate the
  // many-body ground space of H(U=0) as Slater determinants.
  Eigen::MatrixXd hop = Eigen::MatrixXd::Zero(m, m);
  for (const Edge& e : enumerate_edges(lat)) {
    hop(e.j - 1, e.jprime - 1) = -lat.t;
    hop(e.jprime - 1, e.j - 1) = -lat.t;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hop);

  const double tol = degeneracy_tol * lat.t;
  std::vector<int> negative, zero;
  for (int k = 0; k < m; ++k) {
    const double e = es.eigenvalues()(k);
    if (e < -tol)
      negative.push_back(k);
    else if (e <= tol)
      zero.push_back(k);
  }
  for (int k = 0; k < m; ++k) {
    const double e = std::abs(es.eigenvalues()(k));
    if (e > tol && e < 1e-6 * lat.t)
      throw std::runtime_error("single-particle spectrum too close to zero to classify");
  }

  const int z = static_cast<int>(zero.size());
  const int per_spin = 1 << z;
  const long subspace_dim = static_cast<long>(per_spin) * per_spin;
  if (subspace_dim > subspace_cap)
    throw std::runtime_error("degenerate subspace dimension " +
                             std::to_string(subspace_dim) + " exceeds cap " +
                             std::to_string(subspace_cap));

  std::vector<std::vector<double>> orbitals(m);
  for (int k = 0; k < m; ++k) {
    orbitals[k].resize(m);
    for (int s = 0; s < m; ++s) orbitals[k][s] = es.eigenvectors()(s, k);
  }

  // Basis of the degenerate ground space: all negative orbitals filled for
  // both spins, plus any subset of the zero orbitals per spin.
  std::vector<SparseVec> states(subspace_dim);
  for (int su = 0; su < per_spin; ++su) {
    SparseVec up{{0, 1.0}};
    for (int k : negative) up = apply_creation(up, orbitals[k], 0);
    for (int zi = 0; zi < z; ++zi)
      if (su & (1 << zi)) up = apply_creation(up, orbitals[zero[zi]], 0);
    for (int sd = 0; sd < per_spin; ++sd) {
      SparseVec full = up;
      for (int k : negative) full = apply_creation(full, orbitals[k], m);
      for (int zi = 0; zi < z; ++zi)
        if (sd & (1 << zi)) full = apply_creation(full, orbitals[zero[zi]], m);
      states[su * per_spin + sd] = std::move(full);
    }
  }

  // First-order degenerate perturbation theory with the on-site operator at
  // unit coefficient: project, diagonalize, take the lowest eigenvector.
  const std::size_t site_mask = (std::size_t{1} << m) - 1;
  auto double_occupancy = [m, site_mask](std::size_t idx) {
    return static_cast<double>(std::popcount(idx & (idx >> m) & site_mask));
  };
  Eigen::MatrixXd projected = Eigen::MatrixXd::Zero(subspace_dim, subspace_dim);
  for (long i = 0; i < subspace_dim; ++i)
    for (long j = i; j < subspace_dim; ++j) {
      projected(i, j) = sparse_weighted_dot(states[i], states[j], double_occupancy);
      projected(j, i) = projected(i, j);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> pes(projected);
  const Eigen::VectorXd& weights = pes.eigenvectors().col(0);

  // Fix the overall sign: largest-magnitude amplitude positive, ties broken
  // by the lowest basis index. Returns that index.
  auto fix_sign = [](StateVector& psi) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < psi.dimension(); ++i) {
      const double mag = std::abs(psi.amp[i].real());
      if (mag > best_mag + 1e-15) {
        best_mag = mag;
        best = i;
      }
    }
    if (psi.amp[best].real() < 0.0)
      for (cdouble& a : psi.amp) a = -a;
    return best;
  };

  ReferenceState ref;
  ref.subspace_dimension = static_cast<int>(subspace_dim);
  ref.psi0 = StateVector(lat.dimension());
  for (long i = 0; i < subspace_dim; ++i) {
    if (weights(i) == 0.0) continue;
    for (const auto& [idx, amp] : states[i]) ref.psi0.amp[idx] += weights(i) * amp;
  }
  ref.psi0.normalize();
  std::size_t best = fix_sign(ref.psi0);

  if (subspace_dim > 1 && perturbation > 0.0) {
    // Lift the degeneracy at finite strength: ground state of
    // H(U = perturbation * t) within the selected particle-number sector.
    // The projection state seeds the iteration and pins the sector, where
    // the problem is gapped.
    const SparseOperator h_eps =
        build_hamiltonian_with(lat, lat.t, perturbation * lat.t);
    std::vector<double> seed(ref.psi0.dimension());
    for (std::size_t i = 0; i < seed.size(); ++i) seed[i] = ref.psi0.amp[i].real();
    LanczosOptions opts;
    opts.initial = &seed;
    LanczosResult lifted = lowest_eigenpair_lanczos(
        [&h_eps](const double* x, double* y) { h_eps.matvec(x, y); },
        ref.psi0.dimension(), opts);
    if (!lifted.converged)
      throw std::runtime_error(
          "degeneracy-lifting eigensolve did not converge: residual " +
          std::to_string(lifted.residual));
    for (std::size_t i = 0; i < seed.size(); ++i)
      ref.psi0.amp[i] = lifted.eigenvector[i];
    best = fix_sign(ref.psi0);
  }

  double e0 = 0.0;
  for (int k : negative) e0 += 2.0 * es.eigenvalues()(k);
  ref.noninteracting_energy = e0;
  ref.n_up = std::popcount(best & site_mask);
  ref.n_down = std::popcount((best >> m) & site_mask);
  return ref;
}

GroundTruth compute_ground_truth(const Lattice& lat, int qubit_cap) {
  check_cap(lat.qubits(), qubit_cap);
  GroundTruth gt;
  const ReferenceState ref = noninteracting_reference_state(lat);
  gt.psi0 = ref.psi0;
  const SparseOperator h = build_hamiltonian(lat, qubit_cap);
  // The target is the ground state the evolution can actually reach: both
  // the ansatz and the ramp conserve the spin particle numbers, so psi_g
  // lives in psi_0's sector.
  EigenpairResult pair = sector_ground_state(h, lat.sites(), ref.n_up, ref.n_down);
  gt.eg = pair.energy;
  gt.psig = std::move(pair.vector);
  gt.e0_expectation = h.expectation(gt.psi0);
  gt.initial_fidelity = state_fidelity(gt.psig, gt.psi0);
  return gt;
}

}  // namespace hv
