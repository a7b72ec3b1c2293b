#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>

#include <bit>
#include <cmath>

#include "hamiltonian.hpp"
#include "lattice.hpp"

using namespace hv;

namespace {

// Independent second-quantization oracle: matrix elements of the Hubbard
// Hamiltonian from explicit fermionic sign bookkeeping over the ordered
// mode list (qubit 1 first). Never touches the Jordan-Wigner code path.
Eigen::MatrixXd fermionic_oracle(const Lattice& lat) {
  const std::size_t dim = lat.dimension();
  const int m = lat.sites();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  auto sign_below = [](std::size_t state, int mode) {
    const std::size_t below = state & ((std::size_t{1} << (mode - 1)) - 1);
    return (std::popcount(below) & 1) ? -1.0 : 1.0;
  };

  for (std::size_t x = 0; x < dim; ++x) {
    // On-site: U per doubly occupied site.
    for (int site = 1; site <= m; ++site) {
      const std::size_t up = std::size_t{1} << (site - 1);
      const std::size_t dn = std::size_t{1} << (site + m - 1);
      if ((x & up) && (x & dn)) h(x, x) += lat.U;
    }
    // Hopping: -t c^dag_j c_j' + h.c. for both spins.
    for (const Edge& e : enumerate_edges(lat)) {
      for (int offset : {0, m}) {
        const int j = e.j + offset;
        const int jp = e.jprime + offset;
        const std::size_t bj = std::size_t{1} << (j - 1);
        const std::size_t bjp = std::size_t{1} << (jp - 1);
        if ((x & bjp) && !(x & bj)) {
          // annihilate at j', create at j
          double amp = sign_below(x, jp);
          const std::size_t mid = x & ~bjp;
          amp *= sign_below(mid, j);
          h(mid | bj, x) += -lat.t * amp;
        }
        if ((x & bj) && !(x & bjp)) {
          double amp = sign_below(x, j);
          const std::size_t mid = x & ~bj;
          amp *= sign_below(mid, jp);
          h(mid | bjp, x) += -lat.t * amp;
        }
      }
    }
  }
  return h;
}

}  // namespace

TEST_CASE("JW-built Hamiltonian matches the fermionic oracle entry for entry (2x2)") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const Eigen::MatrixXd oracle = fermionic_oracle(lat);
  const DenseMatrix built = to_dense(build_hamiltonian(lat));
  REQUIRE(built.rows() == oracle.rows());
  double max_dev = 0.0;
  for (Eigen::Index i = 0; i < built.rows(); ++i)
    for (Eigen::Index j = 0; j < built.cols(); ++j)
      max_dev = std::max(max_dev, std::abs(built(i, j) - cdouble{oracle(i, j), 0.0}));
  CHECK(max_dev == 0.0);
}

TEST_CASE("group 5 is diagonal with U on doubly occupied sites (2x2)") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const auto groups = term_groups(lat);
  const DenseMatrix h5 = to_dense(build_sub_hamiltonian(lat, groups[4]));
  for (Eigen::Index x = 0; x < h5.rows(); ++x) {
    int doubly = 0;
    for (int site = 0; site < 4; ++site)
      if ((x & (1 << site)) && (x & (1 << (site + 4)))) ++doubly;
    CHECK(h5(x, x) == cdouble{lat.U * doubly, 0.0});
    for (Eigen::Index y = 0; y < h5.cols(); ++y)
      if (x != y) CHECK(h5(x, y) == cdouble{0.0, 0.0});
  }
}

TEST_CASE("the five groups sum exactly to the full Hamiltonian") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  SparseOperator sum(lat.qubits());
  for (const TermGroup& g : term_groups(lat))
    sum += build_sub_hamiltonian(lat, g);
  const DenseMatrix a = to_dense(sum);
  const DenseMatrix b = to_dense(build_hamiltonian(lat));
  CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("the built operator is Hermitian") {
  const Lattice lat = make_lattice(3, 2, 1.0, 2.0);
  const DenseMatrix h = to_dense(build_hamiltonian(lat));
  CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("H commutes with both spin particle numbers (2x2)") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const DenseMatrix h = to_dense(build_hamiltonian(lat));
  for (Spin spin : {Spin::up, Spin::down}) {
    const DenseMatrix n = to_dense(build_number_operator(lat, spin));
    CHECK((h * n - n * h).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("dimension cap guard") {
  const Lattice lat = make_lattice(4, 3, 1.0, 2.0);  // 24 qubits
  CHECK_THROWS_AS(build_hamiltonian(lat), std::domain_error);
  CHECK_THROWS_AS(build_hamiltonian(lat, 20), std::domain_error);
}

TEST_CASE("2x2 at U = 0 has ground energy -4t") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const SparseOperator h0 = build_hamiltonian_with(lat, lat.t, 0.0);
  const EigenpairResult pair = ground_state(h0);
  CHECK(pair.energy == doctest::Approx(-4.0 * lat.t).epsilon(1e-9));
  // Independent check through the dense spectrum.
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(to_dense(h0));
  CHECK(es.eigenvalues()(0) == doctest::Approx(-4.0 * lat.t).epsilon(1e-12));
}

TEST_CASE("shifting H by c I shifts the eigenvalue, not the eigenvector") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  SparseOperator h = build_hamiltonian(lat);
  const EigenpairResult base = ground_state(h);
  h.add_shift(3.25);
  const EigenpairResult shifted = ground_state(h);
  CHECK(shifted.energy == doctest::Approx(base.energy + 3.25).epsilon(1e-9));
  CHECK(state_fidelity(base.vector, shifted.vector) ==
        doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("Lanczos agrees with the dense fallback on the 3x2 system") {
  const Lattice lat = make_lattice(3, 2, 1.0, 2.0);
  const SparseOperator h = build_hamiltonian(lat);
  const EigenpairResult pair = ground_state(h);
  CHECK(!pair.used_dense_fallback);
  CHECK(pair.residual < 1e-9 * 20.0);

  Eigen::MatrixXd dense(h.dimension(), h.dimension());
  std::vector<double> x(h.dimension(), 0.0), y(h.dimension());
  for (std::size_t col = 0; col < h.dimension(); ++col) {
    x[col] = 1.0;
    h.matvec(x.data(), y.data());
    x[col] = 0.0;
    for (std::size_t row = 0; row < h.dimension(); ++row) dense(row, col) = y[row];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense);
  CHECK(pair.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-9));
}

TEST_CASE("variational bound: random states stay above E_g (2x2)") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const SparseOperator h = build_hamiltonian(lat);
  const EigenpairResult pair = ground_state(h);
  for (int trial = 0; trial < 100; ++trial) {
    StateVector s = random_state(lat.qubits(), 1000 + trial);
    CHECK(h.expectation(s) >= pair.energy - 1e-9 * lat.t);
  }
}

TEST_CASE("reference state: 2x2 properties") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);

  // The epsilon -> 0 projection state is an exact member of the U=0 ground
  // eigenspace.
  const ReferenceState proj = noninteracting_reference_state(lat, 1e-9, 64, 0.0);
  CHECK(proj.subspace_dimension == 16);
  CHECK(std::abs(proj.psi0.norm() - 1.0) < 1e-12);
  const SparseOperator h0 = build_hamiltonian_with(lat, lat.t, 0.0);
  CHECK(h0.expectation(proj.psi0) ==
        doctest::Approx(proj.noninteracting_energy).epsilon(1e-9));
  CHECK(proj.noninteracting_energy == doctest::Approx(-4.0 * lat.t).epsilon(1e-12));

  // The default (weakly lifted) state stays in the projection's sector and
  // close to it.
  const ReferenceState ref = noninteracting_reference_state(lat);
  CHECK(std::abs(ref.psi0.norm() - 1.0) < 1e-12);
  CHECK(ref.n_up == proj.n_up);
  CHECK(ref.n_down == proj.n_down);
  CHECK(state_fidelity(ref.psi0, proj.psi0) > 0.99);

  // Known anchor: overlap with the interacting ground state.
  const GroundTruth gt = compute_ground_truth(lat);
  CHECK(100.0 * gt.initial_fidelity == doctest::Approx(98.87).epsilon(5e-4));
}

TEST_CASE("reference state selection is stable under a x10 threshold change") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const ReferenceState a = noninteracting_reference_state(lat, 1e-9);
  const ReferenceState b = noninteracting_reference_state(lat, 1e-8);
  CHECK(state_fidelity(a.psi0, b.psi0) > 1.0 - 1e-9);
}

TEST_CASE("reference state matches a dense degenerate perturbation oracle (2x2)") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);

  // Oracle: diagonalize the dense H(U=0), project the unit-coefficient
  // on-site operator into the degenerate ground space, take the lowest
  // eigenvector. Entirely independent of the Slater-determinant path.
  const SparseOperator h0s = build_hamiltonian_with(lat, lat.t, 0.0);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(to_dense(h0s));
  const double e_min = es.eigenvalues()(0);
  std::vector<Eigen::Index> degenerate;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) < e_min + 1e-9 * lat.t) degenerate.push_back(i);
  REQUIRE(degenerate.size() == 16);

  SparseOperator vop(lat.qubits());
  for (int site = 1; site <= lat.sites(); ++site)
    vop.add_pair_diag(site, site + lat.sites(), 1.0);
  const DenseMatrix v = to_dense(vop);

  Eigen::MatrixXcd basis(v.rows(), degenerate.size());
  for (std::size_t k = 0; k < degenerate.size(); ++k)
    basis.col(k) = es.eigenvectors().col(degenerate[k]);
  const Eigen::MatrixXcd projected = basis.adjoint() * v * basis;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> pes(projected);
  const Eigen::VectorXcd oracle_psi0 = basis * pes.eigenvectors().col(0);

  const ReferenceState ref = noninteracting_reference_state(lat, 1e-9, 64, 0.0);
  cdouble overlap{0.0, 0.0};
  for (std::size_t i = 0; i < ref.psi0.dimension(); ++i)
    overlap += std::conj(oracle_psi0(i)) * ref.psi0.amp[i];
  CHECK(std::abs(overlap) > 1.0 - 1e-9);
}

TEST_CASE("lifted reference state matches the dense ground state of H(U=eps) (2x2)") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const ReferenceState ref = noninteracting_reference_state(lat);

  const SparseOperator h_eps =
      build_hamiltonian_with(lat, lat.t, kReferencePerturbation * lat.t);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(to_dense(h_eps));
  // At this weak coupling the global ground state is the lifted reference
  // state itself.
  CHECK(es.eigenvalues()(1) - es.eigenvalues()(0) > 1e-4);
  cdouble overlap{0.0, 0.0};
  for (std::size_t i = 0; i < ref.psi0.dimension(); ++i)
    overlap += std::conj(es.eigenvectors()(i, 0)) * ref.psi0.amp[i];
  CHECK(std::abs(overlap) > 1.0 - 1e-8);
}

TEST_CASE("3x2: the target state is the ground state of psi0's sector") {
  const Lattice lat = make_lattice(3, 2, 1.0, 2.0);
  const SparseOperator h = build_hamiltonian(lat);

  // The global Fock-space minimum sits at (2,2) but the reference state is
  // the half-filled (3,3) Slater determinant; particle-conserving circuits
  // can only reach its own sector.
  const ReferenceState ref = noninteracting_reference_state(lat);
  CHECK(ref.n_up == 3);
  CHECK(ref.n_down == 3);
  const EigenpairResult fock = ground_state(h);
  const EigenpairResult sector = sector_ground_state(h, lat.sites(), 3, 3);
  CHECK(fock.energy < sector.energy - 0.1);

  // Oracle: diagonalize the explicit 400 x 400 sector block.
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < h.dimension(); ++i)
    if (std::popcount(i & 63ul) == 3 && std::popcount((i >> 6) & 63ul) == 3)
      idx.push_back(i);
  Eigen::MatrixXd block(idx.size(), idx.size());
  std::vector<double> x(h.dimension(), 0.0), y(h.dimension());
  for (std::size_t c = 0; c < idx.size(); ++c) {
    x[idx[c]] = 1.0;
    h.matvec(x.data(), y.data());
    x[idx[c]] = 0.0;
    for (std::size_t r = 0; r < idx.size(); ++r) block(r, c) = y[idx[r]];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(block);
  CHECK(sector.energy == doctest::Approx(es.eigenvalues()(0)).epsilon(1e-10));

  const GroundTruth gt = compute_ground_truth(lat);
  CHECK(gt.eg == doctest::Approx(sector.energy).epsilon(1e-10));
  CHECK(gt.initial_fidelity > 0.5);  // the sectors connect
}

TEST_CASE("ground truth bundles consistent values (2x2)") {
  const Lattice lat = make_lattice(2, 2, 1.0, 2.0);
  const GroundTruth gt = compute_ground_truth(lat);
  const SparseOperator h = build_hamiltonian(lat);
  CHECK(gt.eg <= gt.e0_expectation);
  CHECK(h.expectation(gt.psig) == doctest::Approx(gt.eg).epsilon(1e-9));
  CHECK(h.expectation(gt.psi0) == doctest::Approx(gt.e0_expectation).epsilon(1e-12));
  CHECK(std::abs(gt.psig.norm() - 1.0) < 1e-12);
  CHECK(std::abs(gt.psi0.norm() - 1.0) < 1e-12);
}
