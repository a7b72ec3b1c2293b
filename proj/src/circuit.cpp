#include "circuit.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace hv {

namespace {

double group_scale(const Lattice& lat, int alpha) {
  return alpha == 5 ? lat.U : lat.t;
}

}  // namespace

void Circuit::set_parameters(const Lattice& lat, const ThetaMatrix& theta) {
  if (static_cast<int>(theta.size()) != steps())
    throw std::invalid_argument("parameter matrix does not match the circuit's steps");
  for (const Slice& slice : layout) {
    const double th = theta[slice.step - 1][slice.alpha - 1];
    const double angle = th * group_scale(lat, slice.alpha);
    for (std::size_t i = slice.begin; i < slice.end; ++i) {
      if (gates[i].kind != GateKind::CZGate) gates[i].angle = angle;
    }
  }
}

std::vector<GateOp> compile_group(const Lattice& lat, int alpha, double theta,
                                  int step) {
  if (alpha < 1 || alpha > 5) throw std::domain_error("group index must be in 1..5");
  const auto groups = term_groups(lat);
  const TermGroup& group = groups[alpha - 1];
  const int m = lat.sites();
  std::vector<GateOp> gates;

  if (alpha == 5) {
    for (int site : group.sites) {
      gates.push_back(
          {GateKind::OnsiteGate, site, site + m, theta * lat.U, step, alpha});
    }
    return gates;
  }

  // One t gate per edge and spin, sorted by the smallest qubit index so the
  // term order (and thus the noise assignment) is reproducible.
  struct HopInstance {
    int j, jprime;
  };
  std::vector<HopInstance> hops;
  for (int spin = 0; spin < 2; ++spin) {
    const int offset = spin == 0 ? 0 : m;
    for (const Edge& e : group.edges)
      hops.push_back({e.j + offset, e.jprime + offset});
  }
  std::sort(hops.begin(), hops.end(),
            [](const HopInstance& x, const HopInstance& y) { return x.j < y.j; });

  for (const HopInstance& h : hops) {
    for (int l = h.j + 1; l < h.jprime; ++l)
      gates.push_back({GateKind::CZGate, l, h.j, std::numbers::pi, step, alpha});
    gates.push_back({GateKind::TGate, h.j, h.jprime, theta * lat.t, step, alpha});
    for (int l = h.j + 1; l < h.jprime; ++l)
      gates.push_back({GateKind::CZGate, l, h.j, std::numbers::pi, step, alpha});
  }
  return gates;
}

Circuit compile_vha(const Lattice& lat, const ThetaMatrix& theta) {
  if (theta.empty()) throw std::invalid_argument("need at least one step");
  Circuit circuit;
  circuit.qubits = lat.qubits();
  const int n = static_cast<int>(theta.size());
  for (int k = 1; k <= n; ++k) {
    for (int alpha = 1; alpha <= 5; ++alpha) {
      std::vector<GateOp> part = compile_group(lat, alpha, theta[k - 1][alpha - 1], k);
      const std::size_t begin = circuit.gates.size();
      circuit.gates.insert(circuit.gates.end(), part.begin(), part.end());
      circuit.layout.push_back({k, alpha, begin, circuit.gates.size()});
    }
  }
  return circuit;
}

GateCounts gate_counts_per_step(const Lattice& lat) {
  GateCounts counts;
  ThetaMatrix theta(1, {0.0, 0.0, 0.0, 0.0, 0.0});
  for (const GateOp& g : compile_vha(lat, theta).gates) {
    switch (g.kind) {
      case GateKind::TGate: ++counts.t_gates; break;
      case GateKind::OnsiteGate: ++counts.onsite_gates; break;
      case GateKind::CZGate: ++counts.cz_gates; break;
    }
  }
  return counts;
}

void run_circuit(StateVector& state, const Circuit& circuit,
                 std::span<const double> deltas) {
  if (!deltas.empty() && deltas.size() != circuit.gates.size())
    throw std::invalid_argument("noise table length does not match the circuit");
  if (state.dimension() != (std::size_t{1} << circuit.qubits))
    throw std::invalid_argument("state dimension does not match the circuit");
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const GateOp& g = circuit.gates[i];
    const double phi = g.angle + (deltas.empty() ? 0.0 : deltas[i]);
    switch (g.kind) {
      case GateKind::TGate:
        apply_t_gate(state, g.a, g.b, phi);
        break;
      case GateKind::OnsiteGate:
        apply_phase_pair_gate(state, g.a, g.b, phi, PhaseMode::both_occupied);
        break;
      case GateKind::CZGate:
        apply_phase_pair_gate(state, g.a, g.b, phi,
                              PhaseMode::first_occupied_second_empty);
        break;
    }
  }
}

DenseMatrix circuit_unitary(const Circuit& circuit,
                            std::span<const double> deltas) {
  const std::size_t dim = std::size_t{1} << circuit.qubits;
  if (dim > 4096)
    throw std::domain_error("dense circuit unitary limited to dimension 4096");
  DenseMatrix mat(dim, dim);
  for (std::size_t col = 0; col < dim; ++col) {
    StateVector v = basis_state(circuit.qubits, col);
    run_circuit(v, circuit, deltas);
    for (std::size_t row = 0; row < dim; ++row) mat(row, col) = v.amp[row];
  }
  return mat;
}

double oracle_check(const Lattice& lat, int alpha, double theta) {
  if (lat.qubits() > 12)
    throw std::domain_error("oracle check limited to 12 qubits");
  ThetaMatrix single(1, {0.0, 0.0, 0.0, 0.0, 0.0});
  single[0][alpha - 1] = theta;
  Circuit circuit = compile_vha(lat, single);
  // Drop the other groups' slices so only exp(i theta H_alpha) remains.
  Circuit only;
  only.qubits = circuit.qubits;
  for (const GateOp& g : circuit.gates)
    if (g.alpha == alpha) only.gates.push_back(g);
  const DenseMatrix compiled = circuit_unitary(only, {});

  const SparseOperator h_alpha =
      build_sub_hamiltonian(lat, term_groups(lat)[alpha - 1]);
  const DenseMatrix dense = to_dense(h_alpha);
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(dense);
  Eigen::VectorXcd phases(dense.rows());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(cdouble{0.0, theta * es.eigenvalues()(i)});
  const DenseMatrix expd =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();

  return (compiled - expd).cwiseAbs().maxCoeff();
}

std::string dump_circuit(const Circuit& circuit, std::span<const double> deltas) {
  if (!deltas.empty() && deltas.size() != circuit.gates.size())
    throw std::invalid_argument("noise table length does not match the circuit");
  std::string out;
  char line[128];
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    const GateOp& g = circuit.gates[i];
    const char* kind = g.kind == GateKind::TGate ? "T"
                       : g.kind == GateKind::OnsiteGate ? "ONSITE"
                                                        : "CZ";
    std::snprintf(line, sizeof(line), "%s %d %d %.17g %.17g\n", kind, g.a, g.b,
                  g.angle, deltas.empty() ? 0.0 : deltas[i]);
    out += line;
  }
  return out;
}

}  // namespace hv
