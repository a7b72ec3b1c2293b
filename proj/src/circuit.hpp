#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "hamiltonian.hpp"
#include "lattice.hpp"
#include "statevector.hpp"

namespace hv {

enum class GateKind { TGate, OnsiteGate, CZGate };

// A single two-qubit rotation exp(i * angle * A). The generator A is
// implied by the kind:
//   TGate:      -(s+_a s-_b + s+_b s-_a), angle = theta * t
//   OnsiteGate: n_a n_b,                  angle = theta * U
//   CZGate:     n_a (1 - n_b),            angle = pi
struct GateOp {
  GateKind kind = GateKind::TGate;
  int a = 0;
  int b = 0;
  double angle = 0.0;
  int step = 1;   // Trotter/VHA step k (1-based)
  int alpha = 1;  // term group
};

// theta[k-1][alpha-1] in units of inverse energy.
using ThetaMatrix = std::vector<std::array<double, 5>>;

struct Circuit {
  int qubits = 0;
  std::vector<GateOp> gates;

  struct Slice {
    int step = 1;
    int alpha = 1;
    std::size_t begin = 0;
    std::size_t end = 0;
  };
  std::vector<Slice> layout;

  std::size_t size() const { return gates.size(); }
  int steps() const { return layout.empty() ? 0 : layout.back().step; }

  // Recomputes the gate angles for new parameters without touching the
  // gate sequence; the layout (and thus any noise table) stays valid.
  // The parameter matrix must have exactly steps() rows.
  void set_parameters(const Lattice& lat, const ThetaMatrix& theta);
};

// Gates realizing exp(i theta H_alpha). Hopping terms compile to the t gate
// sandwiched between CZ gates that supply the Jordan-Wigner string, one CZ
// per intermediate qubit anchored at the lower hop endpoint. Terms are
// ordered by their smallest qubit index for reproducible noise assignment.
std::vector<GateOp> compile_group(const Lattice& lat, int alpha, double theta,
                                  int step = 1);

// Full VHA circuit for an n x 5 parameter matrix. Gates are listed in
// application order: step k = 1 acts first, groups alpha = 1..5 in order
// within each step.
Circuit compile_vha(const Lattice& lat, const ThetaMatrix& theta);

// Per-step gate counts, split by kind.
struct GateCounts {
  int t_gates = 0;
  int onsite_gates = 0;
  int cz_gates = 0;
  int total() const { return t_gates + onsite_gates + cz_gates; }
};
GateCounts gate_counts_per_step(const Lattice& lat);

// Applies the circuit in order with each gate's angle replaced by
// angle + deltas[i]. Pass an empty span for a noiseless run.
void run_circuit(StateVector& state, const Circuit& circuit,
                 std::span<const double> deltas);

// Dense unitary of the circuit (with over-rotations) obtained by running
// every basis vector through the gate kernels. Dimension-capped.
DenseMatrix circuit_unitary(const Circuit& circuit,
                            std::span<const double> deltas);

// Max absolute deviation between the compiled product for exp(i theta
// H_alpha) and the dense matrix exponential. Requires 2M <= 12.
double oracle_check(const Lattice& lat, int alpha, double theta);

// One gate per line: kind, qubits, angle, over-rotation.
std::string dump_circuit(const Circuit& circuit, std::span<const double> deltas);

}  // namespace hv
