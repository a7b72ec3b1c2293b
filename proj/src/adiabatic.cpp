#include "adiabatic.hpp"

#include <stdexcept>

namespace hv {

std::vector<double> TauGrid::values(double t) const {
  if (points < 1) throw std::invalid_argument("tau grid needs at least one point");
  if (min_tau_t <= 0.0 || max_tau_t < min_tau_t)
    throw std::invalid_argument("invalid tau grid range");
  std::vector<double> taus(points);
  if (points == 1) {
    taus[0] = min_tau_t / t;
    return taus;
  }
  const double step = (max_tau_t - min_tau_t) / (points - 1);
  for (int i = 0; i < points; ++i) taus[i] = (min_tau_t + i * step) / t;
  return taus;
}

ThetaMatrix adiabatic_parameters(int n, double tau) {
  if (n < 1) throw std::invalid_argument("need at least one Trotter step");
  if (tau < 0.0) throw std::invalid_argument("tau must be non-negative");
  ThetaMatrix theta(n);
  for (int k = 1; k <= n; ++k) {
    for (int a = 0; a < 4; ++a) theta[k - 1][a] = -tau / n;
    theta[k - 1][4] = -(tau / n) * (double(k) / n);
  }
  return theta;
}

AdiabaticResult optimize_tau(const Lattice& lat, int n, const NoiseTable& noise,
                             const TauGrid& grid, const GroundTruth& gt) {
  std::vector<double> taus = grid.values(lat.t);
  const double spacing =
      taus.size() > 1 ? taus[1] - taus[0] : taus.front();
  taus.insert(taus.begin(), 0.0);

  const SparseOperator h = build_hamiltonian(lat);
  Circuit circuit = compile_vha(lat, adiabatic_parameters(n, 0.0));
  if (!noise.deltas.empty() && noise.deltas.size() != circuit.size())
    throw std::invalid_argument("noise table does not match the circuit layout");

  StateVector work(gt.psi0.dimension());
  auto fidelity_at = [&](double tau) {
    circuit.set_parameters(lat, adiabatic_parameters(n, tau));
    work.amp = gt.psi0.amp;
    run_circuit(work, circuit, noise.deltas);
    return state_fidelity(gt.psig, work);
  };

  AdiabaticResult best;
  best.fidelity = -1.0;
  auto consider = [&](double tau) {
    const double fid = fidelity_at(tau);
    if (fid > best.fidelity + 1e-15) {
      best.fidelity = fid;
      best.tau = tau;
    }
  };
  for (double tau : taus) consider(tau);

  // Two zoom passes around the incumbent sharpen tau to ~1e-3 of the
  // coarse spacing without leaving the scanned range.
  const double tau_max = taus.back();
  double width = spacing;
  for (int pass = 0; pass < 2; ++pass) {
    const double center = best.tau;
    for (int i = -10; i <= 10; ++i) {
      const double tau = center + width * i / 10.0;
      if (tau <= 0.0 || tau > tau_max || i == 0) continue;
      consider(tau);
    }
    width /= 10.0;
  }

  circuit.set_parameters(lat, adiabatic_parameters(n, best.tau));
  work.amp = gt.psi0.amp;
  run_circuit(work, circuit, noise.deltas);
  best.energy = h.expectation(work);
  return best;
}

AdiabaticResult evaluate_ramp(const Lattice& lat, int n, double tau,
                              const NoiseTable& noise, const GroundTruth& gt) {
  const SparseOperator h = build_hamiltonian(lat);
  Circuit circuit = compile_vha(lat, adiabatic_parameters(n, tau));
  if (!noise.deltas.empty() && noise.deltas.size() != circuit.size())
    throw std::invalid_argument("noise table does not match the circuit layout");
  StateVector work = gt.psi0;
  run_circuit(work, circuit, noise.deltas);
  AdiabaticResult out;
  out.tau = tau;
  out.fidelity = state_fidelity(gt.psig, work);
  out.energy = h.expectation(work);
  return out;
}

}  // namespace hv
