#include "vha.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "nelder_mead.hpp"
#include "parallel.hpp"

namespace hv {

namespace {

ThetaMatrix flat_to_theta(const std::vector<double>& flat, int n) {
  ThetaMatrix theta(n);
  for (int k = 0; k < n; ++k)
    for (int a = 0; a < 5; ++a) theta[k][a] = flat[5 * k + a];
  return theta;
}

std::vector<double> theta_to_flat(const ThetaMatrix& theta) {
  std::vector<double> flat(theta.size() * 5);
  for (std::size_t k = 0; k < theta.size(); ++k)
    for (int a = 0; a < 5; ++a) flat[5 * k + a] = theta[k][a];
  return flat;
}

// Reusable evaluation context: the gate sequence is compiled once and only
// the angles change between objective calls.
class Evaluator {
 public:
  Evaluator(const Lattice& lat, int n, const NoiseTable& noise,
            const StateVector& psi0, const SparseOperator& h)
      : lat_(lat), noise_(&noise), psi0_(&psi0), h_(&h),
        circuit_(compile_vha(lat, ThetaMatrix(n, {0, 0, 0, 0, 0}))),
        work_(psi0.dimension()) {
    if (!noise.deltas.empty() && noise.deltas.size() != circuit_.size())
      throw std::invalid_argument("noise table does not match the circuit layout");
  }

  double energy(const ThetaMatrix& theta) {
    run(theta);
    return h_->expectation(work_);
  }

  double energy_flat(const std::vector<double>& flat) {
    return energy(flat_to_theta(flat, static_cast<int>(flat.size() / 5)));
  }

  const StateVector& state(const ThetaMatrix& theta) {
    run(theta);
    return work_;
  }

 private:
  void run(const ThetaMatrix& theta) {
    circuit_.set_parameters(lat_, theta);
    work_.amp = psi0_->amp;
    run_circuit(work_, circuit_, noise_->deltas);
  }

  Lattice lat_;
  const NoiseTable* noise_;
  const StateVector* psi0_;
  const SparseOperator* h_;
  Circuit circuit_;
  StateVector work_;
};

}  // namespace

std::vector<StartSet> start_parameter_sets(int n, StartFamily family,
                                           const Lattice& lat) {
  if (n < 1) throw std::invalid_argument("need at least one step");
  const double inv_t = 1.0 / lat.t;
  std::vector<StartSet> sets;

  // Set 1: mimic the adiabatic evolution over tau = n/t.
  {
    ThetaMatrix theta(n);
    for (int k = 1; k <= n; ++k) {
      for (int a = 0; a < 4; ++a) theta[k - 1][a] = inv_t;
      theta[k - 1][4] = (double(k) / n) * inv_t;
    }
    sets.push_back({"adiabatic", std::move(theta)});
  }
  // Set 2: hopping and interaction both turned on gradually.
  {
    ThetaMatrix theta(n);
    for (int k = 1; k <= n; ++k)
      for (int a = 0; a < 5; ++a) theta[k - 1][a] = (double(k) / n) * inv_t;
    sets.push_back({"ramp", std::move(theta)});
  }
  // Set 3: evenly distributed, a Trotterization of duration 1/t.
  {
    ThetaMatrix theta(n, {0, 0, 0, 0, 0});
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < 5; ++a) theta[k][a] = inv_t / n;
    sets.push_back({"even", std::move(theta)});
  }

  if (family == StartFamily::improved) {
    // Adiabatic-like set for the short duration tau = 1/t.
    ThetaMatrix theta(n);
    for (int k = 1; k <= n; ++k) {
      for (int a = 0; a < 4; ++a) theta[k - 1][a] = inv_t / n;
      theta[k - 1][4] = (double(k) / n) * inv_t / n;
    }
    sets.push_back({"adiabatic-short", std::move(theta)});
    // Uniform grids theta = r/t for r in {0.1, ..., 1.0}.
    for (int r = 1; r <= 10; ++r) {
      ThetaMatrix uni(n);
      for (int k = 0; k < n; ++k)
        for (int a = 0; a < 5; ++a) uni[k][a] = 0.1 * r * inv_t;
      char id[32];
      std::snprintf(id, sizeof(id), "uniform-%.1f", 0.1 * r);
      sets.push_back({id, std::move(uni)});
    }
  }
  return sets;
}

StartFamily parse_start_family(const std::string& name) {
  if (name == "baseline") return StartFamily::baseline;
  if (name == "improved") return StartFamily::improved;
  throw std::invalid_argument("unknown start family: " + name);
}

std::string to_string(StartFamily family) {
  return family == StartFamily::baseline ? "baseline" : "improved";
}

double objective(const ThetaMatrix& theta, const Lattice& lat,
                 const NoiseTable& noise, const StateVector& psi0,
                 const SparseOperator& h) {
  Evaluator eval(lat, static_cast<int>(theta.size()), noise, psi0, h);
  return eval.energy(theta);
}

StateVector vha_final_state(const Lattice& lat, const ThetaMatrix& theta,
                            const NoiseTable& noise, const StateVector& psi0) {
  Circuit circuit = compile_vha(lat, theta);
  StateVector state;
  state.amp = psi0.amp;
  run_circuit(state, circuit, noise.deltas);
  return state;
}

namespace {

struct SingleStartResult {
  std::vector<double> x;
  double fx = 0.0;
  long evals = 0;
  bool converged = false;
};

// Restarted Nelder-Mead: rebuild the simplex around the incumbent until the
// energy stops improving or the budget runs out.
SingleStartResult optimize_single_start(Evaluator& eval,
                                        const ThetaMatrix& start,
                                        double ftol, long budget) {
  SingleStartResult out;
  out.x = theta_to_flat(start);
  out.fx = eval.energy_flat(out.x);
  out.evals = 1;

  double step = 0.1;
  while (out.evals < budget) {
    NelderMeadOptions opts;
    opts.initial_step = step;
    opts.ftol = ftol;
    opts.max_evals = budget - out.evals;
    NelderMeadResult r = nelder_mead_minimize(
        [&eval](const std::vector<double>& x) { return eval.energy_flat(x); },
        out.x, opts);
    out.evals += r.evals;
    const double improvement = out.fx - r.fx;
    if (r.fx < out.fx) {
      out.x = std::move(r.x);
      out.fx = r.fx;
    }
    if (r.converged && improvement < ftol) {
      out.converged = true;
      break;
    }
    step = std::max(0.5 * step, 0.02);
  }
  return out;
}

}  // namespace

VhaResult optimize(const Lattice& lat, int n, const NoiseTable& noise,
                   StartFamily family, const GroundTruth& gt,
                   const OptimizeOptions& opts) {
  const std::vector<StartSet> starts = start_parameter_sets(n, family, lat);
  const SparseOperator h = build_hamiltonian(lat);
  h.diagonal();  // materialize before the start workers share it
  const long budget = opts.evals_per_dim * 5L * n;
  const double ftol = opts.ftol_scale * lat.t;

  std::vector<StartOutcome> outcomes(starts.size());
  std::vector<ThetaMatrix> thetas(starts.size());

  parallel_for_index(starts.size(), opts.threads, [&](std::size_t s) {
    Evaluator eval(lat, n, noise, gt.psi0, h);
    SingleStartResult r = optimize_single_start(eval, starts[s].theta, ftol, budget);
    thetas[s] = flat_to_theta(r.x, n);
    outcomes[s] = {starts[s].id, r.fx,
                   state_fidelity(gt.psig, eval.state(thetas[s])), r.evals,
                   r.converged};
  });

  VhaResult result;
  result.starts = outcomes;
  std::size_t best = 0;
  for (std::size_t s = 1; s < outcomes.size(); ++s)
    if (outcomes[s].energy < outcomes[best].energy) best = s;
  result.best_theta = thetas[best];
  result.final_energy = outcomes[best].energy;
  result.final_fidelity = outcomes[best].fidelity;
  result.start_set_id = outcomes[best].id;
  result.converged = outcomes[best].converged;
  for (const StartOutcome& o : outcomes) result.evaluations += o.evaluations;
  return result;
}

double frozen_parameter_transfer(const Lattice& lat,
                                 const ThetaMatrix& theta_star,
                                 const NoiseTable& noise,
                                 const GroundTruth& gt) {
  return state_fidelity(gt.psig,
                        vha_final_state(lat, theta_star, noise, gt.psi0));
}

}  // namespace hv
