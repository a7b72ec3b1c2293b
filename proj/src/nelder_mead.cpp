#include "nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hv {

NelderMeadResult nelder_mead_minimize(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x0, const NelderMeadOptions& opts) {
  const std::size_t dim = x0.size();
  if (dim == 0) throw std::invalid_argument("empty parameter vector");

  NelderMeadResult result;
  std::vector<std::vector<double>> simplex(dim + 1, x0);
  std::vector<double> fvals(dim + 1);
  for (std::size_t i = 1; i <= dim; ++i) simplex[i][i - 1] += opts.initial_step;
  for (std::size_t i = 0; i <= dim && result.evals < opts.max_evals; ++i) {
    fvals[i] = f(simplex[i]);
    ++result.evals;
  }

  std::vector<std::size_t> order(dim + 1);
  std::vector<double> centroid(dim), xr(dim), xe(dim), xc(dim);
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  auto sort_order = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return fvals[a] < fvals[b]; });
  };

  while (result.evals < opts.max_evals) {
    sort_order();
    const std::size_t best = order[0];
    const std::size_t worst = order[dim];
    const std::size_t second_worst = order[dim - 1];
    if (fvals[worst] - fvals[best] < opts.ftol) {
      result.converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t i = 0; i < dim; ++i) centroid[i] += simplex[order[r]][i];
    for (double& c : centroid) c /= static_cast<double>(dim);

    for (std::size_t i = 0; i < dim; ++i)
      xr[i] = centroid[i] + alpha * (centroid[i] - simplex[worst][i]);
    const double fr = f(xr);
    ++result.evals;

    if (fr < fvals[best]) {
      for (std::size_t i = 0; i < dim; ++i)
        xe[i] = centroid[i] + gamma * (xr[i] - centroid[i]);
      const double fe = f(xe);
      ++result.evals;
      if (fe < fr) {
        simplex[worst] = xe;
        fvals[worst] = fe;
      } else {
        simplex[worst] = xr;
        fvals[worst] = fr;
      }
      continue;
    }
    if (fr < fvals[second_worst]) {
      simplex[worst] = xr;
      fvals[worst] = fr;
      continue;
    }

    const bool outside = fr < fvals[worst];
    if (outside) {
      for (std::size_t i = 0; i < dim; ++i)
        xc[i] = centroid[i] + rho * (xr[i] - centroid[i]);
    } else {
      for (std::size_t i = 0; i < dim; ++i)
        xc[i] = centroid[i] - rho * (centroid[i] - simplex[worst][i]);
    }
    const double fc = f(xc);
    ++result.evals;
    if (fc < (outside ? fr : fvals[worst])) {
      simplex[worst] = xc;
      fvals[worst] = fc;
      continue;
    }

    // Shrink towards the best vertex.
    for (std::size_t r = 1; r <= dim && result.evals < opts.max_evals; ++r) {
      const std::size_t v = order[r];
      for (std::size_t i = 0; i < dim; ++i)
        simplex[v][i] = simplex[best][i] + sigma * (simplex[v][i] - simplex[best][i]);
      fvals[v] = f(simplex[v]);
      ++result.evals;
    }
  }

  sort_order();
  result.x = simplex[order[0]];
  result.fx = fvals[order[0]];
  return result;
}

}  // namespace hv
