#include "lanczos.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace hv {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const std::vector<double>& x, std::vector<double>& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += alpha * x[i];
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

// One or two passes of classical Gram-Schmidt against basis[0..count).
void reorthogonalize(std::vector<std::vector<double>>& basis, int count,
                     std::vector<double>& w) {
  for (int pass = 0; pass < 2; ++pass) {
    const double before = norm(w);
    for (int i = 0; i < count; ++i) axpy(-dot(basis[i], w), basis[i], w);
    if (norm(w) > 0.707 * before) return;
  }
}

}  // namespace

LanczosResult lowest_eigenpair_lanczos(
    const std::function<void(const double*, double*)>& matvec, std::size_t dim,
    const LanczosOptions& opts) {
  const int m = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(opts.max_basis), dim));
  const int keep = std::min(opts.keep, m - 2 > 0 ? m - 2 : 1);
  if (m < 1) throw std::invalid_argument("empty problem");

  std::vector<std::vector<double>> basis(m + 1, std::vector<double>(dim));
  Eigen::MatrixXd tmat = Eigen::MatrixXd::Zero(m, m);

  if (opts.initial) {
    if (opts.initial->size() != dim)
      throw std::invalid_argument("initial vector has the wrong dimension");
    basis[0] = *opts.initial;
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (double& x : basis[0]) x = unif(rng);
  }
  {
    const double inv = 1.0 / norm(basis[0]);
    for (double& x : basis[0]) x *= inv;
  }

  LanczosResult result;
  std::vector<double> w(dim);
  int active = 0;       // vectors carried over from the previous restart
  double scale = 1.0;   // running spectral scale estimate
  bool exhausted = false;

  while (result.matvecs < opts.max_matvecs) {
    int j = active;
    double beta = 0.0;
    for (; j < m; ++j) {
      matvec(basis[j].data(), w.data());
      ++result.matvecs;
      const double alpha = dot(basis[j], w);
      tmat(j, j) = alpha;
      reorthogonalize(basis, j + 1, w);
      beta = norm(w);
      if (j + 1 < m) {
        tmat(j, j + 1) = tmat(j + 1, j) = beta;
      }
      if (beta < 1e-13 * std::max(scale, 1.0)) {
        exhausted = true;  // Krylov space is invariant; Ritz values exact
        ++j;
        break;
      }
      const double inv = 1.0 / beta;
      for (std::size_t i = 0; i < dim; ++i) basis[j + 1][i] = w[i] * inv;
      if (result.matvecs >= opts.max_matvecs) {
        ++j;
        break;
      }
    }

    const int used = j;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        tmat.topLeftCorner(used, used));
    const Eigen::VectorXd& ritz = es.eigenvalues();
    scale = std::max(std::abs(ritz(0)), std::abs(ritz(used - 1)));
    const double converged_at = opts.tol * std::max(scale, 1.0);
    const double resid_estimate =
        exhausted ? 0.0 : std::abs(beta * es.eigenvectors()(used - 1, 0));

    if (resid_estimate < converged_at || exhausted ||
        result.matvecs >= opts.max_matvecs) {
      result.eigenvalue = ritz(0);
      result.eigenvector.assign(dim, 0.0);
      for (int i = 0; i < used; ++i)
        axpy(es.eigenvectors()(i, 0), basis[i], result.eigenvector);
      const double inv = 1.0 / norm(result.eigenvector);
      for (double& x : result.eigenvector) x *= inv;
      matvec(result.eigenvector.data(), w.data());
      ++result.matvecs;
      axpy(-result.eigenvalue, result.eigenvector, w);
      result.residual = norm(w);
      result.converged = result.residual < converged_at;
      if (result.converged || exhausted ||
          result.matvecs >= opts.max_matvecs) {
        return result;
      }
    }

    // Thick restart: carry the lowest `keep` Ritz vectors plus the current
    // residual direction, and rebuild the projected matrix accordingly.
    std::vector<std::vector<double>> kept(keep, std::vector<double>(dim, 0.0));
    for (int r = 0; r < keep; ++r)
      for (int i = 0; i < used; ++i)
        axpy(es.eigenvectors()(i, r), basis[i], kept[r]);
    std::vector<double> couple(keep);
    for (int r = 0; r < keep; ++r)
      couple[r] = beta * es.eigenvectors()(used - 1, r);

    std::swap(basis[keep], basis[used]);  // the carried Lanczos vector
    for (int r = 0; r < keep; ++r) basis[r] = std::move(kept[r]);
    tmat.setZero();
    for (int r = 0; r < keep; ++r) {
      tmat(r, r) = ritz(r);
      tmat(r, keep) = tmat(keep, r) = couple[r];
    }
    active = keep;
  }

  throw std::runtime_error(
      "Lanczos did not converge: residual " + std::to_string(result.residual) +
      " after " + std::to_string(result.matvecs) + " matvecs");
}

}  // namespace hv
