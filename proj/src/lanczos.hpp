#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hv {

struct LanczosOptions {
  int max_basis = 64;  // Krylov vectors held at once
  int keep = 8;        // Ritz pairs carried over a thick restart
  int max_matvecs = 20000;
  double tol = 1e-9;  // residual tolerance, relative to the spectral scale
  std::uint64_t seed = 0x193a6754a8a7d469ull;
  // Optional start vector (copied, normalized). When the operator preserves
  // a subspace containing it, the whole iteration stays inside.
  const std::vector<double>* initial = nullptr;
};

struct LanczosResult {
  double eigenvalue = 0.0;
  std::vector<double> eigenvector;
  int matvecs = 0;
  double residual = 0.0;
  bool converged = false;
};

// Lowest eigenpair of a real symmetric operator via thick-restart Lanczos
// with reorthogonalization. Deterministic in the seed.
LanczosResult lowest_eigenpair_lanczos(
    const std::function<void(const double*, double*)>& matvec, std::size_t dim,
    const LanczosOptions& opts = {});

}  // namespace hv
