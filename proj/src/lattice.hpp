#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace hv {

enum class Spin { up, down };
enum class Direction { horizontal, vertical };
enum class Parity { even, odd };

// Rectangular Hubbard lattice with hopping t and on-site interaction U.
// Sites are numbered row-major starting at 1; spin-up occupies qubits
// 1..M and spin-down qubits M+1..2M.
struct Lattice {
  int ncols = 0;
  int nrows = 0;
  double t = 1.0;
  double U = 2.0;

  int sites() const { return ncols * nrows; }
  int qubits() const { return 2 * sites(); }
  std::size_t dimension() const { return std::size_t{1} << qubits(); }
};

// Throws std::invalid_argument on non-positive dimensions or t <= 0.
Lattice make_lattice(int ncols, int nrows, double t, double U);

// Nearest-neighbor bond between sites j < jprime.
struct Edge {
  int j = 0;
  int jprime = 0;
  Direction direction = Direction::horizontal;
  Parity parity = Parity::odd;
};

// One of the five commuting term groups: groups 1..4 hold hopping edges,
// group 5 holds the on-site interaction sites.
struct TermGroup {
  int alpha = 0;
  std::vector<Edge> edges;
  std::vector<int> sites;

  bool empty() const { return edges.empty() && sites.empty(); }
};

// Qubit index for (col, row, spin), 1-based everywhere.
int site_index(const Lattice& lat, int col, int row, Spin spin);

// All nearest-neighbor edges with open boundaries. Horizontal parity is the
// parity of the left endpoint's column, vertical parity the parity of the
// upper endpoint's row.
std::vector<Edge> enumerate_edges(const Lattice& lat);

// The five-way decomposition: {horizontal-odd, horizontal-even,
// vertical-odd, vertical-even, on-site}. Groups may be empty on small
// lattices but stay in the list so the parameter layout is always 5.
std::array<TermGroup, 5> term_groups(const Lattice& lat);

}  // namespace hv
