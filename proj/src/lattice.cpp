#include "lattice.hpp"

#include <stdexcept>
#include <string>

namespace hv {

Lattice make_lattice(int ncols, int nrows, double t, double U) {
  if (ncols < 1 || nrows < 1)
    throw std::invalid_argument("lattice dimensions must be positive");
  if (t <= 0.0) throw std::invalid_argument("hopping amplitude t must be > 0");
  return Lattice{ncols, nrows, t, U};
}

int site_index(const Lattice& lat, int col, int row, Spin spin) {
  if (col < 1 || col > lat.ncols || row < 1 || row > lat.nrows)
    throw std::domain_error("site coordinates out of range: (" +
                            std::to_string(col) + "," + std::to_string(row) +
                            ")");
  const int site = (row - 1) * lat.ncols + col;
  return spin == Spin::up ? site : site + lat.sites();
}

std::vector<Edge> enumerate_edges(const Lattice& lat) {
  std::vector<Edge> edges;
  edges.reserve((lat.ncols - 1) * lat.nrows + lat.ncols * (lat.nrows - 1));
  for (int row = 1; row <= lat.nrows; ++row) {
    for (int col = 1; col < lat.ncols; ++col) {
      const int j = site_index(lat, col, row, Spin::up);
      const int jp = site_index(lat, col + 1, row, Spin::up);
      edges.push_back({j, jp, Direction::horizontal,
                       col % 2 == 1 ? Parity::odd : Parity::even});
    }
  }
  for (int row = 1; row < lat.nrows; ++row) {
    for (int col = 1; col <= lat.ncols; ++col) {
      const int j = site_index(lat, col, row, Spin::up);
      const int jp = site_index(lat, col, row + 1, Spin::up);
      edges.push_back({j, jp, Direction::vertical,
                       row % 2 == 1 ? Parity::odd : Parity::even});
    }
  }
  return edges;
}

std::array<TermGroup, 5> term_groups(const Lattice& lat) {
  std::array<TermGroup, 5> groups;
  for (int alpha = 1; alpha <= 5; ++alpha) groups[alpha - 1].alpha = alpha;

  for (const Edge& e : enumerate_edges(lat)) {
    int alpha;
    if (e.direction == Direction::horizontal)
      alpha = e.parity == Parity::odd ? 1 : 2;
    else
      alpha = e.parity == Parity::odd ? 3 : 4;
    groups[alpha - 1].edges.push_back(e);
  }
  for (int site = 1; site <= lat.sites(); ++site)
    groups[4].sites.push_back(site);
  return groups;
}

}  // namespace hv
