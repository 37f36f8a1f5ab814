#include "subflow/grid.hpp"

#include <cmath>

namespace subflow {

double deterministic_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n <= 32) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = n / 2;
  return deterministic_sum(v.first(half)) + deterministic_sum(v.subspan(half));
}

GridSpec::GridSpec(int nx, int ny, int nt) : nx_(nx), ny_(ny), nt_(nt) {
  if (nx < 4 || ny < 4 || nt < 4) throw std::invalid_argument("GridSpec: node counts must be >= 4");
  if (nt % ny != 0) throw std::invalid_argument("GridSpec: N_y must divide N_t");
  shift_ = nt / ny;
  hx_ = 1.0 / nx;
  hy_ = 1.0 / ny;
  ht_ = 1.0 / nt;
}

NodeIndex neighbor(const GridSpec& spec, NodeIndex n, Axis axis, int direction) {
  const int d = direction >= 0 ? 1 : -1;
  int di = 0, dj = 0, dk = 0;
  switch (axis) {
    case Axis::x: di = d; break;
    case Axis::y: dj = d; break;
    case Axis::t: dk = d; break;
  }
  return spec.node(spec.cover_index(n.i, n.j, n.k, di, dj, dk));
}

Coordinate coordinate(const GridSpec& spec, NodeIndex n) {
  return {n.i * spec.hx(), n.j * spec.hy(), n.k * spec.ht()};
}

bool Field::all_finite() const {
  for (double x : v_)
    if (!std::isfinite(x)) return false;
  return true;
}

double integrate(const Field& f) {
  return deterministic_sum(f.values()) * f.spec().cell_volume();
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double x : f.values()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace subflow
