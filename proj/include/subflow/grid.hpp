// Twisted-periodic lattice for the compact quotient of the 3-dimensional
// Heisenberg group by its integer lattice, with scalar fields and the
// discrete measure.
//
// The fundamental domain is the unit cube, sampled node-centered at
// (i*h_x, j*h_y, k*h_t). Crossing the x-boundary applies the lattice
// identification (x,y,t) ~ (x+1, y, t+y): the chart representative of the
// +x neighbor of (1-h_x, y, t) is (0, y, t-y), so the t-index shifts by
// -j*(N_t/N_y) per positive crossing. y and t wrap plainly periodic.
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace subflow {

enum class Axis { x = 0, y = 1, t = 2 };

struct NodeIndex {
  int i = 0, j = 0, k = 0;
  bool operator==(const NodeIndex&) const = default;
};

// Deterministic pairwise-tree reduction; fixed association order so that
// integrals and inner products are reproducible bit-for-bit.
double deterministic_sum(std::span<const double> v);

class GridSpec {
 public:
  GridSpec(int nx, int ny, int nt);

  int nx() const { return nx_; }
  int ny() const { return ny_; }
  int nt() const { return nt_; }
  double hx() const { return hx_; }
  double hy() const { return hy_; }
  double ht() const { return ht_; }
  double spacing(Axis a) const { return a == Axis::x ? hx_ : a == Axis::y ? hy_ : ht_; }
  int twist_shift() const { return shift_; }  // N_t / N_y
  std::size_t size() const { return static_cast<std::size_t>(nx_) * ny_ * nt_; }
  double cell_volume() const { return hx_ * hy_ * ht_; }

  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(i) * ny_ + j) * nt_ + k;
  }
  NodeIndex node(std::size_t flat) const {
    const int k = static_cast<int>(flat % nt_);
    const int j = static_cast<int>((flat / nt_) % ny_);
    const int i = static_cast<int>(flat / (static_cast<std::size_t>(ny_) * nt_));
    return {i, j, k};
  }

  // Flat index of the lattice point at cover offset (di,dj,dk) from node
  // (i,j,k). Handles arbitrary small offsets, including multiple x
  // crossings; the twist uses the unwrapped J so that the map agrees with
  // the deck transformation (x,y,t) -> (x+c, y, t+c*y).
  std::size_t cover_index(int i, int j, int k, int di, int dj, int dk) const {
    const int I = i + di;
    const int J = j + dj;
    const int K = k + dk;
    const int c = floor_div(I, nx_);
    const int ii = I - c * nx_;
    const int jj = mod(J, ny_);
    const int kk = mod(K - c * J * shift_, nt_);
    return index(ii, jj, kk);
  }

  double coordinate_x(int i) const { return i * hx_; }

  bool operator==(const GridSpec& o) const {
    return nx_ == o.nx_ && ny_ == o.ny_ && nt_ == o.nt_;
  }

  static int floor_div(int a, int b) {
    int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
  }
  static int mod(int a, int b) {
    int r = a % b;
    return r < 0 ? r + b : r;
  }

 private:
  int nx_, ny_, nt_, shift_;
  double hx_, hy_, ht_;
};

// Lattice neighbor under the quotient identifications. Total on valid indices.
NodeIndex neighbor(const GridSpec& spec, NodeIndex n, Axis axis, int direction);

// Node position in the fundamental domain.
struct Coordinate {
  double x, y, t;
};
Coordinate coordinate(const GridSpec& spec, NodeIndex n);

class Field {
 public:
  explicit Field(const GridSpec& spec, double value = 0.0)
      : spec_(spec), v_(spec.size(), value) {}

  const GridSpec& spec() const { return spec_; }
  std::size_t size() const { return v_.size(); }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::span<const double> values() const { return v_; }
  std::span<double> values() { return v_; }

  double& operator[](std::size_t n) { return v_[n]; }
  double operator[](std::size_t n) const { return v_[n]; }
  double& at(int i, int j, int k) { return v_[spec_.index(i, j, k)]; }
  double at(int i, int j, int k) const { return v_[spec_.index(i, j, k)]; }

  bool all_finite() const;

 private:
  GridSpec spec_;
  std::vector<double> v_;
};

// Section of the contact subbundle: components along the frame vectors X, Y.
struct HorizontalVector {
  Field wx;
  Field wy;
  HorizontalVector(const Field& x, const Field& y) : wx(x), wy(y) {
    if (!(wx.spec() == wy.spec())) throw std::invalid_argument("HorizontalVector: mismatched grids");
  }
  explicit HorizontalVector(const GridSpec& spec) : wx(spec), wy(spec) {}
  const GridSpec& spec() const { return wx.spec(); }
};

// Discrete measure: sum of node values times the cell volume. dmu on the
// model is a constant multiple of Lebesgue measure, normalized to 1.
double integrate(const Field& f);

double max_abs(const Field& f);

}  // namespace subflow
