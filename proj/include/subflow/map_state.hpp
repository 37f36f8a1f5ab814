#pragma once

#include <utility>
#include <vector>

#include "subflow/grid.hpp"
#include "subflow/target.hpp"

namespace subflow {

// An m-component map from the lattice into target chart coordinates.
// Components share one GridSpec; the chart is an immutable value object.
struct MapState {
  std::vector<Field> components;
  TargetChart chart;

  MapState(const GridSpec& spec, TargetChart c)
      : components(static_cast<std::size_t>(c.dim()), Field(spec)), chart(std::move(c)) {}

  MapState(std::vector<Field> comps, TargetChart c)
      : components(std::move(comps)), chart(std::move(c)) {
    if (static_cast<int>(components.size()) != chart.dim())
      throw std::invalid_argument("MapState: component count must equal chart dimension");
    for (const Field& f : components)
      if (!(f.spec() == components.front().spec()))
        throw std::invalid_argument("MapState: components must share one grid");
  }

  int dim() const { return chart.dim(); }
  const GridSpec& spec() const { return components.front().spec(); }

  void node_value(std::size_t n, double* y) const {
    for (int c = 0; c < dim(); ++c) y[c] = components[c][n];
  }

  // true iff every node's coordinate vector passes the chart guard
  bool in_guard() const {
    const int m = dim();
    std::vector<double> y(m);
    for (std::size_t n = 0; n < spec().size(); ++n) {
      node_value(n, y.data());
      if (!chart.in_guard(y)) return false;
    }
    return true;
  }
};

}  // namespace subflow
