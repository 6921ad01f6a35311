#include "fracvar/grid.hpp"

#include <stdexcept>
#include <string>

namespace fracvar {

Grid::Grid(double a_, double b_, int n_) : a(a_), b(b_), n(n_) {
  if (!(b > a)) throw std::invalid_argument("Grid: need b > a");
  if (n < 3) throw std::invalid_argument("Grid: need n >= 3, got " + std::to_string(n));
}

Eigen::ArrayXd Grid::nodes() const {
  return Eigen::ArrayXd::LinSpaced(n, a, b);
}

SampledFunction::SampledFunction(Grid g, Eigen::ArrayXd v) : grid(g), values(std::move(v)) {
  if (values.size() != grid.n) {
    throw std::invalid_argument("SampledFunction: value count " + std::to_string(values.size()) +
                                " does not match grid n = " + std::to_string(grid.n));
  }
  if (!values.isFinite().all()) {
    throw std::invalid_argument("SampledFunction: non-finite sample value");
  }
}

SampledFunction sample(const PowerSum& p, const Grid& g) {
  if (g.a < p.base()) {
    throw std::domain_error("sample: grid starts below the power sum's base point");
  }
  if (g.a == p.base() && !p.terms().empty() && p.terms().front().exponent < 0.0) {
    throw std::domain_error("sample: negative exponent diverges at the base point");
  }
  Eigen::ArrayXd v(g.n);
  for (int j = 0; j < g.n; ++j) v[j] = eval(p, g.node(j));
  return SampledFunction(g, std::move(v));
}

}  // namespace fracvar
