#pragma once

#include <Eigen/Core>

#include "fracvar/power_sum.hpp"

namespace fracvar {

/// Uniform mesh x_j = a + j*h, h = (b-a)/(n-1), j = 0..n-1.
struct Grid {
  double a = 0.0;
  double b = 1.0;
  int n = 3;

  Grid() = default;
  Grid(double a_, double b_, int n_);

  double h() const { return (b - a) / (n - 1); }
  double node(int j) const { return a + j * h(); }
  Eigen::ArrayXd nodes() const;

  bool operator==(const Grid& other) const = default;
};

struct SampledFunction {
  Grid grid;
  Eigen::ArrayXd values;

  SampledFunction() = default;
  SampledFunction(Grid g, Eigen::ArrayXd v);
};

/// Nodal samples of a power sum. Negative exponents cannot be sampled at the
/// base point and are rejected.
SampledFunction sample(const PowerSum& p, const Grid& g);

}  // namespace fracvar
