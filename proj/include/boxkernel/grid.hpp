#pragma once

#include <functional>
#include <memory>

#include "boxkernel/common.hpp"

namespace boxkernel {

/// Midpoint-rule discretization of [lo, hi] with n nodes and uniform weights.
///
/// Copies are cheap: node and weight vectors are shared between copies. Two
/// grids compare equal when they have the same endpoints and node count.
class Grid {
 public:
  Grid(double lo, double hi, int n);

  double lo() const { return data_->lo; }
  double hi() const { return data_->hi; }
  int size() const { return data_->n; }
  double node(int k) const { return data_->nodes[k]; }
  double weight(int k) const { return data_->weights[k]; }
  const Vector& nodes() const { return data_->nodes; }
  const Vector& weights() const { return data_->weights; }
  Vector sqrt_weights() const { return data_->weights.cwiseSqrt(); }

  /// Index of the node closest to x (ties resolve to the lower index).
  int nearest_index(double x) const;

  bool operator==(const Grid& other) const;
  bool operator!=(const Grid& other) const { return !(*this == other); }

 private:
  struct Data {
    double lo;
    double hi;
    int n;
    Vector nodes;
    Vector weights;
  };
  std::shared_ptr<const Data> data_;
};

Grid make_grid(double lo, double hi, int n);

/// Throws InvalidArgument naming `what` when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* what);

/// Complex samples of a single-variable function on a grid.
class Signal {
 public:
  Signal(Grid grid, CVector values);

  static Signal zeros(const Grid& grid);
  static Signal sample(const Grid& grid, const std::function<cplx(double)>& fn);

  const Grid& grid() const { return grid_; }
  const CVector& values() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  cplx operator[](int k) const { return values_[k]; }

  Signal& operator+=(const Signal& other);
  Signal& operator-=(const Signal& other);
  Signal& operator*=(cplx alpha);

  friend Signal operator+(Signal a, const Signal& b) { return a += b; }
  friend Signal operator-(Signal a, const Signal& b) { return a -= b; }
  friend Signal operator*(cplx alpha, Signal a) { return a *= alpha; }
  friend Signal operator*(Signal a, cplx alpha) { return a *= alpha; }

 private:
  Grid grid_;
  CVector values_;
};

/// Quadrature L2 pairing: sum_k f(x_k) conj(g(x_k)) w_k.
cplx inner_l2(const Signal& f, const Signal& g);

double norm_l2(const Signal& f);

/// Relative L2 distance ||a - b|| / max(||b||, tiny).
double relative_l2(const Signal& a, const Signal& b);

}  // namespace boxkernel
