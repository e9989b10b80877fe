#include "boxkernel/grid.hpp"

#include <cmath>
#include <sstream>

namespace boxkernel {

Grid::Grid(double lo, double hi, int n) {
  if (n < 2) {
    std::ostringstream os;
    os << "grid needs at least 2 nodes, got n=" << n;
    throw InvalidArgument(os.str());
  }
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi)) {
    std::ostringstream os;
    os << "grid needs finite endpoints with hi > lo, got [" << lo << ", " << hi << "]";
    throw InvalidArgument(os.str());
  }
  Data d{lo, hi, n, Vector(n), Vector(n)};
  const double h = (hi - lo) / n;
  for (int k = 0; k < n; ++k) d.nodes[k] = lo + (k + 0.5) * h;
  d.weights.setConstant(h);
  data_ = std::make_shared<const Data>(std::move(d));
}

int Grid::nearest_index(double x) const {
  const double h = (hi() - lo()) / size();
  const double t = (x - lo()) / h - 0.5;
  int k = static_cast<int>(std::floor(t));
  if (k < 0) return 0;
  if (k >= size() - 1) return size() - 1;
  // floor picks the lower neighbour; move up only when strictly closer
  if (std::abs(node(k + 1) - x) < std::abs(node(k) - x)) ++k;
  return k;
}

bool Grid::operator==(const Grid& other) const {
  if (data_ == other.data_) return true;
  return data_->n == other.data_->n && data_->lo == other.data_->lo &&
         data_->hi == other.data_->hi;
}

Grid make_grid(double lo, double hi, int n) { return Grid(lo, hi, n); }

void require_same_grid(const Grid& a, const Grid& b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": grid mismatch ([" << a.lo() << ", " << a.hi() << "], n=" << a.size()
       << " vs [" << b.lo() << ", " << b.hi() << "], n=" << b.size() << ")";
    throw InvalidArgument(os.str());
  }
}

Signal::Signal(Grid grid, CVector values) : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_.size()) {
    std::ostringstream os;
    os << "signal has " << values_.size() << " samples but grid has " << grid_.size()
       << " nodes";
    throw InvalidArgument(os.str());
  }
}

Signal Signal::zeros(const Grid& grid) { return Signal(grid, CVector::Zero(grid.size())); }

Signal Signal::sample(const Grid& grid, const std::function<cplx(double)>& fn) {
  CVector v(grid.size());
  for (int k = 0; k < grid.size(); ++k) v[k] = fn(grid.node(k));
  return Signal(grid, std::move(v));
}

Signal& Signal::operator+=(const Signal& other) {
  require_same_grid(grid_, other.grid_, "signal addition");
  values_ += other.values_;
  return *this;
}

Signal& Signal::operator-=(const Signal& other) {
  require_same_grid(grid_, other.grid_, "signal subtraction");
  values_ -= other.values_;
  return *this;
}

Signal& Signal::operator*=(cplx alpha) {
  values_ *= alpha;
  return *this;
}

cplx inner_l2(const Signal& f, const Signal& g) {
  require_same_grid(f.grid(), g.grid(), "inner_l2");
  const auto& w = f.grid().weights();
  cplx acc = 0.0;
  for (int k = 0; k < f.size(); ++k) acc += f[k] * std::conj(g[k]) * w[k];
  return acc;
}

double norm_l2(const Signal& f) {
  const auto& w = f.grid().weights();
  double acc = 0.0;
  for (int k = 0; k < f.size(); ++k) acc += std::norm(f[k]) * w[k];
  return std::sqrt(acc);
}

double relative_l2(const Signal& a, const Signal& b) {
  const double denom = std::max(norm_l2(b), 1e-300);
  return norm_l2(a - b) / denom;
}

}  // namespace boxkernel
