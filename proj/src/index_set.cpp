#include "locframe/index_set.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "locframe/types.hpp"

namespace locframe {

IndexSet::IndexSet(std::vector<std::string> labels, std::vector<LatticePoint> positions,
                   int dim, Metric metric, LatticePoint period, std::array<double, 2> unit)
    : labels_(std::move(labels)),
      positions_(std::move(positions)),
      dim_(dim),
      metric_(metric),
      period_(period),
      unit_(unit) {
  if (dim_ != 1 && dim_ != 2) {
    throw Error(ErrorCode::invalid_argument, "index set dimension must be 1 or 2");
  }
  if (labels_.size() != positions_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "index set needs one position per label");
  }
  if (std::set<std::string>(labels_.begin(), labels_.end()).size() != labels_.size()) {
    throw Error(ErrorCode::invalid_argument, "index labels must be distinct");
  }
  for (int axis = 0; axis < dim_; ++axis) {
    if (!(unit_[axis] > 0.0)) {
      throw Error(ErrorCode::invalid_argument, "index set unit must be positive");
    }
    if (metric_ == Metric::circular && period_[axis] <= 0) {
      throw Error(ErrorCode::invalid_argument, "circular metric needs a positive period");
    }
  }
}

IndexSet IndexSet::line(long n, Metric metric, long unit) {
  if (n <= 0 || unit <= 0) {
    throw Error(ErrorCode::invalid_argument, "line index set needs n > 0 and unit > 0");
  }
  std::vector<std::string> labels;
  std::vector<LatticePoint> positions;
  labels.reserve(static_cast<std::size_t>(n));
  positions.reserve(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) {
    labels.push_back(std::to_string(k));
    positions.push_back({k * unit, 0});
  }
  return IndexSet(std::move(labels), std::move(positions), 1, metric, {n * unit, 0},
                  {static_cast<double>(unit), 1.0});
}

IndexSet IndexSet::tf_lattice(long N, long a, long b) {
  if (N <= 0 || a <= 0 || b <= 0 || N % a != 0 || N % b != 0) {
    throw Error(ErrorCode::invalid_argument, "time-frequency lattice needs a|N and b|N");
  }
  std::vector<std::string> labels;
  std::vector<LatticePoint> positions;
  for (long m = 0; m < N / a; ++m) {
    for (long j = 0; j < N / b; ++j) {
      labels.push_back(std::to_string(m) + "," + std::to_string(j));
      positions.push_back({m * a, j * b});
    }
  }
  return IndexSet(std::move(labels), std::move(positions), 2, Metric::circular, {N, N},
                  {static_cast<double>(a), static_cast<double>(b)});
}

namespace {

double axis_distance(long x, long y, bool wrap, long period) {
  long raw = std::labs(x - y);
  if (wrap) {
    raw %= period;
    raw = std::min(raw, period - raw);
  }
  return static_cast<double>(raw);
}

}  // namespace

double cross_distance(const IndexSet& a, std::size_t k, const IndexSet& b, std::size_t l) {
  const int shared = std::min(a.dim(), b.dim());
  double d = 0.0;
  for (int axis = 0; axis < shared; ++axis) {
    const bool wrap = a.metric() == IndexSet::Metric::circular &&
                      b.metric() == IndexSet::Metric::circular &&
                      a.period()[axis] == b.period()[axis];
    const double unit = std::max(a.unit()[axis], b.unit()[axis]);
    d = std::max(d, axis_distance(a.positions()[k][axis], b.positions()[l][axis], wrap,
                                  a.period()[axis]) /
                        unit);
  }
  return d;
}

double IndexSet::distance(std::size_t k, std::size_t l) const {
  return cross_distance(*this, k, *this, l);
}

double IndexSet::magnitude(std::size_t k) const {
  double d = 0.0;
  for (int axis = 0; axis < dim_; ++axis) {
    d = std::max(d, axis_distance(positions_[k][axis], 0, metric_ == Metric::circular,
                                  period_[axis]) /
                        unit_[axis]);
  }
  return d;
}

IndexSet IndexSet::subset(const std::vector<std::size_t>& indices) const {
  std::vector<std::string> labels;
  std::vector<LatticePoint> positions;
  labels.reserve(indices.size());
  positions.reserve(indices.size());
  for (auto k : indices) {
    if (k >= size()) throw Error(ErrorCode::invalid_argument, "subset index out of range");
    labels.push_back(labels_[k]);
    positions.push_back(positions_[k]);
  }
  return IndexSet(std::move(labels), std::move(positions), dim_, metric_, period_, unit_);
}

std::vector<std::size_t> IndexSet::order_by_magnitude() const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [this](std::size_t x, std::size_t y) {
    return magnitude(x) < magnitude(y);
  });
  return order;
}

}  // namespace locframe
