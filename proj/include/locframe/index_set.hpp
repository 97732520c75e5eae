#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace locframe {

using LatticePoint = std::array<long, 2>;

/// Finite index set with lattice positions in Z or Z^2 and a distance.
///
/// Positions are stored in physical lattice units (for a Gabor system the
/// time coordinate is m*a, the frequency coordinate j*b). Distances are
/// reported in multiples of the per-axis `unit`, so that neighbouring
/// elements of a regular lattice are at distance 1. On two axes the
/// distance is the maximum of the per-axis distances.
class IndexSet {
 public:
  enum class Metric { absolute, circular };

  IndexSet() = default;
  IndexSet(std::vector<std::string> labels, std::vector<LatticePoint> positions,
           int dim, Metric metric, LatticePoint period, std::array<double, 2> unit);

  /// Points 0, unit, 2*unit, ... on a line; circular sets wrap at n*unit.
  static IndexSet line(long n, Metric metric = Metric::circular, long unit = 1);

  /// Time-frequency lattice {(m*a, j*b)} on Z_N x Z_N.
  static IndexSet tf_lattice(long N, long a, long b);

  std::size_t size() const { return positions_.size(); }
  int dim() const { return dim_; }
  Metric metric() const { return metric_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<LatticePoint>& positions() const { return positions_; }
  const LatticePoint& period() const { return period_; }
  const std::array<double, 2>& unit() const { return unit_; }

  double distance(std::size_t k, std::size_t l) const;

  /// Distance of index k from the lattice origin; drives weights (1+|k|)^t.
  double magnitude(std::size_t k) const;

  /// Subset in the given order; geometry (period, unit, metric) is kept.
  IndexSet subset(const std::vector<std::size_t>& indices) const;

  /// Index order by increasing magnitude, ties broken by original order.
  std::vector<std::size_t> order_by_magnitude() const;

  bool operator==(const IndexSet&) const = default;

 private:
  std::vector<std::string> labels_;
  std::vector<LatticePoint> positions_;
  int dim_ = 1;
  Metric metric_ = Metric::circular;
  LatticePoint period_{0, 0};
  std::array<double, 2> unit_{1.0, 1.0};
};

/// Distance between index k of `a` and index l of `b`.
///
/// Only the axes both sets share are compared (a one-dimensional set lives
/// on the time axis of a time-frequency lattice). Wrap-around is used on an
/// axis when both sets are circular with equal period there, and the larger
/// of the two units is the length scale.
double cross_distance(const IndexSet& a, std::size_t k, const IndexSet& b, std::size_t l);

}  // namespace locframe
