#pragma once

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "locframe/frames.hpp"

namespace testing_support {

using locframe::CMatrix;
using locframe::Complex;
using locframe::CVector;
using locframe::Frame;

inline CVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline CMatrix random_matrix(Eigen::Index r, Eigen::Index c, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix M(r, c);
  for (Eigen::Index l = 0; l < c; ++l)
    for (Eigen::Index k = 0; k < r; ++k) M(k, l) = Complex(g(rng), g(rng));
  return M;
}

inline double rel_err(const CVector& a, const CVector& b) { return (a - b).norm() / b.norm(); }

inline Frame mercedes() {
  CMatrix V(2, 3);
  const double pi = std::acos(-1.0);
  for (int k = 0; k < 3; ++k) {
    V(0, k) = std::cos(pi / 2 + 2 * pi * k / 3);
    V(1, k) = std::sin(pi / 2 + 2 * pi * k / 3);
  }
  return locframe::make_explicit_frame(V, "mercedes");
}

inline Frame gabor(long N, long a, long b) {
  return locframe::make_gabor_frame(N, a, b,
                                    locframe::gaussian_window(N, std::sqrt(N / (2.0 * std::acos(-1.0)))));
}

inline Frame translates(long N, double sigma = 1.0) {
  return locframe::make_translates_frame(N, 1, locframe::gaussian_window(N, sigma));
}

/// The suite used by the frame-level acceptance checks.
inline std::vector<Frame> suite_frames() {
  return {locframe::make_onb(32),  gabor(16, 2, 4),     gabor(64, 4, 8),
          gabor(144, 8, 8),        translates(64),      locframe::make_perturbed_onb(64, 3.0, 7)};
}

}  // namespace testing_support
