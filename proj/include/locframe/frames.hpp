#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locframe/core_linalg.hpp"
#include "locframe/index_set.hpp"
#include "locframe/types.hpp"

namespace locframe {

struct FrameBounds {
  double lower = 0.0;
  double upper = 0.0;

  bool tight() const { return std::abs(upper - lower) <= 1e-10 * upper; }
};

/// How a frame was built, kept for serialization and reports.
struct Provenance {
  std::string kind = "explicit";
  std::vector<std::pair<std::string, double>> params;
  std::uint64_t seed = 0;

  std::optional<double> param(const std::string& name) const;
};

/// A finite family of vectors (the columns of an n x K matrix) indexed by an
/// IndexSet. Immutable; the frame operator, bounds and canonical dual are
/// computed once on first use and shared between copies.
class Frame {
 public:
  Frame(CMatrix vectors, IndexSet index, std::string id, Provenance provenance = {});

  const CMatrix& vectors() const { return vectors_; }
  const IndexSet& index_set() const { return index_; }
  const std::string& id() const { return id_; }
  const Provenance& provenance() const { return provenance_; }

  /// Ambient dimension n.
  Eigen::Index ambient_dim() const { return vectors_.rows(); }
  /// Number of elements K.
  Eigen::Index size() const { return vectors_.cols(); }
  double redundancy() const { return static_cast<double>(size()) / ambient_dim(); }

  /// S = sum_k psi_k psi_k^*.
  const CMatrix& frame_operator() const;
  /// Throws NotAFrameError when the family does not span.
  const FrameBounds& bounds() const;
  /// Columns S^{-1} psi_k.
  const CMatrix& dual_vectors() const;

  /// Populates the cache; call before sharing a frame across threads.
  void freeze() const;

 private:
  struct Cache;
  const Cache& cache() const;

  CMatrix vectors_;
  IndexSet index_;
  std::string id_;
  Provenance provenance_;
  std::shared_ptr<Cache> cache_;
};

/// (<f, psi_k>)_k.
CVector analysis(const Frame& frame, const CVector& f);
/// sum_k c_k psi_k.
CVector synthesis(const Frame& frame, const CVector& c);
CMatrix frame_operator(const Frame& frame);
FrameBounds frame_bounds(const Frame& frame);
Frame canonical_dual(const Frame& frame);

/// Cross-Gram matrix (G)_{k,l} = <right_l, left_k>, i.e. C_left D_right.
CMatrix gram(const Frame& left, const Frame& right);

struct RieszResult {
  bool riesz = false;
  /// Extreme eigenvalues of the Gram matrix; bounds of the Riesz sequence
  /// when `riesz` holds.
  FrameBounds bounds;
};

RieszResult riesz_bounds(const Frame& frame);

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

Frame make_onb(long n);

/// Explicit vectors on a circular line index set.
Frame make_explicit_frame(CMatrix vectors, std::string id);

/// Unit-norm periodic Gaussian exp(-d^2 / (2 sigma^2)), d the circular
/// distance to `center`. Even windows (center 0) give no frame at critical
/// density a b = N; a half-sample center avoids the Zak-transform zero.
CVector gaussian_window(long N, double sigma, double center = 0.0);

/// psi_{(m,j)}[x] = window[(x - m a) mod N] exp(2 pi i j b x / N) for
/// m < N/a, j < N/b, indexed on the time-frequency lattice.
Frame make_gabor_frame(long N, long a, long b, const CVector& window,
                       Provenance provenance = {"gabor", {}, 0});

/// Circular shifts of the generator by multiples of step.
Frame make_translates_frame(long N, long step, const CVector& generator,
                            Provenance provenance = {"translates", {}, 0});

/// Identity plus a seeded random matrix with |E_jk| <= 0.2 (1 + d(j,k))^{-decay_s}.
Frame make_perturbed_onb(long N, double decay_s, std::uint64_t seed);

}  // namespace locframe
