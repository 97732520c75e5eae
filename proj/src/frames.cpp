#include "locframe/frames.hpp"

#include <cmath>
#include <mutex>
#include <numbers>
#include <random>
#include <functional>

namespace locframe {

std::optional<double> Provenance::param(const std::string& name) const {
  for (const auto& [key, value] : params) {
    if (key == name) return value;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Frame cache
// ---------------------------------------------------------------------------

namespace {

constexpr Eigen::Index kDenseEigenLimit = 2048;
constexpr double kCholeskyCondLimit = 1e8;

struct SpectrumEdges {
  double lambda_min = 0.0;
  double lambda_max = 0.0;
  long rank = 0;
};

SpectrumEdges hermitian_edges_dense(const CMatrix& S) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(S, Eigen::EigenvaluesOnly);
  const RVector& ev = eig.eigenvalues();
  SpectrumEdges out{ev(0), ev(ev.size() - 1), 0};
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > kDefaultRankTol * out.lambda_max) ++out.rank;
  }
  return out;
}

double power_iteration(const std::function<CVector(const CVector&)>& apply, Eigen::Index n) {
  CVector v = CVector::Ones(n) / std::sqrt(static_cast<double>(n));
  double lambda = 0.0;
  for (int it = 0; it < 2000; ++it) {
    CVector w = apply(v);
    const double next = w.norm();
    if (next == 0.0) return 0.0;
    v = w / next;
    if (std::abs(next - lambda) <= 1e-13 * next) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace

struct Frame::Cache {
  std::once_flag once;
  CMatrix frame_op;
  CMatrix dual;
  FrameBounds bounds;
  long rank = 0;
  std::optional<std::string> failure;
};

Frame::Frame(CMatrix vectors, IndexSet index, std::string id, Provenance provenance)
    : vectors_(std::move(vectors)),
      index_(std::move(index)),
      id_(std::move(id)),
      provenance_(std::move(provenance)),
      cache_(std::make_shared<Cache>()) {
  if (static_cast<std::size_t>(vectors_.cols()) != index_.size()) {
    throw Error(ErrorCode::dimension_mismatch, "frame has " + std::to_string(vectors_.cols()) +
                                                   " vectors but " +
                                                   std::to_string(index_.size()) + " indices");
  }
  if (vectors_.rows() == 0 || vectors_.cols() == 0) {
    throw Error(ErrorCode::invalid_argument, "frame must be nonempty");
  }
}

const Frame::Cache& Frame::cache() const {
  std::call_once(cache_->once, [this] {
    Cache& c = *cache_;
    c.frame_op = vectors_ * vectors_.adjoint();
    const Eigen::Index n = c.frame_op.rows();
    SpectrumEdges edges;
    if (n <= kDenseEigenLimit) {
      edges = hermitian_edges_dense(c.frame_op);
    } else {
      edges.lambda_max =
          power_iteration([&](const CVector& v) { return CVector(c.frame_op * v); }, n);
      Eigen::LLT<CMatrix> llt(c.frame_op);
      if (llt.info() == Eigen::Success) {
        edges.lambda_min =
            1.0 / power_iteration([&](const CVector& v) { return CVector(llt.solve(v)); }, n);
        edges.rank = n;
      }
    }
    c.rank = edges.rank;
    if (edges.rank < n || !(edges.lambda_min > kDefaultRankTol * edges.lambda_max)) {
      c.failure = "family of " + std::to_string(vectors_.cols()) + " vectors spans only rank " +
                  std::to_string(edges.rank) + " of C^" + std::to_string(n);
      return;
    }
    c.bounds = {edges.lambda_min, edges.lambda_max};
    if (edges.lambda_max / edges.lambda_min <= kCholeskyCondLimit) {
      c.dual = c.frame_op.llt().solve(vectors_);
    } else {
      Eigen::SelfAdjointEigenSolver<CMatrix> eig(c.frame_op);
      const RVector inv = eig.eigenvalues().cwiseInverse();
      c.dual = eig.eigenvectors() * inv.cast<Complex>().asDiagonal() *
               (eig.eigenvectors().adjoint() * vectors_);
    }
  });
  return *cache_;
}

void Frame::freeze() const { (void)cache(); }

const CMatrix& Frame::frame_operator() const { return cache().frame_op; }

const FrameBounds& Frame::bounds() const {
  const Cache& c = cache();
  if (c.failure) throw NotAFrameError("not a frame: " + *c.failure, c.rank);
  return c.bounds;
}

const CMatrix& Frame::dual_vectors() const {
  const Cache& c = cache();
  if (c.failure) throw NotAFrameError("not a frame: " + *c.failure, c.rank);
  return c.dual;
}

// ---------------------------------------------------------------------------
// Operators
// ---------------------------------------------------------------------------

CVector analysis(const Frame& frame, const CVector& f) {
  if (f.size() != frame.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "analysis: vector has dimension " +
                                                   std::to_string(f.size()) + ", frame lives in C^" +
                                                   std::to_string(frame.ambient_dim()));
  }
  return frame.vectors().adjoint() * f;
}

CVector synthesis(const Frame& frame, const CVector& c) {
  if (c.size() != frame.size()) {
    throw Error(ErrorCode::dimension_mismatch, "synthesis: sequence has length " +
                                                   std::to_string(c.size()) + ", frame has " +
                                                   std::to_string(frame.size()) + " elements");
  }
  return frame.vectors() * c;
}

CMatrix frame_operator(const Frame& frame) { return frame.frame_operator(); }

FrameBounds frame_bounds(const Frame& frame) { return frame.bounds(); }

Frame canonical_dual(const Frame& frame) {
  Provenance p{"canonical_dual", {}, frame.provenance().seed};
  return Frame(frame.dual_vectors(), frame.index_set(), frame.id() + "~", std::move(p));
}

CMatrix gram(const Frame& left, const Frame& right) {
  if (left.ambient_dim() != right.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "gram: frames live in different ambient spaces");
  }
  return left.vectors().adjoint() * right.vectors();
}

RieszResult riesz_bounds(const Frame& frame) {
  const CMatrix G = gram(frame, frame);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(G, Eigen::EigenvaluesOnly);
  const RVector& ev = eig.eigenvalues();
  RieszResult out;
  out.bounds = {std::max(ev(0), 0.0), ev(ev.size() - 1)};
  out.riesz = ev(0) > kDefaultRankTol * out.bounds.upper;
  return out;
}

// ---------------------------------------------------------------------------
// Constructors
// ---------------------------------------------------------------------------

Frame make_onb(long n) {
  if (n <= 0) throw Error(ErrorCode::invalid_argument, "ONB dimension must be positive");
  return Frame(CMatrix::Identity(n, n), IndexSet::line(n), "onb" + std::to_string(n),
               {"onb", {{"n", static_cast<double>(n)}}, 0});
}

Frame make_explicit_frame(CMatrix vectors, std::string id) {
  const long K = static_cast<long>(vectors.cols());
  return Frame(std::move(vectors), IndexSet::line(K), std::move(id));
}

CVector gaussian_window(long N, double sigma, double center) {
  if (N <= 0 || !(sigma > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "gaussian window needs N > 0 and sigma > 0");
  }
  if (!(center >= 0.0 && center < static_cast<double>(N))) {
    throw Error(ErrorCode::invalid_argument, "gaussian window center must lie in [0, N)");
  }
  CVector g(N);
  for (long x = 0; x < N; ++x) {
    const double off = std::abs(static_cast<double>(x) - center);
    const double d = std::min(off, static_cast<double>(N) - off);
    g(x) = std::exp(-0.5 * d * d / (sigma * sigma));
  }
  return g / g.norm();
}

Frame make_gabor_frame(long N, long a, long b, const CVector& window, Provenance provenance) {
  if (N <= 0 || a <= 0 || b <= 0 || N % a != 0 || N % b != 0) {
    throw Error(ErrorCode::invalid_argument,
                "gabor: lattice steps must divide N (N=" + std::to_string(N) +
                    ", a=" + std::to_string(a) + ", b=" + std::to_string(b) + ")");
  }
  if (window.size() != N) {
    throw Error(ErrorCode::dimension_mismatch, "gabor: window length must equal N");
  }
  const long M = N / a;
  const long J = N / b;
  if (M * J < N) {
    throw NotAFrameError("not a frame: gabor system has " + std::to_string(M * J) +
                             " elements in C^" + std::to_string(N) + " (redundancy < 1)",
                         M * J);
  }
  CMatrix vectors(N, M * J);
  const double two_pi = 2.0 * std::numbers::pi;
  for (long m = 0; m < M; ++m) {
    for (long j = 0; j < J; ++j) {
      const long col = m * J + j;
      for (long x = 0; x < N; ++x) {
        // Reduce the phase index mod N to keep the argument small.
        const long phase = (j * b * x) % N;
        const Complex mod = std::polar(1.0, two_pi * static_cast<double>(phase) / N);
        vectors(x, col) = window(((x - m * a) % N + N) % N) * mod;
      }
    }
  }
  provenance.kind = "gabor";
  provenance.params.insert(provenance.params.begin(),
                           {{"N", static_cast<double>(N)},
                            {"a", static_cast<double>(a)},
                            {"b", static_cast<double>(b)}});
  return Frame(std::move(vectors), IndexSet::tf_lattice(N, a, b),
               "gabor" + std::to_string(N) + "_" + std::to_string(a) + "_" + std::to_string(b),
               std::move(provenance));
}

Frame make_translates_frame(long N, long step, const CVector& generator, Provenance provenance) {
  if (N <= 0 || step <= 0 || N % step != 0) {
    throw Error(ErrorCode::invalid_argument, "translates: step must divide N");
  }
  if (generator.size() != N) {
    throw Error(ErrorCode::dimension_mismatch, "translates: generator length must equal N");
  }
  const long M = N / step;
  CMatrix vectors(N, M);
  for (long m = 0; m < M; ++m) {
    for (long x = 0; x < N; ++x) vectors(x, m) = generator(((x - m * step) % N + N) % N);
  }
  provenance.kind = "translates";
  provenance.params.insert(provenance.params.begin(),
                           {{"N", static_cast<double>(N)}, {"step", static_cast<double>(step)}});
  return Frame(std::move(vectors), IndexSet::line(M, IndexSet::Metric::circular, step),
               "translates" + std::to_string(N) + "_" + std::to_string(step),
               std::move(provenance));
}

Frame make_perturbed_onb(long N, double decay_s, std::uint64_t seed) {
  if (N <= 0) throw Error(ErrorCode::invalid_argument, "perturbed ONB dimension must be positive");
  if (!(decay_s > 1.0)) {
    throw Error(ErrorCode::invalid_argument, "perturbed ONB needs decay exponent > 1");
  }
  const IndexSet index = IndexSet::line(N);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  CMatrix vectors = CMatrix::Identity(N, N);
  for (long j = 0; j < N; ++j) {
    for (long k = 0; k < N; ++k) {
      const double envelope =
          0.2 * std::pow(1.0 + index.distance(static_cast<std::size_t>(j), static_cast<std::size_t>(k)),
                         -decay_s);
      vectors(j, k) += envelope * unif(rng);
    }
  }
  return Frame(std::move(vectors), index, "perturbed_onb" + std::to_string(N),
               {"perturbed_onb", {{"N", static_cast<double>(N)}, {"decay_s", decay_s}}, seed});
}

}  // namespace locframe
