#include "locframe/galerkin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

namespace locframe {

// ---------------------------------------------------------------------------
// LinearOperator
// ---------------------------------------------------------------------------

LinearOperator LinearOperator::dense(CMatrix M) {
  LinearOperator op;
  op.rows_ = M.rows();
  op.cols_ = M.cols();
  op.dense_ = std::make_shared<const CMatrix>(std::move(M));
  return op;
}

LinearOperator LinearOperator::closure(Eigen::Index rows, Eigen::Index cols, Apply apply,
                                       Apply adjoint) {
  if (!apply || !adjoint) {
    throw Error(ErrorCode::invalid_argument, "closure operator needs apply and adjoint");
  }
  LinearOperator op;
  op.rows_ = rows;
  op.cols_ = cols;
  op.apply_ = std::move(apply);
  op.adjoint_ = std::move(adjoint);
  return op;
}

LinearOperator LinearOperator::identity(Eigen::Index n) { return dense(CMatrix::Identity(n, n)); }

CVector LinearOperator::apply(const CVector& x) const {
  if (x.size() != cols_) {
    throw Error(ErrorCode::dimension_mismatch, "operator applied to vector of wrong dimension");
  }
  return dense_ ? CVector(*dense_ * x) : apply_(x);
}

CVector LinearOperator::apply_adjoint(const CVector& y) const {
  if (y.size() != rows_) {
    throw Error(ErrorCode::dimension_mismatch, "adjoint applied to vector of wrong dimension");
  }
  return dense_ ? CVector(dense_->adjoint() * y) : adjoint_(y);
}

CMatrix LinearOperator::to_dense() const {
  if (dense_) return *dense_;
  CMatrix out(rows_, cols_);
  for (Eigen::Index l = 0; l < cols_; ++l) out.col(l) = apply_(CVector::Unit(cols_, l));
  return out;
}

LinearOperator LinearOperator::adjoint() const {
  if (dense_) return dense(dense_->adjoint());
  return closure(cols_, rows_, adjoint_, apply_);
}

LinearOperator LinearOperator::scaled(Complex alpha) const {
  if (dense_) return dense(alpha * *dense_);
  auto self = *this;
  return closure(
      rows_, cols_, [self, alpha](const CVector& x) { return CVector(alpha * self.apply(x)); },
      [self, alpha](const CVector& y) { return CVector(std::conj(alpha) * self.apply_adjoint(y)); });
}

LinearOperator compose(const LinearOperator& first, const LinearOperator& second) {
  if (first.cols() != second.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "operators are not composable");
  }
  if (first.is_dense() && second.is_dense()) {
    return LinearOperator::dense(first.to_dense() * second.to_dense());
  }
  return LinearOperator::closure(
      first.rows(), second.cols(),
      [first, second](const CVector& x) { return first.apply(second.apply(x)); },
      [first, second](const CVector& y) { return second.apply_adjoint(first.apply_adjoint(y)); });
}

// ---------------------------------------------------------------------------
// Matrix <-> operator
// ---------------------------------------------------------------------------

namespace {

CMatrix dense_of(const LinearOperator& O) { return O.to_dense(); }

double relative_2norm_residual(const CMatrix& approx, const CMatrix& exact) {
  const double denom = operator_2norm(exact);
  const double diff = operator_2norm(approx - exact);
  return denom > 0.0 ? diff / denom : diff;
}

}  // namespace

GalerkinMatrix galerkin_matrix(const LinearOperator& O, const Frame& left, const Frame& right,
                               int threads) {
  if (O.cols() != right.ambient_dim() || O.rows() != left.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch,
                "galerkin: operator is " + std::to_string(O.rows()) + "x" +
                    std::to_string(O.cols()) + " but frames live in C^" +
                    std::to_string(left.ambient_dim()) + " and C^" +
                    std::to_string(right.ambient_dim()));
  }
  GalerkinMatrix out;
  out.left_id = left.id();
  out.right_id = right.id();
  out.generator = O;
  if (O.is_dense()) {
    out.entries = left.vectors().adjoint() * (O.to_dense() * right.vectors());
    return out;
  }
  // Column probes O xi_l; every column is independent.
  const Eigen::Index K = right.size();
  CMatrix images(O.rows(), K);
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(K)));
  auto work = [&](Eigen::Index begin, Eigen::Index end) {
    for (Eigen::Index l = begin; l < end; ++l) {
      images.col(l) = O.apply(right.vectors().col(l));
    }
  };
  if (workers == 1) {
    work(0, K);
  } else {
    std::vector<std::jthread> pool;
    const Eigen::Index chunk = (K + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
      const Eigen::Index b = t * chunk;
      const Eigen::Index e = std::min(K, b + chunk);
      if (b < e) pool.emplace_back(work, b, e);
    }
  }
  out.entries = left.vectors().adjoint() * images;
  return out;
}

LinearOperator operator_from_matrix(const CMatrix& M, const Frame& left, const Frame& right) {
  if (M.rows() != left.size() || M.cols() != right.size()) {
    throw Error(ErrorCode::dimension_mismatch,
                "operator_from_matrix: matrix shape does not match the frames");
  }
  auto L = std::make_shared<const CMatrix>(left.vectors());
  auto R = std::make_shared<const CMatrix>(right.vectors());
  auto A = std::make_shared<const CMatrix>(M);
  return LinearOperator::closure(
      left.ambient_dim(), right.ambient_dim(),
      [L, R, A](const CVector& f) { return CVector(*L * (*A * (R->adjoint() * f))); },
      [L, R, A](const CVector& g) { return CVector(*R * (A->adjoint() * (L->adjoint() * g))); });
}

RoundtripResidual roundtrip_check(const LinearOperator& O, const Frame& phi, const Frame& psi) {
  const CMatrix Od = dense_of(O);
  const CMatrix& P = phi.vectors();
  const CMatrix& S = psi.vectors();
  const CMatrix& Pd = phi.dual_vectors();
  const CMatrix& Sd = psi.dual_vectors();
  if (Od.rows() != P.rows() || Od.cols() != S.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "roundtrip: operator does not map psi into phi");
  }
  RoundtripResidual r;
  r.forward = relative_2norm_residual(P * (Pd.adjoint() * Od * Sd) * S.adjoint(), Od);
  r.mirrored = relative_2norm_residual(Pd * (P.adjoint() * Od * S) * Sd.adjoint(), Od);
  return r;
}

double compose_rule_check(const LinearOperator& O1, const LinearOperator& O2, const Frame& phi,
                          const Frame& psi, const Frame& xi) {
  if (O1.cols() != O2.rows() || O1.rows() != phi.ambient_dim() ||
      O1.cols() != xi.ambient_dim() || O2.cols() != psi.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "compose_rule_check: incompatible dimensions");
  }
  const CMatrix A = dense_of(O1);
  const CMatrix B = dense_of(O2);
  const CMatrix lhs = phi.vectors().adjoint() * (A * B) * psi.vectors();
  const CMatrix rhs = (phi.vectors().adjoint() * A * xi.vectors()) *
                      (xi.dual_vectors().adjoint() * B * psi.vectors());
  const double denom = lhs.norm();
  return denom > 0.0 ? (lhs - rhs).norm() / denom : (lhs - rhs).norm();
}

// ---------------------------------------------------------------------------
// Norm bounds
// ---------------------------------------------------------------------------

namespace {

std::vector<double> as_weights(const SeqSpaceSpec& s, const IndexSet& idx) {
  return s.weight.values_on(idx);
}

CVector random_vector(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

}  // namespace

double probe_norm(const CMatrix& W, const Exponent& from, const Exponent& to, int probes,
                  std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  const std::vector<double> ones_in(static_cast<std::size_t>(W.cols()), 1.0);
  const std::vector<double> ones_out(static_cast<std::size_t>(W.rows()), 1.0);
  double best = 0.0;
  for (int t = 0; t < probes; ++t) {
    CVector x;
    if (from.is_infinite()) {
      // Extreme points of the l^inf ball.
      x.resize(W.cols());
      for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = std::polar(1.0, phase(rng));
    } else {
      x = random_vector(W.cols(), rng);
      if (from.value() == 1.0 && t % 2 == 1) {
        // Sparse probes approach the extreme points of the l^1 ball.
        CVector sparse = CVector::Zero(W.cols());
        sparse(static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(W.cols()))) = 1.0;
        x = sparse;
      }
    }
    const double den = weighted_norm(x, ones_in, from);
    if (den == 0.0) continue;
    best = std::max(best, weighted_norm(W * x, ones_out, to) / den);
  }
  return best;
}

MatrixRepBounds matrixrep_norm_bound(const LinearOperator& O, const Frame& phi, const Frame& xi,
                                     const Frame& psi_ref, const SeqSpaceSpec& from,
                                     const SeqSpaceSpec& to,
                                     const std::optional<MatrixAlgebraSpec>& alg, int probes,
                                     std::uint64_t seed) {
  const CMatrix Od = dense_of(O);
  const IndexSet& Kphi = phi.index_set();
  const IndexSet& Kxi = xi.index_set();
  const IndexSet& Kpsi = psi_ref.index_set();
  const CMatrix& Psi = psi_ref.vectors();
  const CMatrix& PsiD = psi_ref.dual_vectors();

  std::string warning;
  if (alg) {
    const bool ok = localization_report(phi, psi_ref, *alg).member &&
                    localization_report(xi, psi_ref, *alg).member &&
                    localization_report(psi_ref, psi_ref, *alg).member;
    if (!ok) warning = "frames are not mutually localized for the given algebra";
  } else {
    warning = "localization not checked";
  }

  const CMatrix M = phi.vectors().adjoint() * Od * xi.vectors();
  const CMatrix T = PsiD.adjoint() * Od * Psi;  // coorbit representation of O

  MatrixRepBounds out;
  {
    NormBound& b = out.matrix;
    b.gram_left = weighted_operator_norm(gram(phi, psi_ref), Kphi, Kpsi, to).value;
    b.gram_right =
        weighted_operator_norm(CMatrix(PsiD.adjoint() * xi.vectors()), Kpsi, Kxi, from).value;
    b.core = weighted_operator_norm(T, Kpsi, Kpsi, from, to).value;
    b.bound = b.gram_left * b.gram_right * b.core;
    const auto exact = weighted_operator_norm(M, Kphi, Kxi, from, to);
    if (exact.exact) {
      b.measured = exact.value;
      b.measured_exact = true;
    } else {
      const auto wt = as_weights(to, Kphi);
      const auto wf = as_weights(from, Kxi);
      CMatrix W = M;
      for (Eigen::Index k = 0; k < W.rows(); ++k)
        for (Eigen::Index l = 0; l < W.cols(); ++l) W(k, l) *= wt[k] / wf[l];
      b.measured = probe_norm(W, from.p, to.p, probes, seed);
    }
    b.holds = b.measured <= b.bound * (1.0 + 1e-8);
    b.warning = warning;
  }
  {
    // O_(phi,xi)(M) = D_phi M C_xi, measured in coorbit norms through psi_ref.
    NormBound& b = out.operator_;
    b.gram_left = weighted_operator_norm(CMatrix(PsiD.adjoint() * phi.vectors()), Kpsi, Kphi, to).value;
    b.gram_right = weighted_operator_norm(CMatrix(xi.vectors().adjoint() * Psi), Kxi, Kpsi, from).value;
    b.core = weighted_operator_norm(M, Kphi, Kxi, from, to).value;
    b.bound = b.gram_left * b.gram_right * b.core;
    const CMatrix Op = phi.vectors() * M * xi.vectors().adjoint();
    std::mt19937_64 rng(seed + 1);
    const auto wt = as_weights(to, Kpsi);
    const auto wf = as_weights(from, Kpsi);
    double best = 0.0;
    for (int t = 0; t < probes; ++t) {
      const CVector f = random_vector(Od.cols(), rng);
      const double den = weighted_norm(PsiD.adjoint() * f, wf, from.p);
      if (den == 0.0) continue;
      best = std::max(best, weighted_norm(PsiD.adjoint() * (Op * f), wt, to.p) / den);
    }
    b.measured = best;
    b.holds = b.measured <= b.bound * (1.0 + 1e-8);
    b.warning = warning;
  }
  return out;
}

BoundednessVerdict bounded_equiv_check(const LinearOperator& O, const Frame& psi, const Frame& phi,
                                       const SeqSpaceSpec& from, const SeqSpaceSpec& to) {
  const CMatrix Od = dense_of(O);
  const IndexSet& Kpsi = psi.index_set();
  const IndexSet& Kphi = phi.index_set();
  const CMatrix& Psi = psi.vectors();
  const CMatrix& PsiD = psi.dual_vectors();
  const CMatrix& PhiD = phi.dual_vectors();

  const CMatrix M = Psi.adjoint() * Od * phi.vectors();
  const CMatrix T = PsiD.adjoint() * Od * Psi;
  const auto m = weighted_operator_norm(M, Kpsi, Kphi, from, to);
  const auto t = weighted_operator_norm(T, Kpsi, Kpsi, from, to);

  BoundednessVerdict v;
  v.matrix_norm = m.value;
  v.coorbit_norm = t.value;
  v.exact = m.exact && t.exact;
  v.upper_factor = weighted_operator_norm(gram(psi, psi), Kpsi, Kpsi, to).value *
                   weighted_operator_norm(CMatrix(PsiD.adjoint() * phi.vectors()), Kpsi, Kphi, from).value;
  const double back = weighted_operator_norm(CMatrix(PsiD.adjoint() * PsiD), Kpsi, Kpsi, to).value *
                      weighted_operator_norm(CMatrix(PhiD.adjoint() * Psi), Kphi, Kpsi, from).value;
  v.lower_factor = 1.0 / back;
  if (v.matrix_norm == 0.0 && v.coorbit_norm == 0.0) {
    v.within = true;
  } else if (v.coorbit_norm == 0.0) {
    v.within = false;
  } else {
    const double ratio = v.matrix_norm / v.coorbit_norm;
    v.within = ratio >= v.lower_factor * (1.0 - 1e-10) && ratio <= v.upper_factor * (1.0 + 1e-10);
  }
  return v;
}

// ---------------------------------------------------------------------------
// Schur certificates
// ---------------------------------------------------------------------------

std::string to_string(BoundCase c) {
  switch (c) {
    case BoundCase::inf_inf: return "inf_inf";
    case BoundCase::inf_zero: return "inf_zero";
    case BoundCase::one_inf: return "one_inf";
    case BoundCase::one_p: return "one_p";
    case BoundCase::inf_one: return "inf_one";
    case BoundCase::two_two: return "two_two";
  }
  return "unknown";
}

BoundCase parse_bound_case(const std::string& name) {
  for (auto c : {BoundCase::inf_inf, BoundCase::inf_zero, BoundCase::one_inf, BoundCase::one_p,
                 BoundCase::inf_one, BoundCase::two_two}) {
    if (to_string(c) == name) return c;
  }
  throw Error(ErrorCode::unsupported_case, "unsupported certificate case '" + name + "'");
}

std::pair<Exponent, Exponent> case_exponents(BoundCase c, double p) {
  switch (c) {
    case BoundCase::inf_inf: return {Exponent::infinity(), Exponent::infinity()};
    case BoundCase::inf_zero: return {Exponent::infinity(), Exponent::zero()};
    case BoundCase::one_inf: return {Exponent::finite(1.0), Exponent::infinity()};
    case BoundCase::one_p: return {Exponent::finite(1.0), Exponent::finite(p)};
    case BoundCase::inf_one: return {Exponent::infinity(), Exponent::finite(1.0)};
    case BoundCase::two_two: return {Exponent::finite(2.0), Exponent::finite(2.0)};
  }
  throw Error(ErrorCode::unsupported_case, "unsupported certificate case");
}

namespace {

/// Local search for sup over finite E of sum_l |sum_{k in E} W_kl|.
double greedy_row_selection(const CMatrix& W) {
  const Eigen::Index K = W.rows();
  std::vector<bool> in(static_cast<std::size_t>(K), false);
  CVector acc = CVector::Zero(W.cols());
  auto value = [](const CVector& v) { return v.cwiseAbs().sum(); };
  double current = 0.0;
  for (int pass = 0; pass < 50; ++pass) {
    bool changed = false;
    for (Eigen::Index k = 0; k < K; ++k) {
      const CVector trial = in[k] ? CVector(acc - W.row(k).transpose())
                                  : CVector(acc + W.row(k).transpose());
      const double v = value(trial);
      if (v > current * (1.0 + 1e-14)) {
        acc = trial;
        current = v;
        in[k] = !in[k];
        changed = true;
      }
    }
    if (!changed) break;
  }
  return current;
}

}  // namespace

BoundCertificate schur_certificate(const CMatrix& M, const IndexSet& rows, const IndexSet& cols,
                                   const Weight& w1, const Weight& w2, BoundCase c, double p) {
  if (static_cast<std::size_t>(M.rows()) != rows.size() ||
      static_cast<std::size_t>(M.cols()) != cols.size()) {
    throw Error(ErrorCode::dimension_mismatch, "schur certificate: matrix/index set mismatch");
  }
  BoundCertificate cert;
  cert.bound_case = c;
  cert.w1 = w1;
  cert.w2 = w2;
  cert.p = p;
  const auto v1 = w1.values_on(cols);
  const auto v2 = w2.values_on(rows);
  CMatrix W = M;
  for (Eigen::Index k = 0; k < W.rows(); ++k)
    for (Eigen::Index l = 0; l < W.cols(); ++l) W(k, l) *= v2[k] / v1[l];
  const RMatrix A = W.cwiseAbs();

  switch (c) {
    case BoundCase::inf_inf:
    case BoundCase::inf_zero: {
      const RVector row_sums = A.rowwise().sum();
      cert.certified_bound = row_sums.maxCoeff();
      cert.details["sup_row_sum"] = cert.certified_bound;
      if (c == BoundCase::inf_zero) {
        // lim_k of the row sums, read off the outer quarter of the rows.
        const auto order = rows.order_by_magnitude();
        const std::size_t start = order.size() - std::max<std::size_t>(1, order.size() / 4);
        double tail = 0.0;
        for (std::size_t i = start; i < order.size(); ++i) {
          tail = std::max(tail, row_sums(static_cast<Eigen::Index>(order[i])));
        }
        cert.details["tail_row_sum"] = tail;
        cert.details["tail_ratio"] = cert.certified_bound > 0 ? tail / cert.certified_bound : 0.0;
        cert.surrogate = true;
      }
      break;
    }
    case BoundCase::one_inf:
      cert.certified_bound = A.maxCoeff();
      cert.details["sup_entry"] = cert.certified_bound;
      break;
    case BoundCase::one_p: {
      if (!(p >= 1.0)) throw Error(ErrorCode::invalid_argument, "one_p needs p >= 1");
      double sup = 0.0;
      for (Eigen::Index l = 0; l < A.cols(); ++l) sup = std::max(sup, A.col(l).array().pow(p).sum());
      cert.details["sup_column_power_sum"] = sup;
      cert.certified_bound = std::pow(sup, 1.0 / p);
      break;
    }
    case BoundCase::inf_one: {
      cert.certified_bound = A.sum();
      cert.details["absolute_sum"] = cert.certified_bound;
      cert.details["greedy_sup_E"] = greedy_row_selection(W);
      cert.surrogate = true;
      break;
    }
    case BoundCase::two_two: {
      const CMatrix H = W.adjoint() * W;
      const double scale = H.cwiseAbs().rowwise().sum().maxCoeff();
      if (scale == 0.0) {
        cert.certified_bound = 0.0;
        cert.diagonal_roots.assign(20, 0.0);
        cert.details["svd_norm"] = 0.0;
        break;
      }
      const CMatrix Hs = H / scale;
      CMatrix P = Hs;
      double best_rowsum_root = std::numeric_limits<double>::infinity();
      double power_condition = 0.0;
      for (int n = 1; n <= 20; ++n) {
        if (n > 1) P = P * Hs;
        const double diag = P.diagonal().real().maxCoeff();
        const double root = scale * std::pow(std::max(diag, 0.0), 1.0 / n);
        cert.diagonal_roots.push_back(root);
        power_condition = std::max(power_condition, root);
        const double rowsum = P.cwiseAbs().rowwise().sum().maxCoeff();
        best_rowsum_root = std::min(best_rowsum_root, scale * std::pow(rowsum, 1.0 / n));
      }
      // Richardson step in 1/n on log of the diagonal root (n = 10, 20).
      const double l10 = std::log(cert.diagonal_roots[9]);
      const double l20 = std::log(cert.diagonal_roots[19]);
      cert.details["power_condition"] = power_condition;
      cert.details["extrapolated_power_limit"] = std::exp(2.0 * l20 - l10);
      cert.details["svd_norm"] = operator_2norm(W);
      cert.details["rowsum_root_bound_sq"] = best_rowsum_root;
      cert.certified_bound = std::sqrt(best_rowsum_root);
      break;
    }
  }
  return cert;
}

BoundCertificate schur_certificate(const GalerkinMatrix& M, const Frame& left, const Frame& right,
                                   BoundCase c, double p) {
  return schur_certificate(M.entries, left.index_set(), right.index_set(), M.domain_space.weight,
                           M.codomain_space.weight, c, p);
}

// ---------------------------------------------------------------------------
// Invertibility
// ---------------------------------------------------------------------------

GalerkinPseudoInverse galerkin_pseudoinverse(const LinearOperator& O, const Frame& phi,
                                             const Frame& psi) {
  const CMatrix Od = dense_of(O);
  if (Od.rows() != Od.cols()) {
    throw Error(ErrorCode::bijectivity, "galerkin pseudo-inverse: operator is not square");
  }
  const RVector sigma = singular_values(Od);
  const double cond = sigma(sigma.size() - 1) > 0.0 ? sigma(0) / sigma(sigma.size() - 1)
                                                      : std::numeric_limits<double>::infinity();
  if (!(cond < 1e12)) {
    throw Error(ErrorCode::bijectivity,
                "operator is not invertible on the ambient space (condition number " +
                    std::to_string(cond) + ")");
  }
  const CMatrix Oinv = Od.partialPivLu().inverse();
  GalerkinPseudoInverse out;
  out.matrix = psi.dual_vectors().adjoint() * Oinv * phi.dual_vectors();
  const CMatrix M = phi.vectors().adjoint() * Od * psi.vectors();
  const CMatrix proj = psi.dual_vectors().adjoint() * psi.vectors();
  out.projection_residual = (out.matrix * M - proj).norm();
  return out;
}

GalerkinPseudoInverse galerkin_pseudoinverse(const GalerkinMatrix& M, const Frame& phi,
                                             const Frame& psi) {
  if (!M.generator) {
    throw Error(ErrorCode::precondition_failed,
                "galerkin pseudo-inverse needs the generating operator");
  }
  return galerkin_pseudoinverse(*M.generator, phi, psi);
}

double generalized_condition_number(const CMatrix& M, double rank_tol) {
  const RVector sigma = singular_values(M);
  if (sigma.size() == 0 || sigma(0) == 0.0) {
    throw Error(ErrorCode::invalid_argument, "condition number of the zero matrix");
  }
  double smallest = sigma(0);
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rank_tol * sigma(0)) smallest = sigma(i);
  }
  return sigma(0) / smallest;
}

KappaProbe kappa_factorization_probe(const LinearOperator& O, const Frame& phi, const Frame& psi) {
  const CMatrix Od = dense_of(O);
  if (numerical_rank(Od, 1e-12) < std::min(Od.rows(), Od.cols()) || Od.rows() != Od.cols()) {
    throw Error(ErrorCode::bijectivity, "kappa probe needs an invertible operator");
  }
  KappaProbe k;
  k.lhs = generalized_condition_number(phi.vectors().adjoint() * Od * psi.vectors());
  k.rhs = generalized_condition_number(gram(phi, psi)) *
          generalized_condition_number(psi.dual_vectors().adjoint() * psi.vectors()) *
          generalized_condition_number(Od);
  k.ratio = k.lhs / k.rhs;
  k.inequality_holds = k.lhs <= k.rhs * (1.0 + 1e-8);
  k.equality_holds = std::abs(k.lhs - k.rhs) <= 1e-10 * k.rhs;
  return k;
}

}  // namespace locframe
