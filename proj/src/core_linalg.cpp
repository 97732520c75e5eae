#include "locframe/core_linalg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>

namespace locframe {

// ---------------------------------------------------------------------------
// Weight
// ---------------------------------------------------------------------------

Weight Weight::polynomial(double t) {
  Weight w;
  w.family_ = Family::polynomial;
  w.parameter_ = t;
  return w;
}

Weight Weight::exponential(double a) {
  Weight w;
  w.family_ = Family::exponential;
  w.parameter_ = a;
  return w;
}

Weight Weight::explicit_values(std::vector<double> values) {
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw Error(ErrorCode::invalid_argument, "weights must be finite and strictly positive");
    }
  }
  Weight w;
  w.family_ = Family::explicit_values;
  w.values_ = std::move(values);
  return w;
}

std::vector<double> Weight::values_on(const IndexSet& index) const {
  std::vector<double> out(index.size());
  switch (family_) {
    case Family::polynomial:
      for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = std::pow(1.0 + index.magnitude(k), parameter_);
      }
      break;
    case Family::exponential:
      for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = std::exp(parameter_ * index.magnitude(k));
      }
      break;
    case Family::explicit_values:
      if (values_.size() != index.size()) {
        throw Error(ErrorCode::dimension_mismatch, "explicit weight has " +
                                                       std::to_string(values_.size()) +
                                                       " values for " +
                                                       std::to_string(index.size()) + " indices");
      }
      out = values_;
      break;
  }
  return out;
}

Weight Weight::reciprocal() const {
  switch (family_) {
    case Family::polynomial: return polynomial(-parameter_);
    case Family::exponential: return exponential(-parameter_);
    case Family::explicit_values: break;
  }
  std::vector<double> inv(values_.size());
  std::transform(values_.begin(), values_.end(), inv.begin(), [](double v) { return 1.0 / v; });
  return explicit_values(std::move(inv));
}

// ---------------------------------------------------------------------------
// Exponent
// ---------------------------------------------------------------------------

Exponent Exponent::finite(double p) {
  if (std::isinf(p) && p > 0) return infinity();
  if (!(p >= 1.0)) {
    throw Error(ErrorCode::invalid_argument, "sequence-space exponent must be >= 1");
  }
  return Exponent(p, false);
}

Exponent Exponent::dual() const {
  if (is_infinite()) return finite(1.0);
  if (p_ == 1.0) return infinity();
  return finite(p_ / (p_ - 1.0));
}

std::string Exponent::to_string() const {
  if (zero_) return "0";
  if (is_infinite()) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), p_);
  return std::string(buf, res.ptr);
}

Exponent Exponent::parse(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "oo") return infinity();
  if (text == "0") return zero();
  if (auto slash = text.find('/'); slash != std::string::npos) {
    return finite(std::stod(text.substr(0, slash)) / std::stod(text.substr(slash + 1)));
  }
  try {
    return finite(std::stod(text));
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::invalid_argument, "cannot parse exponent '" + text + "'");
  }
}

// ---------------------------------------------------------------------------
// Sequence norms
// ---------------------------------------------------------------------------

double weighted_norm(const CVector& c, const std::vector<double>& weights, const Exponent& p) {
  if (static_cast<std::size_t>(c.size()) != weights.size()) {
    throw Error(ErrorCode::dimension_mismatch, "sequence length " + std::to_string(c.size()) +
                                                   " does not match index set size " +
                                                   std::to_string(weights.size()));
  }
  if (p.is_infinite()) {
    double m = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) m = std::max(m, weights[k] * std::abs(c[k]));
    return m;
  }
  const double pv = p.value();
  if (pv == 1.0) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) s += weights[k] * std::abs(c[k]);
    return s;
  }
  if (pv == 2.0) {
    double s = 0.0;
    for (Eigen::Index k = 0; k < c.size(); ++k) s += std::norm(weights[k] * c[k]);
    return std::sqrt(s);
  }
  // Scale by the max entry to avoid overflow for large p.
  double scale = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) scale = std::max(scale, weights[k] * std::abs(c[k]));
  if (scale == 0.0) return 0.0;
  double s = 0.0;
  for (Eigen::Index k = 0; k < c.size(); ++k) {
    s += std::pow(weights[k] * std::abs(c[k]) / scale, pv);
  }
  return scale * std::pow(s, 1.0 / pv);
}

double seq_norm(const CVector& c, const IndexSet& index, const SeqSpaceSpec& spec) {
  if (static_cast<std::size_t>(c.size()) != index.size()) {
    throw Error(ErrorCode::dimension_mismatch, "sequence length " + std::to_string(c.size()) +
                                                   " does not match index set size " +
                                                   std::to_string(index.size()));
  }
  return weighted_norm(c, spec.weight.values_on(index), spec.p);
}

Complex dual_pairing(const CVector& c, const CVector& d) {
  if (c.size() != d.size()) {
    throw Error(ErrorCode::dimension_mismatch, "dual pairing of sequences of unequal length");
  }
  // Eigen's dot conjugates the first argument.
  return d.dot(c);
}

// ---------------------------------------------------------------------------
// Inclusion of weighted sequence spaces
// ---------------------------------------------------------------------------

namespace {

struct RatioShape {
  double poly = 0.0;  // exponent of (1+|k|)
  double rate = 0.0;  // exponent of exp(|k|)
};

RatioShape shape_of(const Weight& w) {
  if (w.family() == Weight::Family::polynomial) return {w.parameter(), 0.0};
  return {0.0, w.parameter()};
}

double ratio_norm(const std::vector<double>& u, double r) {
  if (std::isinf(r)) return *std::max_element(u.begin(), u.end());
  double s = 0.0;
  for (double x : u) s += std::pow(x, r);
  return std::pow(s, 1.0 / r);
}

}  // namespace

InclusionCertificate seq_space_included(const SeqSpaceSpec& a, const SeqSpaceSpec& b, int dim,
                                        const std::vector<long>& truncations) {
  InclusionCertificate out;
  const double pa = a.p.value();
  const double pb = b.p.value();

  if (pa <= pb) {
    // l^inf is not inside l^0 unless the weight ratio vanishes at infinity.
    const bool needs_vanishing = a.p.is_infinite() && !a.p.is_zero_tag() && b.p.is_zero_tag();
    out.criterion = needs_vanishing ? "vanishing" : "sup";
    out.r = std::numeric_limits<double>::infinity();
  } else {
    out.criterion = "lr";
    out.r = 1.0 / (1.0 / pb - 1.0 / pa);
  }

  const bool explicit_weights = a.weight.family() == Weight::Family::explicit_values ||
                                b.weight.family() == Weight::Family::explicit_values;
  if (explicit_weights) {
    // Explicit weights live on one finite set where every l^p coincides.
    if (a.weight.explicit_data().size() != b.weight.explicit_data().size() &&
        a.weight.family() == b.weight.family()) {
      throw Error(ErrorCode::dimension_mismatch, "explicit weights of different lengths");
    }
    const std::size_t n = std::max(a.weight.explicit_data().size(), b.weight.explicit_data().size());
    const auto line = IndexSet::line(static_cast<long>(n), IndexSet::Metric::absolute);
    const auto wa = a.weight.values_on(line);
    const auto wb = b.weight.values_on(line);
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) u[k] = wb[k] / wa[k];
    out.analytic = false;
    out.included = true;
    out.certificate = ratio_norm(u, out.r);
    out.schedule.emplace_back(static_cast<long>(n), out.certificate);
    return out;
  }

  for (long N : truncations) {
    const auto line = IndexSet::line(N, IndexSet::Metric::absolute);
    const auto wa = a.weight.values_on(line);
    const auto wb = b.weight.values_on(line);
    std::vector<double> u(static_cast<std::size_t>(N));
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = wb[k] / wa[k];
    double cert = ratio_norm(u, out.r);
    if (dim == 2 && !std::isinf(out.r)) {
      // Lattice shells in Z^2 hold 8|k| points (|k| >= 1).
      double s = std::pow(u[0], out.r);
      for (std::size_t k = 1; k < u.size(); ++k) s += 8.0 * static_cast<double>(k) * std::pow(u[k], out.r);
      cert = std::pow(s, 1.0 / out.r);
    }
    out.schedule.emplace_back(N, cert);
  }
  out.certificate = out.schedule.back().second;
  if (out.schedule.size() >= 2) {
    const auto& [n0, c0] = out.schedule[out.schedule.size() - 2];
    const auto& [n1, c1] = out.schedule.back();
    out.growth_slope = std::log(c1 / c0) / std::log(static_cast<double>(n1) / n0);
  }
  out.divergent = out.growth_slope > 0.1;

  const RatioShape sa = shape_of(a.weight);
  const RatioShape sb = shape_of(b.weight);
  const double rate = sb.rate - sa.rate;
  const double poly = sb.poly - sa.poly;
  if (out.criterion == "sup") {
    out.included = rate < 0.0 || (rate == 0.0 && poly <= 0.0);
  } else if (out.criterion == "vanishing") {
    out.included = rate < 0.0 || (rate == 0.0 && poly < 0.0);
  } else {
    out.included = rate < 0.0 || (rate == 0.0 && poly * out.r < -static_cast<double>(dim));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Matrix algebras
// ---------------------------------------------------------------------------

MatrixAlgebraSpec MatrixAlgebraSpec::jaffard(double s, double threshold, int dim) {
  MatrixAlgebraSpec spec{Kind::jaffard, s, threshold, dim};
  spec.validate();
  return spec;
}

MatrixAlgebraSpec MatrixAlgebraSpec::schur_weighted(double s, double threshold, int dim) {
  MatrixAlgebraSpec spec{Kind::schur_weighted, s, threshold, dim};
  spec.validate();
  return spec;
}

void MatrixAlgebraSpec::validate() const {
  if (dim != 1 && dim != 2) {
    throw Error(ErrorCode::invalid_argument, "algebra lattice dimension must be 1 or 2");
  }
  if (!(s > dim)) {
    throw Error(ErrorCode::invalid_argument,
                "decay exponent s must exceed the lattice dimension");
  }
  if (!(membership_threshold > 0.0)) {
    throw Error(ErrorCode::invalid_argument, "membership threshold must be positive");
  }
}

std::string to_string(MatrixAlgebraSpec::Kind kind) {
  return kind == MatrixAlgebraSpec::Kind::jaffard ? "jaffard" : "schur_weighted";
}

namespace {

void check_shape(const CMatrix& A, const IndexSet& rows, const IndexSet& cols) {
  if (static_cast<std::size_t>(A.rows()) != rows.size() ||
      static_cast<std::size_t>(A.cols()) != cols.size()) {
    throw Error(ErrorCode::dimension_mismatch, "matrix shape does not match its index sets");
  }
}

/// (1 + d(k,l))^exponent for all pairs.
RMatrix distance_power(const IndexSet& rows, const IndexSet& cols, double exponent) {
  RMatrix out(rows.size(), cols.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t l = 0; l < cols.size(); ++l) {
      out(k, l) = std::pow(1.0 + cross_distance(rows, k, cols, l), exponent);
    }
  }
  return out;
}

}  // namespace

double jaffard_norm(const CMatrix& A, const IndexSet& rows, const IndexSet& cols, double s) {
  check_shape(A, rows, cols);
  if (A.size() == 0) return 0.0;
  return (A.cwiseAbs().array() * distance_power(rows, cols, s).array()).maxCoeff();
}

double schur_weighted_norm(const CMatrix& A, const IndexSet& rows, const IndexSet& cols,
                           double s) {
  check_shape(A, rows, cols);
  if (A.size() == 0) return 0.0;
  const RMatrix weighted = A.cwiseAbs().array() * distance_power(rows, cols, s).array();
  return std::max(weighted.rowwise().sum().maxCoeff(), weighted.colwise().sum().maxCoeff());
}

double algebra_norm(const MatrixAlgebraSpec& alg, const CMatrix& A, const IndexSet& rows,
                    const IndexSet& cols) {
  return alg.kind == MatrixAlgebraSpec::Kind::jaffard ? jaffard_norm(A, rows, cols, alg.s)
                                                      : schur_weighted_norm(A, rows, cols, alg.s);
}

double algebra_constant(const MatrixAlgebraSpec& alg, const IndexSet& rows, const IndexSet& mid,
                        const IndexSet& cols) {
  const RMatrix left = distance_power(rows, mid, -alg.s);
  const RMatrix right = distance_power(mid, cols, -alg.s);
  const RMatrix outer = distance_power(rows, cols, alg.s);
  if (alg.kind == MatrixAlgebraSpec::Kind::jaffard) {
    return ((left * right).array() * outer.array()).maxCoeff();
  }
  // Max-times product: sup over the middle index of the weight ratio.
  double c = 0.0;
  for (Eigen::Index k = 0; k < left.rows(); ++k) {
    for (Eigen::Index n = 0; n < right.cols(); ++n) {
      double m = 0.0;
      for (Eigen::Index l = 0; l < left.cols(); ++l) m = std::max(m, left(k, l) * right(l, n));
      c = std::max(c, m * outer(k, n));
    }
  }
  return c;
}

// ---------------------------------------------------------------------------
// Decay fit
// ---------------------------------------------------------------------------

namespace {

/// Least-squares line y = c + slope x; returns {slope, rms residual}.
std::pair<double, double> fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  const double slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (my + slope * (x[i] - mx));
    ss += e * e;
  }
  return {slope, std::sqrt(ss / n)};
}

}  // namespace

DecayFit decay_fit(const CMatrix& A, const IndexSet& rows, const IndexSet& cols) {
  check_shape(A, rows, cols);
  std::map<long long, std::pair<double, double>> shells;  // key -> (distance, max)
  for (std::size_t k = 0; k < rows.size(); ++k) {
    for (std::size_t l = 0; l < cols.size(); ++l) {
      const double d = cross_distance(rows, k, cols, l);
      const auto key = std::llround(d * 1e6);
      auto [it, inserted] = shells.try_emplace(key, d, 0.0);
      it->second.second = std::max(it->second.second, std::abs(A(k, l)));
    }
  }
  DecayFit fit;
  for (const auto& [key, shell] : shells) {
    if (shell.second >= 1e-14) fit.shell_maxima.push_back(shell);
  }
  if (fit.shell_maxima.size() < 4) {
    throw Error(ErrorCode::insufficient_data,
                "decay fit needs at least 4 distance shells above 1e-14, found " +
                    std::to_string(fit.shell_maxima.size()));
  }
  std::vector<double> logd, dist, logm;
  for (const auto& [d, m] : fit.shell_maxima) {
    logd.push_back(std::log1p(d));
    dist.push_back(d);
    logm.push_back(std::log(m));
  }
  const auto [slope, residual] = fit_line(logd, logm);
  fit.fitted_exponent = -slope;
  fit.residual = residual;
  const auto [rate, exp_residual] = fit_line(dist, logm);
  fit.exponential_rate = -rate;
  fit.exponential_residual = exp_residual;
  fit.looks_exponential = exp_residual < 0.25 * residual;
  return fit;
}

// ---------------------------------------------------------------------------
// Admissible weights
// ---------------------------------------------------------------------------

AdmissibilityResult admissible_weight_check(const MatrixAlgebraSpec& alg, const Weight& w,
                                            const IndexSet& index) {
  alg.validate();
  const auto values = w.values_on(index);
  for (double v : values) {
    if (!(v > 0.0)) throw Error(ErrorCode::invalid_argument, "weights must be positive");
  }
  const std::size_t n = index.size();
  CMatrix envelope(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) {
      const double ratio = std::max(values[k] / values[l], values[l] / values[k]);
      envelope(k, l) = std::pow(1.0 + index.distance(k, l), -alg.s) * ratio;
    }
  }
  AdmissibilityResult out;
  out.worst_p_norm_bound = schur_weighted_norm(envelope, index, index, 0.0);
  switch (w.family()) {
    case Weight::Family::polynomial:
      out.admissible = std::abs(w.parameter()) <= alg.s - alg.dim - 0.5;
      break;
    case Weight::Family::exponential:
      out.admissible = w.parameter() == 0.0;
      break;
    case Weight::Family::explicit_values:
      out.admissible = out.worst_p_norm_bound <= alg.membership_threshold;
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Dense linear algebra
// ---------------------------------------------------------------------------

RVector singular_values(const CMatrix& M) {
  if (M.size() == 0) return RVector();
  Eigen::BDCSVD<CMatrix> svd(M);
  return svd.singularValues();
}

CMatrix pseudo_inverse(const CMatrix& M, double rank_tol) {
  if (M.size() == 0) return CMatrix::Zero(M.cols(), M.rows());
  Eigen::BDCSVD<CMatrix> svd(M, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sigma = svd.singularValues();
  const double cutoff = rank_tol * (sigma.size() > 0 ? sigma(0) : 0.0);
  RVector inv = RVector::Zero(sigma.size());
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff && sigma(i) > 0.0) inv(i) = 1.0 / sigma(i);
  }
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

long numerical_rank(const CMatrix& M, double rank_tol) {
  const RVector sigma = singular_values(M);
  if (sigma.size() == 0 || sigma(0) == 0.0) return 0;
  long r = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > rank_tol * sigma(0)) ++r;
  }
  return r;
}

double operator_2norm(const CMatrix& M) {
  const RVector sigma = singular_values(M);
  return sigma.size() > 0 ? sigma(0) : 0.0;
}

OperatorNormEstimate weighted_operator_norm(const CMatrix& M, const IndexSet& rows,
                                            const IndexSet& cols, const SeqSpaceSpec& from,
                                            const SeqSpaceSpec& to) {
  check_shape(M, rows, cols);
  if (M.size() == 0) return {0.0, true};
  const auto wt = to.weight.values_on(rows);
  const auto wf = from.weight.values_on(cols);
  CMatrix W = M;
  for (Eigen::Index k = 0; k < W.rows(); ++k) {
    for (Eigen::Index l = 0; l < W.cols(); ++l) W(k, l) *= wt[k] / wf[l];
  }
  const double pf = from.p.value();
  const double pt = to.p.value();
  const std::vector<double> ones_rows(rows.size(), 1.0);
  const std::vector<double> ones_cols(cols.size(), 1.0);

  if (pf == 1.0) {
    double m = 0.0;
    for (Eigen::Index l = 0; l < W.cols(); ++l) {
      m = std::max(m, weighted_norm(W.col(l), ones_rows, to.p));
    }
    return {m, true};
  }
  const Exponent q = from.p.dual();
  if (std::isinf(pt)) {
    double m = 0.0;
    for (Eigen::Index k = 0; k < W.rows(); ++k) {
      m = std::max(m, weighted_norm(W.row(k).transpose(), ones_cols, q));
    }
    return {m, true};
  }
  if (pf == 2.0 && pt == 2.0) return {operator_2norm(W), true};

  // Holder bound, row by row.
  CVector row_norms(W.rows());
  for (Eigen::Index k = 0; k < W.rows(); ++k) {
    row_norms(k) = weighted_norm(W.row(k).transpose(), ones_cols, q);
  }
  double bound = weighted_norm(row_norms, ones_rows, to.p);
  if (pf == pt) {
    const RMatrix A = W.cwiseAbs();
    const double n1 = A.colwise().sum().maxCoeff();
    const double ninf = A.rowwise().sum().maxCoeff();
    bound = std::min(bound, std::pow(n1, 1.0 / pf) * std::pow(ninf, 1.0 - 1.0 / pf));
  }
  return {bound, false};
}

OperatorNormEstimate weighted_operator_norm(const CMatrix& M, const IndexSet& rows,
                                            const IndexSet& cols, const SeqSpaceSpec& space) {
  return weighted_operator_norm(M, rows, cols, space, space);
}

}  // namespace locframe
