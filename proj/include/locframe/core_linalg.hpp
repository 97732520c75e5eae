#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "locframe/index_set.hpp"
#include "locframe/types.hpp"

namespace locframe {

// ---------------------------------------------------------------------------
// Weights and weighted sequence spaces
// ---------------------------------------------------------------------------

/// Strictly positive weight. Parametric families are evaluated on any index
/// set through IndexSet::magnitude; explicit weights are bound to one size.
class Weight {
 public:
  enum class Family { polynomial, exponential, explicit_values };

  /// w == 1.
  static Weight unit() { return polynomial(0.0); }
  /// w_k = (1 + |k|)^t.
  static Weight polynomial(double t);
  /// w_k = exp(a |k|).
  static Weight exponential(double a);
  static Weight explicit_values(std::vector<double> values);

  Family family() const { return family_; }
  double parameter() const { return parameter_; }
  const std::vector<double>& explicit_data() const { return values_; }
  bool is_unit() const { return family_ != Family::explicit_values && parameter_ == 0.0; }

  std::vector<double> values_on(const IndexSet& index) const;
  Weight reciprocal() const;

  bool operator==(const Weight&) const = default;

 private:
  Family family_ = Family::polynomial;
  double parameter_ = 0.0;
  std::vector<double> values_;
};

/// Exponent tag of a sequence space: finite p >= 1, infinity, or the
/// closed subspace l^0 of sequences tending to zero.
class Exponent {
 public:
  static Exponent finite(double p);
  static Exponent infinity() { return Exponent(std::numeric_limits<double>::infinity(), false); }
  static Exponent zero() { return Exponent(std::numeric_limits<double>::infinity(), true); }

  /// Numeric value; +inf for both infinity and zero.
  double value() const { return p_; }
  bool is_infinite() const { return p_ == std::numeric_limits<double>::infinity(); }
  bool is_zero_tag() const { return zero_; }

  /// Conjugate exponent: 1/p + 1/q = 1, with dual(0) = 1.
  Exponent dual() const;

  std::string to_string() const;
  static Exponent parse(const std::string& text);

  bool operator==(const Exponent&) const = default;

 private:
  Exponent(double p, bool zero) : p_(p), zero_(zero) {}
  double p_ = 2.0;
  bool zero_ = false;
};

struct SeqSpaceSpec {
  Exponent p = Exponent::finite(2.0);
  Weight weight = Weight::unit();

  /// (q, 1/w).
  SeqSpaceSpec dual() const { return {p.dual(), weight.reciprocal()}; }
  bool operator==(const SeqSpaceSpec&) const = default;
};

/// ||w c||_p with explicit per-index weights.
double weighted_norm(const CVector& c, const std::vector<double>& weights, const Exponent& p);

/// ||w c||_p; l^0 is measured with the sup norm.
double seq_norm(const CVector& c, const IndexSet& index, const SeqSpaceSpec& spec);

/// sum_k c_k conj(d_k).
Complex dual_pairing(const CVector& c, const CVector& d);

struct InclusionCertificate {
  bool included = false;
  /// sup(w_b/w_a) or ||w_b/w_a||_r at the largest truncation.
  double certificate = 0.0;
  /// "sup", "lr" or "vanishing".
  std::string criterion;
  /// Holder exponent r for the "lr" criterion.
  double r = 0.0;
  /// Decided from the weight families rather than from finite evidence.
  bool analytic = true;
  /// Log-log growth of the certificate over the last truncation step.
  double growth_slope = 0.0;
  bool divergent = false;
  std::vector<std::pair<long, double>> schedule;
};

inline const std::vector<long> kDefaultTruncations{16, 32, 64, 128, 256, 512, 1024};

/// Decide l^{p_a}_{w_a} subset of l^{p_b}_{w_b} over Z^dim.
InclusionCertificate seq_space_included(const SeqSpaceSpec& a, const SeqSpaceSpec& b,
                                        int dim = 1,
                                        const std::vector<long>& truncations = kDefaultTruncations);

// ---------------------------------------------------------------------------
// Solid matrix algebras
// ---------------------------------------------------------------------------

struct MatrixAlgebraSpec {
  enum class Kind { jaffard, schur_weighted };

  Kind kind = Kind::jaffard;
  double s = 3.0;
  double membership_threshold = 10.0;
  int dim = 1;

  static MatrixAlgebraSpec jaffard(double s, double threshold = 10.0, int dim = 1);
  static MatrixAlgebraSpec schur_weighted(double s, double threshold = 10.0, int dim = 1);

  /// Throws unless s > dim.
  void validate() const;
};

std::string to_string(MatrixAlgebraSpec::Kind kind);

/// sup_{k,l} |A_kl| (1 + d(k,l))^s.
double jaffard_norm(const CMatrix& A, const IndexSet& rows, const IndexSet& cols, double s);
/// max of the (1 + d)^s weighted row and column sums.
double schur_weighted_norm(const CMatrix& A, const IndexSet& rows, const IndexSet& cols,
                           double s);
double algebra_norm(const MatrixAlgebraSpec& alg, const CMatrix& A, const IndexSet& rows,
                    const IndexSet& cols);

/// Constant C with ||A B|| <= C ||A|| ||B|| for matrices over rows x mid and
/// mid x cols, computed exactly on the given index sets.
double algebra_constant(const MatrixAlgebraSpec& alg, const IndexSet& rows, const IndexSet& mid,
                        const IndexSet& cols);

struct DecayFit {
  double fitted_exponent = 0.0;
  /// RMS residual of the log-log regression.
  double residual = 0.0;
  std::vector<std::pair<double, double>> shell_maxima;
  /// Slope and residual of log(max) against distance; a small exponential
  /// residual next to a large power-law one indicates exponential decay.
  double exponential_rate = 0.0;
  double exponential_residual = 0.0;
  bool looks_exponential = false;
};

/// Power-law fit of per-distance shell maxima. Throws insufficient_data with
/// fewer than four shells above 1e-14.
DecayFit decay_fit(const CMatrix& A, const IndexSet& rows, const IndexSet& cols);

struct AdmissibilityResult {
  bool admissible = false;
  double worst_p_norm_bound = 0.0;
};

/// Polynomial weights: |t| <= s - d - 0.5. Exponential weights are never
/// admissible for polynomial-decay algebras. Explicit weights are judged by
/// the Schur bound of the weighted envelope against the membership cap.
AdmissibilityResult admissible_weight_check(const MatrixAlgebraSpec& alg, const Weight& w,
                                            const IndexSet& index);

// ---------------------------------------------------------------------------
// Dense linear algebra
// ---------------------------------------------------------------------------

RVector singular_values(const CMatrix& M);

/// Moore-Penrose inverse; singular values below rank_tol * sigma_max are
/// treated as zero.
CMatrix pseudo_inverse(const CMatrix& M, double rank_tol = kDefaultRankTol);

long numerical_rank(const CMatrix& M, double rank_tol = kDefaultRankTol);

double operator_2norm(const CMatrix& M);

struct OperatorNormEstimate {
  double value = 0.0;
  /// False when value is only an upper bound.
  bool exact = true;
};

/// Norm of M as a map l^{p_from}_{w_from} -> l^{p_to}_{w_to}, where rows carry
/// `to` and columns carry `from`. Exact for 1 -> p, inf -> inf and 2 -> 2;
/// equal exponents otherwise use Riesz-Thorin interpolation, and mixed
/// exponents a Holder row bound.
OperatorNormEstimate weighted_operator_norm(const CMatrix& M, const IndexSet& rows,
                                            const IndexSet& cols, const SeqSpaceSpec& from,
                                            const SeqSpaceSpec& to);

/// Same with a single space on both sides.
OperatorNormEstimate weighted_operator_norm(const CMatrix& M, const IndexSet& rows,
                                            const IndexSet& cols, const SeqSpaceSpec& space);

}  // namespace locframe
