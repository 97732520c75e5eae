#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "locframe/core_linalg.hpp"
#include "locframe/frames.hpp"
#include "locframe/localization.hpp"

namespace locframe {

/// Linear map C^cols -> C^rows, held either as a dense matrix or as a pair of
/// closures (apply, adjoint). Copies share the underlying data.
class LinearOperator {
 public:
  using Apply = std::function<CVector(const CVector&)>;

  static LinearOperator dense(CMatrix M);
  static LinearOperator closure(Eigen::Index rows, Eigen::Index cols, Apply apply, Apply adjoint);
  static LinearOperator identity(Eigen::Index n);

  Eigen::Index rows() const { return rows_; }
  Eigen::Index cols() const { return cols_; }
  bool is_dense() const { return dense_ != nullptr; }

  CVector apply(const CVector& x) const;
  CVector apply_adjoint(const CVector& y) const;
  /// The dense matrix, assembled by unit-vector probes for closures.
  CMatrix to_dense() const;

  LinearOperator adjoint() const;
  LinearOperator scaled(Complex alpha) const;

 private:
  Eigen::Index rows_ = 0;
  Eigen::Index cols_ = 0;
  std::shared_ptr<const CMatrix> dense_;
  Apply apply_;
  Apply adjoint_;
};

/// first o second.
LinearOperator compose(const LinearOperator& first, const LinearOperator& second);

struct GalerkinMatrix {
  CMatrix entries;
  std::string left_id;
  std::string right_id;
  SeqSpaceSpec domain_space;
  SeqSpaceSpec codomain_space;
  /// Operator the matrix was assembled from, when known.
  std::optional<LinearOperator> generator;
};

/// M_{k,l} = <O xi_l, phi_k>, i.e. C_left o O o D_right. Closures are probed
/// column by column on `threads` workers.
GalerkinMatrix galerkin_matrix(const LinearOperator& O, const Frame& left, const Frame& right,
                               int threads = 1);

/// D_left o M o C_right.
LinearOperator operator_from_matrix(const CMatrix& M, const Frame& left, const Frame& right);

struct RoundtripResidual {
  /// || O_(phi,psi)(M_(phi~,psi~)(O)) - O || / ||O||
  double forward = 0.0;
  /// || O_(phi~,psi~)(M_(phi,psi)(O)) - O || / ||O||
  double mirrored = 0.0;
  double max() const { return std::max(forward, mirrored); }
};

/// O maps the ambient space of psi into that of phi.
RoundtripResidual roundtrip_check(const LinearOperator& O, const Frame& phi, const Frame& psi);

/// Relative Frobenius residual of M_(phi,psi)(O1 O2) = M_(phi,xi)(O1) M_(xi~,psi)(O2).
double compose_rule_check(const LinearOperator& O1, const LinearOperator& O2, const Frame& phi,
                          const Frame& psi, const Frame& xi);

struct NormBound {
  double bound = 0.0;
  double measured = 0.0;
  /// Norm factors entering the bound.
  double gram_left = 0.0;
  double gram_right = 0.0;
  double core = 0.0;
  bool measured_exact = false;
  bool holds = false;
  /// Non-empty when the localization precondition could not be confirmed.
  std::string warning;
};

struct MatrixRepBounds {
  NormBound matrix;    ///< ||M_(phi,xi)(O)|| against the Gram-product bound
  NormBound operator_; ///< ||O_(phi,xi)(M)|| for M = M_(phi,xi)(O), mirrored bound
};

/// Norm bounds for the matrix of O with respect to (phi, xi), with psi_ref
/// defining the coorbit norms. `from` lives on the domain side, `to` on the
/// codomain side. When `alg` is given the frames are checked to be mutually
/// localized and a warning is recorded otherwise.
MatrixRepBounds matrixrep_norm_bound(const LinearOperator& O, const Frame& phi, const Frame& xi,
                                     const Frame& psi_ref, const SeqSpaceSpec& from,
                                     const SeqSpaceSpec& to,
                                     const std::optional<MatrixAlgebraSpec>& alg = std::nullopt,
                                     int probes = 200, std::uint64_t seed = 1);

struct BoundednessVerdict {
  double matrix_norm = 0.0;   ///< ||M_(psi,phi)(O)||
  double coorbit_norm = 0.0;  ///< ||C_psi~ O D_psi||, the coorbit operator norm
  double lower_factor = 0.0;
  double upper_factor = 0.0;
  bool exact = false;
  bool within = false;
};

BoundednessVerdict bounded_equiv_check(const LinearOperator& O, const Frame& psi, const Frame& phi,
                                       const SeqSpaceSpec& from, const SeqSpaceSpec& to);

enum class BoundCase { inf_inf, inf_zero, one_inf, one_p, inf_one, two_two };

std::string to_string(BoundCase c);
BoundCase parse_bound_case(const std::string& name);

struct BoundCertificate {
  BoundCase bound_case = BoundCase::inf_inf;
  /// Upper bound for the operator norm of the weighted matrix between the
  /// case's sequence spaces; +inf when not finite.
  double certified_bound = 0.0;
  Weight w1;  ///< domain weight
  Weight w2;  ///< codomain weight
  /// Exponent of the target space for one_p.
  double p = 2.0;
  std::map<std::string, double> details;
  /// Per-n values [((W^* W)^n)_ii]^{1/n}, maximised over i (two_two only).
  std::vector<double> diagonal_roots;
  /// The reported quantity is a finite-scale stand-in for an infinite-scale
  /// criterion.
  bool surrogate = false;
};

/// Weighted Schur-type boundedness criteria for W = diag(w2) M diag(1/w1).
BoundCertificate schur_certificate(const CMatrix& M, const IndexSet& rows, const IndexSet& cols,
                                   const Weight& w1, const Weight& w2, BoundCase c,
                                   double p = 2.0);
BoundCertificate schur_certificate(const GalerkinMatrix& M, const Frame& left, const Frame& right,
                                   BoundCase c, double p = 2.0);

/// Source and target exponents of a case.
std::pair<Exponent, Exponent> case_exponents(BoundCase c, double p = 2.0);

/// max ||W x||_to / ||x||_from over random probes.
double probe_norm(const CMatrix& W, const Exponent& from, const Exponent& to, int probes,
                  std::uint64_t seed);

struct GalerkinPseudoInverse {
  CMatrix matrix;  ///< M_(psi~,phi~)(O^{-1})
  /// || pinv * M - G_(psi~,psi) ||_F
  double projection_residual = 0.0;
};

/// Inverse of M_(phi,psi)(O) on ran C_psi. Throws bijectivity when O is
/// singular (condition number >= 1e12).
GalerkinPseudoInverse galerkin_pseudoinverse(const LinearOperator& O, const Frame& phi,
                                             const Frame& psi);
GalerkinPseudoInverse galerkin_pseudoinverse(const GalerkinMatrix& M, const Frame& phi,
                                             const Frame& psi);

/// sigma_max / smallest nonzero singular value.
double generalized_condition_number(const CMatrix& M, double rank_tol = kDefaultRankTol);

struct KappaProbe {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool inequality_holds = false;
  bool equality_holds = false;
};

KappaProbe kappa_factorization_probe(const LinearOperator& O, const Frame& phi, const Frame& psi);

}  // namespace locframe
