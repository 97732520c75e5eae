#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "locframe/core_linalg.hpp"
#include "locframe/frames.hpp"

namespace locframe {

struct LocalizationReport {
  MatrixAlgebraSpec algebra;
  std::string left_id;
  std::string right_id;
  /// Norm of the cross-Gram matrix in the algebra selected by `algebra.kind`.
  double cross_gram_norm = 0.0;
  double jaffard = 0.0;
  double schur = 0.0;
  /// Absent when the Gram matrix occupies fewer than four distance shells.
  std::optional<DecayFit> decay;
  bool member = false;
};

/// Membership at finite scale: the algebra norm is within the threshold and
/// the fitted decay exponent is at least s - 0.25.
LocalizationReport localization_report(const Frame& left, const Frame& right,
                                       const MatrixAlgebraSpec& alg);

struct DualLocalizationReport {
  LocalizationReport primal;
  LocalizationReport dual;        ///< (dual, dual)
  LocalizationReport mixed;       ///< (frame, dual)
  /// Dual decay exponent fell more than 0.5 below the primal one.
  bool exponent_drop = false;
};

class LocalizationPreconditionError : public Error {
 public:
  LocalizationPreconditionError(const std::string& what, LocalizationReport report)
      : Error(ErrorCode::precondition_failed, what), report_(std::move(report)) {}
  const LocalizationReport& report() const { return report_; }

 private:
  LocalizationReport report_;
};

/// Requires an intrinsically localized frame.
DualLocalizationReport dual_localization_check(const Frame& frame, const MatrixAlgebraSpec& alg);

struct TransitivityReport {
  double norm_psi_phi = 0.0;
  double norm_phidual_xi = 0.0;
  double norm_psi_xi = 0.0;
  /// Algebra constant over the index sets of psi, phi and xi.
  double constant = 0.0;
  double bound = 0.0;
  bool hypotheses_member = false;
  bool holds = false;
  double duality_residual = 0.0;
};

/// Checks ||G_{psi,xi}|| <= C ||G_{psi,phi}|| ||G_{phi_dual,xi}||. phi_dual must
/// reconstruct with phi to 1e-8.
TransitivityReport transitivity_check(const Frame& psi, const Frame& phi, const Frame& phi_dual,
                                      const Frame& xi, const MatrixAlgebraSpec& alg);

/// A coorbit space: the frame whose canonical dual coefficients define the
/// norm, and the sequence space those coefficients are measured in.
struct CoorbitSpec {
  Frame frame;
  SeqSpaceSpec space;

  /// Rejects weights that are not admissible for `alg`.
  static CoorbitSpec checked(Frame frame, SeqSpaceSpec space, const MatrixAlgebraSpec& alg);
};

/// ||C_{dual} f|| in the coefficient space.
double coorbit_norm(const CVector& f, const CoorbitSpec& spec);

struct EquivalenceConstants {
  double lower = 0.0;
  double upper = 0.0;
  /// False when the Gram norms are interpolation bounds (p not in {1,2,inf}).
  bool exact = true;
};

/// lower = 1 / ||G_dual||, upper = ||G_frame|| as operators on the space.
EquivalenceConstants equivalence_constants(const Frame& frame, const SeqSpaceSpec& space);

/// <C_dual f, C_frame h>; equals the ambient inner product <f, h>.
Complex coorbit_pairing(const CVector& f, const CVector& h, const CoorbitSpec& spec);

struct CoorbitInclusion {
  bool included = false;
  InclusionCertificate seq_certificate;
  /// (truncation size, ||f||_b / ||f||_a) for the witness, empty if included.
  std::vector<std::pair<long, double>> witness;
  bool witness_monotone = false;
};

inline const std::vector<long> kWitnessTruncations{16, 32, 64, 128, 256, 512};

CoorbitInclusion coorbit_inclusion(const Frame& frame, const SeqSpaceSpec& a,
                                   const SeqSpaceSpec& b,
                                   const std::vector<long>& truncations = kWitnessTruncations);

struct SynthesisNorm {
  double value = 0.0;
  /// "exact" for p = 2, "bound" otherwise.
  std::string kind;
};

/// inf{ ||c|| : f = D c }.
SynthesisNorm min_synthesis_norm(const CVector& f, const Frame& frame, const SeqSpaceSpec& space);

}  // namespace locframe
