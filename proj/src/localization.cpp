#include "locframe/localization.hpp"

#include <algorithm>
#include <cmath>

namespace locframe {

namespace {

Frame dual_of(const Frame& frame) { return canonical_dual(frame); }

}  // namespace

LocalizationReport localization_report(const Frame& left, const Frame& right,
                                       const MatrixAlgebraSpec& alg) {
  alg.validate();
  const CMatrix G = gram(left, right);
  LocalizationReport r;
  r.algebra = alg;
  r.left_id = left.id();
  r.right_id = right.id();
  r.jaffard = jaffard_norm(G, left.index_set(), right.index_set(), alg.s);
  r.schur = schur_weighted_norm(G, left.index_set(), right.index_set(), alg.s);
  r.cross_gram_norm = alg.kind == MatrixAlgebraSpec::Kind::jaffard ? r.jaffard : r.schur;
  try {
    r.decay = decay_fit(G, left.index_set(), right.index_set());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::insufficient_data) throw;
  }
  const bool decays = !r.decay || r.decay->fitted_exponent >= alg.s - 0.25;
  r.member = std::isfinite(r.cross_gram_norm) && r.cross_gram_norm <= alg.membership_threshold &&
             decays;
  return r;
}

DualLocalizationReport dual_localization_check(const Frame& frame, const MatrixAlgebraSpec& alg) {
  DualLocalizationReport out;
  out.primal = localization_report(frame, frame, alg);
  if (!out.primal.member) {
    throw LocalizationPreconditionError(
        "frame " + frame.id() + " is not intrinsically localized", out.primal);
  }
  const Frame dual = dual_of(frame);
  out.dual = localization_report(dual, dual, alg);
  out.mixed = localization_report(frame, dual, alg);
  if (out.primal.decay && out.dual.decay) {
    out.exponent_drop = out.dual.decay->fitted_exponent < out.primal.decay->fitted_exponent - 0.5;
  }
  return out;
}

TransitivityReport transitivity_check(const Frame& psi, const Frame& phi, const Frame& phi_dual,
                                      const Frame& xi, const MatrixAlgebraSpec& alg) {
  if (phi.ambient_dim() != phi_dual.ambient_dim() || phi.size() != phi_dual.size()) {
    throw Error(ErrorCode::duality_check_failed, "phi_dual does not match phi in shape");
  }
  TransitivityReport r;
  const Eigen::Index n = phi.ambient_dim();
  const CMatrix recon = phi.vectors() * phi_dual.vectors().adjoint();
  r.duality_residual = operator_2norm(recon - CMatrix::Identity(n, n));
  if (r.duality_residual > 1e-8) {
    throw Error(ErrorCode::duality_check_failed,
                "phi_dual is not a dual frame of phi (reconstruction residual " +
                    std::to_string(r.duality_residual) + ")");
  }
  const auto a = localization_report(psi, phi, alg);
  const auto b = localization_report(phi_dual, xi, alg);
  const auto c = localization_report(psi, xi, alg);
  r.norm_psi_phi = a.cross_gram_norm;
  r.norm_phidual_xi = b.cross_gram_norm;
  r.norm_psi_xi = c.cross_gram_norm;
  r.hypotheses_member = a.member && b.member;
  r.constant = algebra_constant(alg, psi.index_set(), phi.index_set(), xi.index_set());
  r.bound = r.constant * r.norm_psi_phi * r.norm_phidual_xi;
  r.holds = r.norm_psi_xi <= r.bound * (1.0 + 1e-10);
  return r;
}

CoorbitSpec CoorbitSpec::checked(Frame frame, SeqSpaceSpec space, const MatrixAlgebraSpec& alg) {
  const auto adm = admissible_weight_check(alg, space.weight, frame.index_set());
  if (!adm.admissible) {
    throw Error(ErrorCode::invalid_argument,
                "weight is not admissible for the " + to_string(alg.kind) + " algebra");
  }
  return CoorbitSpec{std::move(frame), std::move(space)};
}

double coorbit_norm(const CVector& f, const CoorbitSpec& spec) {
  if (f.size() != spec.frame.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "coorbit norm: vector dimension mismatch");
  }
  const CVector coeffs = spec.frame.dual_vectors().adjoint() * f;
  return seq_norm(coeffs, spec.frame.index_set(), spec.space);
}

EquivalenceConstants equivalence_constants(const Frame& frame, const SeqSpaceSpec& space) {
  const IndexSet& idx = frame.index_set();
  const CMatrix& dual = frame.dual_vectors();
  const auto g = weighted_operator_norm(gram(frame, frame), idx, idx, space);
  const auto gd = weighted_operator_norm(CMatrix(dual.adjoint() * dual), idx, idx, space);
  return {1.0 / gd.value, g.value, g.exact && gd.exact};
}

Complex coorbit_pairing(const CVector& f, const CVector& h, const CoorbitSpec& spec) {
  if (f.size() != spec.frame.ambient_dim() || h.size() != spec.frame.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "coorbit pairing: vector dimension mismatch");
  }
  const CVector cf = spec.frame.dual_vectors().adjoint() * f;
  return dual_pairing(cf, analysis(spec.frame, h));
}

CoorbitInclusion coorbit_inclusion(const Frame& frame, const SeqSpaceSpec& a,
                                   const SeqSpaceSpec& b, const std::vector<long>& truncations) {
  const double min_norm = frame.vectors().colwise().norm().minCoeff();
  if (min_norm < 1e-6) {
    throw Error(ErrorCode::not_norm_bounded,
                "frame " + frame.id() + " is not norm-bounded below (min element norm " +
                    std::to_string(min_norm) + ")");
  }
  CoorbitInclusion out;
  out.seq_certificate = seq_space_included(a, b, frame.index_set().dim());
  out.included = out.seq_certificate.included;
  if (out.included) return out;

  const IndexSet& idx = frame.index_set();
  const auto wa = a.weight.values_on(idx);
  const auto wb = b.weight.values_on(idx);
  const auto order = idx.order_by_magnitude();
  const double r = out.seq_certificate.r;
  const double pa = a.p.value();
  const CoorbitSpec space_a{frame, a};
  const CoorbitSpec space_b{frame, b};

  for (long N : truncations) {
    if (N > frame.size()) break;
    CVector c = CVector::Zero(frame.size());
    if (std::isinf(r)) {
      // Spike where the weight ratio is largest inside the truncation.
      std::size_t best = order[0];
      for (long i = 0; i < N; ++i) {
        const std::size_t k = order[static_cast<std::size_t>(i)];
        if (wb[k] / wa[k] > wb[best] / wa[best]) best = k;
      }
      c(static_cast<Eigen::Index>(best)) = 1.0 / wa[best];
    } else {
      // Holder extremal: c_k = u_k^{r/p_a} / w_a,k with u = w_b / w_a.
      const double e = std::isinf(pa) ? 0.0 : r / pa;
      for (long i = 0; i < N; ++i) {
        const std::size_t k = order[static_cast<std::size_t>(i)];
        c(static_cast<Eigen::Index>(k)) = std::pow(wb[k] / wa[k], e) / wa[k];
      }
    }
    const CVector f = synthesis(frame, c);
    out.witness.emplace_back(N, coorbit_norm(f, space_b) / coorbit_norm(f, space_a));
  }
  out.witness_monotone = out.witness.size() >= 2;
  for (std::size_t i = 1; i < out.witness.size(); ++i) {
    if (out.witness[i].second < out.witness[i - 1].second * (1.0 - 1e-12)) {
      out.witness_monotone = false;
    }
  }
  if (out.witness_monotone && !(out.witness.back().second > out.witness.front().second)) {
    out.witness_monotone = false;
  }
  return out;
}

SynthesisNorm min_synthesis_norm(const CVector& f, const Frame& frame, const SeqSpaceSpec& space) {
  if (f.size() != frame.ambient_dim()) {
    throw Error(ErrorCode::dimension_mismatch, "min synthesis norm: vector dimension mismatch");
  }
  (void)frame.bounds();  // rank deficiency surfaces here
  if (!space.p.is_infinite() && space.p.value() == 2.0) {
    // min ||W c||_2 subject to D c = f  =>  c = W^{-1} (D W^{-1})^+ f.
    const auto w = space.weight.values_on(frame.index_set());
    RVector winv(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) winv(static_cast<Eigen::Index>(k)) = 1.0 / w[k];
    const CMatrix DW = frame.vectors() * winv.cast<Complex>().asDiagonal();
    const CVector scaled = pseudo_inverse(DW) * f;
    return {scaled.norm(), "exact"};
  }
  const CVector coeffs = frame.dual_vectors().adjoint() * f;
  return {seq_norm(coeffs, frame.index_set(), space), "bound"};
}

}  // namespace locframe
