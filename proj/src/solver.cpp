#include "locframe/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace locframe {

std::string to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::cg: return "cg";
    case SolveMethod::richardson: return "richardson";
    case SolveMethod::direct: return "direct";
  }
  return "unknown";
}

SolveMethod parse_solve_method(const std::string& name) {
  if (name == "cg") return SolveMethod::cg;
  if (name == "richardson") return SolveMethod::richardson;
  if (name == "direct") return SolveMethod::direct;
  throw Error(ErrorCode::invalid_argument, "unknown solve method '" + name + "'");
}

std::string to_string(ProjectionSchedule::Selection s) {
  return s == ProjectionSchedule::Selection::centered ? "centered" : "greedy";
}

// ---------------------------------------------------------------------------
// Subframes and schedules
// ---------------------------------------------------------------------------

namespace {

CMatrix columns(const CMatrix& V, const std::vector<std::size_t>& subset) {
  CMatrix out(V.rows(), static_cast<Eigen::Index>(subset.size()));
  for (std::size_t i = 0; i < subset.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(subset[i]);
    if (k >= V.cols()) throw Error(ErrorCode::invalid_argument, "subset index out of range");
    out.col(static_cast<Eigen::Index>(i)) = V.col(k);
  }
  return out;
}

std::vector<long> doubling_sizes(long K, long first, std::optional<long> max_levels) {
  if (first <= 0) throw Error(ErrorCode::invalid_argument, "first level size must be positive");
  std::vector<long> sizes;
  for (long N = first; N < K; N *= 2) sizes.push_back(N);
  sizes.push_back(K);
  if (max_levels) {
    if (*max_levels <= 0) throw Error(ErrorCode::invalid_argument, "--levels must be positive");
    if (static_cast<long>(sizes.size()) > *max_levels) {
      sizes.erase(sizes.begin(), sizes.end() - *max_levels);
    }
  }
  return sizes;
}

ProjectionSchedule build_schedule(const Frame& frame, ProjectionSchedule::Selection sel,
                                  const std::vector<std::size_t>& order, long first,
                                  std::optional<long> max_levels) {
  ProjectionSchedule s{frame, sel, {}, {}};
  for (long N : doubling_sizes(frame.size(), first, max_levels)) {
    std::vector<std::size_t> level(order.begin(), order.begin() + N);
    std::sort(level.begin(), level.end());
    s.subspaces.push_back(subframe_subspace(frame, level));
    s.levels.push_back(std::move(level));
  }
  return s;
}

bool is_hermitian(const CMatrix& M) {
  if (M.rows() != M.cols()) return false;
  const double scale = std::max(M.norm(), 1e-300);
  return (M - M.adjoint()).norm() <= 1e-8 * scale;
}

}  // namespace

Subspace subframe_subspace(const Frame& frame, const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw Error(ErrorCode::invalid_argument, "subframe: empty subset");
  const CMatrix V = columns(frame.vectors(), subset);
  Eigen::BDCSVD<CMatrix> svd(V, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) {
    throw Error(ErrorCode::precondition_failed, "subframe spans the zero subspace");
  }
  Eigen::Index r = 0;
  while (r < s.size() && s(r) > kDefaultRankTol * s(0)) ++r;
  return {svd.matrixU().leftCols(r), s(r - 1) * s(r - 1), s(0) * s(0)};
}

LinearOperator subframe_projection(const Frame& frame, const std::vector<std::size_t>& subset) {
  // V pinv(V) loses idempotency when the subframe is badly conditioned; the
  // orthonormal basis of the same range does not.
  const CMatrix& Q = subframe_subspace(frame, subset).basis;
  return LinearOperator::dense(Q * Q.adjoint());
}

ProjectionSchedule ProjectionSchedule::centered(const Frame& frame, long first,
                                                std::optional<long> max_levels) {
  return build_schedule(frame, Selection::centered, frame.index_set().order_by_magnitude(), first,
                        max_levels);
}

ProjectionSchedule ProjectionSchedule::energy_greedy(const Frame& frame, const CVector& y,
                                                     long first, std::optional<long> max_levels) {
  const CVector c = analysis(frame, y);
  const RVector norms = frame.vectors().colwise().norm().transpose();
  std::vector<std::size_t> order(static_cast<std::size_t>(frame.size()));
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  auto score = [&](std::size_t k) {
    const auto i = static_cast<Eigen::Index>(k);
    return norms(i) > 0.0 ? std::abs(c(i)) / norms(i) : 0.0;
  };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return score(a) > score(b); });
  return build_schedule(frame, Selection::energy_greedy, order, first, max_levels);
}

double ProjectionSchedule::max_bounds_ratio() const {
  double r = 0.0;
  for (const auto& s : subspaces) r = std::max(r, s.upper / s.lower);
  return r;
}

// ---------------------------------------------------------------------------
// Iterative solvers
// ---------------------------------------------------------------------------

namespace {

constexpr int kStagnationWindow = 50;

bool in_range(const CMatrix& M, const CVector& b) {
  const CVector proj = M * (pseudo_inverse(M) * b);
  return (b - proj).norm() <= 1e-8 * std::max(b.norm(), 1e-300);
}

}  // namespace

IterationResult cg_solve(const CMatrix& M_in, const CVector& b_in, double tol, long max_iter,
                         bool project, bool normal_equations) {
  if (M_in.rows() != M_in.cols() || M_in.rows() != b_in.size()) {
    throw Error(ErrorCode::dimension_mismatch, "cg: matrix and right side do not match");
  }
  CMatrix M = M_in;
  CVector b = b_in;
  IterationResult out;
  if (!is_hermitian(M)) {
    if (!normal_equations) {
      throw Error(ErrorCode::contract, "cg: matrix is not Hermitian (asymmetry above 1e-8)");
    }
    b = M.adjoint() * b;
    M = (M.adjoint() * M).eval();
    out.normal_equations = true;
  }
  if (project) b = M * (pseudo_inverse(M) * b);

  const Eigen::Index K = M.rows();
  if (max_iter <= 0) max_iter = 10 * K;
  out.c = CVector::Zero(K);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  const double mscale = std::max(M.cwiseAbs().rowwise().sum().maxCoeff(), 1e-300);
  CVector r = b;
  CVector p = r;
  double rs = r.squaredNorm();
  double best = 1.0;
  long since_best = 0;
  for (long it = 1; it <= max_iter; ++it) {
    const CVector Mp = M * p;
    const double curv = p.dot(Mp).real();
    if (curv <= 1e-14 * mscale * p.squaredNorm()) {
      if (curv < -1e-12 * mscale * p.squaredNorm()) {
        out.diverged = true;
        out.warning = "negative curvature: matrix is not positive semidefinite";
        return out;
      }
      if (!in_range(M, b)) {
        throw Error(ErrorCode::contract, "cg: right side has a component outside ran M");
      }
      out.diverged = true;
      out.warning = "zero curvature before convergence";
      return out;
    }
    const double alpha = rs / curv;
    out.c += alpha * p;
    r -= alpha * Mp;
    const double rs_new = r.squaredNorm();
    out.iterations = it;
    const double rel = std::sqrt(rs_new) / bnorm;
    out.residuals.push_back(rel);
    out.energy.push_back(-0.5 * b.dot(out.c).real() - 0.5 * r.dot(out.c).real());
    if (rel <= tol) {
      out.converged = true;
      return out;
    }
    if (rel < best * (1.0 - 1e-12)) {
      best = rel;
      since_best = 0;
    } else if (++since_best >= kStagnationWindow) {
      if (!project && !in_range(M, b)) {
        throw Error(ErrorCode::contract, "cg: right side has a component outside ran M");
      }
      out.diverged = true;
      out.warning = "stagnation: no residual decrease over 50 iterations";
      return out;
    }
    p = r + (rs_new / rs) * p;
    rs = rs_new;
  }
  out.warning = "iteration limit reached";
  return out;
}

IterationResult richardson_solve(const CMatrix& M, const CVector& b, double relaxation, double tol,
                                 long max_iter) {
  if (M.rows() != M.cols() || M.rows() != b.size()) {
    throw Error(ErrorCode::dimension_mismatch, "richardson: matrix and right side do not match");
  }
  if (!(relaxation > 0.0)) throw Error(ErrorCode::invalid_argument, "relaxation must be positive");
  const Eigen::Index K = M.rows();
  if (max_iter <= 0) max_iter = 10 * K;
  IterationResult out;

  // Spectral radius of I - w M on ran M, from the eigenvalues of M.
  {
    Eigen::VectorXcd ev;
    if (is_hermitian(M)) {
      ev = Eigen::SelfAdjointEigenSolver<CMatrix>(M, Eigen::EigenvaluesOnly).eigenvalues().cast<Complex>();
    } else {
      ev = Eigen::ComplexEigenSolver<CMatrix>(M, false).eigenvalues();
    }
    const double top = ev.cwiseAbs().maxCoeff();
    double rho = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i) {
      if (std::abs(ev(i)) > kDefaultRankTol * top) {
        rho = std::max(rho, std::abs(1.0 - relaxation * ev(i)));
      }
    }
    out.estimated_rate = rho;
    if (rho >= 1.0) out.warning = "estimated contraction rate >= 1";
  }

  out.c = CVector::Zero(K);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    out.converged = true;
    return out;
  }
  CVector r = b;
  double best = 1.0;
  long since_best = 0;
  for (long it = 1; it <= max_iter; ++it) {
    out.c += relaxation * r;
    r = b - M * out.c;
    const double rel = r.norm() / bnorm;
    out.iterations = it;
    out.residuals.push_back(rel);
    if (rel <= tol) {
      out.converged = true;
      break;
    }
    if (!std::isfinite(rel) || rel > 10.0) {
      out.diverged = true;
      out.warning = "residual grew tenfold over the initial residual";
      break;
    }
    if (rel < best * (1.0 - 1e-12)) {
      best = rel;
      since_best = 0;
    } else if (++since_best >= kStagnationWindow) {
      out.diverged = true;
      out.warning = "stagnation: no residual decrease over 50 iterations";
      break;
    }
  }
  // Geometric mean of the per-step reduction over the second half of the run.
  const auto n = out.residuals.size();
  if (n >= 2) {
    const std::size_t start = n / 2 == n - 1 ? 0 : n / 2;
    const double first = start == 0 ? 1.0 : out.residuals[start - 1];
    const double last = out.residuals.back();
    const double steps = static_cast<double>(n - start);
    if (first > 0.0 && last > 0.0) out.observed_rate = std::pow(last / first, 1.0 / steps);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finite sections
// ---------------------------------------------------------------------------

namespace {

struct CompressedSolve {
  CVector x;
  long iterations = 0;
  bool diverged = false;
  bool normal_equations = false;
};

/// Chooses the relaxation 2 / (lambda_min + lambda_max) over the nonzero spectrum.
double optimal_relaxation(const RVector& positive_spectrum) {
  const double top = positive_spectrum.maxCoeff();
  double low = top;
  for (Eigen::Index i = 0; i < positive_spectrum.size(); ++i) {
    if (positive_spectrum(i) > kDefaultRankTol * top) low = std::min(low, positive_spectrum(i));
  }
  return 2.0 / (low + top);
}

CompressedSolve solve_compressed(const CMatrix& A, const CVector& b, SolveMethod method,
                                 double tol, bool singular, long max_iter = 0) {
  CompressedSolve out;
  switch (method) {
    case SolveMethod::direct:
      out.x = singular ? CVector(pseudo_inverse(A) * b) : CVector(A.partialPivLu().solve(b));
      out.iterations = 1;
      return out;
    case SolveMethod::cg: {
      if (is_hermitian(A)) {
        const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(A, Eigen::EigenvaluesOnly).eigenvalues();
        if (ev(0) < -kDefaultRankTol * std::abs(ev(ev.size() - 1))) {
          out.x = CVector::Zero(A.cols());
          out.diverged = true;
          return out;
        }
        auto r = cg_solve(A, b, tol, max_iter, singular);
        out.x = r.c;
        out.iterations = r.iterations;
        out.diverged = r.diverged || !r.converged;
        return out;
      }
      auto r = cg_solve(A, b, tol, max_iter, singular, true);
      out.x = r.c;
      out.iterations = r.iterations;
      out.diverged = r.diverged || !r.converged;
      out.normal_equations = true;
      return out;
    }
    case SolveMethod::richardson: {
      CMatrix M = A;
      CVector rhs = b;
      bool pd = false;
      if (is_hermitian(A)) {
        const RVector ev = Eigen::SelfAdjointEigenSolver<CMatrix>(A, Eigen::EigenvaluesOnly).eigenvalues();
        pd = ev(0) >= -kDefaultRankTol * std::abs(ev(ev.size() - 1));
      }
      if (!pd) {
        rhs = A.adjoint() * b;
        M = (A.adjoint() * A).eval();
        out.normal_equations = true;
      }
      if (singular) rhs = M * (pseudo_inverse(M) * rhs);
      const RVector spectrum =
          Eigen::SelfAdjointEigenSolver<CMatrix>(M, Eigen::EigenvaluesOnly).eigenvalues().cwiseMax(0.0);
      // Normal equations square the residual scale; tighten accordingly.
      const double inner_tol = out.normal_equations ? tol * tol : tol;
      auto r = richardson_solve(M, rhs, optimal_relaxation(spectrum), std::max(inner_tol, 1e-15),
                                max_iter > 0 ? max_iter : 100 * M.rows());
      out.x = r.c;
      out.iterations = r.iterations;
      out.diverged = r.diverged || !r.converged;
      return out;
    }
  }
  return out;
}

}  // namespace

FiniteSectionResult finite_section_solve_full(const LinearOperator& A_op, const CVector& y,
                                              const ProjectionSchedule& schedule,
                                              SolveMethod method, double tol, int threads,
                                              std::optional<CVector> x_star, double monitor_cap) {
  if (A_op.rows() != A_op.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "finite section: operator must be square");
  }
  if (A_op.rows() != schedule.frame.ambient_dim() || y.size() != A_op.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "finite section: operator, frame and rhs disagree");
  }
  if (schedule.levels.empty()) throw Error(ErrorCode::invalid_argument, "empty schedule");
  const CMatrix A = A_op.to_dense();
  const Eigen::Index n = A.rows();

  FiniteSectionResult out;
  SolveReport& rep = out.report;
  rep.method = method;
  rep.tol = tol;
  rep.contraction_norm = operator_2norm(CMatrix::Identity(n, n) - A);
  rep.sufficient_condition = *rep.contraction_norm < 1.0;
  if (!x_star) {
    const RVector s = singular_values(A);
    if (s(s.size() - 1) > 1e-12 * s(0)) x_star = A.partialPivLu().solve(y);
  }

  const std::size_t L = schedule.levels.size();
  rep.levels.resize(L);
  std::vector<CVector> xs(L);
  std::vector<bool> normal(L, false);
  auto run_level = [&](std::size_t i) {
    const Subspace& sub = schedule.subspaces[i];
    const CMatrix& Q = sub.basis;
    const CMatrix AN = Q.adjoint() * A * Q;
    const CVector bN = Q.adjoint() * y;
    const RVector s = singular_values(AN);
    LevelResult& lv = rep.levels[i];
    lv.N = static_cast<long>(schedule.levels[i].size());
    lv.dim = static_cast<long>(Q.cols());
    lv.subframe_lower = sub.lower;
    lv.subframe_upper = sub.upper;
    const double smin = s(s.size() - 1);
    lv.singular = !(smin > kDefaultRankTol * s(0));
    lv.inverse_norm = smin > 0.0 ? 1.0 / smin : std::numeric_limits<double>::infinity();
    lv.kappa_dagger = s(0) > 0.0 ? generalized_condition_number(AN) : 0.0;
    const auto solved = solve_compressed(AN, bN, method, 0.5 * tol, lv.singular);
    xs[i] = Q * solved.x;
    normal[i] = solved.normal_equations;
    lv.iterations = solved.iterations;
    lv.diverged = solved.diverged;
    lv.residual = (A * xs[i] - y).norm();
    if (x_star) lv.error = (xs[i] - *x_star).norm();
  };
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(L)));
  if (workers == 1) {
    for (std::size_t i = 0; i < L; ++i) run_level(i);
  } else {
    // Static round-robin split; each level writes only its own slot.
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = static_cast<std::size_t>(t); i < L; i += static_cast<std::size_t>(workers)) {
          run_level(i);
        }
      });
    }
  }

  bool any_singular = false;
  for (std::size_t i = 0; i < L; ++i) {
    if (i > 0) rep.levels[i].cauchy = (xs[i] - xs[i - 1]).norm();
    rep.sup_inverse_norm = std::max(rep.sup_inverse_norm, rep.levels[i].inverse_norm);
    any_singular = any_singular || rep.levels[i].singular;
    rep.diverged = rep.diverged || rep.levels[i].diverged;
    rep.normal_equations = rep.normal_equations || normal[i];
  }
  const double ynorm = y.norm();
  rep.final_relative_residual =
      ynorm > 0.0 ? rep.levels.back().residual / ynorm : rep.levels.back().residual;
  rep.monitor_bounded = rep.sup_inverse_norm <= monitor_cap;
  rep.uniform_bounds_flag = schedule.uniform_bounds_flag();
  rep.converged = !rep.diverged && !any_singular && rep.monitor_bounded &&
                  rep.final_relative_residual <= tol;
  if (any_singular) {
    rep.message = "compressed system singular at one or more levels";
  } else if (rep.diverged) {
    rep.message = "iterative solver diverged on at least one level";
  } else if (!rep.monitor_bounded) {
    rep.message = "compressed inverse norms exceed the monitor cap";
  } else if (!rep.converged) {
    rep.message = "final residual above tolerance";
  }
  out.x = xs.back();
  return out;
}

SolveReport finite_section_solve(const LinearOperator& A, const CVector& y,
                                 const ProjectionSchedule& schedule, SolveMethod method,
                                 double tol, int threads, std::optional<CVector> x_star,
                                 double monitor_cap) {
  return finite_section_solve_full(A, y, schedule, method, tol, threads, std::move(x_star),
                                   monitor_cap)
      .report;
}

// ---------------------------------------------------------------------------
// Frame-Galerkin solve
// ---------------------------------------------------------------------------

FrameGalerkinResult frame_galerkin_solve(const LinearOperator& O, const CVector& g,
                                         const Frame& phi, SolveMethod method, double tol,
                                         long max_iter) {
  if (O.rows() != O.cols() || O.rows() != phi.ambient_dim() || g.size() != O.rows()) {
    throw Error(ErrorCode::dimension_mismatch, "frame galerkin: operator, frame and rhs disagree");
  }
  const FrameBounds fb = phi.bounds();
  const CMatrix Od = O.to_dense();
  const CMatrix M = phi.vectors().adjoint() * Od * phi.vectors();
  const CVector b = phi.vectors().adjoint() * g;
  const double inner_tol = 0.5 * tol * std::sqrt(fb.lower / fb.upper);

  FrameGalerkinResult out;
  SolveReport& rep = out.report;
  rep.method = method;
  rep.tol = tol;
  LevelResult lv;
  lv.N = static_cast<long>(phi.size());
  lv.dim = static_cast<long>(phi.ambient_dim());
  lv.subframe_lower = fb.lower;
  lv.subframe_upper = fb.upper;

  // Nonzero spectrum of M on its range gives the inverse-norm estimate.
  const RVector s = singular_values(M);
  double smin = s(0);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s(i) > kDefaultRankTol * s(0)) smin = s(i);
  }
  lv.singular = numerical_rank(M) < M.rows();
  lv.inverse_norm = 1.0 / smin;
  lv.kappa_dagger = s(0) / smin;

  const bool herm = is_hermitian(M);
  RVector ev;
  if (herm) ev = Eigen::SelfAdjointEigenSolver<CMatrix>(M, Eigen::EigenvaluesOnly).eigenvalues();
  const bool psd = herm && ev(0) >= -kDefaultRankTol * std::abs(ev(ev.size() - 1));

  CVector c = CVector::Zero(M.cols());
  switch (method) {
    case SolveMethod::direct:
      c = pseudo_inverse(M) * b;
      lv.iterations = 1;
      break;
    case SolveMethod::cg: {
      if (herm && !psd) {
        rep.diverged = true;
        rep.message = "system matrix is indefinite; CG does not apply";
        break;
      }
      auto r = cg_solve(M, b, inner_tol, max_iter, false, !herm);
      c = r.c;
      lv.iterations = r.iterations;
      rep.normal_equations = r.normal_equations;
      rep.diverged = r.diverged || !r.converged;
      if (rep.diverged) rep.message = r.warning;
      break;
    }
    case SolveMethod::richardson: {
      CMatrix Mr = M;
      CVector br = b;
      RVector spectrum;
      if (psd) {
        spectrum = ev.cwiseMax(0.0);
      } else {
        Mr = M.adjoint() * M;
        br = M.adjoint() * b;
        spectrum = s.cwiseAbs2();
        rep.normal_equations = true;
      }
      const double t = rep.normal_equations ? inner_tol * inner_tol : inner_tol;
      auto r = richardson_solve(Mr, br, optimal_relaxation(spectrum), std::max(t, 1e-15),
                                max_iter > 0 ? max_iter : 100 * M.rows());
      c = r.c;
      lv.iterations = r.iterations;
      rep.diverged = r.diverged || !r.converged;
      if (rep.diverged) rep.message = r.warning;
      break;
    }
  }

  out.coefficients = c;
  out.f = phi.vectors() * c;
  const CVector rm = M * c - b;
  out.matrix_residual = rm.norm();
  out.mapped_residual = (phi.dual_vectors() * rm).norm();
  lv.residual = (Od * out.f - g).norm();
  lv.diverged = rep.diverged;
  {
    const RVector so = singular_values(Od);
    if (so(so.size() - 1) > 1e-12 * so(0)) lv.error = (out.f - Od.partialPivLu().solve(g)).norm();
  }
  rep.levels.push_back(lv);
  const double gnorm = g.norm();
  rep.final_relative_residual = gnorm > 0.0 ? lv.residual / gnorm : lv.residual;
  rep.sup_inverse_norm = lv.inverse_norm;
  rep.monitor_bounded = std::isfinite(lv.inverse_norm);
  rep.converged = !rep.diverged && rep.final_relative_residual <= tol;
  if (!rep.converged && rep.message.empty()) rep.message = "ambient residual above tolerance";
  return out;
}

// ---------------------------------------------------------------------------
// Test operators
// ---------------------------------------------------------------------------

std::string to_string(TestOperatorSpec::Kind k) {
  switch (k) {
    case TestOperatorSpec::Kind::identity_minus_kernel: return "identity_minus_kernel";
    case TestOperatorSpec::Kind::helmholtz_toy: return "helmholtz_toy";
    case TestOperatorSpec::Kind::diagonal: return "diagonal";
  }
  return "unknown";
}

TestOperatorSpec::Kind parse_test_operator_kind(const std::string& name) {
  for (auto k : {TestOperatorSpec::Kind::identity_minus_kernel,
                 TestOperatorSpec::Kind::helmholtz_toy, TestOperatorSpec::Kind::diagonal}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::invalid_argument, "unknown test operator '" + name + "'");
}

TestOperator make_test_operator(const TestOperatorSpec& spec, long n) {
  TestOperator out;
  if (spec.kind == TestOperatorSpec::Kind::diagonal) {
    if (spec.spectrum.empty()) throw Error(ErrorCode::invalid_argument, "diagonal: empty spectrum");
    if (n > 0 && n != static_cast<long>(spec.spectrum.size())) {
      throw Error(ErrorCode::dimension_mismatch, "diagonal: spectrum length differs from n");
    }
    RVector d = Eigen::Map<const RVector>(spec.spectrum.data(),
                                          static_cast<Eigen::Index>(spec.spectrum.size()));
    if ((d.array() == 0.0).any()) out.warnings.push_back("operator is singular");
    out.op = LinearOperator::dense(d.cast<Complex>().asDiagonal());
    return out;
  }
  if (n < 4) throw Error(ErrorCode::invalid_argument, "test operators need n >= 4");
  CMatrix A(n, n);
  auto circ = [n](long j, long k) {
    const long d = std::abs(j - k);
    return static_cast<double>(std::min(d, n - d));
  };
  if (spec.kind == TestOperatorSpec::Kind::identity_minus_kernel) {
    if (!(spec.exponent >= 2.0)) {
      throw Error(ErrorCode::invalid_argument, "kernel exponent must be at least 2");
    }
    if (spec.theta >= 1.0) {
      out.warnings.push_back("theta >= 1: I - theta T need not be invertible");
    }
    // Circulant, so every row has the same sum and T stays symmetric.
    double row = 0.0;
    for (long k = 0; k < n; ++k) row += std::pow(1.0 + circ(0, k), -spec.exponent);
    for (long j = 0; j < n; ++j) {
      for (long k = 0; k < n; ++k) {
        const double t = std::pow(1.0 + circ(j, k), -spec.exponent) / row;
        A(j, k) = (j == k ? 1.0 : 0.0) - spec.theta * t;
      }
    }
  } else {
    if (!(spec.mesh > 0.0)) throw Error(ErrorCode::invalid_argument, "mesh scale must be positive");
    // Single-layer style kernel log(1 + 1/(h d)^2) / (2 pi); the self term uses d = 1/2.
    const double h = spec.mesh;
    std::vector<double> amp(static_cast<std::size_t>(n));
    for (long j = 0; j < n; ++j) {
      amp[static_cast<std::size_t>(j)] = 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * j / n);
    }
    for (long j = 0; j < n; ++j) {
      for (long k = 0; k < n; ++k) {
        const double d = j == k ? 0.5 : circ(j, k);
        const double kern = std::log1p(1.0 / (h * h * d * d)) / (2.0 * std::numbers::pi);
        const double a = std::sqrt(amp[static_cast<std::size_t>(j)] * amp[static_cast<std::size_t>(k)]);
        A(j, k) = a * kern / 1.5 + (j == k ? spec.shift : 0.0);
      }
    }
  }
  out.op = LinearOperator::dense(std::move(A));
  return out;
}

}  // namespace locframe
