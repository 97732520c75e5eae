#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "locframe/frames.hpp"
#include "locframe/galerkin.hpp"

namespace locframe {

enum class SolveMethod { cg, richardson, direct };

std::string to_string(SolveMethod m);
SolveMethod parse_solve_method(const std::string& name);

/// Orthonormal basis of span{psi_k : k in subset}, with the nonzero
/// squared singular values of the subframe (its bounds C_N, D_N).
struct Subspace {
  CMatrix basis;
  double lower = 0.0;
  double upper = 0.0;
};

Subspace subframe_subspace(const Frame& frame, const std::vector<std::size_t>& subset);

/// Orthogonal projection onto V_N = span of the subframe, i.e. the synthesis of
/// the subframe composed with analysis by its dual inside V_N.
LinearOperator subframe_projection(const Frame& frame, const std::vector<std::size_t>& subset);

struct ProjectionSchedule {
  enum class Selection { centered, energy_greedy };

  Frame frame;
  Selection selection = Selection::centered;
  /// Nested subsets; the last one is the full index set.
  std::vector<std::vector<std::size_t>> levels;
  /// Per-level orthonormal bases and subframe bounds.
  std::vector<Subspace> subspaces;
  /// Cap on D_N / C_N before the uniform-bounds flag is raised.
  double ratio_cap = 1e8;

  /// Blocks of size first, 2 first, 4 first, ..., K, ordered by distance to the origin.
  static ProjectionSchedule centered(const Frame& frame, long first = 8,
                                     std::optional<long> max_levels = std::nullopt);
  /// Doubling blocks of the indices with the largest |<y, psi_k>| / ||psi_k||.
  static ProjectionSchedule energy_greedy(const Frame& frame, const CVector& y, long first = 8,
                                          std::optional<long> max_levels = std::nullopt);

  double max_bounds_ratio() const;
  bool uniform_bounds_flag() const { return max_bounds_ratio() > ratio_cap; }
};

std::string to_string(ProjectionSchedule::Selection s);

struct LevelResult {
  long N = 0;
  long dim = 0;  ///< dim V_N
  double residual = 0.0;
  std::optional<double> error;
  /// ||A_N^{-1}||; +inf when the compression is singular.
  double inverse_norm = 0.0;
  long iterations = 0;
  double kappa_dagger = 0.0;
  bool singular = false;
  bool diverged = false;
  /// ||x_N - x_{N-1}||, zero on the first level.
  double cauchy = 0.0;
  double subframe_lower = 0.0;
  double subframe_upper = 0.0;
};

struct SolveReport {
  SolveMethod method = SolveMethod::direct;
  double tol = 1e-10;
  std::vector<LevelResult> levels;
  bool converged = false;
  bool diverged = false;
  double final_relative_residual = 0.0;
  /// ||I - A||_2 and whether it is below 1.
  std::optional<double> contraction_norm;
  bool sufficient_condition = false;
  double sup_inverse_norm = 0.0;
  bool monitor_bounded = false;
  bool uniform_bounds_flag = false;
  bool normal_equations = false;
  std::string message;
};

/// Projection method P_N A P_N x = P_N y over the schedule. Singular levels
/// are flagged and solved by pseudo-inverse. When x_star is absent and A is
/// invertible it is taken from a dense solve.
SolveReport finite_section_solve(const LinearOperator& A, const CVector& y,
                                 const ProjectionSchedule& schedule, SolveMethod method,
                                 double tol = 1e-10, int threads = 1,
                                 std::optional<CVector> x_star = std::nullopt,
                                 double monitor_cap = 1e6);

/// Same, returning the final-level solution as well.
struct FiniteSectionResult {
  CVector x;
  SolveReport report;
};
FiniteSectionResult finite_section_solve_full(const LinearOperator& A, const CVector& y,
                                              const ProjectionSchedule& schedule,
                                              SolveMethod method, double tol = 1e-10,
                                              int threads = 1,
                                              std::optional<CVector> x_star = std::nullopt,
                                              double monitor_cap = 1e6);

struct FrameGalerkinResult {
  CVector f;
  /// Coefficients c = C_{phi~} f in the range of the analysis operator.
  CVector coefficients;
  /// ||D_{phi~}(M c - C_phi g)||, the matrix residual mapped back.
  double mapped_residual = 0.0;
  double matrix_residual = 0.0;
  SolveReport report;
};

/// Solves M_(phi,phi)(O) c = C_phi g on ran C_phi and returns f = D_phi c.
FrameGalerkinResult frame_galerkin_solve(const LinearOperator& O, const CVector& g,
                                         const Frame& phi, SolveMethod method,
                                         double tol = 1e-10, long max_iter = 0);

struct IterationResult {
  CVector c;
  long iterations = 0;
  bool converged = false;
  bool diverged = false;
  bool normal_equations = false;
  std::vector<double> residuals;  ///< relative residuals, one per iteration
  /// CG energy 0.5 c^* M c - Re <b, c> after every iteration.
  std::vector<double> energy;
  double estimated_rate = 0.0;
  double observed_rate = 0.0;
  std::string warning;
};

/// Conjugate gradients on a Hermitian positive semidefinite matrix. With
/// `project` the right side is first projected onto ran M. Non-Hermitian
/// input is a contract error unless `normal_equations` is set. Negative
/// curvature marks the run diverged. max_iter = 0 means 10 K.
IterationResult cg_solve(const CMatrix& M, const CVector& b, double tol = 1e-10, long max_iter = 0,
                         bool project = false, bool normal_equations = false);

/// c <- c + relaxation (b - M c). max_iter = 0 means 10 K.
IterationResult richardson_solve(const CMatrix& M, const CVector& b, double relaxation,
                                 double tol = 1e-10, long max_iter = 0);

struct TestOperatorSpec {
  enum class Kind { identity_minus_kernel, helmholtz_toy, diagonal };
  Kind kind = Kind::identity_minus_kernel;
  double theta = 0.5;
  double exponent = 3.0;
  /// helmholtz_toy: identity shift and mesh scale.
  double shift = 1.0;
  double mesh = 1.0;
  std::vector<double> spectrum;
};

std::string to_string(TestOperatorSpec::Kind k);
TestOperatorSpec::Kind parse_test_operator_kind(const std::string& name);

struct TestOperator {
  LinearOperator op;
  std::vector<std::string> warnings;
};

TestOperator make_test_operator(const TestOperatorSpec& spec, long n);

}  // namespace locframe
