#include "doctest.h"

#include <cmath>
#include <random>

#include "locframe/solver.hpp"
#include "../support.hpp"

using namespace locframe;
using testing_support::random_vector;

TEST_CASE("cg on small systems") {
  auto one = cg_solve(CMatrix::Identity(6, 6), CVector::Ones(6));
  CHECK(one.converged);
  CHECK(one.iterations == 1);

  CVector d = CVector::LinSpaced(10, 1.0, 10.0);
  CMatrix D = d.asDiagonal();
  auto r = cg_solve(D, CVector::Ones(10), 1e-12);
  CHECK(r.converged);
  CHECK(r.iterations <= 10);
  CHECK((D * r.c - CVector::Ones(10)).norm() < 1e-10);
  for (std::size_t k = 1; k < r.energy.size(); ++k) CHECK(r.energy[k] <= r.energy[k - 1] + 1e-12);

  CMatrix S = CMatrix::Identity(4, 4);
  S(3, 3) = 0;
  try {
    cg_solve(S, CVector::Ones(4));
    FAIL("expected contract error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::contract);
  }
  CHECK(cg_solve(S, CVector::Ones(4), 1e-10, 0, true).converged);

  CMatrix N = CMatrix::Identity(4, 4);
  N(0, 1) = 1;
  CHECK_THROWS_AS(cg_solve(N, CVector::Ones(4)), Error);
  auto ne = cg_solve(N, CVector::Ones(4), 1e-12, 0, false, true);
  CHECK(ne.normal_equations);
  CHECK((N * ne.c - CVector::Ones(4)).norm() < 1e-9);
}

TEST_CASE("richardson reproduces the frame algorithm rate") {
  auto exact = richardson_solve(CMatrix::Identity(5, 5), CVector::Ones(5), 1.0);
  CHECK(exact.iterations == 1);
  CHECK(exact.converged);

  Frame g = testing_support::gabor(64, 4, 8);
  const FrameBounds b = frame_bounds(g);
  std::mt19937_64 rng(1);
  auto r = richardson_solve(frame_operator(g), random_vector(64, rng), 2.0 / (b.lower + b.upper), 1e-12);
  CHECK(r.converged);
  const double rate = (b.upper - b.lower) / (b.upper + b.lower);
  CHECK(r.observed_rate == doctest::Approx(rate).epsilon(0.2));
  CHECK(r.estimated_rate == doctest::Approx(rate).epsilon(1e-8));

  auto bad = richardson_solve(frame_operator(g), random_vector(64, rng), 3.0 / b.upper, 1e-12, 500);
  CHECK(bad.diverged);
  CHECK_FALSE(bad.converged);
}

TEST_CASE("test operators") {
  TestOperatorSpec diag{TestOperatorSpec::Kind::diagonal};
  diag.spectrum = {1, 2, 3};
  auto d = make_test_operator(diag, 3);
  CHECK(generalized_condition_number(d.op.to_dense()) == doctest::Approx(3.0));

  TestOperatorSpec k{};
  auto op = make_test_operator(k, 64);
  CHECK(operator_2norm(CMatrix::Identity(64, 64) - op.op.to_dense()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(op.warnings.empty());
  k.theta = 1.2;
  CHECK_FALSE(make_test_operator(k, 64).warnings.empty());

  TestOperatorSpec h{TestOperatorSpec::Kind::helmholtz_toy};
  Frame p = make_perturbed_onb(128, 3.0, 7);
  auto M = galerkin_matrix(make_test_operator(h, 128).op, p, p);
  CHECK(decay_fit(M.entries, p.index_set(), p.index_set()).fitted_exponent >= 1.5);

  CHECK(parse_test_operator_kind(to_string(TestOperatorSpec::Kind::helmholtz_toy)) ==
        TestOperatorSpec::Kind::helmholtz_toy);
}

TEST_CASE("subframe projections") {
  Frame g = testing_support::gabor(64, 4, 8);
  auto sched = ProjectionSchedule::centered(g, 8);
  REQUIRE(sched.levels.size() >= 2);
  CMatrix prev;
  for (std::size_t i = 0; i < sched.levels.size(); ++i) {
    CMatrix P = subframe_projection(g, sched.levels[i]).to_dense();
    CHECK((P * P - P).norm() < 1e-10);
    CHECK((P.adjoint() - P).norm() < 1e-10);
    // directions near the rank cutoff are only determined up to eps / sigma
    const Subspace& sub = sched.subspaces[i];
    if (prev.size()) CHECK((P * prev - prev).norm() < 1e-14 * std::sqrt(sub.upper / sub.lower));
    prev = P;
  }
  CHECK((prev - CMatrix::Identity(64, 64)).norm() < 1e-10);

  Frame onb = make_onb(16);
  CMatrix P = subframe_projection(onb, {0, 1, 2}).to_dense();
  CMatrix want = CMatrix::Zero(16, 16);
  want.topLeftCorner(3, 3).setIdentity();
  CHECK((P - want).norm() < 1e-12);
}

TEST_CASE("finite sections") {
  std::mt19937_64 rng(4);
  Frame onb = make_onb(64);
  auto sched = ProjectionSchedule::centered(onb, 8);
  CVector y = random_vector(64, rng);

  auto id = finite_section_solve_full(LinearOperator::identity(64), y, sched, SolveMethod::cg);
  CHECK(id.report.converged);
  CHECK((id.x - y).norm() < 1e-10 * y.norm());

  auto A = make_test_operator({}, 64).op;
  auto r = finite_section_solve(A, y, sched, SolveMethod::direct);
  CHECK(r.converged);
  REQUIRE(r.contraction_norm.has_value());
  CHECK(*r.contraction_norm == doctest::Approx(0.5));
  CHECK(r.sufficient_condition);
  REQUIRE(r.levels.back().error.has_value());
  CHECK(*r.levels.back().error < 1e-8);

  TestOperatorSpec diag{TestOperatorSpec::Kind::diagonal};
  diag.spectrum.assign(64, 1.0);
  diag.spectrum[10] = 0.0;
  auto zero = finite_section_solve(make_test_operator(diag, 64).op, y, sched, SolveMethod::direct);
  CHECK_FALSE(zero.converged);
  CHECK(zero.levels.back().singular);
}

TEST_CASE("pairwise swap makes the monitor blow up") {
  // A swaps neighbours 2j and 2j+1; centered sections cut some pairs in half
  CMatrix S = CMatrix::Zero(64, 64);
  for (int j = 0; j < 32; ++j) S(2 * j, 2 * j + 1) = S(2 * j + 1, 2 * j) = 1.0;
  Frame onb = make_onb(64);
  std::mt19937_64 rng(5);
  auto r = finite_section_solve(LinearOperator::dense(S), random_vector(64, rng),
                                ProjectionSchedule::centered(onb, 8), SolveMethod::direct);
  bool any_singular = false;
  for (const auto& l : r.levels) any_singular = any_singular || l.singular;
  CHECK(any_singular);
  CHECK_FALSE(r.monitor_bounded);
  CHECK_FALSE(r.converged);
}

TEST_CASE("frame-galerkin solves") {
  std::mt19937_64 rng(6);
  Frame g = testing_support::gabor(32, 2, 4);
  CVector rhs = random_vector(32, rng);

  auto id = frame_galerkin_solve(LinearOperator::identity(32), rhs, g, SolveMethod::cg);
  CHECK(id.report.converged);
  CHECK((id.f - rhs).norm() < 1e-9 * rhs.norm());

  // M is a multiple of a projection only for tight frames; then CG stops after one step
  Frame tight = make_gabor_frame(32, 1, 4, CVector::Unit(32, 0));
  REQUIRE(frame_bounds(tight).tight());
  auto one = frame_galerkin_solve(LinearOperator::identity(32), rhs, tight, SolveMethod::cg);
  CHECK(one.report.converged);
  CHECK((one.f - rhs).norm() < 1e-10 * rhs.norm());
  CHECK(one.report.levels.front().iterations == 1);

  CMatrix S = frame_operator(g);
  auto so = frame_galerkin_solve(LinearOperator::dense(S), rhs, g, SolveMethod::cg);
  CVector want = S.ldlt().solve(rhs);
  CHECK((so.f - want).norm() < 1e-8 * want.norm());

  TestOperatorSpec k{};
  k.theta = 0.4;
  auto A = make_test_operator(k, 32).op;
  auto kr = frame_galerkin_solve(A, rhs, g, SolveMethod::cg, 1e-12);
  CHECK(kr.report.converged);
  CHECK((A.apply(kr.f) - rhs).norm() <= 1e-8 * rhs.norm());
  CHECK(kr.mapped_residual == doctest::Approx((A.apply(kr.f) - rhs).norm()).epsilon(1e-6));

  k.theta = 1.2;
  auto div = frame_galerkin_solve(make_test_operator(k, 32).op, rhs, g, SolveMethod::cg);
  CHECK(div.report.diverged);
  CHECK_FALSE(div.report.converged);
}
