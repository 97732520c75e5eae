#include "doctest.h"

#include <random>

#include "locframe/frames.hpp"
#include "../support.hpp"

using namespace locframe;
using testing_support::random_vector;

namespace {

Frame two_onb_copies(long n) {
  CMatrix V(n, 2 * n);
  V << CMatrix::Identity(n, n), CMatrix::Identity(n, n);
  return make_explicit_frame(V, "onb2");
}

}  // namespace

TEST_CASE("analysis and synthesis on an ONB") {
  Frame onb = make_onb(8);
  CVector e = CVector::Unit(8, 1);
  CHECK((analysis(onb, e) - e).norm() == 0.0);
  CHECK((synthesis(onb, CVector::Unit(8, 5)) - onb.vectors().col(5)).norm() == 0.0);
  CHECK((frame_operator(onb) - CMatrix::Identity(8, 8)).norm() < 1e-15);
  CHECK(frame_bounds(onb).lower == doctest::Approx(1.0));
  CHECK(frame_bounds(onb).upper == doctest::Approx(1.0));
  CHECK((canonical_dual(onb).vectors() - onb.vectors()).norm() < 1e-14);
  CHECK(riesz_bounds(onb).riesz);
}

TEST_CASE("two ONB copies") {
  Frame f = two_onb_copies(6);
  std::mt19937_64 rng(1);
  CVector x = random_vector(6, rng);
  CVector c = analysis(f, x);
  CHECK((c.head(6) - c.tail(6)).norm() == 0.0);
  CHECK((frame_operator(f) - 2.0 * CMatrix::Identity(6, 6)).norm() < 1e-14);
  CHECK_FALSE(riesz_bounds(f).riesz);
  CHECK((canonical_dual(f).vectors() - 0.5 * f.vectors()).norm() < 1e-14);
}

TEST_CASE("mercedes frame is tight with bound 3/2") {
  Frame m = testing_support::mercedes();
  CHECK((frame_operator(m) - 1.5 * CMatrix::Identity(2, 2)).norm() < 1e-14);
  CHECK(frame_bounds(m).tight());
  CHECK(frame_bounds(m).lower == doctest::Approx(1.5));
}

TEST_CASE("scaling a tight frame scales its bounds quadratically") {
  Frame m = testing_support::mercedes();
  Frame s = make_explicit_frame(3.0 * m.vectors(), "scaled");
  CHECK(frame_bounds(s).lower == doctest::Approx(9 * 1.5));
  CHECK(frame_bounds(s).upper == doctest::Approx(9 * 1.5));
}

TEST_CASE("deleting an ONB vector leaves no frame") {
  CMatrix V = CMatrix::Identity(5, 5).leftCols(4);
  Frame f = make_explicit_frame(V, "deleted");
  CHECK_THROWS_AS(frame_bounds(f), NotAFrameError);
  try {
    frame_bounds(f);
  } catch (const NotAFrameError& e) {
    CHECK(e.rank() == 4);
    CHECK(e.code() == ErrorCode::not_a_frame);
  }
}

TEST_CASE("gabor frames") {
  CVector delta = CVector::Unit(8, 0);
  Frame g1 = make_gabor_frame(8, 1, 1, delta);
  CHECK(g1.size() == 64);
  CHECK(frame_bounds(g1).lower == doctest::Approx(8.0));
  CHECK(frame_bounds(g1).upper == doctest::Approx(8.0));

  Frame g = make_gabor_frame(16, 4, 4, gaussian_window(16, 1.6, 0.5));
  CHECK(g.size() == 16);
  CHECK(frame_bounds(g).lower > 0.0);
  CHECK(std::isfinite(frame_bounds(g).upper));

  CHECK_THROWS_AS(make_gabor_frame(16, 8, 4, gaussian_window(16, 1.6, 0.5)), NotAFrameError);
}

TEST_CASE("translates and perturbed ONB") {
  Frame t = make_translates_frame(12, 1, CVector::Unit(12, 0));
  CHECK((t.vectors() - CMatrix::Identity(12, 12)).norm() < 1e-15);

  Frame single = make_translates_frame(12, 12, gaussian_window(12, 2.0));
  CHECK(single.size() == 1);
  CHECK_THROWS_AS(frame_bounds(single), NotAFrameError);

  Frame p = make_perturbed_onb(64, 3.0, 7);
  const FrameBounds b = frame_bounds(p);
  CHECK(b.lower >= 0.5);
  CHECK(b.upper <= 1.6);
  CHECK(std::isfinite(jaffard_norm(gram(p, p), p.index_set(), p.index_set(), 3.0)));
}

TEST_CASE("riesz bounds under a small perturbation") {
  std::mt19937_64 rng(4);
  CMatrix E = testing_support::random_matrix(20, 20, rng);
  E *= 0.1 / operator_2norm(E);
  Frame f = make_explicit_frame(CMatrix::Identity(20, 20) + E, "near");
  RieszResult r = riesz_bounds(f);
  CHECK(r.riesz);
  CHECK(r.bounds.lower >= 0.81 - 1e-12);
  CHECK(r.bounds.upper <= 1.21 + 1e-12);
}

TEST_CASE("reconstruction, adjointness and the gram projection") {
  std::mt19937_64 rng(9);
  for (const Frame& f : testing_support::suite_frames()) {
    CAPTURE(f.id());
    Frame d = canonical_dual(f);
    CMatrix P = gram(f, d);
    CHECK((P * P - P).norm() < 1e-10 * P.norm());
    CHECK((P.adjoint() - P).norm() < 1e-10 * P.norm());
    for (int t = 0; t < 10; ++t) {
      CVector x = random_vector(f.ambient_dim(), rng);
      CHECK((synthesis(d, analysis(f, x)) - x).norm() < 1e-10 * x.norm());
      CHECK((synthesis(f, analysis(d, x)) - x).norm() < 1e-10 * x.norm());
      CVector cd = analysis(d, x);
      CHECK((gram(d, f) * cd - cd).norm() < 1e-10 * cd.norm());
      CVector c = random_vector(f.size(), rng);
      Complex lhs = synthesis(f, c).dot(x);  // <x, Dc> conj-linear in first slot
      Complex rhs = dual_pairing(analysis(f, x), c);
      CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs) + 1e-12);
    }
  }
}

TEST_CASE("spectrum of the gram matrix") {
  Frame g = testing_support::gabor(64, 4, 8);
  const FrameBounds b = frame_bounds(g);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(gram(g, g));
  for (double ev : es.eigenvalues()) {
    const bool zero = std::abs(ev) < 1e-10 * b.upper;
    CHECK((zero || (ev >= b.lower * (1 - 1e-10) && ev <= b.upper * (1 + 1e-10))));
  }
}
