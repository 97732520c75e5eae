#include "doctest.h"

#include <cmath>
#include <random>

#include "locframe/localization.hpp"
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

TEST_CASE("localization of an ONB") {
  Frame onb = make_onb(32);
  auto r = localization_report(onb, onb, MatrixAlgebraSpec::jaffard(3));
  CHECK(r.cross_gram_norm == doctest::Approx(1.0));
  CHECK(r.member);
  auto d = dual_localization_check(onb, MatrixAlgebraSpec::jaffard(3));
  CHECK(d.primal.cross_gram_norm == doctest::Approx(1.0));
  CHECK(d.dual.cross_gram_norm == doctest::Approx(1.0));
  CHECK(d.mixed.cross_gram_norm == doctest::Approx(1.0));
}

TEST_CASE("perturbed ONB and its dual stay localized") {
  Frame p = make_perturbed_onb(64, 3.0, 7);
  const auto alg = MatrixAlgebraSpec::jaffard(3);
  auto r = localization_report(p, p, alg);
  CHECK(r.member);
  CHECK(r.cross_gram_norm <= alg.membership_threshold);
  auto d = dual_localization_check(p, alg);
  REQUIRE(d.dual.decay.has_value());
  CHECK(d.dual.decay->fitted_exponent >= 2.5);
}

TEST_CASE("slowly decaying gabor window is not in a high order class") {
  Frame g = make_gabor_frame(64, 4, 4, gaussian_window(64, 12.0, 0.5));
  auto r = localization_report(g, g, MatrixAlgebraSpec::jaffard(5));
  CHECK_FALSE(r.member);
}

TEST_CASE("dual of a tight frame reports the primal up to scaling") {
  Frame g = make_explicit_frame(2.0 * make_onb(16).vectors(), "onb_x2");
  REQUIRE(frame_bounds(g).tight());
  const double A = frame_bounds(g).lower;
  auto d = dual_localization_check(g, MatrixAlgebraSpec::schur_weighted(2));
  CHECK(d.dual.cross_gram_norm * A * A == doctest::Approx(d.primal.cross_gram_norm));
  CHECK(d.mixed.cross_gram_norm * A == doctest::Approx(d.primal.cross_gram_norm));
}

TEST_CASE("transitivity") {
  Frame onb = make_onb(16);
  auto t = transitivity_check(onb, onb, onb, onb, MatrixAlgebraSpec::jaffard(3));
  CHECK(t.holds);
  CHECK(t.norm_psi_xi == doctest::Approx(1.0));

  Frame psi = make_perturbed_onb(64, 3.0, 7);
  Frame phi = testing_support::gabor(64, 4, 8);
  Frame xi = testing_support::translates(64);
  auto r = transitivity_check(psi, phi, canonical_dual(phi), xi, MatrixAlgebraSpec::jaffard(3));
  CHECK(r.holds);

  Frame other = make_perturbed_onb(64, 3.0, 8);
  try {
    transitivity_check(psi, phi, canonical_dual(other), xi, MatrixAlgebraSpec::jaffard(3));
    FAIL("expected duality_check_failed");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::duality_check_failed);
  }
}

TEST_CASE("coorbit norms") {
  std::mt19937_64 rng(2);
  Frame onb = make_onb(16);
  SeqSpaceSpec s{Exponent::finite(1), Weight::polynomial(1)};
  CVector f = random_vector(16, rng);
  CHECK(coorbit_norm(f, {onb, s}) == doctest::Approx(seq_norm(f, onb.index_set(), s)));
  CHECK(coorbit_norm(CVector::Zero(16), {onb, s}) == 0.0);

  Frame m = testing_support::mercedes();
  CVector x(2);
  x << 0.3, Complex(-1, 2);
  CHECK(coorbit_norm(x, {m, {}}) == doctest::Approx(x.norm() / std::sqrt(1.5)));
}

TEST_CASE("equivalence constants") {
  Frame onb = make_onb(8);
  auto e = equivalence_constants(onb, {Exponent::finite(2), Weight::unit()});
  CHECK(e.lower == doctest::Approx(1.0));
  CHECK(e.upper == doctest::Approx(1.0));

  // G of the dual has row sums 1/2 here, so the lower constant is 2
  auto two = equivalence_constants(two_onb_copies(8), {Exponent::finite(1), Weight::unit()});
  CHECK(two.upper == doctest::Approx(2.0));
  CHECK(two.lower == doctest::Approx(2.0));

  std::mt19937_64 rng(6);
  Frame p = make_perturbed_onb(64, 3.0, 7);
  for (auto q : {Exponent::finite(1), Exponent::infinity()}) {
    SeqSpaceSpec sp{q, Weight::polynomial(1)};
    auto c = equivalence_constants(p, sp);
    for (int t = 0; t < 30; ++t) {
      CVector f = random_vector(64, rng);
      const double h = coorbit_norm(f, {p, sp});
      const double a = seq_norm(analysis(p, f), p.index_set(), sp);
      CHECK(c.lower * h <= a * (1 + 1e-10));
      CHECK(a <= c.upper * h * (1 + 1e-10));
    }
  }
}

TEST_CASE("coorbit pairing matches the inner product") {
  std::mt19937_64 rng(12);
  Frame onb = make_onb(8);
  CVector e = CVector::Unit(8, 1);
  CHECK(std::abs(coorbit_pairing(e, e, {onb, {}}) - 1.0) < 1e-15);
  for (const Frame& f : testing_support::suite_frames()) {
    CVector a = random_vector(f.ambient_dim(), rng), b = random_vector(f.ambient_dim(), rng);
    const Complex want = b.dot(a);
    CHECK(std::abs(coorbit_pairing(a, b, {f, {}}) - want) < 1e-10 * std::abs(want) + 1e-10);
    CVector c = b - (a.dot(b) / a.squaredNorm()) * a;  // orthogonal to a in the ambient product
    CHECK(std::abs(coorbit_pairing(a, c, {f, {}})) < 1e-10 * a.norm() * c.norm());
  }
}

TEST_CASE("coorbit inclusion") {
  Frame p = make_perturbed_onb(64, 3.0, 7);
  const Weight w = Weight::polynomial(1);
  CHECK(coorbit_inclusion(p, {Exponent::finite(1), w}, {Exponent::finite(2), w}).included);
  auto same = coorbit_inclusion(p, {Exponent::finite(2), w}, {Exponent::finite(2), w});
  CHECK(same.included);
  CHECK(same.seq_certificate.certificate == doctest::Approx(1.0));

  auto no = coorbit_inclusion(p, {Exponent::infinity(), Weight::unit()}, {Exponent::finite(1), Weight::unit()});
  CHECK_FALSE(no.included);
  CHECK(no.witness_monotone);
  REQUIRE(no.witness.size() >= 2);
  const double growth = no.witness.back().second / no.witness.front().second;
  const double sizes = double(no.witness.back().first) / double(no.witness.front().first);
  CHECK(growth >= 0.9 * sizes);
}

TEST_CASE("minimal synthesis norm") {
  std::mt19937_64 rng(13);
  Frame onb = make_onb(8);
  CVector f = random_vector(8, rng);
  auto s = min_synthesis_norm(f, onb, {});
  CHECK(s.value == doctest::Approx(f.norm()));
  CHECK(s.kind == "exact");

  auto two = min_synthesis_norm(CVector::Unit(8, 1), two_onb_copies(8), {});
  CHECK(two.value == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(min_synthesis_norm(f, onb, {Exponent::finite(1), Weight::unit()}).kind == "bound");
}
