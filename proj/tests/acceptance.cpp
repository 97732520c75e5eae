// Acceptance suite: one PASS/FAIL line per criterion.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>

#include "locframe/cli.hpp"
#include "locframe/galerkin.hpp"
#include "locframe/localization.hpp"
#include "locframe/solver.hpp"
#include "support.hpp"

using namespace locframe;
using namespace testing_support;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Verdict frame_axioms() {
  Verdict v;
  const auto onb = make_onb(32).bounds();
  const auto mer = mercedes().bounds();
  const bool onb_ok = std::abs(onb.lower - 1) <= 1e-12 && std::abs(onb.upper - 1) <= 1e-12;
  const bool mer_ok = std::abs(mer.lower - 1.5) <= 1e-12 && std::abs(mer.upper - 1.5) <= 1e-12;
  std::mt19937_64 rng(11);
  long violations = 0;
  for (const auto& F : suite_frames()) {
    const auto b = F.bounds();
    for (int t = 0; t < 100; ++t) {
      const CVector f = random_vector(F.ambient_dim(), rng);
      const double e = analysis(F, f).squaredNorm();
      const double n2 = f.squaredNorm();
      if (e < b.lower * n2 * (1 - 1e-12) || e > b.upper * n2 * (1 + 1e-12)) ++violations;
    }
  }
  v.pass = onb_ok && mer_ok && violations == 0;
  v.detail = "onb (" + fmt(onb.lower) + "," + fmt(onb.upper) + "), mercedes (" + fmt(mer.lower) +
             "," + fmt(mer.upper) + "), sandwich violations " + std::to_string(violations);
  return v;
}

Verdict reconstruction() {
  std::mt19937_64 rng(12);
  double worst = 0.0;
  for (const auto& F : suite_frames()) {
    for (int t = 0; t < 100; ++t) {
      const CVector f = random_vector(F.ambient_dim(), rng);
      const CVector r1 = F.vectors() * (F.dual_vectors().adjoint() * f);
      const CVector r2 = F.dual_vectors() * (F.vectors().adjoint() * f);
      worst = std::max({worst, rel_err(r1, f), rel_err(r2, f)});
    }
  }
  return {worst <= 1e-10, "worst relative error " + fmt(worst)};
}

Verdict gram_projection() {
  double idem = 0.0, herm = 0.0, min_norm = 1e300;
  for (const auto& F : suite_frames()) {
    const CMatrix P = gram(F, canonical_dual(F));
    idem = std::max(idem, operator_2norm(P * P - P));
    herm = std::max(herm, operator_2norm(P - P.adjoint()));
    for (auto p : {Exponent::finite(1), Exponent::finite(2), Exponent::infinity()}) {
      for (double t : {0.0, 1.0}) {
        const SeqSpaceSpec s{p, Weight::polynomial(t)};
        min_norm = std::min(min_norm, weighted_operator_norm(P, F.index_set(), F.index_set(), s).value);
      }
    }
  }
  return {idem <= 1e-10 && herm <= 1e-10 && min_norm >= 1 - 1e-10,
          "||P^2-P|| " + fmt(idem) + ", ||P-P*|| " + fmt(herm) + ", min weighted norm " + fmt(min_norm)};
}

Verdict norm_equivalence() {
  std::mt19937_64 rng(13);
  long violations = 0, checks = 0;
  for (const auto& F : suite_frames()) {
    for (auto p : {Exponent::finite(1), Exponent::infinity()}) {
      for (double t : {0.0, 1.0}) {
        const SeqSpaceSpec s{p, Weight::polynomial(t)};
        const auto c = equivalence_constants(F, s);
        const CoorbitSpec H{F, s};
        for (int k = 0; k < 100; ++k) {
          const CVector f = random_vector(F.ambient_dim(), rng);
          const double ratio = seq_norm(analysis(F, f), F.index_set(), s) / coorbit_norm(f, H);
          ++checks;
          if (ratio < c.lower * (1 - 1e-12) || ratio > c.upper * (1 + 1e-12)) ++violations;
        }
      }
    }
  }
  return {violations == 0, std::to_string(violations) + " violations in " + std::to_string(checks)};
}

Verdict galerkin_identities() {
  const long n = 64;
  std::mt19937_64 rng(14);
  std::vector<LinearOperator> ops{
      make_test_operator({TestOperatorSpec::Kind::identity_minus_kernel}, n).op,
      make_test_operator({TestOperatorSpec::Kind::helmholtz_toy}, n).op,
      LinearOperator::dense(random_matrix(n, n, rng))};
  const Frame onb = make_onb(n), gab = gabor(n, 4, 8), tr = translates(n),
              pert = make_perturbed_onb(n, 3.0, 5);
  const std::vector<std::pair<Frame, Frame>> pairs{{onb, onb}, {gab, gab}, {pert, tr}, {gab, pert}};
  double worst = 0.0;
  for (const auto& O : ops) {
    for (const auto& [phi, psi] : pairs) {
      worst = std::max(worst, roundtrip_check(O, phi, psi).max());
      worst = std::max(worst, compose_rule_check(O, O, phi, psi, gab));
    }
  }
  double gram_res = 0.0;
  for (const auto& F : {onb, gab, tr, pert}) {
    const Frame d = canonical_dual(F);
    const auto M = galerkin_matrix(LinearOperator::identity(n), F, d);
    gram_res = std::max(gram_res, (M.entries - gram(F, d)).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-10 && gram_res <= 1e-12,
          "worst identity residual " + fmt(worst) + ", identity vs gram " + fmt(gram_res)};
}

Verdict schur_certificates() {
  std::mt19937_64 rng(15);
  std::uniform_real_distribution<double> u(-1, 1);
  const long K = 48;
  const IndexSet idx = IndexSet::line(K);
  long violations = 0, svd_violations = 0;
  double worst_ratio = 0.0;
  for (auto c : {BoundCase::inf_inf, BoundCase::one_inf, BoundCase::one_p, BoundCase::two_two}) {
    for (int t = 0; t < 50; ++t) {
      CMatrix M(K, K);
      for (long k = 0; k < K; ++k)
        for (long l = 0; l < K; ++l)
          M(k, l) = Complex(u(rng), u(rng)) * std::pow(1.0 + idx.distance(k, l), -2.0);
      const Weight w1 = Weight::polynomial(t % 2 ? 0.5 : 0.0);
      const Weight w2 = Weight::polynomial(t % 3 ? 0.0 : 0.5);
      const double p = 1.5 + 0.1 * (t % 5);
      const auto cert = schur_certificate(M, idx, idx, w1, w2, c, p);
      const auto v1 = w1.values_on(idx), v2 = w2.values_on(idx);
      CMatrix W = M;
      for (long k = 0; k < K; ++k)
        for (long l = 0; l < K; ++l) W(k, l) *= v2[k] / v1[l];
      const auto [from, to] = case_exponents(c, p);
      const double measured = probe_norm(W, from, to, 200, 100 + t);
      worst_ratio = std::max(worst_ratio, measured / cert.certified_bound);
      if (measured > cert.certified_bound * (1 + 1e-8)) ++violations;
      if (c == BoundCase::two_two && operator_2norm(W) > cert.certified_bound * (1 + 1e-12)) {
        ++svd_violations;
      }
    }
  }
  return {violations == 0 && svd_violations == 0,
          "probe violations " + std::to_string(violations) + ", svd violations " +
              std::to_string(svd_violations) + ", max measured/certified " + fmt(worst_ratio)};
}

Verdict inverse_closedness() {
  const Frame F = gabor(144, 3, 3);
  const Frame D = canonical_dual(F);
  const double primal = decay_fit(gram(F, F), F.index_set(), F.index_set()).fitted_exponent;
  const double dual = decay_fit(gram(D, D), D.index_set(), D.index_set()).fitted_exponent;
  return {primal > 3 && dual >= primal - 0.5,
          F.id() + " primal fit " + fmt(primal) + ", dual fit " + fmt(dual)};
}

std::vector<std::pair<SeqSpaceSpec, SeqSpaceSpec>> inclusion_grid() {
  auto S = [](Exponent p, double t) { return SeqSpaceSpec{p, Weight::polynomial(t)}; };
  const auto one = Exponent::finite(1), two = Exponent::finite(2), inf = Exponent::infinity();
  return {{S(one, 0), S(two, 0)},   {S(two, 0), S(one, 0)},   {S(one, 0), S(inf, 0)},
          {S(inf, 0), S(one, 0)},   {S(two, 0), S(inf, 0)},   {S(inf, 0), S(two, 0)},
          {S(inf, 1), S(one, 1)},   {S(one, 1), S(one, 0)},   {S(one, 0), S(one, 1)},
          {S(two, 1), S(two, 0)},   {S(two, 0), S(two, 1)},   {S(inf, 1), S(inf, 0)},
          {S(inf, 0), S(inf, 1)},   {S(inf, 3), S(one, 0)},   {S(inf, 2), S(two, 0)},
          {S(two, 2), S(one, 0)},   {S(one, 0), S(two, 1)},   {S(two, 0), S(one, -2)},
          {S(inf, 0), S(two, -1)},  {S(one, 1), S(inf, 1)}};
}

Verdict inclusion_equivalence() {
  const std::vector<Frame> frames{make_onb(512), translates(512), make_perturbed_onb(512, 3.0, 9),
                                  gabor(64, 2, 4), gabor(144, 4, 9)};
  long disagreements = 0, bad_witness = 0, non_inclusions = 0;
  std::string first_bad;
  for (const auto& F : frames) {
    for (const auto& [a, b] : inclusion_grid()) {
      const auto ci = coorbit_inclusion(F, a, b);
      const auto si = seq_space_included(a, b, F.index_set().dim());
      if (ci.included != si.included) ++disagreements;
      if (!ci.included) {
        ++non_inclusions;
        const bool full = !ci.witness.empty() && ci.witness.front().first == 16 &&
                          ci.witness.back().first == 512;
        if (!ci.witness_monotone || !full) {
          ++bad_witness;
          if (first_bad.empty()) {
            first_bad = " (first: " + F.id() + " " + a.p.to_string() + "->" + b.p.to_string() + ")";
          }
        }
      }
    }
  }
  return {disagreements == 0 && bad_witness == 0,
          std::to_string(disagreements) + " disagreements, " + std::to_string(bad_witness) + "/" +
              std::to_string(non_inclusions) + " witnesses not growing on 16..512" + first_bad};
}

Verdict finite_section() {
  const long n = 256;
  const LinearOperator A = make_test_operator({TestOperatorSpec::Kind::identity_minus_kernel, 0.5}, n).op;
  const Frame F = make_onb(n);
  std::mt19937_64 rng(16);
  CVector y = random_vector(n, rng);
  const IndexSet& idx = F.index_set();
  for (long k = 0; k < n; ++k) y(k) /= std::pow(1.0 + idx.magnitude(k), 1.5);
  const auto sched = ProjectionSchedule::centered(F);
  const auto rep = finite_section_solve(A, y, sched, SolveMethod::cg, 1e-12);
  const CVector xs = A.to_dense().partialPivLu().solve(y);
  // First level whose subspace holds 99% of the solution energy.
  std::size_t start = sched.levels.size() - 1;
  for (std::size_t i = 0; i < sched.levels.size(); ++i) {
    const CMatrix& Q = sched.subspaces[i].basis;
    if ((Q.adjoint() * xs).squaredNorm() >= 0.99 * xs.squaredNorm()) {
      start = i;
      break;
    }
  }
  bool monotone = true;
  for (std::size_t i = start + 1; i < rep.levels.size(); ++i) {
    if (*rep.levels[i].error > *rep.levels[i - 1].error * (1 + 1e-12) + 1e-15) monotone = false;
  }
  const double final_err = *rep.levels.back().error;
  const bool contraction = std::abs(*rep.contraction_norm - 0.5) <= 1e-12;
  const bool monitor = rep.sup_inverse_norm <= 2.0 / (1 - 0.5) + 0.1;
  return {monotone && final_err <= 1e-8 && contraction && monitor && rep.converged,
          "||I-A|| " + fmt(*rep.contraction_norm) + ", errors monotone from level " +
              std::to_string(rep.levels[start].N) + ": " + (monotone ? "yes" : "no") +
              ", final error " + fmt(final_err) + ", sup ||A_N^-1|| " + fmt(rep.sup_inverse_norm)};
}

Verdict frame_galerkin() {
  const Frame F = gabor(64, 4, 8);
  const LinearOperator O = make_test_operator({TestOperatorSpec::Kind::identity_minus_kernel, 0.4}, 64).op;
  std::mt19937_64 rng(17);
  const CVector g = random_vector(64, rng);
  const auto res = frame_galerkin_solve(O, g, F, SolveMethod::cg, 1e-10);
  const CVector dense = O.to_dense().partialPivLu().solve(g);
  const double ambient = (O.to_dense() * res.f - g).norm() / g.norm();
  const double match = rel_err(res.f, dense);
  const CMatrix M = galerkin_matrix(O, F, F).entries;
  const bool singular = numerical_rank(M) < M.rows();
  return {res.report.converged && ambient <= 1e-8 && match <= 1e-8 && singular,
          "redundancy " + fmt(F.redundancy()) + ", rank M " + std::to_string(numerical_rank(M)) +
              "/" + std::to_string(M.rows()) + ", ambient residual " + fmt(ambient) +
              ", vs dense " + fmt(match) + ", iterations " +
              std::to_string(res.report.levels.back().iterations)};
}

Verdict kappa_probe() {
  std::mt19937_64 rng(18);
  double onb_dev = 0.0;
  for (int t = 0; t < 20; ++t) {
    const auto k = kappa_factorization_probe(LinearOperator::dense(random_matrix(16, 16, rng)),
                                             make_onb(16), make_onb(16));
    onb_dev = std::max(onb_dev, std::abs(k.lhs - k.rhs) / k.rhs);
  }
  const Frame F = gabor(32, 2, 4);
  long ineq = 0, eq_logged = 0;
  for (int t = 0; t < 20; ++t) {
    const auto k = kappa_factorization_probe(LinearOperator::dense(random_matrix(32, 32, rng)), F, F);
    if (!k.inequality_holds) ++ineq;
    if (!k.equality_holds) ++eq_logged;
  }
  return {onb_dev <= 1e-10 && ineq == 0,
          "onb max |lhs-rhs|/rhs " + fmt(onb_dev) + ", redundant inequality violations " +
              std::to_string(ineq) + ", equality deviations logged " + std::to_string(eq_logged) + "/20"};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

int cli(std::vector<std::string> args) {
  std::vector<const char*> argv{"locframe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  return cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
}

Verdict determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "locframe_acceptance_determinism";
  fs::remove_all(root);
  const std::vector<std::vector<std::string>> suite{
      {"frame", "build", "--frame", "gabor", "--n", "16", "--a", "4", "--b", "4"},
      {"frame", "diag", "--frame", "perturbed_onb", "--n", "64"},
      {"galerkin", "assemble", "--frame", "gabor", "--n", "32", "--a", "2", "--b", "4", "--right", "dual"},
      {"galerkin", "certify", "--frame", "onb", "--n", "64", "--operator", "identity_minus_kernel"},
      {"galerkin", "probe", "--frame", "gabor", "--n", "32", "--a", "2", "--b", "4", "--operator",
       "helmholtz_toy"},
      {"solve", "fs", "--operator", "identity_minus_kernel", "--n", "128", "--method", "cg",
       "--threads", "4"},
      {"solve", "fg", "--frame", "gabor", "--n", "32", "--a", "2", "--b", "4", "--operator",
       "identity_minus_kernel", "--method", "richardson"},
  };
  // Both runs write to the same directories, so the resolved configs match.
  long files = 0, differing = 0, bad_exit = 0;
  std::map<fs::path, std::string> first;
  for (int run = 0; run < 2; ++run) {
    fs::remove_all(root);
    for (std::size_t i = 0; i < suite.size(); ++i) {
      auto args = suite[i];
      args.insert(args.begin(), {"--seed", "3", "--out-dir", (root / std::to_string(i)).string()});
      if (cli(args) != 0) ++bad_exit;
    }
    for (const auto& e : fs::recursive_directory_iterator(root)) {
      if (!e.is_regular_file()) continue;
      if (run == 0) {
        first[e.path()] = slurp(e.path());
      } else {
        ++files;
        auto it = first.find(e.path());
        if (it == first.end() || it->second != slurp(e.path())) ++differing;
      }
    }
  }
  if (static_cast<std::size_t>(files) != first.size()) ++differing;
  fs::remove_all(root);
  return {differing == 0 && files > 0 && bad_exit == 0,
          std::to_string(files) + " artifacts compared, " + std::to_string(differing) +
              " differ, nonzero exits " + std::to_string(bad_exit)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"frame axioms", frame_axioms},
      {"reconstruction", reconstruction},
      {"gram projection", gram_projection},
      {"norm equivalence", norm_equivalence},
      {"galerkin identities", galerkin_identities},
      {"schur certificates", schur_certificates},
      {"empirical inverse-closedness", inverse_closedness},
      {"inclusion equivalence", inclusion_equivalence},
      {"finite-section convergence", finite_section},
      {"frame-galerkin solve", frame_galerkin},
      {"kappa probe", kappa_probe},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << i + 1 << ". " << criteria[i].first << ": "
              << v.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
