#include "locframe/cli.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "locframe/io.hpp"

namespace locframe::cli {

using io::Json;
namespace fs = std::filesystem;

namespace {

enum class FlagType { text, integer, real, real_list, text_list, boolean };

struct FlagSpec {
  const char* name;
  const char* pointer;
  FlagType type;
  const char* help;
};

// Every leaf command accepts the same overrides; each lands at a JSON
// pointer in the resolved config.
constexpr FlagSpec kFlags[] = {
    {"--frame", "/frame/kind", FlagType::text, "onb|gabor|translates|perturbed_onb|random"},
    {"--frame-file", "/frame/file", FlagType::text, "frame container written by `frame build`"},
    {"--n", "/frame/N", FlagType::integer, "ambient dimension"},
    {"--a", "/frame/a", FlagType::integer, "gabor time step"},
    {"--b", "/frame/b", FlagType::integer, "gabor frequency step"},
    {"--sigma", "/frame/sigma", FlagType::real, "gaussian window width"},
    {"--center", "/frame/center", FlagType::real, "gabor window center (default 0.5)"},
    {"--step", "/frame/step", FlagType::integer, "translation step"},
    {"--decay-s", "/frame/decay_s", FlagType::real, "perturbation decay exponent"},
    {"--redundancy", "/frame/redundancy", FlagType::integer, "random frame: K = redundancy * N"},
    {"--right", "/right", FlagType::text, "right frame of the pair: self|dual"},
    {"--operator", "/operator/kind", FlagType::text,
     "identity|identity_minus_kernel|helmholtz_toy|diagonal|frame_operator"},
    {"--theta", "/operator/theta", FlagType::real, "kernel strength"},
    {"--exponent", "/operator/exponent", FlagType::real, "kernel decay exponent"},
    {"--shift", "/operator/shift", FlagType::real, "helmholtz_toy identity shift"},
    {"--mesh", "/operator/mesh", FlagType::real, "helmholtz_toy mesh scale"},
    {"--spectrum", "/operator/spectrum", FlagType::real_list, "diagonal entries"},
    {"--algebra", "/algebra/kind", FlagType::text, "jaffard|schur_weighted"},
    {"--s", "/algebra/s", FlagType::real, "algebra decay exponent"},
    {"--method", "/solver/method", FlagType::text, "cg|richardson|direct"},
    {"--tol", "/solver/tol", FlagType::real, "relative residual tolerance"},
    {"--max-iter", "/solver/max_iter", FlagType::integer, "iteration cap"},
    {"--schedule", "/schedule/selection", FlagType::text, "centered|greedy"},
    {"--levels", "/schedule/levels", FlagType::integer, "number of projection levels"},
    {"--first", "/schedule/first", FlagType::integer, "size of the first level"},
    {"--case", "/certify/cases", FlagType::text_list, "certificate cases"},
    {"--p", "/certify/p", FlagType::real, "target exponent for one_p"},
    {"--w1", "/certify/w1", FlagType::real, "domain weight exponent t in (1+|k|)^t"},
    {"--w2", "/certify/w2", FlagType::real, "codomain weight exponent"},
    {"--pinv", "/probe/pinv", FlagType::boolean, "also form the Galerkin pseudo-inverse"},
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

double to_real(const std::string& flag, const std::string& v) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw Error(ErrorCode::invalid_argument, flag + ": expected a number, got '" + v + "'");
  }
}

Json flag_value(const FlagSpec& f, const std::string& v) {
  switch (f.type) {
    case FlagType::text: return v;
    case FlagType::boolean: return true;
    case FlagType::integer: {
      const double x = to_real(f.name, v);
      if (x != std::floor(x)) throw Error(ErrorCode::invalid_argument, std::string(f.name) + ": expected an integer");
      return static_cast<long>(x);
    }
    case FlagType::real: return to_real(f.name, v);
    case FlagType::real_list: {
      Json arr = Json::array();
      for (const auto& s : split(v)) arr.push_back(to_real(f.name, s));
      return arr;
    }
    case FlagType::text_list: return split(v);
  }
  return nullptr;
}

template <typename T>
T get_or(const Json& cfg, const char* pointer, T fallback) {
  const Json::json_pointer p(pointer);
  if (!cfg.contains(p) || cfg.at(p).is_null()) return fallback;
  try {
    return cfg.at(p).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorCode::invalid_argument, std::string("config field ") + pointer + " has the wrong type");
  }
}

// ---------------------------------------------------------------------------
// Builders
// ---------------------------------------------------------------------------

Frame build_frame(const Json& cfg) {
  const std::string file = get_or<std::string>(cfg, "/frame/file", "");
  if (!file.empty()) return io::read_frame(file);
  const std::string kind = get_or<std::string>(cfg, "/frame/kind", "onb");
  const long N = get_or<long>(cfg, "/frame/N", 16);
  const auto seed = get_or<std::uint64_t>(cfg, "/seed", 1);
  if (kind == "onb") return make_onb(N);
  if (kind == "gabor") {
    const long a = get_or<long>(cfg, "/frame/a", 4);
    const long b = get_or<long>(cfg, "/frame/b", 4);
    const double sigma = get_or<double>(cfg, "/frame/sigma", std::sqrt(N / (2.0 * std::numbers::pi)));
    const double center = get_or<double>(cfg, "/frame/center", 0.5);
    return make_gabor_frame(N, a, b, gaussian_window(N, sigma, center),
                            {"gabor", {{"sigma", sigma}, {"center", center}}, 0});
  }
  if (kind == "translates") {
    const long step = get_or<long>(cfg, "/frame/step", 1);
    const double sigma = get_or<double>(cfg, "/frame/sigma", 2.0);
    return make_translates_frame(N, step, gaussian_window(N, sigma),
                                 {"translates", {{"sigma", sigma}}, 0});
  }
  if (kind == "perturbed_onb") {
    return make_perturbed_onb(N, get_or<double>(cfg, "/frame/decay_s", 3.0), seed);
  }
  if (kind == "random") {
    const long r = get_or<long>(cfg, "/frame/redundancy", 2);
    if (r <= 0) throw Error(ErrorCode::invalid_argument, "redundancy must be positive");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix V(N, r * N);
    for (Eigen::Index l = 0; l < V.cols(); ++l)
      for (Eigen::Index k = 0; k < V.rows(); ++k) V(k, l) = Complex(g(rng), g(rng));
    return Frame(std::move(V), IndexSet::line(r * N), "random" + std::to_string(N),
                 {"random", {{"N", static_cast<double>(N)}, {"redundancy", static_cast<double>(r)}}, seed});
  }
  throw Error(ErrorCode::invalid_argument, "unknown frame kind '" + kind + "'");
}

LinearOperator build_operator(const Json& cfg, const Frame& frame) {
  const std::string kind = get_or<std::string>(cfg, "/operator/kind", "identity");
  const long n = static_cast<long>(frame.ambient_dim());
  if (kind == "identity") return LinearOperator::identity(n);
  if (kind == "frame_operator") return LinearOperator::dense(frame.frame_operator());
  TestOperatorSpec spec;
  spec.kind = parse_test_operator_kind(kind);
  spec.theta = get_or<double>(cfg, "/operator/theta", spec.theta);
  spec.exponent = get_or<double>(cfg, "/operator/exponent", spec.exponent);
  spec.shift = get_or<double>(cfg, "/operator/shift", spec.shift);
  spec.mesh = get_or<double>(cfg, "/operator/mesh", spec.mesh);
  spec.spectrum = get_or<std::vector<double>>(cfg, "/operator/spectrum", {});
  return make_test_operator(spec, n).op;
}

std::vector<std::string> operator_warnings(const Json& cfg) {
  const std::string kind = get_or<std::string>(cfg, "/operator/kind", "identity");
  std::vector<std::string> w;
  if (kind == "identity_minus_kernel" && get_or<double>(cfg, "/operator/theta", 0.5) >= 1.0) {
    w.push_back("theta >= 1: I - theta T need not be invertible");
  }
  return w;
}

MatrixAlgebraSpec build_algebra(const Json& cfg, const Frame& frame) {
  const std::string kind = get_or<std::string>(cfg, "/algebra/kind", "jaffard");
  const double s = get_or<double>(cfg, "/algebra/s", 3.0);
  const double thr = get_or<double>(cfg, "/algebra/threshold", 10.0);
  const int dim = frame.index_set().dim();
  if (kind == "jaffard") return MatrixAlgebraSpec::jaffard(s, thr, dim);
  if (kind == "schur_weighted") return MatrixAlgebraSpec::schur_weighted(s, thr, dim);
  throw Error(ErrorCode::invalid_argument, "unknown algebra '" + kind + "'");
}

CVector random_rhs(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

Json frame_summary(const Frame& f) {
  return {{"id", f.id()},
          {"n", f.ambient_dim()},
          {"K", f.size()},
          {"A", io::number(f.bounds().lower)},
          {"B", io::number(f.bounds().upper)},
          {"tight", f.bounds().tight()},
          {"redundancy", f.redundancy()}};
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Outcome {
  int code = kOk;
  Json summary;
};

Outcome cmd_frame_build(const Json& cfg, const fs::path& out) {
  const Frame frame = build_frame(cfg);
  const Json summary = frame_summary(frame);
  io::write_frame(out / "frame.lfm", frame);
  io::write_json(out / "summary.json", summary);
  return {kOk, summary};
}

Outcome cmd_frame_diag(const Json& cfg, const fs::path& out) {
  const Frame frame = build_frame(cfg);
  const MatrixAlgebraSpec alg = build_algebra(cfg, frame);
  Json rep;
  rep["frame"] = frame_summary(frame);
  const auto primal = localization_report(frame, frame, alg);
  rep["localization"] = io::to_json(primal);
  try {
    rep["dual_localization"] = io::to_json(dual_localization_check(frame, alg));
  } catch (const LocalizationPreconditionError& e) {
    rep["dual_localization"] = {{"skipped", e.what()}};
  }
  Json grid = Json::array();
  Json spaces = cfg.contains(Json::json_pointer("/diag/spaces"))
                    ? cfg.at(Json::json_pointer("/diag/spaces"))
                    : Json::array();
  if (spaces.empty()) {
    for (const char* p : {"1", "2", "inf"}) {
      for (double t : {0.0, 1.0}) spaces.push_back({{"p", p}, {"weight", t}});
    }
  }
  for (const auto& sj : spaces) {
    const SeqSpaceSpec space = io::space_from_json(sj);
    grid.push_back({{"space", io::to_json(space)},
                    {"constants", io::to_json(equivalence_constants(frame, space))}});
  }
  rep["equivalence"] = grid;
  io::write_json(out / "diag.json", rep);
  io::write_text(out / "decay.csv", primal.decay ? io::decay_csv(*primal.decay) : "distance,max_abs\n");
  return {kOk, {{"member", primal.member}, {"cross_gram_norm", io::number(primal.cross_gram_norm)}}};
}

struct Pair {
  Frame left;
  Frame right;
};

Pair build_pair(const Json& cfg) {
  Frame phi = build_frame(cfg);
  const std::string right = get_or<std::string>(cfg, "/right", "self");
  if (right == "self") return {phi, phi};
  if (right == "dual") return {phi, canonical_dual(phi)};
  throw Error(ErrorCode::invalid_argument, "--right must be self or dual");
}

Outcome cmd_galerkin_assemble(const Json& cfg, const fs::path& out, int threads) {
  const Pair pair = build_pair(cfg);
  const LinearOperator O = build_operator(cfg, pair.left);
  const GalerkinMatrix M = galerkin_matrix(O, pair.left, pair.right, threads);
  io::write_matrix(out / "matrix.lfm", M.entries,
                   {{"kind", "galerkin_matrix"}, {"left", M.left_id}, {"right", M.right_id}});
  Json rep{{"left", M.left_id},
           {"right", M.right_id},
           {"rows", M.entries.rows()},
           {"cols", M.entries.cols()},
           {"roundtrip", io::to_json(roundtrip_check(O, pair.left, pair.left))},
           {"compose_residual", io::number(compose_rule_check(O, O, pair.left, pair.left, pair.left))}};
  const CMatrix G = gram(pair.left, pair.right);
  rep["gram_residual"] = get_or<std::string>(cfg, "/operator/kind", "identity") == "identity"
                             ? io::number((M.entries - G).cwiseAbs().maxCoeff())
                             : Json(nullptr);
  if (get_or<std::string>(cfg, "/right", "self") == "dual") {
    rep["idempotency_residual"] = io::number(operator_2norm(M.entries * M.entries - M.entries));
  }
  rep["warnings"] = operator_warnings(cfg);
  io::write_json(out / "assemble.json", rep);
  return {kOk, {{"rows", M.entries.rows()}, {"cols", M.entries.cols()}}};
}

Outcome cmd_galerkin_certify(const Json& cfg, const fs::path& out, int threads) {
  const Frame phi = build_frame(cfg);
  const LinearOperator O = build_operator(cfg, phi);
  const GalerkinMatrix M = galerkin_matrix(O, phi, phi, threads);
  const auto cases = get_or<std::vector<std::string>>(
      cfg, "/certify/cases", {"inf_inf", "one_inf", "one_p", "two_two"});
  const double p = get_or<double>(cfg, "/certify/p", 2.0);
  const Weight w1 = Weight::polynomial(get_or<double>(cfg, "/certify/w1", 0.0));
  const Weight w2 = Weight::polynomial(get_or<double>(cfg, "/certify/w2", 0.0));
  const auto seed = get_or<std::uint64_t>(cfg, "/seed", 1);
  const auto& idx = phi.index_set();
  const auto v1 = w1.values_on(idx);
  const auto v2 = w2.values_on(idx);
  CMatrix W = M.entries;
  for (Eigen::Index k = 0; k < W.rows(); ++k)
    for (Eigen::Index l = 0; l < W.cols(); ++l) W(k, l) *= v2[k] / v1[l];

  Json certs = Json::array();
  bool all_hold = true;
  for (const auto& name : cases) {
    const BoundCase c = parse_bound_case(name);
    const auto cert = schur_certificate(M.entries, idx, idx, w1, w2, c, p);
    const auto [from, to] = case_exponents(c, p);
    const double measured = probe_norm(W, from, to, 200, seed);
    const bool holds = measured <= cert.certified_bound * (1.0 + 1e-8);
    all_hold = all_hold && holds;
    Json j = io::to_json(cert);
    j["measured"] = io::number(measured);
    j["holds"] = holds;
    certs.push_back(j);
  }
  const SeqSpaceSpec space{Exponent::infinity(), Weight::unit()};
  const auto rep_bound =
      matrixrep_norm_bound(O, phi, phi, phi, space, space, build_algebra(cfg, phi), 200, seed);
  Json rep{{"frame", phi.id()},
           {"certificates", certs},
           {"matrix_rep_bound", io::to_json(rep_bound.matrix)},
           {"operator_rep_bound", io::to_json(rep_bound.operator_)},
           {"warnings", operator_warnings(cfg)}};
  io::write_json(out / "certify.json", rep);
  return {kOk, {{"all_hold", all_hold}}};
}

Outcome cmd_galerkin_probe(const Json& cfg, const fs::path& out) {
  const Frame phi = build_frame(cfg);
  const LinearOperator O = build_operator(cfg, phi);
  Json rep{{"frame", phi.id()}};
  if (get_or<bool>(cfg, "/probe/pinv", false)) {
    const auto pinv = galerkin_pseudoinverse(O, phi, phi);
    io::write_matrix(out / "pinv.lfm", pinv.matrix, {{"kind", "galerkin_pseudoinverse"}});
    rep["projection_residual"] = io::number(pinv.projection_residual);
  }
  rep["kappa"] = io::to_json(kappa_factorization_probe(O, phi, phi));
  io::write_json(out / "probe.json", rep);
  return {kOk, rep["kappa"]};
}

Outcome write_solve(const fs::path& out, const CVector& x, const SolveReport& r, Json extra) {
  io::write_matrix(out / "solution.lfm", x, {{"kind", "solution"}});
  Json rep = io::to_json(r);
  for (auto& [k, v] : extra.items()) rep[k] = v;
  io::write_json(out / "report.json", rep);
  io::write_text(out / "levels.csv", io::levels_csv(r));
  Json summary{{"converged", r.converged},
               {"final_relative_residual", io::number(r.final_relative_residual)}};
  return {r.converged ? kOk : kDiverged, summary};
}

Outcome cmd_solve_fs(const Json& cfg, const fs::path& out, int threads) {
  const Frame frame = build_frame(cfg);
  const LinearOperator A = build_operator(cfg, frame);
  const CVector y = random_rhs(frame.ambient_dim(), get_or<std::uint64_t>(cfg, "/seed", 1));
  const long first = get_or<long>(cfg, "/schedule/first", 8);
  std::optional<long> levels;
  if (cfg.contains(Json::json_pointer("/schedule/levels"))) levels = get_or<long>(cfg, "/schedule/levels", 0);
  const std::string sel = get_or<std::string>(cfg, "/schedule/selection", "centered");
  ProjectionSchedule sched = sel == "centered" ? ProjectionSchedule::centered(frame, first, levels)
                             : sel == "greedy" ? ProjectionSchedule::energy_greedy(frame, y, first, levels)
                                               : throw Error(ErrorCode::invalid_argument,
                                                             "--schedule must be centered or greedy");
  const auto method = parse_solve_method(get_or<std::string>(cfg, "/solver/method", "direct"));
  const double tol = get_or<double>(cfg, "/solver/tol", 1e-10);
  const auto res = finite_section_solve_full(A, y, sched, method, tol, threads);
  return write_solve(out, res.x, res.report,
                     {{"schedule", to_string(sched.selection)}, {"warnings", operator_warnings(cfg)}});
}

Outcome cmd_solve_fg(const Json& cfg, const fs::path& out) {
  const Frame frame = build_frame(cfg);
  const LinearOperator O = build_operator(cfg, frame);
  const CVector g = random_rhs(frame.ambient_dim(), get_or<std::uint64_t>(cfg, "/seed", 1));
  const auto method = parse_solve_method(get_or<std::string>(cfg, "/solver/method", "cg"));
  const double tol = get_or<double>(cfg, "/solver/tol", 1e-10);
  const long max_iter = get_or<long>(cfg, "/solver/max_iter", 0);
  const auto res = frame_galerkin_solve(O, g, frame, method, tol, max_iter);
  return write_solve(out, res.f, res.report,
                     {{"matrix_residual", io::number(res.matrix_residual)},
                      {"mapped_residual", io::number(res.mapped_residual)},
                      {"warnings", operator_warnings(cfg)}});
}

int exit_code_for(ErrorCode c) {
  return c == ErrorCode::numerical_divergence ? kDiverged : kInputError;
}

void report_error(std::ostream& err, const fs::path& out_dir, const std::string& code,
                  const std::string& message) {
  const Json j{{"error", {{"code", code}, {"message", message}}}};
  err << j.dump() << "\n";
  if (!out_dir.empty()) {
    try {
      io::write_json(out_dir / "error.json", j);
    } catch (const std::exception&) {
      // The stream copy is enough.
    }
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Localized frames: construction, diagnostics, Galerkin matrices and solvers",
               "locframe"};
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();
  std::string config_path;
  std::string out_dir;
  long seed = -1;
  int threads = 1;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out-dir", out_dir, "directory for reports (default: out)");
  app.add_option("--seed", seed, "random seed");
  app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1, 256));

  std::map<std::string, std::string> values;
  struct Bound {
    const FlagSpec* spec;
    CLI::Option* opt;
    std::string key;
  };
  std::vector<Bound> bound;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc) {
    CLI::App* sub = parent->add_subcommand(name, desc);
    for (const auto& f : kFlags) {
      const std::string key = name + f.name;
      CLI::Option* opt = f.type == FlagType::boolean ? sub->add_flag(f.name, f.help)
                                                     : sub->add_option(f.name, values[key], f.help);
      bound.push_back({&f, opt, key});
    }
    return sub;
  };
  CLI::App* frame = app.add_subcommand("frame", "frame construction and diagnostics");
  frame->require_subcommand(1);
  CLI::App* frame_build = leaf(frame, "build", "build a frame and report its bounds");
  CLI::App* frame_diag = leaf(frame, "diag", "localization and coorbit diagnostics");
  CLI::App* gal = app.add_subcommand("galerkin", "Galerkin matrices of operators");
  gal->require_subcommand(1);
  CLI::App* gal_assemble = leaf(gal, "assemble", "assemble M = C_phi O D_psi");
  CLI::App* gal_certify = leaf(gal, "certify", "weighted Schur boundedness certificates");
  CLI::App* gal_probe = leaf(gal, "probe", "condition-number probe and pseudo-inverse");
  CLI::App* solve = app.add_subcommand("solve", "operator equations");
  solve->require_subcommand(1);
  CLI::App* solve_fs = leaf(solve, "fs", "finite-section projection method");
  leaf(solve, "fg", "frame-Galerkin solve");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return kOk;
    }
    report_error(err, {}, std::string(to_string(ErrorCode::invalid_argument)), e.what());
    return kInputError;
  }

  fs::path out_path;
  try {
    Json cfg = Json::object();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw Error(ErrorCode::io, "cannot open config " + config_path);
      try {
        cfg = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::invalid_argument, std::string("malformed config: ") + e.what());
      }
      if (!cfg.is_object()) throw Error(ErrorCode::invalid_argument, "config must be a JSON object");
    }
    for (const auto& b : bound) {
      if (b.opt->count() == 0) continue;
      cfg[Json::json_pointer(b.spec->pointer)] = flag_value(*b.spec, values[b.key]);
    }
    if (!out_dir.empty()) cfg["out_dir"] = out_dir;
    if (seed >= 0) cfg["seed"] = seed;
    if (!cfg.contains("seed")) cfg["seed"] = 1;
    out_path = get_or<std::string>(cfg, "/out_dir", "out");

    Outcome result;
    std::string command;
    if (frame_build->parsed()) {
      command = "frame build";
      result = cmd_frame_build(cfg, out_path);
    } else if (frame_diag->parsed()) {
      command = "frame diag";
      result = cmd_frame_diag(cfg, out_path);
    } else if (gal_assemble->parsed()) {
      command = "galerkin assemble";
      result = cmd_galerkin_assemble(cfg, out_path, threads);
    } else if (gal_certify->parsed()) {
      command = "galerkin certify";
      result = cmd_galerkin_certify(cfg, out_path, threads);
    } else if (gal_probe->parsed()) {
      command = "galerkin probe";
      result = cmd_galerkin_probe(cfg, out_path);
    } else if (solve_fs->parsed()) {
      command = "solve fs";
      result = cmd_solve_fs(cfg, out_path, threads);
    } else {
      command = "solve fg";
      result = cmd_solve_fg(cfg, out_path);
    }
    cfg["command"] = command;
    io::write_json(out_path / "config.json", cfg);
    out << Json{{"command", command}, {"exit_code", result.code}, {"result", result.summary}}.dump()
        << "\n";
    return result.code;
  } catch (const Error& e) {
    report_error(err, out_path, std::string(to_string(e.code())), e.what());
    return exit_code_for(e.code());
  } catch (const nlohmann::json::exception& e) {
    report_error(err, out_path, std::string(to_string(ErrorCode::invalid_argument)), e.what());
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    report_error(err, out_path, std::string(to_string(ErrorCode::io)), e.what());
    return kInputError;
  }
}

}  // namespace locframe::cli
