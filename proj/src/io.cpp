#include "locframe/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>

namespace locframe::io {

namespace {

static_assert(std::endian::native == std::endian::little,
              "container format assumes a little-endian host");

template <typename T>
void put(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof(T))) {
    throw Error(ErrorCode::io, "truncated matrix container");
  }
  return v;
}

std::string shortest(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io, "malformed JSON in " + path.string() + ": " + e.what());
  }
}

}  // namespace

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

void write_matrix(const std::filesystem::path& path, const CMatrix& M, const Json& sidecar) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  out.write(kMagic, 4);
  put(out, kVersion);
  put(out, static_cast<std::uint64_t>(M.rows()));
  put(out, static_cast<std::uint64_t>(M.cols()));
  for (Eigen::Index l = 0; l < M.cols(); ++l) {
    for (Eigen::Index k = 0; k < M.rows(); ++k) {
      put(out, M(k, l).real());
      put(out, M(k, l).imag());
    }
  }
  if (!out) throw Error(ErrorCode::io, "write failed for " + path.string());
  write_json(path.string() + ".json", sidecar);
}

MatrixFile read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, kMagic, 4) != 0) {
    throw Error(ErrorCode::io, path.string() + " is not a matrix container");
  }
  const auto version = get<std::uint32_t>(in);
  if (version != kVersion) {
    throw Error(ErrorCode::io, "unsupported container version " + std::to_string(version));
  }
  const auto rows = get<std::uint64_t>(in);
  const auto cols = get<std::uint64_t>(in);
  if (rows > (1u << 20) || cols > (1u << 20)) throw Error(ErrorCode::io, "container too large");
  MatrixFile f;
  f.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index l = 0; l < f.matrix.cols(); ++l) {
    for (Eigen::Index k = 0; k < f.matrix.rows(); ++k) {
      const double re = get<double>(in);
      const double im = get<double>(in);
      f.matrix(k, l) = Complex(re, im);
    }
  }
  const std::filesystem::path side = path.string() + ".json";
  f.sidecar = std::filesystem::exists(side) ? read_json_file(side) : Json::object();
  return f;
}

void write_frame(const std::filesystem::path& path, const Frame& frame) {
  Json side;
  side["kind"] = "frame";
  side["id"] = frame.id();
  side["provenance"] = to_json(frame.provenance());
  side["index_set"] = to_json(frame.index_set());
  write_matrix(path, frame.vectors(), side);
}

Frame read_frame(const std::filesystem::path& path) {
  auto f = read_matrix(path);
  const Json& s = f.sidecar;
  if (!s.contains("index_set") || !s.contains("id")) {
    throw Error(ErrorCode::io, path.string() + ": sidecar does not describe a frame");
  }
  Provenance p;
  if (s.contains("provenance")) {
    const Json& pj = s["provenance"];
    p.kind = pj.value("kind", std::string("explicit"));
    p.seed = pj.value("seed", std::uint64_t{0});
    if (pj.contains("params")) {
      for (const auto& [k, v] : pj["params"].items()) p.params.emplace_back(k, v.get<double>());
    }
  }
  return Frame(std::move(f.matrix), index_set_from_json(s["index_set"]), s["id"].get<std::string>(),
               std::move(p));
}

Json number(double x) {
  if (std::isfinite(x)) return x;
  return shortest(x);
}

Json to_json(const IndexSet& index) {
  Json j;
  j["dim"] = index.dim();
  j["metric"] = index.metric() == IndexSet::Metric::circular ? "circular" : "absolute";
  j["period"] = {index.period()[0], index.period()[1]};
  j["unit"] = {index.unit()[0], index.unit()[1]};
  Json pos = Json::array();
  for (const auto& p : index.positions()) pos.push_back({p[0], p[1]});
  j["positions"] = pos;
  j["labels"] = index.labels();
  return j;
}

IndexSet index_set_from_json(const Json& j) {
  try {
    std::vector<LatticePoint> pos;
    for (const auto& p : j.at("positions")) pos.push_back({p.at(0).get<long>(), p.at(1).get<long>()});
    const auto metric = j.at("metric").get<std::string>() == "circular"
                            ? IndexSet::Metric::circular
                            : IndexSet::Metric::absolute;
    return IndexSet(j.at("labels").get<std::vector<std::string>>(), std::move(pos),
                    j.at("dim").get<int>(), metric,
                    {j.at("period").at(0).get<long>(), j.at("period").at(1).get<long>()},
                    {j.at("unit").at(0).get<double>(), j.at("unit").at(1).get<double>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::io, std::string("bad index set: ") + e.what());
  }
}

Json to_json(const Provenance& p) {
  Json params = Json::object();
  for (const auto& [k, v] : p.params) params[k] = v;
  return {{"kind", p.kind}, {"params", params}, {"seed", p.seed}};
}

Json to_json(const FrameBounds& b) {
  return {{"A", number(b.lower)}, {"B", number(b.upper)}, {"tight", b.tight()}};
}

Json to_json(const Weight& w) {
  switch (w.family()) {
    case Weight::Family::polynomial: return {{"family", "polynomial"}, {"t", w.parameter()}};
    case Weight::Family::exponential: return {{"family", "exponential"}, {"a", w.parameter()}};
    case Weight::Family::explicit_values:
      return {{"family", "explicit"}, {"values", w.explicit_data()}};
  }
  return {};
}

Weight weight_from_json(const Json& j) {
  if (j.is_number()) return Weight::polynomial(j.get<double>());
  const auto fam = j.value("family", std::string("polynomial"));
  if (fam == "polynomial") return Weight::polynomial(j.value("t", 0.0));
  if (fam == "exponential") return Weight::exponential(j.value("a", 0.0));
  if (fam == "explicit") return Weight::explicit_values(j.at("values").get<std::vector<double>>());
  throw Error(ErrorCode::invalid_argument, "unknown weight family '" + fam + "'");
}

Json to_json(const SeqSpaceSpec& s) { return {{"p", s.p.to_string()}, {"weight", to_json(s.weight)}}; }

SeqSpaceSpec space_from_json(const Json& j) {
  SeqSpaceSpec s;
  if (j.contains("p")) {
    const Json& p = j["p"];
    s.p = p.is_string() ? Exponent::parse(p.get<std::string>()) : Exponent::finite(p.get<double>());
  }
  if (j.contains("weight")) s.weight = weight_from_json(j["weight"]);
  return s;
}

Json to_json(const MatrixAlgebraSpec& a) {
  return {{"kind", to_string(a.kind)}, {"s", a.s}, {"threshold", a.membership_threshold},
          {"dim", a.dim}};
}

Json to_json(const DecayFit& f) {
  return {{"fitted_exponent", number(f.fitted_exponent)},
          {"residual", number(f.residual)},
          {"exponential_rate", number(f.exponential_rate)},
          {"exponential_residual", number(f.exponential_residual)},
          {"looks_exponential", f.looks_exponential},
          {"shells", f.shell_maxima.size()}};
}

Json to_json(const LocalizationReport& r) {
  Json j{{"algebra", to_json(r.algebra)},
         {"left", r.left_id},
         {"right", r.right_id},
         {"cross_gram_norm", number(r.cross_gram_norm)},
         {"jaffard", number(r.jaffard)},
         {"schur", number(r.schur)},
         {"member", r.member}};
  j["decay"] = r.decay ? to_json(*r.decay) : Json(nullptr);
  return j;
}

Json to_json(const DualLocalizationReport& r) {
  return {{"primal", to_json(r.primal)},
          {"dual", to_json(r.dual)},
          {"mixed", to_json(r.mixed)},
          {"exponent_drop", r.exponent_drop}};
}

Json to_json(const EquivalenceConstants& c) {
  return {{"lower", number(c.lower)}, {"upper", number(c.upper)}, {"exact", c.exact}};
}

Json to_json(const RoundtripResidual& r) {
  return {{"forward", number(r.forward)}, {"mirrored", number(r.mirrored)}};
}

Json to_json(const NormBound& b) {
  return {{"bound", number(b.bound)},         {"measured", number(b.measured)},
          {"gram_left", number(b.gram_left)}, {"gram_right", number(b.gram_right)},
          {"core", number(b.core)},           {"measured_exact", b.measured_exact},
          {"holds", b.holds},                 {"warning", b.warning}};
}

Json to_json(const BoundCertificate& c) {
  Json details = Json::object();
  for (const auto& [k, v] : c.details) details[k] = number(v);
  Json j{{"case", to_string(c.bound_case)},
         {"certified_bound", number(c.certified_bound)},
         {"w1", to_json(c.w1)},
         {"w2", to_json(c.w2)},
         {"p", c.p},
         {"details", details},
         {"surrogate", c.surrogate}};
  if (!c.diagonal_roots.empty()) {
    Json roots = Json::array();
    for (double r : c.diagonal_roots) roots.push_back(number(r));
    j["diagonal_roots"] = roots;
  }
  return j;
}

Json to_json(const KappaProbe& k) {
  return {{"lhs", number(k.lhs)},
          {"rhs", number(k.rhs)},
          {"ratio", number(k.ratio)},
          {"inequality_holds", k.inequality_holds},
          {"equality_holds", k.equality_holds}};
}

Json to_json(const SolveReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) {
    levels.push_back({{"N", l.N},
                      {"dim", l.dim},
                      {"residual", number(l.residual)},
                      {"error", l.error ? number(*l.error) : Json(nullptr)},
                      {"inverse_norm", number(l.inverse_norm)},
                      {"iterations", l.iterations},
                      {"kappa_dagger", number(l.kappa_dagger)},
                      {"singular", l.singular},
                      {"diverged", l.diverged},
                      {"cauchy", number(l.cauchy)},
                      {"subframe_lower", number(l.subframe_lower)},
                      {"subframe_upper", number(l.subframe_upper)}});
  }
  return {{"method", to_string(r.method)},
          {"tol", r.tol},
          {"converged", r.converged},
          {"diverged", r.diverged},
          {"final_relative_residual", number(r.final_relative_residual)},
          {"contraction_norm", r.contraction_norm ? number(*r.contraction_norm) : Json(nullptr)},
          {"sufficient_condition", r.sufficient_condition},
          {"sup_inverse_norm", number(r.sup_inverse_norm)},
          {"monitor_bounded", r.monitor_bounded},
          {"uniform_bounds_flag", r.uniform_bounds_flag},
          {"normal_equations", r.normal_equations},
          {"message", r.message},
          {"levels", levels}};
}

std::string decay_csv(const DecayFit& f) {
  std::string out = "distance,max_abs\n";
  for (const auto& [d, m] : f.shell_maxima) out += shortest(d) + "," + shortest(m) + "\n";
  return out;
}

std::string levels_csv(const SolveReport& r) {
  std::string out = "N,residual,error,inverse_norm,iterations\n";
  for (const auto& l : r.levels) {
    out += std::to_string(l.N) + "," + shortest(l.residual) + "," +
           (l.error ? shortest(*l.error) : std::string()) + "," + shortest(l.inverse_norm) + "," +
           std::to_string(l.iterations) + "\n";
  }
  return out;
}

}  // namespace locframe::io
