#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "locframe/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run_cli(const fs::path& dir, std::vector<std::string> args) {
  args.insert(args.begin(), {"--out-dir", dir.string()});
  std::vector<const char*> argv{"locframe"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = locframe::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string error_code(const Run& r) {
  return nlohmann::json::parse(r.err).at("error").at("code").get<std::string>();
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("locframe_unit_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("frame build writes its artifacts") {
  auto dir = scratch("build");
  auto r = run_cli(dir, {"frame", "build", "--frame", "gabor", "--n", "16", "--a", "4", "--b", "4"});
  CHECK(r.code == locframe::cli::kOk);
  CHECK(fs::exists(dir / "frame.lfm"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "config.json"));
  auto line = nlohmann::json::parse(r.out);
  CHECK(line.at("exit_code") == 0);
}

TEST_CASE("too sparse gabor lattice is rejected") {
  auto r = run_cli(scratch("sparse"), {"frame", "build", "--frame", "gabor", "--n", "16", "--a", "8", "--b", "4"});
  CHECK(r.code == locframe::cli::kInputError);
  CHECK(error_code(r) == "not_a_frame");
}

TEST_CASE("non-contractive kernel diverges under cg") {
  auto r = run_cli(scratch("diverge"), {"solve", "fg", "--frame", "gabor", "--n", "32", "--a", "2", "--b", "4",
                                        "--operator", "identity_minus_kernel", "--theta", "1.2", "--method", "cg"});
  CHECK(r.code == locframe::cli::kDiverged);
}

TEST_CASE("singular operator has no galerkin pseudo-inverse") {
  auto r = run_cli(scratch("pinv"), {"galerkin", "probe", "--frame", "onb", "--n", "8", "--operator", "diagonal",
                                     "--spectrum", "1,2,0,4,5,6,7,8", "--pinv"});
  CHECK(r.code == locframe::cli::kInputError);
  CHECK(error_code(r) == "bijectivity");
}

TEST_CASE("unknown options are input errors") {
  auto r = run_cli(scratch("unknown"), {"frame", "build", "--bogus"});
  CHECK(r.code == locframe::cli::kInputError);
}
