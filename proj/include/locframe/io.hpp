#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"
#include "locframe/frames.hpp"
#include "locframe/galerkin.hpp"
#include "locframe/localization.hpp"
#include "locframe/solver.hpp"

namespace locframe::io {

using Json = nlohmann::ordered_json;

/// Container layout: "LFMX", uint32 version, uint64 rows, uint64 cols, then
/// rows*cols (re, im) double pairs in column-major order, little endian.
inline constexpr char kMagic[4] = {'L', 'F', 'M', 'X'};
inline constexpr std::uint32_t kVersion = 1;

/// Writes `path` and the sidecar `path.json`.
void write_matrix(const std::filesystem::path& path, const CMatrix& M, const Json& sidecar);

struct MatrixFile {
  CMatrix matrix;
  Json sidecar;
};
MatrixFile read_matrix(const std::filesystem::path& path);

void write_frame(const std::filesystem::path& path, const Frame& frame);
Frame read_frame(const std::filesystem::path& path);

void write_json(const std::filesystem::path& path, const Json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Finite doubles as numbers; inf and nan as strings.
Json number(double x);

Json to_json(const IndexSet& index);
IndexSet index_set_from_json(const Json& j);
Json to_json(const Provenance& p);
Json to_json(const FrameBounds& b);
Json to_json(const Weight& w);
Weight weight_from_json(const Json& j);
Json to_json(const SeqSpaceSpec& s);
SeqSpaceSpec space_from_json(const Json& j);
Json to_json(const MatrixAlgebraSpec& a);
Json to_json(const DecayFit& f);
Json to_json(const LocalizationReport& r);
Json to_json(const DualLocalizationReport& r);
Json to_json(const EquivalenceConstants& c);
Json to_json(const RoundtripResidual& r);
Json to_json(const NormBound& b);
Json to_json(const BoundCertificate& c);
Json to_json(const KappaProbe& k);
Json to_json(const SolveReport& r);

/// One row per distance shell: distance, max |entry|.
std::string decay_csv(const DecayFit& f);
/// One row per level: N, residual, error, inverse_norm, iterations.
std::string levels_csv(const SolveReport& r);

}  // namespace locframe::io
