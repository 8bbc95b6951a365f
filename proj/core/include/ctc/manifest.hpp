#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ctc/cr_maps.hpp"
#include "ctc/naturality.hpp"
#include "ctc/triad.hpp"

namespace ctc {

inline constexpr const char* kManifestSchemaVersion = "ctc.manifest/1";

class ManifestError : public InputError {
 public:
  using InputError::InputError;
};

struct PointsSpec {
  enum class Mode { explicit_list, random } mode = Mode::random;
  std::vector<std::vector<double>> list;
  std::vector<std::pair<double, double>> box;  // empty: [−1, 1] per coordinate
  int count = 100;
  std::uint64_t seed = 0;
};

struct DiffeoSpec {
  std::string name = "diffeo";
  std::vector<std::string> forward, inverse;
};

struct Manifest {
  std::string source;
  std::string name;
  std::optional<std::string> gallery;
  std::map<std::string, std::string> params;
  std::optional<int> n;
  std::vector<std::string> coords;
  std::vector<std::string> lambda;
  std::vector<std::vector<std::string>> J;
  std::optional<double> c;
  std::vector<double> c_values;
  std::optional<std::string> connection;
  std::optional<PointsSpec> points;
  std::optional<double> tol;
  std::optional<std::vector<std::string>> map;
  std::optional<SampleGrid> samples;
  std::optional<DiffeoSpec> diffeo;

  // Gallery entry, or the explicit n / coords / lambda / J block.
  ContactTriad triad() const;
  bool has_triad() const { return gallery.has_value() || !lambda.empty(); }
};

// Throws ManifestError with the offending key on any schema violation,
// including unknown keys.
Manifest parse_manifest(const std::string& text, const std::string& source = "<string>");
// "file not found" when the path does not exist.
Manifest load_manifest(const std::string& path);

std::vector<Vec> resolve_points(const PointsSpec& spec, int dim);

}  // namespace ctc
