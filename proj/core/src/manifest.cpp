#include "ctc/manifest.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "ctc/gallery.hpp"
#include "ctc/verify.hpp"
#include "json_write.hpp"

namespace ctc {

namespace {

using detail::Json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ManifestError("manifest: " + where + ": " + what);
}

void only_keys(const Json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) bad(where, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key())) bad(where, "unknown key '" + it.key() + "'");
}

double number_of(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) bad(where, "expected a finite number");
  return v;
}

int int_of(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

std::string string_of(const Json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

std::vector<std::string> strings_of(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_of(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::pair<double, double> interval_of(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "expected [lo, hi]");
  const double lo = number_of(j[0], where + "[0]"), hi = number_of(j[1], where + "[1]");
  if (!(lo <= hi)) bad(where, "lo must not exceed hi");
  return {lo, hi};
}

PointsSpec points_of(const Json& j) {
  only_keys(j, "points", {"mode", "list", "box", "count", "seed"});
  PointsSpec p;
  if (!j.contains("mode")) bad("points", "missing 'mode'");
  const std::string mode = string_of(j["mode"], "points.mode");
  if (mode == "explicit") {
    p.mode = PointsSpec::Mode::explicit_list;
    if (!j.contains("list") || !j["list"].is_array()) bad("points.list", "expected an array of points");
    for (std::size_t i = 0; i < j["list"].size(); ++i) {
      const Json& pt = j["list"][i];
      const std::string w = "points.list[" + std::to_string(i) + "]";
      if (!pt.is_array()) bad(w, "expected an array of numbers");
      std::vector<double> x;
      for (std::size_t a = 0; a < pt.size(); ++a) x.push_back(number_of(pt[a], w));
      p.list.push_back(x);
    }
    for (const char* k : {"box", "count", "seed"})
      if (j.contains(k)) bad("points", std::string("'") + k + "' only applies to random mode");
  } else if (mode == "random") {
    p.mode = PointsSpec::Mode::random;
    if (j.contains("list")) bad("points", "'list' only applies to explicit mode");
    if (j.contains("box")) {
      if (!j["box"].is_array()) bad("points.box", "expected an array of [lo, hi]");
      for (std::size_t a = 0; a < j["box"].size(); ++a)
        p.box.push_back(interval_of(j["box"][a], "points.box[" + std::to_string(a) + "]"));
    }
    if (j.contains("count")) p.count = int_of(j["count"], "points.count");
    if (p.count < 1) bad("points.count", "must be positive");
    if (j.contains("seed")) {
      if (!j["seed"].is_number_unsigned() && !(j["seed"].is_number_integer() && j["seed"].get<long long>() >= 0))
        bad("points.seed", "expected a non-negative integer");
      p.seed = j["seed"].get<std::uint64_t>();
    }
  } else {
    bad("points.mode", "expected \"explicit\" or \"random\"");
  }
  return p;
}

SampleGrid samples_of(const Json& j) {
  only_keys(j, "samples", {"s", "t", "n"});
  SampleGrid g;
  if (j.contains("s")) std::tie(g.s_lo, g.s_hi) = interval_of(j["s"], "samples.s");
  if (j.contains("t")) std::tie(g.t_lo, g.t_hi) = interval_of(j["t"], "samples.t");
  if (j.contains("n")) {
    const Json& n = j["n"];
    if (n.is_number_integer()) {
      g.ns = g.nt = n.get<int>();
    } else if (n.is_array() && n.size() == 2) {
      g.ns = int_of(n[0], "samples.n[0]");
      g.nt = int_of(n[1], "samples.n[1]");
    } else {
      bad("samples.n", "expected an integer or [ns, nt]");
    }
    if (g.ns < 1 || g.nt < 1) bad("samples.n", "must be positive");
  }
  return g;
}

}  // namespace

Manifest parse_manifest(const std::string& text, const std::string& source) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ManifestError("manifest: " + source + ": invalid JSON: " + e.what());
  }
  only_keys(j, "top level",
            {"$schema", "name", "gallery", "params", "n", "coords", "lambda", "J", "c", "c_values", "connection",
             "points", "tol", "map", "samples", "diffeo"});
  Manifest m;
  m.source = source;
  m.name = j.contains("name") ? string_of(j["name"], "name") : std::filesystem::path(source).stem().string();
  if (j.contains("gallery")) m.gallery = string_of(j["gallery"], "gallery");
  if (j.contains("params")) {
    if (!j["params"].is_object()) bad("params", "expected an object of strings");
    for (auto it = j["params"].begin(); it != j["params"].end(); ++it)
      m.params[it.key()] = string_of(it.value(), "params." + it.key());
  }
  if (j.contains("n")) {
    m.n = int_of(j["n"], "n");
    if (*m.n < 1) bad("n", "must be at least 1");
  }
  if (j.contains("coords")) m.coords = strings_of(j["coords"], "coords");
  if (j.contains("lambda")) m.lambda = strings_of(j["lambda"], "lambda");
  if (j.contains("J")) {
    if (!j["J"].is_array()) bad("J", "expected a matrix of strings");
    for (std::size_t a = 0; a < j["J"].size(); ++a) m.J.push_back(strings_of(j["J"][a], "J[" + std::to_string(a) + "]"));
  }
  const bool explicit_triad = m.n || !m.coords.empty() || !m.lambda.empty() || !m.J.empty();
  if (m.gallery && explicit_triad) bad("gallery", "cannot be combined with n / coords / lambda / J");
  if (!m.gallery && !m.params.empty()) bad("params", "only valid with 'gallery'");
  if (explicit_triad) {
    if (!m.n) bad("n", "missing");
    const std::size_t d = std::size_t(2 * *m.n + 1);
    if (m.coords.size() != d) bad("coords", "expected " + std::to_string(d) + " names");
    if (m.lambda.size() != d) bad("lambda", "expected " + std::to_string(d) + " components");
    if (m.J.size() != d) bad("J", "expected " + std::to_string(d) + " rows");
    for (std::size_t a = 0; a < d; ++a)
      if (m.J[a].size() != d) bad("J[" + std::to_string(a) + "]", "expected " + std::to_string(d) + " entries");
  }
  if (j.contains("c")) m.c = number_of(j["c"], "c");
  if (j.contains("c_values")) {
    if (!j["c_values"].is_array()) bad("c_values", "expected an array of numbers");
    for (const auto& v : j["c_values"]) m.c_values.push_back(number_of(v, "c_values"));
  }
  if (j.contains("connection")) {
    m.connection = string_of(j["connection"], "connection");
    if (*m.connection != "triad-direct" && *m.connection != "triad-frame" && *m.connection != "levi-civita")
      bad("connection", "expected triad-direct, triad-frame or levi-civita");
  }
  if (j.contains("points")) m.points = points_of(j["points"]);
  if (j.contains("tol")) {
    m.tol = number_of(j["tol"], "tol");
    if (!(*m.tol > 0)) bad("tol", "must be positive");
  }
  if (j.contains("map")) m.map = strings_of(j["map"], "map");
  if (j.contains("samples")) m.samples = samples_of(j["samples"]);
  if (j.contains("diffeo")) {
    only_keys(j["diffeo"], "diffeo", {"name", "forward", "inverse"});
    DiffeoSpec ds;
    if (j["diffeo"].contains("name")) ds.name = string_of(j["diffeo"]["name"], "diffeo.name");
    if (!j["diffeo"].contains("forward") || !j["diffeo"].contains("inverse"))
      bad("diffeo", "needs 'forward' and 'inverse'");
    ds.forward = strings_of(j["diffeo"]["forward"], "diffeo.forward");
    ds.inverse = strings_of(j["diffeo"]["inverse"], "diffeo.inverse");
    m.diffeo = ds;
  }
  if (!m.has_triad()) bad("top level", "needs 'gallery' or an explicit triad (n, coords, lambda, J)");

  // Parse every expression now so errors surface before numeric work.
  try {
    const ContactTriad t = m.triad();
    if (m.points && m.points->mode == PointsSpec::Mode::explicit_list)
      for (const auto& x : m.points->list)
        if (int(x.size()) != t.dim()) bad("points.list", "point of dimension " + std::to_string(x.size()));
    if (m.points && !m.points->box.empty() && int(m.points->box.size()) != t.dim())
      bad("points.box", "expected " + std::to_string(t.dim()) + " intervals");
    if (m.map) MapChart::from_strings(m.name, *m.map);
    if (m.diffeo) Diffeo::from_strings(m.diffeo->name, m.diffeo->forward, m.diffeo->inverse);
  } catch (const ManifestError&) {
    throw;
  } catch (const InputError& e) {
    throw ManifestError("manifest: " + source + ": " + e.what());
  }
  return m;
}

Manifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!std::filesystem::exists(path) || !in) throw ManifestError("file not found: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str(), path);
}

ContactTriad Manifest::triad() const {
  if (gallery) {
    ContactTriad t = ctc::gallery(*gallery, params);
    return t;
  }
  return ContactTriad::from_strings(name, *n, coords, lambda, J);
}

std::vector<Vec> resolve_points(const PointsSpec& spec, int dim) {
  if (spec.mode == PointsSpec::Mode::explicit_list) {
    std::vector<Vec> out;
    for (const auto& x : spec.list) {
      if (int(x.size()) != dim) throw ManifestError("manifest: points.list: wrong dimension");
      out.push_back(Eigen::Map<const Vec>(x.data(), Eigen::Index(x.size())));
    }
    return out;
  }
  if (spec.box.empty()) return random_points(dim, spec.count, spec.seed);
  return random_points(spec.box, spec.count, spec.seed);
}

}  // namespace ctc
