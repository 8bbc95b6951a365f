#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "ctc/connection.hpp"
#include "ctc/cr_maps.hpp"
#include "ctc/frame.hpp"
#include "ctc/gallery.hpp"
#include "ctc/manifest.hpp"
#include "ctc/naturality.hpp"
#include "ctc/verify.hpp"
#include "format.hpp"
#include "json_write.hpp"

namespace ctc::cli {

namespace {

using detail::Json;

constexpr double kDefaultTol = 1e-9;
constexpr int kDefaultPoints = 100;

Manifest resolve_target(const std::string& target) {
  if (target.rfind("gallery:", 0) == 0) {
    Manifest m;
    m.source = target;
    m.name = target.substr(8);
    m.gallery = m.name;
    m.triad();  // validate the key
    return m;
  }
  if (target.rfind("map:", 0) == 0) throw InputError("'" + target + "' is a map; use the cr command");
  return load_manifest(target);
}

AffineConnection make_connection(const std::string& tag, double c) {
  if (tag == "triad-direct") {
    if (c != 0.0) throw InputError("triad-direct exists only for c = 0; use triad-frame");
    return direct_triad_connection();
  }
  if (tag == "triad-frame") return construct_connection_frame(c);
  if (tag == "levi-civita") return levi_civita_connection();
  throw InputError("unknown connection '" + tag + "'");
}

std::string canonical_tag(const std::string& tag, double c) {
  if (tag == "triad") return c == 0.0 ? "triad-direct" : "triad-frame";
  return tag;
}

void print_summary(const VerificationReport& rep, bool quiet) {
  int total = 0, passed = 0;
  double worst = 0.0, worst_failing = 0.0;
  for (const auto& s : rep.summary()) {
    if (!quiet || s.status == Status::fail) {
      char line[256];
      std::snprintf(line, sizeof line, "  %-4s  %-28s %-26s c=%-5s %s %-11.4e tol %.1e  (%d pts%s)",
                    s.status == Status::pass   ? "ok"
                    : s.status == Status::fail ? "FAIL"
                    : s.status == Status::skip ? "skip"
                                               : "info",
                    s.check.c_str(), s.connection.c_str(), num(s.c).c_str(), to_string(s.bound), s.worst, s.tolerance,
                    s.evaluated, s.skipped ? (", " + std::to_string(s.skipped) + " skipped").c_str() : "");
      std::cout << line;
      if (!s.note.empty() && s.status != Status::pass) std::cout << "  " << s.note;
      std::cout << "\n";
    }
    if (s.status == Status::pass || s.status == Status::fail) {
      ++total;
      if (s.status == Status::pass) {
        ++passed;
        if (s.bound == Bound::max) worst = std::max(worst, s.worst);
      } else if (s.bound == Bound::max) {
        worst_failing = std::max(worst_failing, std::isnan(s.worst) ? INFINITY : s.worst);
      }
    }
  }
  char line[160];
  std::snprintf(line, sizeof line, "%d/%d checks pass, max residual %.1e", passed, total, worst);
  std::cout << line;
  if (passed < total) {
    std::snprintf(line, sizeof line, "; failing checks reach %.1e", worst_failing);
    std::cout << line;
  }
  std::cout << "\n";
}

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t end = std::min(s.find(',', pos), s.size());
    std::size_t b = pos, e = end;
    while (b < e && s[b] == ' ') ++b;
    while (e > b && s[e - 1] == ' ') --e;
    double v = 0.0;
    const auto r = std::from_chars(s.data() + b, s.data() + e, v);
    if (b == e || r.ec != std::errc() || r.ptr != s.data() + e || !std::isfinite(v))
      throw InputError("malformed point '" + s + "'");
    out.push_back(v);
    pos = end + 1;
  }
  return out;
}

Json to_json(const Vec& v) {
  Json j = Json::array();
  for (int a = 0; a < v.size(); ++a) j.push_back(v(a));
  return j;
}

Json to_json(const Mat& M) {
  Json j = Json::array();
  for (int i = 0; i < M.rows(); ++i) j.push_back(to_json(Vec(M.row(i).transpose())));
  return j;
}

Json to_json(const CRow& v) {
  Json re = Json::array(), im = Json::array();
  for (int a = 0; a < v.size(); ++a) re.push_back(v(a).real()), im.push_back(v(a).imag());
  return Json{{"re", re}, {"im", im}};
}

Json to_json(const Array3& A) {
  Json j = Json::array();
  for (int c = 0; c < A.dim(); ++c) {
    Mat M(A.dim(), A.dim());
    for (int a = 0; a < A.dim(); ++a)
      for (int b = 0; b < A.dim(); ++b) M(a, b) = A(c, a, b);
    j.push_back(to_json(M));
  }
  return j;
}

void write_report(const VerificationReport& rep, const GlobalOptions& g) {
  if (g.json_path.empty()) return;
  write_file(g.json_path, rep.to_json_string(true));
  if (!g.quiet) std::cout << "report written to " << g.json_path << "\n";
}

}  // namespace

const std::vector<std::string>& eval_targets() {
  static const std::vector<std::string> t = {"reeb", "metric", "gamma", "torsion", "frame", "alpha-beta", "nijenhuis"};
  return t;
}

int cmd_check(const std::string& target, const GlobalOptions& g) {
  const Manifest m = resolve_target(target);
  const ContactTriad triad = m.triad();
  const int d = triad.dim();

  PointsSpec ps = m.points.value_or(PointsSpec{});
  if (!m.points) ps.count = kDefaultPoints;
  if (g.points) {
    if (ps.mode == PointsSpec::Mode::explicit_list) throw InputError("--points cannot override an explicit point list");
    if (*g.points < 1) throw InputError("--points must be positive");
    ps.count = *g.points;
  }
  if (g.seed) ps.seed = *g.seed;

  CheckSpec spec;
  spec.triad_id = m.name;
  spec.points = resolve_points(ps, d);
  spec.seed = ps.seed;
  spec.tol = g.tol.value_or(m.tol.value_or(kDefaultTol));
  spec.threads = g.threads;
  if (!(spec.tol > 0)) throw InputError("--tol must be positive");

  std::vector<double> cs = g.c ? std::vector<double>{*g.c}
                           : !m.c_values.empty() ? m.c_values
                           : std::vector<double>{m.c.value_or(0.0)};
  std::vector<std::string> tags;
  const bool explicit_conn = g.connection || m.connection;
  if (explicit_conn)
    tags = {canonical_tag(g.connection ? *g.connection : *m.connection, cs.front())};
  else
    tags = {"triad-direct", "triad-frame"};

  if (!g.quiet)
    std::cout << "triad " << m.name << " (d = " << d << "), " << spec.points.size() << " points, seed " << spec.seed
              << ", tol " << num(spec.tol) << "\n";

  VerificationReport rep = compatibility_check(triad, spec.points, spec.tol);
  bool zero_c = false, triad_conn = false;
  for (double c : cs) {
    for (const auto& tag : tags) {
      if (tag == "triad-direct" && c != 0.0) {
        if (explicit_conn) throw InputError("triad-direct exists only for c = 0; use triad-frame");
        continue;
      }
      const AffineConnection conn = make_connection(tag, c);
      rep.merge(check_axioms(triad, conn, c, spec));
      rep.merge(check_identities(triad, conn, spec));
      if (tag != "levi-civita") {
        rep.merge(check_frame_theorems(triad, conn, spec));
        triad_conn = true;
        if (c == 0.0) zero_c = true;
        if (m.diffeo)
          rep.merge(naturality_check(triad, Diffeo::from_strings(m.diffeo->name, m.diffeo->forward, m.diffeo->inverse),
                                     conn, spec));
      }
    }
  }
  if (zero_c && triad_conn && !explicit_conn) rep.merge(uniqueness_crosscheck(triad, spec));

  rep.env.seed = spec.seed;
  rep.env.timestamp = utc_timestamp();
  print_summary(rep, g.quiet);
  write_report(rep, g);
  return rep.passed() ? kPass : kFail;
}

int cmd_eval(const std::string& what, const std::string& target, const std::string& point_text,
             const GlobalOptions& g) {
  bool known = false;
  for (const auto& t : eval_targets()) known |= t == what;
  if (!known) throw InputError("unknown eval target '" + what + "'");
  const Manifest m = resolve_target(target);
  const ContactTriad triad = m.triad();
  const std::vector<double> p = parse_point(point_text);
  if (int(p.size()) != triad.dim())
    throw InputError("point has " + std::to_string(p.size()) + " coordinates, expected " +
                     std::to_string(triad.dim()));
  const Vec x = Eigen::Map<const Vec>(p.data(), Eigen::Index(p.size()));
  const double c = g.c.value_or(m.c.value_or(0.0));
  const std::string tag =
      canonical_tag(g.connection ? *g.connection : m.connection.value_or("triad"), c);

  const PointEval pe = evaluate_point(triad, x);
  const auto& names = triad.coords();
  const int d = pe.d, n = pe.n;
  Json out;
  out["schema_version"] = "ctc.eval/1";
  out["what"] = what;
  out["triad"] = m.name;
  out["point"] = to_json(x);

  if (what == "reeb") {
    std::cout << vec(pe.R) << "\n";
    out["value"] = to_json(pe.R);
  } else if (what == "metric") {
    std::cout << matrix(pe.g) << "\n";
    out["value"] = to_json(pe.g);
  } else if (what == "nijenhuis") {
    const Array3 N = nijenhuis_tensor_at(pe);
    Json arr = Json::array();
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        Vec v(d);
        for (int e = 0; e < d; ++e) v(e) = N(e, a, b);
        std::cout << "N(∂" << names[a] << ", ∂" << names[b] << ") = " << vec(v) << "\n";
        arr.push_back(Json{{"a", names[a]}, {"b", names[b]}, {"value", to_json(v)}});
      }
    out["value"] = arr;
  } else if (what == "frame") {
    const ACFrame fr = darboux_frame_at(pe);
    Json jf;
    for (int i = 0; i < n; ++i) {
      std::cout << "E" << i + 1 << " = " << vec(fr.E(i)) << "\n";
      std::cout << "F" << i + 1 << " = " << vec(fr.F(i)) << "\n";
      jf["E"].push_back(to_json(fr.E(i)));
      jf["F"].push_back(to_json(fr.F(i)));
    }
    std::cout << "R  = " << vec(pe.R) << "\n";
    for (int i = 0; i < n; ++i) {
      std::cout << "θ" << i + 1 << " = " << cvec(fr.theta(i)) << "\n";
      jf["theta"].push_back(to_json(fr.theta(i)));
    }
    jf["R"] = to_json(pe.R);
    jf["pivots"] = fr.pivots;
    out["value"] = jf;
  } else {
    const AffineConnection conn = make_connection(tag, c);
    out["connection"] = tag;
    out["c"] = tag == "levi-civita" ? 0.0 : c;
    const Christoffel G = conn.at(pe);
    if (what == "gamma") {
      bool any = false;
      for (int e = 0; e < d; ++e)
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            if (std::abs(G(e, a, b)) > 1e-14) {
              std::cout << "Γ^" << names[e] << "_" << names[a] << names[b] << " = " << num(G(e, a, b)) << "\n";
              any = true;
            }
      if (!any) std::cout << "all Christoffel symbols vanish\n";
      out["value"] = to_json(G);
    } else if (what == "torsion") {
      const Torsion T = torsion_at(G);
      Json arr = Json::array();
      for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
          Vec v(d);
          for (int e = 0; e < d; ++e) v(e) = T(e, a, b);
          std::cout << "T(∂" << names[a] << ", ∂" << names[b] << ") = " << vec(v) << "\n";
          arr.push_back(Json{{"a", names[a]}, {"b", names[b]}, {"value", to_json(v)}});
        }
      out["value"] = arr;
    } else {  // alpha-beta
      const ACFrame fr = darboux_frame_at(pe);
      const FrameConnectionMatrix fm = frame_connection_forms(G, pe, fr);
      Json jf;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          std::cout << "ω^" << i + 1 << "_" << j + 1 << " = " << cvec(fm.omega[i][j]) << "\n";
          jf["omega"].push_back(Json{{"i", i + 1}, {"j", j + 1}, {"value", to_json(fm.omega[i][j])}});
        }
      for (int k = 0; k < n; ++k) {
        std::cout << "α^0_" << k + 1 << " = " << cvec(fm.alpha0[k]) << "\n";
        jf["alpha0"].push_back(to_json(fm.alpha0[k]));
      }
      std::cout << "α^0_0 = " << vec(fm.alpha00) << "\n";
      jf["alpha00"] = to_json(fm.alpha00);
      for (int i = 0; i < n; ++i) {
        std::cout << "β^" << i + 1 << "_0 = " << cvec(fm.beta0[i]) << "\n";
        jf["beta0"].push_back(to_json(fm.beta0[i]));
      }
      jf["hermitian_residual"] = fm.hermitian_residual;
      out["value"] = jf;
    }
  }
  if (!g.json_path.empty()) write_file(g.json_path, detail::dump17(out));
  return kPass;
}

int cmd_cr(const std::string& target, const std::string& triad_key, int grid_n, std::optional<double> assert_zero,
           const GlobalOptions& g) {
  if (grid_n < 1) throw InputError("--grid must be positive");
  SampleGrid grid;
  grid.ns = grid.nt = grid_n;
  std::optional<ContactTriad> triad;
  std::optional<MapChart> map;
  if (target.rfind("map:", 0) == 0) {
    triad = gallery(triad_key.rfind("gallery:", 0) == 0 ? triad_key.substr(8) : triad_key);
    map = builtin_map(target.substr(4), *triad);
  } else {
    const Manifest m = resolve_target(target);
    if (!m.map) throw InputError("manifest '" + target + "' has no 'map' block");
    triad = m.triad();
    map = MapChart::from_strings(m.name, *m.map);
    if (m.samples) grid = *m.samples;
  }
  if (assert_zero && !(*assert_zero > 0)) throw InputError("--assert-zero needs a positive tolerance");
  VerificationReport rep = cr_report(*triad, *map, grid, assert_zero);
  rep.env.seed = 0;
  rep.env.timestamp = utc_timestamp();
  if (!g.quiet)
    std::cout << "map " << map->name << " into " << triad->name() << ", " << grid.ns << "x" << grid.nt << " grid\n";
  print_summary(rep, g.quiet);
  write_report(rep, g);
  if (!assert_zero) return kPass;
  return rep.passed() ? kPass : kFail;
}

int cmd_gallery_list() {
  for (const auto& e : gallery_list()) std::cout << "gallery:" << e.key << "\t" << e.description << "\n";
  for (const auto& k : builtin_map_keys()) std::cout << "map:" << k << "\n";
  return kPass;
}

}  // namespace ctc::cli
