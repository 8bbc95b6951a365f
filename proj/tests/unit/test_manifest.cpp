#include <doctest.h>

#include <cmath>
#include <limits>

#include "ctc/manifest.hpp"
#include "ctc/report.hpp"

using namespace ctc;

namespace {

const char* kExplicit = R"({
  "name": "hand",
  "n": 1,
  "coords": ["x", "y", "z"],
  "lambda": ["-y", "0", "1"],
  "J": [["0", "-1", "0"], ["1", "0", "0"], ["0", "-y", "0"]],
  "c_values": [-1, 0, 2],
  "points": {"mode": "explicit", "list": [[0, 0, 0], [1, 2, 3]]}
})";

void rejects(const std::string& text, const std::string& fragment) {
  try {
    parse_manifest(text);
    FAIL("accepted: " << text);
  } catch (const ManifestError& e) {
    CHECK_MESSAGE(std::string(e.what()).find(fragment) != std::string::npos, e.what());
  }
}

}  // namespace

TEST_SUITE("manifest") {

TEST_CASE("gallery manifest") {
  const Manifest m = parse_manifest(R"({"gallery": "perturbed-r3", "params": {"u": "0", "v": "1"}, "tol": 1e-8,
                                       "points": {"mode": "random", "count": 7, "seed": 3}})");
  CHECK(m.gallery == "perturbed-r3");
  CHECK(m.tol == 1e-8);
  REQUIRE(m.points);
  const auto pts = resolve_points(*m.points, 3);
  CHECK(pts.size() == 7);
  CHECK(m.triad().dim() == 3);
}

TEST_CASE("explicit triad manifest") {
  const Manifest m = parse_manifest(kExplicit);
  CHECK(m.name == "hand");
  CHECK(m.c_values == std::vector<double>{-1, 0, 2});
  const auto pts = resolve_points(*m.points, 3);
  REQUIRE(pts.size() == 2);
  CHECK(pts[1](2) == 3.0);
  CHECK(m.triad().n() == 1);
}

TEST_CASE("rejections") {
  rejects(R"({"gallery": "standard-r3", "colour": 1})", "unknown key 'colour'");
  rejects(R"({"gallery": "standard-r3", "points": {"mode": "random", "cnt": 3}})", "unknown key 'cnt'");
  rejects(R"({"gallery": "standard-r3", "diffeo": {"forward": ["x"], "inverse": ["x"], "extra": 0}})", "unknown key");
  rejects(R"({"gallery": "standard-r3", "samples": {"s": [0, 1], "u": [0, 1]}})", "unknown key 'u'");
  rejects(R"({"gallery": "standard-r3", "tol": -1})", "tol");
  rejects(R"({"gallery": "standard-r3", "connection": "flat"})", "connection");
  rejects(R"({"gallery": "standard-r3", "points": {"mode": "explicit", "list": [[0, 0]]}})", "points.list");
  rejects(R"({"gallery": "standard-r3", "points": {"mode": "sometimes"}})", "points.mode");
  rejects(R"({"n": 1, "coords": ["x", "y", "z"], "lambda": ["-y", "0"], "J": []})", "lambda");
  rejects(R"({"n": 1, "coords": ["x", "y", "z"], "lambda": ["-y", "0", "1 +"],
              "J": [["0","-1","0"],["1","0","0"],["0","-y","0"]]})", "parse error");
  rejects(R"({"n": 1, "coords": ["x", "y", "z"], "lambda": ["-w", "0", "1"],
              "J": [["0","-1","0"],["1","0","0"],["0","-y","0"]]})", "w");
  rejects(R"({"gallery": "standard-r3", "map": ["s", "q", "t"]})", "q");
  rejects(R"({"gallery": "nowhere"})", "nowhere");
  rejects(R"({"tol": 1e-9})", "gallery");
  rejects("{not json", "invalid JSON");
  rejects(R"({"gallery": "standard-r3", "n": 1})", "cannot be combined");
}

TEST_CASE("missing file") {
  try {
    load_manifest("/nonexistent/missing.json");
    FAIL("loaded");
  } catch (const ManifestError& e) {
    CHECK(std::string(e.what()).find("file not found") != std::string::npos);
  }
}

TEST_CASE("samples block") {
  const Manifest m = parse_manifest(R"({"gallery": "standard-r3", "map": ["0", "0", "t"],
                                        "samples": {"s": [0, 2], "t": [-1, 1], "n": [4, 5]}})");
  REQUIRE(m.samples);
  CHECK(m.samples->points().size() == 20);
  CHECK(m.samples->s_hi == 2.0);
}

TEST_CASE("judging residuals") {
  CHECK(judge(1e-10, 1e-9, Bound::max) == Status::pass);
  CHECK(judge(1e-8, 1e-9, Bound::max) == Status::fail);
  CHECK(judge(0.2, 0.05, Bound::min) == Status::pass);
  CHECK(judge(0.01, 0.05, Bound::min) == Status::fail);
  CHECK(judge(5.0, 1e-9, Bound::info) == Status::info);
  CHECK(judge(std::numeric_limits<double>::quiet_NaN(), 1e-9, Bound::max) == Status::fail);
  CHECK(judge(std::numeric_limits<double>::infinity(), 1e-9, Bound::info) == Status::fail);
}

TEST_CASE("report summary and JSON round trip") {
  VerificationReport r;
  r.env.seed = 42;
  r.env.timestamp = "2026-01-01T00:00:00Z";
  const EntryContext a{"std", "triad-direct", 0.0, 0, {0.1, 0.2, 0.30000000000000004}};
  const EntryContext b{"std", "triad-direct", 0.0, 1, {1, 2, 3}};
  r.record(a, "axiom.metric", 1.2345678901234567e-12, 1e-9);
  r.record(b, "axiom.metric", 3e-10, 1e-9);
  r.record(b, "axiom.J_parallel", 2e-3, 1e-9);
  r.skip(a, "ident.nabla_lambda", "c != 0");
  CHECK_FALSE(r.passed());
  CHECK(r.check_passed("axiom.metric"));
  CHECK_FALSE(r.check_passed("axiom.J_parallel"));
  CHECK(r.worst("axiom.metric") == 3e-10);
  CHECK(std::isnan(r.worst("absent")));
  const auto s = r.summary();
  REQUIRE(s.size() == 3);
  CHECK(s[0].check == "axiom.metric");
  CHECK(s[0].evaluated == 2);
  CHECK(s[1].failed == 1);
  CHECK(s[2].skipped == 1);

  const std::string text = r.to_json_string();
  const VerificationReport back = VerificationReport::from_json_string(text);
  CHECK(back.to_json_string() == text);
  CHECK(back.entries()[0].point[2] == 0.30000000000000004);
  CHECK(back.entries()[0].residual == 1.2345678901234567e-12);
  CHECK(back.env.seed == 42);
  CHECK(r.to_json_string(false).find("2026-01-01") == std::string::npos);
}

}  // TEST_SUITE
