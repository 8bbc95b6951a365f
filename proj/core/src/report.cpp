#include "ctc/report.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <map>
#include <tuple>

#include "ctc/expr.hpp"
#include "json_write.hpp"

namespace ctc {

using detail::Json;

const char* to_string(Bound b) {
  switch (b) {
    case Bound::max: return "max";
    case Bound::min: return "min";
    case Bound::info: return "info";
  }
  return "?";
}

const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
    case Status::info: return "info";
  }
  return "?";
}

static Bound parse_bound(const std::string& s) {
  if (s == "max") return Bound::max;
  if (s == "min") return Bound::min;
  if (s == "info") return Bound::info;
  throw InputError("report: unknown bound '" + s + "'");
}

static Status parse_status(const std::string& s) {
  if (s == "pass") return Status::pass;
  if (s == "fail") return Status::fail;
  if (s == "skip") return Status::skip;
  if (s == "info") return Status::info;
  throw InputError("report: unknown status '" + s + "'");
}

Status judge(double residual, double tolerance, Bound bound) {
  if (!std::isfinite(residual)) return Status::fail;
  if (bound == Bound::info) return Status::info;
  if (bound == Bound::max) return residual < tolerance ? Status::pass : Status::fail;
  return residual > tolerance ? Status::pass : Status::fail;
}

void VerificationReport::record(const EntryContext& ctx, const std::string& check, double residual,
                                double tolerance, Bound bound, std::string note) {
  ReportEntry e;
  e.check = check;
  e.triad = ctx.triad;
  e.connection = ctx.connection;
  e.c = ctx.c;
  e.point_index = ctx.point_index;
  e.point = ctx.point;
  e.residual = residual;
  e.tolerance = tolerance;
  e.bound = bound;
  e.status = judge(residual, tolerance, bound);
  e.note = std::move(note);
  entries_.push_back(std::move(e));
}

void VerificationReport::skip(const EntryContext& ctx, const std::string& check, std::string note) {
  ReportEntry e;
  e.check = check;
  e.triad = ctx.triad;
  e.connection = ctx.connection;
  e.c = ctx.c;
  e.point_index = ctx.point_index;
  e.point = ctx.point;
  e.residual = std::numeric_limits<double>::quiet_NaN();
  e.status = Status::skip;
  e.note = std::move(note);
  entries_.push_back(std::move(e));
}

void VerificationReport::add(ReportEntry e) { entries_.push_back(std::move(e)); }

void VerificationReport::merge(const VerificationReport& other) {
  entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::vector<CheckSummary> VerificationReport::summary() const {
  std::vector<CheckSummary> rows;
  std::map<std::tuple<std::string, std::string, std::string, double>, std::size_t> index;
  for (const auto& e : entries_) {
    const auto key = std::make_tuple(e.check, e.triad, e.connection, e.c);
    auto it = index.find(key);
    if (it == index.end()) {
      CheckSummary s;
      s.check = e.check;
      s.triad = e.triad;
      s.connection = e.connection;
      s.c = e.c;
      s.bound = e.bound;
      s.tolerance = e.tolerance;
      s.worst = std::numeric_limits<double>::quiet_NaN();
      s.status = Status::skip;
      it = index.emplace(key, rows.size()).first;
      rows.push_back(s);
    }
    CheckSummary& s = rows[it->second];
    if (e.status == Status::skip) {
      ++s.skipped;
      if (s.note.empty()) s.note = e.note;
      continue;
    }
    s.bound = e.bound;
    s.tolerance = e.tolerance;
    ++s.evaluated;
    if (e.status == Status::fail) ++s.failed;
    if (s.evaluated == 1 || !std::isfinite(e.residual)) s.worst = e.residual;
    else if (std::isfinite(s.worst))
      s.worst = e.bound == Bound::min ? std::min(s.worst, e.residual) : std::max(s.worst, e.residual);
  }
  for (auto& s : rows) {
    if (s.evaluated == 0) s.status = Status::skip;
    else if (s.failed > 0) s.status = Status::fail;
    else s.status = s.bound == Bound::info ? Status::info : Status::pass;
  }
  return rows;
}

bool VerificationReport::passed() const {
  for (const auto& e : entries_)
    if (e.status == Status::fail) return false;
  return true;
}

double VerificationReport::worst(const std::string& check) const {
  double w = std::numeric_limits<double>::quiet_NaN();
  for (const auto& e : entries_) {
    if (e.check != check || e.status == Status::skip) continue;
    if (std::isnan(w)) w = e.residual;
    else w = e.bound == Bound::min ? std::min(w, e.residual) : std::max(w, e.residual);
  }
  return w;
}

bool VerificationReport::check_passed(const std::string& check) const {
  bool seen = false;
  for (const auto& e : entries_) {
    if (e.check != check) continue;
    if (e.status == Status::fail) return false;
    if (e.status != Status::skip) seen = true;
  }
  return seen;
}

static Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

static double number_from(const Json& j) {
  return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::string VerificationReport::to_json_string(bool include_timestamp) const {
  Json root;
  root["schema_version"] = kReportSchemaVersion;
  Json env_j;
  env_j["version"] = env.version;
  env_j["seed"] = env.seed;
  if (include_timestamp) env_j["timestamp"] = env.timestamp;
  root["environment"] = env_j;

  const auto rows = summary();
  int failed = 0;
  for (const auto& s : rows)
    if (s.status == Status::fail) ++failed;
  root["passed"] = passed();
  root["checks_total"] = rows.size();
  root["checks_failed"] = failed;

  Json sum = Json::array();
  for (const auto& s : rows) {
    Json r;
    r["check"] = s.check;
    r["triad"] = s.triad;
    r["connection"] = s.connection;
    r["c"] = s.c;
    r["bound"] = to_string(s.bound);
    r["tolerance"] = s.tolerance;
    r["worst"] = number_or_null(s.worst);
    r["evaluated"] = s.evaluated;
    r["failed"] = s.failed;
    r["skipped"] = s.skipped;
    r["status"] = to_string(s.status);
    if (!s.note.empty()) r["note"] = s.note;
    sum.push_back(r);
  }
  root["summary"] = sum;

  Json es = Json::array();
  for (const auto& e : entries_) {
    Json r;
    r["check"] = e.check;
    r["triad"] = e.triad;
    r["connection"] = e.connection;
    r["c"] = e.c;
    r["point_index"] = e.point_index;
    Json p = Json::array();
    for (double v : e.point) p.push_back(v);
    r["point"] = p;
    r["residual"] = number_or_null(e.residual);
    r["tolerance"] = e.tolerance;
    r["bound"] = to_string(e.bound);
    r["status"] = to_string(e.status);
    if (!e.note.empty()) r["note"] = e.note;
    es.push_back(r);
  }
  root["entries"] = es;
  return detail::dump17(root) + "\n";
}

VerificationReport VerificationReport::from_json_string(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const std::exception& ex) {
    throw InputError(std::string("report: invalid JSON: ") + ex.what());
  }
  VerificationReport r;
  try {
    if (root.at("schema_version").get<std::string>() != kReportSchemaVersion)
      throw InputError("report: unsupported schema version");
    const Json& env_j = root.at("environment");
    r.env.version = env_j.at("version").get<std::string>();
    r.env.seed = env_j.at("seed").get<std::uint64_t>();
    if (env_j.contains("timestamp")) r.env.timestamp = env_j.at("timestamp").get<std::string>();
    for (const Json& j : root.at("entries")) {
      ReportEntry e;
      e.check = j.at("check").get<std::string>();
      e.triad = j.at("triad").get<std::string>();
      e.connection = j.at("connection").get<std::string>();
      e.c = j.at("c").get<double>();
      e.point_index = j.at("point_index").get<int>();
      for (const Json& v : j.at("point")) e.point.push_back(v.get<double>());
      e.residual = number_from(j.at("residual"));
      e.tolerance = j.at("tolerance").get<double>();
      e.bound = parse_bound(j.at("bound").get<std::string>());
      e.status = parse_status(j.at("status").get<std::string>());
      if (j.contains("note")) e.note = j.at("note").get<std::string>();
      r.entries_.push_back(std::move(e));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("report: malformed document: ") + ex.what());
  }
  return r;
}

std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace ctc
