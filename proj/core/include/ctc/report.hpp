#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ctc {

inline constexpr const char* kReportSchemaVersion = "ctc.report/1";
inline constexpr const char* kLibraryVersion = CTC_VERSION;

// How a residual is judged: below tolerance, above tolerance, or not at all.
enum class Bound { max, min, info };
enum class Status { pass, fail, skip, info };

const char* to_string(Bound b);
const char* to_string(Status s);

struct EntryContext {
  std::string triad;
  std::string connection;
  double c = 0.0;
  int point_index = -1;
  std::vector<double> point;
};

struct ReportEntry {
  std::string check;
  std::string triad;
  std::string connection;
  double c = 0.0;
  int point_index = -1;
  std::vector<double> point;
  double residual = 0.0;
  double tolerance = 0.0;
  Bound bound = Bound::max;
  Status status = Status::pass;
  std::string note;
};

struct CheckSummary {
  std::string check;
  std::string triad;
  std::string connection;
  double c = 0.0;
  int evaluated = 0;
  int failed = 0;
  int skipped = 0;
  double worst = 0.0;  // max residual, or min for Bound::min
  double tolerance = 0.0;
  Bound bound = Bound::max;
  Status status = Status::pass;
  std::string note;
};

struct EnvironmentStamp {
  std::string version = kLibraryVersion;
  std::uint64_t seed = 0;
  std::string timestamp;  // not part of determinism comparisons
};

class VerificationReport {
 public:
  void record(const EntryContext& ctx, const std::string& check, double residual, double tolerance,
              Bound bound = Bound::max, std::string note = {});
  void skip(const EntryContext& ctx, const std::string& check, std::string note);
  void add(ReportEntry e);
  void merge(const VerificationReport& other);

  const std::vector<ReportEntry>& entries() const { return entries_; }
  // One row per (check, triad, connection, c), in first-appearance order.
  std::vector<CheckSummary> summary() const;
  bool passed() const;
  // Worst residual of a check over all entries with that id (NaN if absent).
  double worst(const std::string& check) const;
  bool check_passed(const std::string& check) const;

  EnvironmentStamp env;

  std::string to_json_string(bool include_timestamp = true) const;
  static VerificationReport from_json_string(const std::string& text);

 private:
  std::vector<ReportEntry> entries_;
};

// Status for a residual under a bound; non-finite residuals always fail.
Status judge(double residual, double tolerance, Bound bound);

std::string utc_timestamp();

}  // namespace ctc
