#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ctc::cli {

enum Exit { kPass = 0, kFail = 1, kInputError = 2 };

struct GlobalOptions {
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::optional<int> points;
  std::string json_path;
  std::optional<std::string> connection;
  std::optional<double> c;
  int threads = 0;
  bool quiet = false;
};

int cmd_check(const std::string& target, const GlobalOptions& g);
int cmd_eval(const std::string& what, const std::string& target, const std::string& point, const GlobalOptions& g);
int cmd_cr(const std::string& target, const std::string& triad_key, int grid, std::optional<double> assert_zero,
           const GlobalOptions& g);
int cmd_gallery_list();

const std::vector<std::string>& eval_targets();

}  // namespace ctc::cli
