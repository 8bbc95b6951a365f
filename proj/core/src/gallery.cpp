#include "ctc/gallery.hpp"

namespace ctc {

namespace {

std::vector<std::string> standard_coords(int n) {
  if (n == 1) return {"x", "y", "z"};
  std::vector<std::string> c;
  for (int i = 1; i <= n; ++i) c.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i) c.push_back("y" + std::to_string(i));
  c.push_back("z");
  return c;
}

struct Strings {
  std::vector<std::string> lambda;
  std::vector<std::vector<std::string>> J;
};

Strings standard_strings(int n, const std::vector<std::string>& c) {
  const int d = 2 * n + 1;
  Strings s;
  s.lambda.assign(d, "0");
  s.J.assign(d, std::vector<std::string>(d, "0"));
  for (int i = 0; i < n; ++i) {
    const std::string& y = c[n + i];
    s.lambda[i] = "-" + y;
    s.J[n + i][i] = "1";
    s.J[i][n + i] = "-1";
    s.J[d - 1][n + i] = "-" + y;
  }
  s.lambda[d - 1] = "1";
  return s;
}

// Replaces the (x_i, y_i) columns of J by the (u, v) perturbation.
void perturb_block(Strings& s, int n, int i, const std::vector<std::string>& c, const std::string& u,
                   const std::string& v) {
  const int d = 2 * n + 1, xi = i, yi = n + i, z = d - 1;
  const std::string U = "(" + u + ")", V = "(" + v + ")", y = c[yi];
  s.J[xi][xi] = U;
  s.J[yi][xi] = V;
  s.J[z][xi] = U + "*" + y;
  s.J[xi][yi] = "-(1 + " + U + "^2)/" + V;
  s.J[yi][yi] = "-" + U;
  s.J[z][yi] = "-" + y + "*(1 + " + U + "^2)/" + V;
}

std::string perturbed_name(const char* base, const std::string& u, const std::string& v, const char* du,
                           const char* dv) {
  if (u == du && v == dv) return base;
  return std::string(base) + "(u=" + u + ", v=" + v + ")";
}

}  // namespace

ContactTriad gallery_standard(int n) {
  const auto c = standard_coords(n);
  const Strings s = standard_strings(n, c);
  return ContactTriad::from_strings("standard-r" + std::to_string(2 * n + 1), n, c, s.lambda, s.J);
}

ContactTriad gallery_perturbed_r3(const std::string& u, const std::string& v) {
  const auto c = standard_coords(1);
  Strings s = standard_strings(1, c);
  perturb_block(s, 1, 0, c, u, v);
  return ContactTriad::from_strings(perturbed_name("perturbed-r3", u, v, kDefaultPerturbU, kDefaultPerturbV), 1, c,
                                    s.lambda, s.J, {{"v", parse_field(v)}});
}

ContactTriad gallery_perturbed_r5(const std::string& u, const std::string& v) {
  const auto c = standard_coords(2);
  Strings s = standard_strings(2, c);
  perturb_block(s, 2, 0, c, u, v);
  return ContactTriad::from_strings(perturbed_name("perturbed-r5", u, v, kDefaultPerturbU5, kDefaultPerturbV5), 2, c,
                                    s.lambda, s.J, {{"v", parse_field(v)}});
}

ContactTriad gallery(const std::string& key, const std::map<std::string, std::string>& params) {
  auto param = [&](const char* name, const char* fallback) {
    const auto it = params.find(name);
    return it == params.end() ? std::string(fallback) : it->second;
  };
  auto reject_params = [&] {
    if (!params.empty()) throw InputError("gallery '" + key + "' takes no parameters");
  };
  for (const auto& [k, v] : params)
    if (k != "u" && k != "v") throw InputError("unknown gallery parameter '" + k + "'");
  if (key == "perturbed-r3") return gallery_perturbed_r3(param("u", kDefaultPerturbU), param("v", kDefaultPerturbV));
  if (key == "perturbed-r5") return gallery_perturbed_r5(param("u", kDefaultPerturbU5), param("v", kDefaultPerturbV5));
  if (key.rfind("standard-r", 0) == 0) {
    reject_params();
    const std::string digits = key.substr(10);
    if (!digits.empty() && digits.find_first_not_of("0123456789") == std::string::npos) {
      const int d = std::stoi(digits);
      if (d >= 3 && d % 2 == 1 && d <= kMaxDim) return gallery_standard((d - 1) / 2);
    }
  }
  throw InputError("unknown gallery triad '" + key + "' (try gallery-list)");
}

std::vector<GalleryEntry> gallery_list() {
  return {
      {"standard-r3", "λ = dz − y dx on ℝ³ with the standard J"},
      {"standard-r5", "λ = dz − y1 dx1 − y2 dx2 on ℝ⁵ with the standard J"},
      {"standard-r<2n+1>", "standard triad in any odd dimension up to " + std::to_string(kMaxDim)},
      {"perturbed-r3", std::string("standard ℝ³ with J perturbed by u = ") + kDefaultPerturbU + ", v = " +
                           kDefaultPerturbV},
      {"perturbed-r5", std::string("standard ℝ⁵ with the (x1, y1) block perturbed by u = ") + kDefaultPerturbU5 +
                           ", v = " + kDefaultPerturbV5},
  };
}

}  // namespace ctc
