#pragma once

#include <map>
#include <string>
#include <vector>

#include "ctc/triad.hpp"

namespace ctc {

inline constexpr const char* kDefaultPerturbU = "0.3*sin(z)";
inline constexpr const char* kDefaultPerturbV = "exp(0.2*x)";
inline constexpr const char* kDefaultPerturbU5 = "0.3*sin(z + x2)";
inline constexpr const char* kDefaultPerturbV5 = "exp(0.2*y1)";

// λ = dz − Σ y_i dx_i with J ∂x_i = ∂y_i, J ∂y_i = −∂x_i − y_i ∂z.
// Coordinates (x, y, z) for n = 1, else (x1..xn, y1..yn, z).
ContactTriad gallery_standard(int n);

// Standard ℝ³ with J e₁ = u e₁ + v e₂, J e₂ = −((1+u²)/v) e₁ − u e₂ on
// e₁ = ∂x + y∂z, e₂ = ∂y. Requires v > 0.
ContactTriad gallery_perturbed_r3(const std::string& u = kDefaultPerturbU, const std::string& v = kDefaultPerturbV);

// Standard ℝ⁵ with the same perturbation on the (x1, y1) block; u, v may
// depend on every coordinate, which makes J non-integrable in general.
ContactTriad gallery_perturbed_r5(const std::string& u = kDefaultPerturbU5, const std::string& v = kDefaultPerturbV5);

struct GalleryEntry {
  std::string key;
  std::string description;
};

// Keys: standard-r<2n+1>, perturbed-r3, perturbed-r5. Parameters: u, v.
ContactTriad gallery(const std::string& key, const std::map<std::string, std::string>& params = {});
std::vector<GalleryEntry> gallery_list();

}  // namespace ctc
