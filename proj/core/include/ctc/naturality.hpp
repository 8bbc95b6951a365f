#pragma once

#include <string>
#include <vector>

#include "ctc/connection.hpp"
#include "ctc/verify.hpp"

namespace ctc {

class SingularJacobianError : public InputError {
 public:
  SingularJacobianError(const Vec& point, double condition_estimate);
};

// φ and its inverse ψ, both written in the triad's coordinate names.
struct Diffeo {
  std::string name;
  std::vector<FieldExpr> forward;
  std::vector<FieldExpr> inverse;

  static Diffeo from_strings(std::string name, const std::vector<std::string>& forward,
                             const std::vector<std::string>& inverse);
};

Diffeo identity_diffeo(const ContactTriad& triad);
// z ↦ z + shift on the last coordinate.
Diffeo reeb_translation(const ContactTriad& triad, double shift = 1.0);
// z ↦ z + x on the first and last coordinates.
Diffeo shear_diffeo(const ContactTriad& triad);

// (φ*λ)_a = λ_b(φ) ∂_aφ^b and φ*J = Dψ(φ) J(φ) Dφ, built symbolically.
ContactTriad pullback_triad(const ContactTriad& triad, const Diffeo& phi);

// Γ'^c_ab = Dψ^c_k(φ) [∂_a∂_bφ^k + Γ^k_ij(φ) ∂_aφ^i ∂_bφ^j]
Christoffel transform_christoffel(const Christoffel& G_at_phi, const Diffeo& phi, const std::vector<std::string>& coords,
                                  const Vec& x);

// Builds the connection of φ*(λ, J) with `conn` and compares it with the
// transformed Christoffels of `conn` on the original triad at φ(x).
VerificationReport naturality_check(const ContactTriad& triad, const Diffeo& phi, const AffineConnection& conn,
                                    const CheckSpec& spec);

}  // namespace ctc
