#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ctc/connection.hpp"
#include "ctc/frame.hpp"
#include "ctc/report.hpp"
#include "ctc/triad.hpp"

namespace ctc {

struct CheckSpec {
  std::string triad_id;  // defaults to the triad's name
  std::vector<Vec> points;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  double frame_tol = 1e-10;  // frame invariants (orthonormality, duality, dλ)
  int vectors_per_point = 4;
  int threads = 0;  // 0: hardware concurrency
};

// Uniform points in an axis-aligned box, reproducible from the seed.
std::vector<Vec> random_points(const std::vector<std::pair<double, double>>& box, int count, std::uint64_t seed);
std::vector<Vec> random_points(int dim, int count, std::uint64_t seed, double half_width = 1.0);

// mt19937_64 keyed by (seed, point index, check id); each check draws its
// own stream so adding a check never perturbs another one.
class SampleStream {
 public:
  SampleStream(std::uint64_t seed, int point_index, const std::string& check);
  double uniform();  // [−1, 1)
  Vec vector(int d);
  // Π-projected, rejecting norm < 0.1, normalized.
  Vec xi_vector(const Mat& Pi);

 private:
  std::mt19937_64 rng_;
};

struct CheckInfo {
  std::string id;
  std::string group;  // axiom-1 .. axiom-6, identity, frame, uniqueness, naturality, compat
  std::string description;
};
const std::vector<CheckInfo>& check_registry();
const CheckInfo* find_check(const std::string& id);

// Axioms (1)–(6) with the c-condition ∇_{JY}R + J∇_Y R = cY in place of (3).
VerificationReport check_axioms(const ContactTriad& triad, const AffineConnection& conn, double c,
                                const CheckSpec& spec);
VerificationReport check_identities(const ContactTriad& triad, const AffineConnection& conn, const CheckSpec& spec);
// Frame invariants, connection matrix and complex torsion statements, the
// connection-independence of Θ^{π(0,2)} and its ratio to the Nijenhuis tensor.
VerificationReport check_frame_theorems(const ContactTriad& triad, const AffineConnection& conn,
                                        const CheckSpec& spec);
// c = 0: direct vs frame-constructed Christoffels, and pivot independence
// of the frame construction.
VerificationReport uniqueness_crosscheck(const ContactTriad& triad, const CheckSpec& spec);

// Θ^i(η̄_j, η̄_k) / θ^i(N(η̄_j, η̄_k)) over components with |θ^i(N)| > floor.
std::vector<Complex> nijenhuis_ratios_at(const PointEval& pe, const Christoffel& G, double floor = 1e-3);

// Runs body(i) for i in [0, count) on up to `threads` workers; results are
// merged by the caller in index order.
void parallel_for(int count, int threads, const std::function<void(int)>& body);

VerificationReport run_per_point(const CheckSpec& spec, const std::function<void(int, VerificationReport&)>& body);

}  // namespace ctc
