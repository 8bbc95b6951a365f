#include <benchmark/benchmark.h>

#include "ctc/frame.hpp"
#include "ctc/gallery.hpp"
#include "ctc/verify.hpp"

using namespace ctc;

namespace {

const ContactTriad& triad(int which) {
  static const ContactTriad r3 = gallery("perturbed-r3"), r5 = gallery("perturbed-r5");
  return which == 3 ? r3 : r5;
}

Vec point(int d) { return random_points(d, 1, 1)[0]; }

void BM_Jet2Expression(benchmark::State& st) {
  const BoundExpr e(parse_field("exp(0.2*x)*sin(z + y^2)/(2 + cos(x*y))"), {"x", "y", "z"});
  const std::vector<double> p{0.3, -0.2, 0.5};
  for (auto _ : st) benchmark::DoNotOptimize(e.evaluate_jet2(p));
}
BENCHMARK(BM_Jet2Expression);

void BM_EvaluatePoint(benchmark::State& st) {
  const ContactTriad& t = triad(int(st.range(0)));
  const Vec x = point(t.dim());
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_point(t, x));
}
BENCHMARK(BM_EvaluatePoint)->Arg(3)->Arg(5);

void BM_DirectConnection(benchmark::State& st) {
  const ContactTriad& t = triad(int(st.range(0)));
  const PointEval pe = evaluate_point(t, point(t.dim()));
  for (auto _ : st) benchmark::DoNotOptimize(triad_connection_direct_at(pe));
}
BENCHMARK(BM_DirectConnection)->Arg(3)->Arg(5);

void BM_FrameConstruction(benchmark::State& st) {
  const ContactTriad& t = triad(int(st.range(0)));
  const PointEval pe = evaluate_point(t, point(t.dim()));
  for (auto _ : st) benchmark::DoNotOptimize(frame_construction_at(pe, 0.0));
}
BENCHMARK(BM_FrameConstruction)->Arg(3)->Arg(5);

void BM_ComplexTorsion(benchmark::State& st) {
  const ContactTriad& t = triad(5);
  const PointEval pe = evaluate_point(t, point(5));
  const ACFrame f = darboux_frame_at(pe);
  const Christoffel G = triad_connection_direct_at(pe);
  for (auto _ : st) benchmark::DoNotOptimize(complex_torsion_at(G, pe, f));
}
BENCHMARK(BM_ComplexTorsion);

void BM_AxiomSuite(benchmark::State& st) {
  const ContactTriad& t = triad(3);
  CheckSpec s;
  s.points = random_points(3, int(st.range(0)), 0);
  s.threads = 1;
  const AffineConnection conn = construct_connection_frame(0.0);
  for (auto _ : st) benchmark::DoNotOptimize(check_axioms(t, conn, 0.0, s));
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_AxiomSuite)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
