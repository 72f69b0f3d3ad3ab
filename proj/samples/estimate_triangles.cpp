// Estimates the triangle count of a Kronecker graph with Bloom-filter sketches
// that use a quarter of the CSR footprint, and compares it with the exact count.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "probgraph/mining.hpp"

int main() {
  using namespace probgraph;

  const CsrGraph g = generate_kronecker(12, 16, 1);
  const DirectedView view(g);

  const auto t0 = std::chrono::steady_clock::now();
  const double exact = triangle_count(view, ExactProvider<DirectedView>(view));
  const auto t1 = std::chrono::steady_clock::now();

  const BudgetPlan plan = plan_budget(g, SketchKind::Bloom, 0.25, 2);
  const SketchedGraph sketches = SketchedGraph::build(view, plan);
  const auto t2 = std::chrono::steady_clock::now();
  const double approx = triangle_count(view, SketchProvider<EstimatorKind::BfAnd>(sketches));
  const auto t3 = std::chrono::steady_clock::now();

  auto secs = [](auto a, auto b) { return std::chrono::duration<double>(b - a).count(); };
  std::printf("graph: n=%zu m=%zu\n", g.num_vertices(), g.num_edges());
  std::printf("exact triangles:     %.0f (%.3f s)\n", exact, secs(t0, t1));
  std::printf("estimated triangles: %.1f (%.3f s, sketches built in %.3f s)\n", approx, secs(t2, t3),
              secs(t1, t2));
  std::printf("relative error:      %.4f\n", std::abs(approx - exact) / exact);
  std::printf("Bloom filter bits per vertex: %llu, extra memory: %.3f of the CSR\n",
              static_cast<unsigned long long>(plan.bloom_bits),
              sketches.extra_fraction(g.footprint_words()));
}
