// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails. Optional arguments select criteria by
// number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "probgraph/bench.hpp"
#include "probgraph/mining.hpp"

using namespace probgraph;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

template <class F>
double time_it(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return seconds_since(t0);
}

template <class F>
double median_time(int runs, F&& f) {
  std::vector<double> t;
  for (int i = 0; i < runs; ++i) t.push_back(time_it(f));
  std::sort(t.begin(), t.end());
  return t[t.size() / 2];
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

std::vector<vertex_t> iota_ids(vertex_t lo, vertex_t hi) {
  std::vector<vertex_t> v(hi - lo);
  std::iota(v.begin(), v.end(), lo);
  return v;
}

// ---------------------------------------------------------------------------

std::uint64_t brute_triangles(const CsrGraph& g) {
  const auto n = static_cast<vertex_t>(g.num_vertices());
  std::uint64_t c = 0;
  for (vertex_t a = 0; a < n; ++a)
    for (vertex_t b = a + 1; b < n; ++b)
      if (g.has_edge(a, b))
        for (vertex_t d = b + 1; d < n; ++d) c += g.has_edge(a, d) && g.has_edge(b, d);
  return c;
}

std::uint64_t brute_four_cliques(const CsrGraph& g) {
  const auto n = static_cast<vertex_t>(g.num_vertices());
  std::uint64_t c = 0;
  for (vertex_t a = 0; a < n; ++a)
    for (vertex_t b = a + 1; b < n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (vertex_t d = b + 1; d < n; ++d) {
        if (!g.has_edge(a, d) || !g.has_edge(b, d)) continue;
        for (vertex_t e = d + 1; e < n; ++e) c += g.has_edge(a, e) && g.has_edge(b, e) && g.has_edge(d, e);
      }
    }
  return c;
}

Outcome exact_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(20240601);
  int mismatches = 0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng() % 12;
    const double p = 0.1 + 0.85 * static_cast<double>(rng() % 1000) / 1000.0;
    const CsrGraph g = generate_gnp(n, p, rng());
    const DirectedView view(g);
    const double tri = static_cast<double>(brute_triangles(g));
    const double four = static_cast<double>(brute_four_cliques(g));
    for (auto s : {SetOpStrategy::Merge, SetOpStrategy::Gallop}) {
      const ExactProvider<DirectedView> p_exact(view, s);
      mismatches += triangle_count(view, p_exact) != tri;
      mismatches += four_clique_count(view, p_exact) != four;
    }
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 10.0, fmt("%d mismatches over 200 graphs, %.2f s", mismatches, secs)};
}

// ---------------------------------------------------------------------------

Outcome exact_recovery() {
  std::mt19937_64 rng(77);
  int mismatches = 0;
  std::size_t checks = 0;
  const SimilarityMeasure counting[] = {SimilarityMeasure::Jaccard, SimilarityMeasure::Overlap,
                                        SimilarityMeasure::CommonNeighbors, SimilarityMeasure::TotalNeighbors};
  for (int i = 0; i < 20; ++i) {
    const std::size_t n = 20 + rng() % 181;
    const double p = 2.0 / static_cast<double>(n) + 0.2 * static_cast<double>(rng() % 1000) / 1000.0;
    const CsrGraph g = generate_gnp(n, p, rng());
    const std::uint64_t k = std::max<std::uint64_t>(1, degree_stats(g).max_degree);
    const auto seed = rng();
    const SketchedGraph sg = SketchedGraph::build(g, fixed_plan(g, SketchKind::OneHash, k), seed);
    const SketchProvider<EstimatorKind::OneHash> approx(sg);
    const ExactProvider<CsrGraph> exact(g);

    const DirectedView view(g);
    const SketchedGraph sgv = SketchedGraph::build(view, fixed_plan(g, SketchKind::OneHash, k), seed);
    mismatches += tc_estimate(g, approx) != tc_estimate(g, exact);
    mismatches += triangle_count(view, SketchProvider<EstimatorKind::OneHash>(sgv)) !=
                  triangle_count(view, ExactProvider<DirectedView>(view));
    for (double tau : {0.0, 1.0, 2.0}) {
      const auto a = jarvis_patrick_cluster(g, approx, tau), e = jarvis_patrick_cluster(g, exact, tau);
      mismatches += a.kept != e.kept || a.clusters != e.clusters || a.singletons != e.singletons;
    }
    checks += 5;
    for (vertex_t u = 0; u < g.num_vertices(); ++u) {
      for (vertex_t v = u + 1; v < g.num_vertices(); v += 1 + static_cast<vertex_t>(u % 3)) {
        for (auto m : counting) {
          mismatches += vertex_similarity(u, v, m, approx, g) != vertex_similarity(u, v, m, exact, g);
          ++checks;
        }
      }
    }
  }
  return {mismatches == 0, fmt("%d mismatches in %zu comparisons over 20 graphs", mismatches, checks)};
}

// ---------------------------------------------------------------------------

Outcome jaccard_unbiased() {
  const auto t0 = std::chrono::steady_clock::now();
  constexpr int kSeeds = 2000;
  std::string worst;
  double worst_z = 0;
  bool ok = true;
  // |X ∪ Y| = 1000 with |X| = |Y|.
  for (double j : {0.2, 0.5, 0.8}) {
    const auto inter = static_cast<vertex_t>(std::lround(1000 * j));
    const vertex_t side = (1000 + inter) / 2;
    const auto x = iota_ids(0, side), y = iota_ids(side - inter, 1000);
    for (std::uint32_t k : {32u, 128u}) {
      double sum_k = 0, sum_1 = 0;
      for (int s = 0; s < kSeeds; ++s) {
        const HashFamily fam(static_cast<std::uint64_t>(s) * 0x9e37 + k, k);
        sum_k += est_jaccard_minhash(build_khash(x, k, fam), build_khash(y, k, fam));
        sum_1 += est_jaccard_minhash(build_onehash(x, k, fam), build_onehash(y, k, fam));
      }
      const double se = std::sqrt(j * (1 - j) / k / kSeeds);
      for (auto [name, mean] : {std::pair{"khash", sum_k / kSeeds}, std::pair{"onehash", sum_1 / kSeeds}}) {
        const double z = std::abs(mean - j) / se;
        ok &= z <= 4.0;
        if (z >= worst_z) {
          worst_z = z;
          worst = fmt("%s J=%.1f k=%u mean=%.4f", name, j, k, mean);
        }
      }
    }
  }
  const double secs = seconds_since(t0);
  ok &= secs < 30.0;
  return {ok, fmt("worst |mean-J|/SE = %.2f (%s), %.1f s", worst_z, worst.c_str(), secs)};
}

// ---------------------------------------------------------------------------

// X = [0, 30), Y = [20, 50): |X| = |Y| = 30, |X ∩ Y| = 10.
const std::vector<vertex_t> kFixX = iota_ids(0, 30);
const std::vector<vertex_t> kFixY = iota_ids(20, 50);

Outcome minhash_tail() {
  constexpr int kSeeds = 2000;
  const double grid[] = {1, 2, 4, 8, 12};
  bool ok = true;
  double worst_margin = 1e9;
  std::string worst;
  for (std::uint32_t k : {16u, 24u}) {
    for (int which = 0; which < 2; ++which) {
      std::vector<double> err(kSeeds);
      for (int s = 0; s < kSeeds; ++s) {
        const HashFamily fam(1000003ULL * static_cast<std::uint64_t>(s) + k, k);
        const double est = which == 0
                               ? est_intersection_minhash(build_khash(kFixX, k, fam), build_khash(kFixY, k, fam), 30, 30)
                               : est_intersection_minhash(build_onehash(kFixX, k, fam),
                                                          build_onehash(kFixY, k, fam), 30, 30);
        err[static_cast<std::size_t>(s)] = std::abs(est - 10.0);
      }
      for (double t : grid) {
        const double p = static_cast<double>(std::count_if(err.begin(), err.end(), [&](double e) { return e >= t; })) / kSeeds;
        const double stderr_mc = std::sqrt(p * (1 - p) / kSeeds);
        const double bound = bound_minhash_tail(k, 30, 30, t);
        const double margin = bound + 3 * stderr_mc - p;
        ok &= margin >= 0;
        if (margin < worst_margin) {
          worst_margin = margin;
          worst = fmt("%s k=%u t=%g: P=%.4f bound=%.4f", which ? "onehash" : "khash", k, t, p, bound);
        }
      }
    }
  }
  return {ok, fmt("tightest point %s", worst.c_str())};
}

// ---------------------------------------------------------------------------

Outcome bloom_mse() {
  constexpr int kSeeds = 2000;
  bool ok = true;
  std::string detail;
  for (std::uint64_t bits : {1024u, 4096u}) {
    for (std::uint32_t b : {1u, 2u}) {
      const std::vector<vertex_t> inter = iota_ids(20, 30);
      double se_and = 0, se_direct = 0;
      for (int s = 0; s < kSeeds; ++s) {
        const HashFamily fam(7919ULL * static_cast<std::uint64_t>(s) + bits + b, b);
        const double est = est_intersection_bf_and(build_bloom(kFixX, bits, fam), build_bloom(kFixY, bits, fam));
        se_and += (est - 10) * (est - 10);
        // Filter built directly from X ∩ Y, the object the bound describes.
        const double direct = est_single_swamidass(build_bloom(inter, bits, fam));
        se_direct += (direct - 10) * (direct - 10);
      }
      BoundQuery q;
      q.bits = static_cast<double>(bits);
      q.b = b;
      q.intersection = 10;
      const double bound = *bound_bf_mse(q).value;
      const double mse = se_and / kSeeds;
      ok &= mse <= 2 * bound;
      detail += fmt("%sB=%llu b=%u: MSE=%.4f vs 2*bound=%.4f (filter of X∩Y: %.4f)", detail.empty() ? "" : "; ",
                    static_cast<unsigned long long>(bits), b, mse, 2 * bound, se_direct / kSeeds);
    }
  }
  return {ok, detail};
}

// ---------------------------------------------------------------------------

const CsrGraph& accuracy_graph() {
  static const CsrGraph g = generate_kronecker(12, 16, 1);
  return g;
}

double bf_tc_median_error(const CsrGraph& g, double s, std::uint32_t b) {
  const DirectedView view(g);
  const double exact = triangle_count(view, ExactProvider<DirectedView>(view));
  const BudgetPlan plan = plan_budget(g, SketchKind::Bloom, s, b);
  std::vector<double> err;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const SketchedGraph sg = SketchedGraph::build(view, plan, seed);
    const double est = triangle_count(view, SketchProvider<EstimatorKind::BfAnd>(sg));
    err.push_back(std::abs(est - exact) / exact);
  }
  return median(err);
}

Outcome desk_accuracy() {
  const CsrGraph& g = accuracy_graph();
  const double e = bf_tc_median_error(g, 0.25, 2);
  const auto plan = plan_budget(g, SketchKind::Bloom, 0.25, 2);
  return {e <= 0.25, fmt("median relative error %.4f (n=%zu m=%zu, B_X=%llu bits)", e, g.num_vertices(),
                         g.num_edges(), static_cast<unsigned long long>(plan.bloom_bits))};
}

// ---------------------------------------------------------------------------

Outcome desk_performance() {
  const CsrGraph g = generate_kronecker(14, 32, 1);
  const DirectedView view(g);
  const BudgetPlan plan = plan_budget(g, SketchKind::Bloom, 0.25, 2);
  double exact = 0, approx = 0;
  const double t_exact = median_time(3, [&] { exact = triangle_count(view, ExactProvider<DirectedView>(view), 1); });
  SketchedGraph sg;
  const double t_build = median_time(3, [&] { sg = SketchedGraph::build(view, plan, kDefaultHashSeed, 1); });
  const SketchProvider<EstimatorKind::BfAnd> p(sg);
  const double t_approx = median_time(3, [&] { approx = triangle_count(view, p, 1); });
  const double speedup = t_exact / t_approx;
  return {speedup >= 2.0 && t_build <= t_exact,
          fmt("exact %.3f s, BF_AND %.3f s (speedup %.2fx), construction %.3f s (%.2f of exact); rel. error %.3f",
              t_exact, t_approx, speedup, t_build, t_build / t_exact, std::abs(approx - exact) / exact)};
}

// ---------------------------------------------------------------------------

Outcome thread_determinism() {
  const CsrGraph g = generate_kronecker(11, 16, 5);
  const DirectedView view(g);
  struct Result {
    double tc, four, jp_kept;
    std::vector<double> est;
    std::vector<SketchedGraph> sketches;
  };
  auto run = [&](int t) {
    Result r;
    r.tc = triangle_count(view, ExactProvider<DirectedView>(view), t);
    r.four = four_clique_count(view, ExactProvider<DirectedView>(view), t);
    r.jp_kept = static_cast<double>(jarvis_patrick_cluster(g, ExactProvider<CsrGraph>(g), 2.0, t).kept.size());
    for (auto kind : {SketchKind::Bloom, SketchKind::OneHash, SketchKind::KHash, SketchKind::Kmv}) {
      r.sketches.push_back(SketchedGraph::build(view, plan_budget(g, kind, 0.5, 2), 11, t));
    }
    r.est.push_back(triangle_count(view, SketchProvider<EstimatorKind::BfAnd>(r.sketches[0]), t));
    r.est.push_back(triangle_count(view, SketchProvider<EstimatorKind::OneHash>(r.sketches[1]), t));
    r.est.push_back(triangle_count(view, SketchProvider<EstimatorKind::KHash>(r.sketches[2]), t));
    r.est.push_back(triangle_count(view, SketchProvider<EstimatorKind::Kmv>(r.sketches[3]), t));
    r.est.push_back(four_clique_count(view, SketchProvider<EstimatorKind::BfAnd>(r.sketches[0]), t));
    return r;
  };
  const Result base = run(1);
  bool exact_ok = true, sketch_ok = true;
  double worst = 0;
  for (int t : {2, 4, 8}) {
    const Result r = run(t);
    exact_ok &= r.tc == base.tc && r.four == base.four && r.jp_kept == base.jp_kept;
    for (std::size_t i = 0; i < r.sketches.size(); ++i) sketch_ok &= r.sketches[i] == base.sketches[i];
    for (std::size_t i = 0; i < r.est.size(); ++i) {
      worst = std::max(worst, std::abs(r.est[i] - base.est[i]) / std::max(1.0, std::abs(base.est[i])));
    }
  }
  return {exact_ok && sketch_ok && worst <= 1e-6,
          fmt("exact identical: %s, sketches identical: %s, max estimator rel. diff %.3g", exact_ok ? "yes" : "no",
              sketch_ok ? "yes" : "no", worst)};
}

// ---------------------------------------------------------------------------

Outcome budget_compliance() {
  bench::RunConfig cfg;
  cfg.graphs.push_back({"kron10", "", bench::KroneckerSpec{10, 16, 2}});
  cfg.problems = {bench::Problem::Tc, bench::Problem::TcEstimate, bench::Problem::LinkPrediction};
  cfg.estimators = {"bf_and", "bf_l", "bf_or", "khash", "onehash", "kmv", "doulion"};
  cfg.budgets = {0.01, 0.05, 0.15, 0.25, 0.5, 1.0};
  cfg.bloom_hashes = {1, 2, 4};
  cfg.repetitions = 1;
  cfg.warmup_fraction = 0;
  cfg.bootstrap_resamples = 0;
  const auto records = bench::run_benchmark(cfg);
  std::size_t checked = 0, violations = 0, skipped = 0;
  const CsrGraph g = bench::load_source(cfg.graphs[0]);
  for (const auto& r : records) {
    if (r.status != "ok") {
      ++skipped;
      continue;
    }
    if (r.rep == 0) continue;
    ++checked;
    violations += r.extra_fraction > r.s;
    // Planned bits against the budget, both exact integers scaled by s.
    const CsrGraph& base = r.problem == "linkpred" ? bench::detail::ProblemContext(bench::Problem::LinkPrediction, g, cfg).sparse : g;
    if (r.estimator != "doulion") {
      const auto kind = required_sketch(*parse_estimator_kind(r.estimator));
      const auto plan = plan_budget(base, kind, r.s, kind == SketchKind::Bloom ? static_cast<std::uint32_t>(r.param) : 2);
      violations += static_cast<double>(plan.total_extra_bits) > r.s * static_cast<double>(base.footprint_words() * kWordBits);
      violations += r.extra_bytes * 8 > plan.total_extra_bits;
    }
  }
  return {violations == 0 && checked > 0,
          fmt("%zu approximate records checked, %zu violations, %zu infeasible/unsupported cells skipped", checked,
              violations, skipped)};
}

// ---------------------------------------------------------------------------

Outcome consistency_trend() {
  const CsrGraph& g = accuracy_graph();
  std::vector<double> errs;
  std::string detail;
  for (double s : {0.05, 0.15, 0.25, 0.5}) {
    errs.push_back(bf_tc_median_error(g, s, 2));
    detail += fmt("%ss=%.2f: %.4f", detail.empty() ? "" : ", ", s, errs.back());
  }
  int inversions = 0;
  for (std::size_t i = 1; i < errs.size(); ++i) inversions += errs[i] > errs[i - 1];
  return {inversions <= 1, fmt("%d inversions (%s)", inversions, detail.c_str())};
}

}  // namespace

int main(int argc, char** argv) {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {1, "exact algorithms match brute force", exact_oracle},
      {2, "1-Hash exact recovery at k >= max degree", exact_recovery},
      {3, "MinHash Jaccard estimate is unbiased", jaccard_unbiased},
      {4, "MinHash deviation tail bound holds", minhash_tail},
      {5, "Bloom AND estimator MSE within 2x bound", bloom_mse},
      {6, "BF_AND triangle count error <= 0.25", desk_accuracy},
      {7, "BF_AND triangle count speedup >= 2x, construction <= exact", desk_performance},
      {8, "thread-count determinism", thread_determinism},
      {9, "benchmark records stay within budget", budget_compliance},
      {10, "error non-increasing in budget", consistency_trend},
  };
  std::vector<int> only;
  for (int i = 1; i < argc; ++i) only.push_back(std::atoi(argv[i]));
  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("[%s] criterion %d: %s -- %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria failed\n", failed, ran);
  return failed == 0 ? 0 : 1;
}
