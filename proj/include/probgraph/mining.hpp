#pragma once

// Graph mining kernels written against an intersection provider, so the same
// loop runs with exact set intersection or with any sketch estimator.
//
// A provider P exposes
//   P::value_type                     accumulator type (integral when exact)
//   P::enumerable                     whether for_each_common is available
//   p(u, v)                           |S_u ∩ S_v| or its estimate
//   p.with_set(w, set)                |S_w ∩ set| for an arbitrary sorted set
//   p.set_size(v)                     exact |S_v|
//   p.for_each_common(u, v, f)        (enumerable providers only)
// where S_v is whatever family the provider was bound to (N_v or N+_v).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "probgraph/error.hpp"
#include "probgraph/estimators.hpp"
#include "probgraph/graph.hpp"
#include "probgraph/parallel.hpp"
#include "probgraph/setops.hpp"
#include "probgraph/sketch.hpp"

namespace probgraph {

// ---------------------------------------------------------------------------
// Providers

template <NeighborhoodSource G>
class ExactProvider {
 public:
  using value_type = std::uint64_t;
  static constexpr bool enumerable = true;

  explicit ExactProvider(const G& src, SetOpStrategy strategy = SetOpStrategy::Merge)
      : src_(&src), strategy_(strategy) {}

  value_type operator()(vertex_t u, vertex_t v) const noexcept {
    return count(src_->neighbors(u), src_->neighbors(v));
  }

  value_type with_set(vertex_t w, std::span<const vertex_t> set) const noexcept {
    return count(src_->neighbors(w), set);
  }

  std::size_t set_size(vertex_t v) const noexcept { return src_->degree(v); }

  template <class F>
  void for_each_common(vertex_t u, vertex_t v, F&& f) const {
    probgraph::for_each_common(src_->neighbors(u), src_->neighbors(v), f);
  }

  EstimatorKind kind() const noexcept {
    return strategy_ == SetOpStrategy::Merge ? EstimatorKind::ExactMerge : EstimatorKind::ExactGallop;
  }

 private:
  value_type count(std::span<const vertex_t> a, std::span<const vertex_t> b) const noexcept {
    return strategy_ == SetOpStrategy::Merge ? intersect_merge(a, b) : intersect_gallop(a, b);
  }

  const G* src_;
  SetOpStrategy strategy_;
};

template <EstimatorKind K>
class SketchProvider {
 public:
  using value_type = double;
  static constexpr bool enumerable = K == EstimatorKind::KHash || K == EstimatorKind::OneHash;

  explicit SketchProvider(const SketchedGraph& sg) : sg_(&sg) {
    if (sg.kind() != required_sketch(K)) {
      throw ContractViolation(std::string("estimator ") + std::string(to_string(K)) +
                              " cannot read " + std::string(to_string(sg.kind())) + " sketches");
    }
  }

  double operator()(vertex_t u, vertex_t v) const {
    const SketchedGraph& sg = *sg_;
    if constexpr (K == EstimatorKind::BfAnd || K == EstimatorKind::BfLimit) {
      const std::size_t words = sg.plan().words_per_vertex();
      const auto ones = and_popcount(sg.bloom_words(u), sg.bloom_words(v), words);
      if constexpr (K == EstimatorKind::BfAnd) {
        return swamidass(sg.plan().bloom_bits, ones, sg.plan().hashes);
      } else {
        return static_cast<double>(ones) / sg.plan().hashes;
      }
    } else if constexpr (K == EstimatorKind::BfOr) {
      return est_intersection_bf_or(sg.bloom(u), sg.bloom(v), sg.set_size(u), sg.set_size(v));
    } else if constexpr (K == EstimatorKind::KHash) {
      return est_intersection_minhash(sg.khash(u), sg.khash(v), sg.set_size(u), sg.set_size(v));
    } else if constexpr (K == EstimatorKind::OneHash) {
      return est_intersection_minhash(sg.onehash(u), sg.onehash(v), sg.set_size(u), sg.set_size(v));
    } else {
      return est_intersection_kmv(sg.kmv(u), sg.kmv(v), sg.set_size(u), sg.set_size(v));
    }
  }

  // Sketches `set` on the fly with the graph's parameters, then estimates.
  double with_set(vertex_t w, std::span<const vertex_t> set) const {
    const SketchedGraph& sg = *sg_;
    const BudgetPlan& plan = sg.plan();
    if constexpr (K == EstimatorKind::BfAnd || K == EstimatorKind::BfLimit ||
                  K == EstimatorKind::BfOr) {
      thread_local std::vector<std::uint64_t> words;
      words.assign(plan.words_per_vertex(), 0);
      bloom_fill(set, sg.family(), plan.hashes, words);
      const BloomView other{words, plan.hashes, sg.seed()};
      if constexpr (K == EstimatorKind::BfAnd) return est_intersection_bf_and(sg.bloom(w), other);
      if constexpr (K == EstimatorKind::BfLimit) return est_intersection_bf_limit(sg.bloom(w), other);
      if constexpr (K == EstimatorKind::BfOr)
        return est_intersection_bf_or(sg.bloom(w), other, sg.set_size(w), set.size());
    } else if constexpr (K == EstimatorKind::KHash) {
      thread_local std::vector<vertex_t> entries;
      entries.assign(set.empty() ? 0 : plan.k, 0);
      khash_fill(set, sg.family(), entries);
      return est_intersection_minhash(sg.khash(w), KHashView{entries, sg.seed()}, sg.set_size(w),
                                      set.size());
    } else if constexpr (K == EstimatorKind::OneHash) {
      thread_local std::vector<vertex_t> entries;
      thread_local std::vector<std::pair<std::uint64_t, vertex_t>> scratch;
      entries.resize(std::min<std::size_t>(plan.k, set.size()));
      onehash_fill(set, sg.family()[0], plan.k, scratch, entries);
      const OneHashView other{entries, plan.k, set.size() <= plan.k, sg.family()[0]};
      return est_intersection_minhash(sg.onehash(w), other, sg.set_size(w), set.size());
    } else {
      thread_local std::vector<double> values;
      thread_local std::vector<double> scratch;
      values.resize(std::min<std::size_t>(plan.k, set.size()));
      values.resize(kmv_fill(set, sg.family()[0], plan.k, scratch, values));
      const KmvView other{values, plan.k, set.size() <= plan.k, sg.seed()};
      return est_intersection_kmv(sg.kmv(w), other, sg.set_size(w), set.size());
    }
  }

  std::size_t set_size(vertex_t v) const noexcept { return sg_->set_size(v); }

  // Elements retained in both sketches.
  template <class F>
    requires enumerable
  void for_each_common(vertex_t u, vertex_t v, F&& f) const {
    if constexpr (K == EstimatorKind::KHash) {
      thread_local std::vector<vertex_t> hits;
      hits.clear();
      const auto a = sg_->khash(u).entries, b = sg_->khash(v).entries;
      if (a.size() == b.size()) {
        for (std::size_t i = 0; i < a.size(); ++i)
          if (a[i] == b[i]) hits.push_back(a[i]);
      }
      std::sort(hits.begin(), hits.end());
      hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
      for (vertex_t x : hits) f(x);
    } else {
      const auto a = sg_->onehash(u), b = sg_->onehash(v);
      const HashFunction h = a.fn;
      std::size_t i = 0, j = 0;
      while (i < a.entries.size() && j < b.entries.size()) {
        const std::pair ka{h.word(a.entries[i]), a.entries[i]};
        const std::pair kb{h.word(b.entries[j]), b.entries[j]};
        if (ka < kb) {
          ++i;
        } else if (kb < ka) {
          ++j;
        } else {
          f(a.entries[i]);
          ++i;
          ++j;
        }
      }
    }
  }

  static constexpr EstimatorKind kind() noexcept { return K; }

 private:
  const SketchedGraph* sg_;
};

// Runs f(provider) with the provider matching `kind`. Exact kinds bind to
// `src`; sketch kinds bind to `*sg`, which must have been built over the same
// neighborhood family.
template <NeighborhoodSource G, class F>
decltype(auto) with_provider(EstimatorKind kind, const G& src, const SketchedGraph* sg, F&& f) {
  auto need = [&]() -> const SketchedGraph& {
    if (sg == nullptr) {
      throw ContractViolation(std::string("estimator ") + std::string(to_string(kind)) +
                              " needs a sketched graph");
    }
    return *sg;
  };
  switch (kind) {
    case EstimatorKind::ExactMerge: return f(ExactProvider<G>(src, SetOpStrategy::Merge));
    case EstimatorKind::ExactGallop: return f(ExactProvider<G>(src, SetOpStrategy::Gallop));
    case EstimatorKind::BfAnd: return f(SketchProvider<EstimatorKind::BfAnd>(need()));
    case EstimatorKind::BfLimit: return f(SketchProvider<EstimatorKind::BfLimit>(need()));
    case EstimatorKind::BfOr: return f(SketchProvider<EstimatorKind::BfOr>(need()));
    case EstimatorKind::KHash: return f(SketchProvider<EstimatorKind::KHash>(need()));
    case EstimatorKind::OneHash: return f(SketchProvider<EstimatorKind::OneHash>(need()));
    case EstimatorKind::Kmv: return f(SketchProvider<EstimatorKind::Kmv>(need()));
  }
  throw ContractViolation("unknown estimator kind");
}

// ---------------------------------------------------------------------------
// Triangle counting

// Node iterator over the degree-ordered view: sum over v, u in N+_v of
// p(v, u). With an exact provider over N+ this is the exact triangle count.
template <class P>
double triangle_count(const DirectedView& view, const P& p, int threads = 0) {
  using T = typename P::value_type;
  const auto n = static_cast<std::int64_t>(view.num_vertices());
  const int nt = resolve_threads(threads);
  (void)nt;
  T sum{};
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64) reduction(+ : sum)
  for (std::int64_t iv = 0; iv < n; ++iv) {
    const auto v = static_cast<vertex_t>(iv);
    for (vertex_t u : view.neighbors(v)) sum += p(v, u);
  }
  return static_cast<double>(sum);
}

// One third of the per-edge intersection estimates over full neighborhoods.
template <class P>
double tc_estimate(const CsrGraph& g, const P& p, int threads = 0) {
  using T = typename P::value_type;
  const auto n = static_cast<std::int64_t>(g.num_vertices());
  const int nt = resolve_threads(threads);
  (void)nt;
  T sum{};
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64) reduction(+ : sum)
  for (std::int64_t iv = 0; iv < n; ++iv) {
    const auto v = static_cast<vertex_t>(iv);
    for (vertex_t u : g.neighbors(v)) {
      if (v < u) sum += p(v, u);
    }
  }
  return static_cast<double>(sum) / 3.0;
}

// For each arc (u, v) of the view, C3 = N+_u ∩ N+_v is materialized exactly
// and p(N+_w, C3) is added for every w in C3.
template <class P>
double four_clique_count(const DirectedView& view, const P& p, int threads = 0) {
  using T = typename P::value_type;
  const auto n = static_cast<std::int64_t>(view.num_vertices());
  const int nt = resolve_threads(threads);
  (void)nt;
  T sum{};
#pragma omp parallel num_threads(nt) reduction(+ : sum)
  {
    std::vector<vertex_t> c3;
#pragma omp for schedule(dynamic, 16)
    for (std::int64_t iu = 0; iu < n; ++iu) {
      const auto u = static_cast<vertex_t>(iu);
      const auto nu = view.neighbors(u);
      for (vertex_t v : nu) {
        intersect_into(nu, view.neighbors(v), c3);
        for (vertex_t w : c3) sum += p.with_set(w, c3);
      }
    }
  }
  return static_cast<double>(sum);
}

// ---------------------------------------------------------------------------
// Vertex similarity

enum class SimilarityMeasure {
  Jaccard,
  Overlap,
  CommonNeighbors,
  TotalNeighbors,
  AdamicAdar,
  ResourceAllocation,
};

inline std::string_view to_string(SimilarityMeasure m) {
  switch (m) {
    case SimilarityMeasure::Jaccard: return "jaccard";
    case SimilarityMeasure::Overlap: return "overlap";
    case SimilarityMeasure::CommonNeighbors: return "common";
    case SimilarityMeasure::TotalNeighbors: return "total";
    case SimilarityMeasure::AdamicAdar: return "adamic_adar";
    case SimilarityMeasure::ResourceAllocation: return "resource_allocation";
  }
  return "?";
}

inline SimilarityMeasure parse_similarity(std::string_view s) {
  for (auto m : {SimilarityMeasure::Jaccard, SimilarityMeasure::Overlap,
                 SimilarityMeasure::CommonNeighbors, SimilarityMeasure::TotalNeighbors,
                 SimilarityMeasure::AdamicAdar, SimilarityMeasure::ResourceAllocation}) {
    if (to_string(m) == s) return m;
  }
  throw ContractViolation("unknown similarity measure '" + std::string(s) + "'");
}

// Counting measures use p(u, v) and exact degrees. Adamic-Adar and resource
// allocation sum over common members, which only exact and MinHash providers
// can list; a degree-1 member contributes 0 to Adamic-Adar (1 / ln 1 guard).
template <class P>
double vertex_similarity(vertex_t u, vertex_t v, SimilarityMeasure measure, const P& p,
                         const CsrGraph& g) {
  if (u == v) throw ContractViolation("vertex_similarity needs two distinct vertices");
  const double du = static_cast<double>(p.set_size(u));
  const double dv = static_cast<double>(p.set_size(v));
  switch (measure) {
    case SimilarityMeasure::Jaccard: {
      const double inter = static_cast<double>(p(u, v));
      const double uni = du + dv - inter;
      return uni > 0 ? inter / uni : 0.0;
    }
    case SimilarityMeasure::Overlap: {
      const double lo = std::min(du, dv);
      return lo > 0 ? static_cast<double>(p(u, v)) / lo : 0.0;
    }
    case SimilarityMeasure::CommonNeighbors: return static_cast<double>(p(u, v));
    case SimilarityMeasure::TotalNeighbors: return du + dv - static_cast<double>(p(u, v));
    case SimilarityMeasure::AdamicAdar:
    case SimilarityMeasure::ResourceAllocation:
      if constexpr (P::enumerable) {
        double s = 0.0;
        p.for_each_common(u, v, [&](vertex_t w) {
          const double dw = static_cast<double>(g.degree(w));
          if (measure == SimilarityMeasure::ResourceAllocation) {
            s += 1.0 / dw;
          } else if (dw > 1) {
            s += 1.0 / std::log(dw);
          }
        });
        return s;
      } else {
        throw UnsupportedCombination(std::string(to_string(measure)) +
                                     " needs an enumerable provider (exact or MinHash)");
      }
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// Jarvis-Patrick clustering

struct Clustering {
  std::vector<Edge> kept;     // edges with p(u, v) > tau, lexicographic
  std::size_t clusters = 0;   // components of (V, kept) with >= 2 vertices
  std::size_t singletons = 0; // vertices untouched by kept edges
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

template <class P>
Clustering jarvis_patrick_cluster(const CsrGraph& g, const P& p, double tau, int threads = 0) {
  if (tau < 0) throw ContractViolation("tau must be non-negative");
  const auto n = static_cast<std::int64_t>(g.num_vertices());
  const auto offsets = g.offsets();
  std::vector<std::uint8_t> keep(g.adjacency().size(), 0);
  const int nt = resolve_threads(threads);
  (void)nt;
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64)
  for (std::int64_t iv = 0; iv < n; ++iv) {
    const auto v = static_cast<vertex_t>(iv);
    const auto nv = g.neighbors(v);
    for (std::size_t i = 0; i < nv.size(); ++i) {
      if (v < nv[i] && static_cast<double>(p(v, nv[i])) > tau) keep[offsets[v] + i] = 1;
    }
  }

  Clustering out;
  detail::DisjointSets sets(g.num_vertices());
  std::vector<std::uint8_t> touched(g.num_vertices(), 0);
  for (std::int64_t iv = 0; iv < n; ++iv) {
    const auto v = static_cast<vertex_t>(iv);
    const auto nv = g.neighbors(v);
    for (std::size_t i = 0; i < nv.size(); ++i) {
      if (keep[offsets[v] + i]) {
        out.kept.push_back({v, nv[i]});
        sets.unite(v, nv[i]);
        touched[v] = touched[nv[i]] = 1;
      }
    }
  }
  for (std::int64_t v = 0; v < n; ++v) {
    if (!touched[v]) {
      ++out.singletons;
    } else if (sets.find(static_cast<std::size_t>(v)) == static_cast<std::size_t>(v)) {
      ++out.clusters;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Link prediction

struct LinkPredSplit {
  std::vector<Edge> sparse;  // E_sparse, sorted
  std::vector<Edge> random;  // E_rndm, sorted; disjoint from sparse
  double remove_fraction = 0.0;
  std::uint64_t seed = 0;
};

// Moves round(fraction * m) uniformly chosen edges into E_rndm.
inline LinkPredSplit make_link_split(const CsrGraph& g, double remove_fraction, std::uint64_t seed) {
  if (remove_fraction < 0 || remove_fraction > 1) {
    throw ContractViolation("remove_fraction must be in [0, 1]");
  }
  LinkPredSplit split;
  split.remove_fraction = remove_fraction;
  split.seed = seed;
  std::vector<Edge> edges = g.edges();
  std::mt19937_64 rng(seed);
  const auto removed = static_cast<std::size_t>(std::llround(remove_fraction * static_cast<double>(edges.size())));
  // Partial Fisher-Yates with our own index draw so results do not depend on
  // the standard library's distribution implementation.
  for (std::size_t i = 0; i < removed; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(detail::uniform01(rng) * static_cast<double>(edges.size() - i));
    std::swap(edges[i], edges[std::min(j, edges.size() - 1)]);
  }
  split.random.assign(edges.begin(), edges.begin() + static_cast<std::ptrdiff_t>(removed));
  split.sparse.assign(edges.begin() + static_cast<std::ptrdiff_t>(removed), edges.end());
  std::sort(split.random.begin(), split.random.end());
  std::sort(split.sparse.begin(), split.sparse.end());
  return split;
}

inline CsrGraph sparse_graph(std::size_t n, const LinkPredSplit& split) {
  return CsrGraph::from_edges(n, split.sparse);
}

struct ScoredPair {
  double score;
  vertex_t u;
  vertex_t v;
};

// All non-adjacent pairs (u < v) at distance two in `g`, scored.
template <class P>
std::vector<ScoredPair> score_two_hop_pairs(const CsrGraph& g, SimilarityMeasure measure,
                                            const P& p, int threads = 0) {
  if constexpr (!P::enumerable) {
    // Fail before the parallel region; exceptions must not escape it.
    if (measure == SimilarityMeasure::AdamicAdar || measure == SimilarityMeasure::ResourceAllocation) {
      throw UnsupportedCombination(std::string(to_string(measure)) +
                                   " needs an enumerable provider (exact or MinHash)");
    }
  }
  const auto n = static_cast<std::int64_t>(g.num_vertices());
  const int nt = resolve_threads(threads);
  (void)nt;
  std::vector<std::vector<ScoredPair>> per_vertex(g.num_vertices());
#pragma omp parallel num_threads(nt)
  {
    std::vector<std::int64_t> stamp(g.num_vertices(), -1);
#pragma omp for schedule(dynamic, 32)
    for (std::int64_t iu = 0; iu < n; ++iu) {
      const auto u = static_cast<vertex_t>(iu);
      stamp[u] = iu;
      for (vertex_t x : g.neighbors(u)) stamp[x] = iu;
      auto& out = per_vertex[u];
      for (vertex_t w : g.neighbors(u)) {
        for (vertex_t v : g.neighbors(w)) {
          if (v <= u || stamp[v] == iu) continue;
          stamp[v] = iu;
          out.push_back({vertex_similarity(u, v, measure, p, g), u, v});
        }
      }
    }
  }
  std::vector<ScoredPair> all;
  for (auto& part : per_vertex) all.insert(all.end(), part.begin(), part.end());
  return all;
}

// Scores the two-hop candidates of E_sparse, keeps the `top` best (ties by
// lexicographic pair) and returns how many of them are in E_rndm. The
// provider must be bound to `sparse`.
template <class P>
std::size_t link_prediction_eval(const CsrGraph& sparse, const LinkPredSplit& split,
                                 SimilarityMeasure measure, const P& p, std::size_t top,
                                 int threads = 0) {
  if (top == 0 || split.random.empty()) return 0;
  auto scored = score_two_hop_pairs(sparse, measure, p, threads);
  if (top > scored.size()) {
    throw ContractViolation("top-count " + std::to_string(top) + " exceeds the " +
                            std::to_string(scored.size()) + " candidate pairs");
  }
  auto better = [](const ScoredPair& a, const ScoredPair& b) {
    if (a.score != b.score) return a.score > b.score;
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  };
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(top), scored.end(), better);
  std::size_t ef = 0;
  for (std::size_t i = 0; i < top; ++i) {
    ef += std::binary_search(split.random.begin(), split.random.end(), Edge{scored[i].u, scored[i].v});
  }
  return ef;
}

// ---------------------------------------------------------------------------
// Sampling baselines

namespace detail {

inline bool edge_coin(HashFunction h, vertex_t a, vertex_t b, double p) noexcept {
  const Edge e = canonical(a, b);
  return h.unit((std::uint64_t{e.u} << 32) | e.v) <= p;
}

}  // namespace detail

// Keeps each edge independently with probability keep_prob (a seeded hash
// coin per edge), counts triangles exactly on the kept edges and rescales by
// 1 / keep_prob^3.
inline double doulion_tc(const DirectedView& view, double keep_prob, std::uint64_t seed,
                         int threads = 0) {
  if (!(keep_prob > 0.0) || keep_prob > 1.0) throw ContractViolation("keep_prob must be in (0, 1]");
  const HashFunction coin(derive_seed(seed, 0));
  const auto n = static_cast<std::int64_t>(view.num_vertices());
  const int nt = resolve_threads(threads);
  (void)nt;
  std::uint64_t kept = 0;
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64) reduction(+ : kept)
  for (std::int64_t iv = 0; iv < n; ++iv) {
    const auto v = static_cast<vertex_t>(iv);
    const auto nv = view.neighbors(v);
    for (vertex_t u : nv) {
      if (!detail::edge_coin(coin, v, u, keep_prob)) continue;
      for_each_common(nv, view.neighbors(u), [&](vertex_t w) {
        if (detail::edge_coin(coin, v, w, keep_prob) && detail::edge_coin(coin, u, w, keep_prob)) ++kept;
      });
    }
  }
  return static_cast<double>(kept) / (keep_prob * keep_prob * keep_prob);
}

inline double doulion_tc(const CsrGraph& g, double keep_prob, std::uint64_t seed, int threads = 0) {
  return doulion_tc(DirectedView(g), keep_prob, seed, threads);
}

// Runs the node-iterator outer loop only over vertices sampled independently
// with probability `fraction`, then rescales by 1 / fraction.
inline double reduced_execution_tc(const DirectedView& view, double fraction, std::uint64_t seed,
                                   int threads = 0) {
  if (!(fraction > 0.0) || fraction > 1.0) {
    throw ContractViolation("reduced execution needs a sample fraction in (0, 1]");
  }
  const HashFunction coin(derive_seed(seed, 1));
  const auto n = static_cast<std::int64_t>(view.num_vertices());
  const int nt = resolve_threads(threads);
  (void)nt;
  std::uint64_t sum = 0;
#pragma omp parallel for num_threads(nt) schedule(dynamic, 64) reduction(+ : sum)
  for (std::int64_t iv = 0; iv < n; ++iv) {
    const auto v = static_cast<vertex_t>(iv);
    if (coin.unit(v) > fraction) continue;
    const auto nv = view.neighbors(v);
    for (vertex_t u : nv) sum += intersect_merge(nv, view.neighbors(u));
  }
  return static_cast<double>(sum) / fraction;
}

}  // namespace probgraph
