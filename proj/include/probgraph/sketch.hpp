#pragma once

// Neighborhood sketches (Bloom filter, k-Hash, 1-Hash, KMV), the storage
// budget planner that sizes them, and SketchedGraph, which holds one sketch
// per vertex in flat arrays.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "probgraph/error.hpp"
#include "probgraph/graph.hpp"
#include "probgraph/hashing.hpp"
#include "probgraph/parallel.hpp"

namespace probgraph {

enum class SketchKind : std::uint32_t { Bloom = 0, KHash = 1, OneHash = 2, Kmv = 3 };

inline std::string_view to_string(SketchKind k) {
  switch (k) {
    case SketchKind::Bloom: return "bf";
    case SketchKind::KHash: return "khash";
    case SketchKind::OneHash: return "onehash";
    case SketchKind::Kmv: return "kmv";
  }
  return "?";
}

inline SketchKind parse_sketch_kind(std::string_view s) {
  if (s == "bf" || s == "bloom") return SketchKind::Bloom;
  if (s == "khash") return SketchKind::KHash;
  if (s == "onehash" || s == "1hash") return SketchKind::OneHash;
  if (s == "kmv") return SketchKind::Kmv;
  throw ContractViolation("unknown sketch kind '" + std::string(s) + "'");
}

// Anything exposing sorted per-vertex id lists over CSR offsets: CsrGraph
// (full neighborhoods N_v) and DirectedView (N+_v).
template <class G>
concept NeighborhoodSource = requires(const G& g, vertex_t v) {
  { g.num_vertices() } -> std::convertible_to<std::size_t>;
  { g.degree(v) } -> std::convertible_to<std::size_t>;
  { g.neighbors(v) } -> std::convertible_to<std::span<const vertex_t>>;
  { g.offsets() } -> std::convertible_to<std::span<const std::uint64_t>>;
  { g.footprint_words() } -> std::convertible_to<std::uint64_t>;
};

// ---------------------------------------------------------------------------
// Budget planning

struct BudgetPlan {
  SketchKind kind = SketchKind::Bloom;
  double s = 0.0;
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  std::uint64_t bloom_bits = 0;  // B_X, Bloom only
  std::uint32_t hashes = 1;      // b, Bloom only
  std::uint32_t k = 0;           // MinHash / KMV capacity
  std::uint64_t total_extra_bits = 0;
  double budget_bits = 0.0;  // s * (n + 2m) * W

  bool feasible() const noexcept {
    return static_cast<double>(total_extra_bits) <= budget_bits;
  }

  std::uint64_t words_per_vertex() const noexcept {
    return kind == SketchKind::Bloom ? bloom_bits / kWordBits : k;
  }

  // B_X for Bloom filters, k otherwise.
  std::uint64_t size_parameter() const noexcept {
    return kind == SketchKind::Bloom ? bloom_bits : k;
  }

  // Number of hash functions the sketch family needs.
  std::size_t family_size() const noexcept {
    switch (kind) {
      case SketchKind::Bloom: return hashes;
      case SketchKind::KHash: return k;
      default: return 1;
    }
  }
};

// Uniform per-vertex sizing under the budget s * (n + 2m) * W bits:
//   Bloom:       B_X = largest multiple of W with n * B_X <= budget, at least W
//   MinHash/KMV: k = max(1, floor(s * 2m / n)) one-word entries
// The floors can push a plan over budget on tiny s; check feasible().
inline BudgetPlan plan_budget(std::uint64_t n, std::uint64_t m, SketchKind kind, double s,
                              std::uint32_t b = 2) {
  if (!(s > 0.0) || s > 1.0) throw BudgetError("storage budget s must be in (0, 1]");
  if (kind == SketchKind::Bloom && b == 0) throw ContractViolation("Bloom filter needs b >= 1");
  BudgetPlan p;
  p.kind = kind;
  p.s = s;
  p.n = n;
  p.m = m;
  p.hashes = kind == SketchKind::Bloom ? b : 1;
  p.budget_bits = s * static_cast<double>(n + 2 * m) * static_cast<double>(kWordBits);
  if (kind == SketchKind::Bloom) {
    std::uint64_t words = 1;
    if (n > 0) {
      words = static_cast<std::uint64_t>(std::floor(p.budget_bits / static_cast<double>(n * kWordBits)));
      while (words > 1 && static_cast<double>(n * words * kWordBits) > p.budget_bits) --words;
      words = std::max<std::uint64_t>(words, 1);
    }
    p.bloom_bits = words * kWordBits;
    p.total_extra_bits = n * p.bloom_bits;
  } else {
    std::uint64_t k = 1;
    if (n > 0) {
      k = static_cast<std::uint64_t>(std::floor(s * static_cast<double>(2 * m) / static_cast<double>(n)));
      k = std::max<std::uint64_t>(k, 1);
    }
    p.k = static_cast<std::uint32_t>(std::min<std::uint64_t>(k, std::numeric_limits<std::uint32_t>::max()));
    p.total_extra_bits = n * p.k * kWordBits;
  }
  return p;
}

template <NeighborhoodSource G>
BudgetPlan plan_budget(const G& g, SketchKind kind, double s, std::uint32_t b = 2) {
  const std::uint64_t n = g.num_vertices();
  return plan_budget(n, (g.footprint_words() - n) / 2, kind, s, b);
}

// Plan with an explicit size (B_X bits for Bloom, k otherwise); s is reported
// as the implied fraction of the CSR footprint.
inline BudgetPlan fixed_plan(std::uint64_t n, std::uint64_t m, SketchKind kind, std::uint64_t size,
                             std::uint32_t b = 1) {
  BudgetPlan p;
  p.kind = kind;
  p.n = n;
  p.m = m;
  if (kind == SketchKind::Bloom) {
    if (size < kWordBits || size % kWordBits != 0) {
      throw ContractViolation("Bloom filter size must be a positive multiple of 64 bits");
    }
    if (b == 0) throw ContractViolation("Bloom filter needs b >= 1");
    p.bloom_bits = size;
    p.hashes = b;
    p.total_extra_bits = n * size;
  } else {
    if (size == 0 || size > std::numeric_limits<std::uint32_t>::max()) {
      throw ContractViolation("sketch capacity k must be in [1, 2^32)");
    }
    p.k = static_cast<std::uint32_t>(size);
    p.total_extra_bits = n * size * kWordBits;
  }
  const double footprint = static_cast<double>(n + 2 * m) * static_cast<double>(kWordBits);
  p.budget_bits = static_cast<double>(p.total_extra_bits);
  p.s = footprint > 0 ? p.budget_bits / footprint : 0.0;
  return p;
}

template <NeighborhoodSource G>
BudgetPlan fixed_plan(const G& g, SketchKind kind, std::uint64_t size, std::uint32_t b = 1) {
  const std::uint64_t n = g.num_vertices();
  return fixed_plan(n, (g.footprint_words() - n) / 2, kind, size, b);
}

// ---------------------------------------------------------------------------
// Views. Estimators consume these; owning sketches and SketchedGraph both
// produce them.

struct BloomView {
  std::span<const std::uint64_t> words;
  std::uint32_t b = 1;
  std::uint64_t family_seed = 0;

  std::uint64_t bits() const noexcept { return words.size() * kWordBits; }
  std::uint64_t ones() const noexcept {
    std::uint64_t c = 0;
    for (auto w : words) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
};

// Entry i is argmin over the set of h_i (ties: smaller id). Empty iff the set is.
struct KHashView {
  std::span<const vertex_t> entries;
  std::uint64_t family_seed = 0;
};

// Up to k distinct ids with the smallest h values, in (h, id) order.
// `complete` means the whole set fits, i.e. entries are the set itself.
struct OneHashView {
  std::span<const vertex_t> entries;
  std::uint32_t k = 0;
  bool complete = true;
  HashFunction fn;
};

// Up to k smallest distinct unit-interval hashes, strictly increasing.
struct KmvView {
  std::span<const double> values;
  std::uint32_t k = 0;
  bool complete = true;
  std::uint64_t family_seed = 0;
};

// ---------------------------------------------------------------------------
// Fill kernels: write one sketch into caller-provided storage.

inline void bloom_fill(std::span<const vertex_t> neigh, const HashFamily& fam,
                       std::uint32_t b, std::span<std::uint64_t> words) {
  std::fill(words.begin(), words.end(), 0);
  const std::uint64_t bits = words.size() * kWordBits;
  for (vertex_t x : neigh) {
    for (std::uint32_t i = 0; i < b; ++i) {
      const std::uint64_t pos = fam[i].bit(x, bits);
      words[pos / kWordBits] |= std::uint64_t{1} << (pos % kWordBits);
    }
  }
}

inline void khash_fill(std::span<const vertex_t> neigh, const HashFamily& fam,
                       std::span<vertex_t> out) {
  if (neigh.empty()) return;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const HashFunction& h = fam[i];
    vertex_t best = neigh[0];
    std::uint64_t best_h = h.word(best);
    for (std::size_t j = 1; j < neigh.size(); ++j) {
      const std::uint64_t hv = h.word(neigh[j]);
      if (hv < best_h || (hv == best_h && neigh[j] < best)) {
        best_h = hv;
        best = neigh[j];
      }
    }
    out[i] = best;
  }
}

// Returns the number of entries written (min(k, |neigh|)).
inline std::size_t onehash_fill(std::span<const vertex_t> neigh, HashFunction h, std::uint32_t k,
                                std::vector<std::pair<std::uint64_t, vertex_t>>& scratch,
                                std::span<vertex_t> out) {
  scratch.clear();
  for (vertex_t x : neigh) scratch.emplace_back(h.word(x), x);
  const std::size_t len = std::min<std::size_t>(k, scratch.size());
  std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(len),
                    scratch.end());
  for (std::size_t i = 0; i < len; ++i) out[i] = scratch[i].second;
  return len;
}

// Returns the number of distinct values written (<= min(k, |neigh|)).
inline std::size_t kmv_fill(std::span<const vertex_t> neigh, HashFunction h, std::uint32_t k,
                            std::vector<double>& scratch, std::span<double> out) {
  scratch.clear();
  for (vertex_t x : neigh) scratch.push_back(h.unit(x));
  const std::size_t take = std::min<std::size_t>(k, scratch.size());
  std::partial_sort(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(take),
                    scratch.end());
  auto prefix_end = std::unique(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(take));
  if (prefix_end != scratch.begin() + static_cast<std::ptrdiff_t>(take)) {
    // 53-bit collision inside the prefix: fall back to a full sort.
    std::sort(scratch.begin(), scratch.end());
    scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
    prefix_end = scratch.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(k, scratch.size()));
  }
  const auto len = static_cast<std::size_t>(prefix_end - scratch.begin());
  std::copy(scratch.begin(), prefix_end, out.begin());
  return len;
}

// ---------------------------------------------------------------------------
// Owning single-set sketches.

struct BloomSketch {
  std::vector<std::uint64_t> words;
  std::uint32_t b = 1;
  std::uint64_t ones = 0;
  std::uint64_t family_seed = 0;

  std::uint64_t bits() const noexcept { return words.size() * kWordBits; }

  // True when all b positions of `key` are set (no false negatives).
  bool contains(vertex_t key, const HashFamily& fam) const {
    for (std::uint32_t i = 0; i < b; ++i) {
      const std::uint64_t pos = fam.at(i).bit(key, bits());
      if (((words[pos / kWordBits] >> (pos % kWordBits)) & 1U) == 0) return false;
    }
    return true;
  }

  BloomView view() const noexcept { return {words, b, family_seed}; }
  operator BloomView() const noexcept { return view(); }
};

struct KHashSketch {
  std::vector<vertex_t> entries;
  std::uint64_t family_seed = 0;

  KHashView view() const noexcept { return {entries, family_seed}; }
  operator KHashView() const noexcept { return view(); }
};

struct OneHashSketch {
  std::vector<vertex_t> entries;
  std::uint32_t k = 0;
  bool complete = true;
  HashFunction fn;

  OneHashView view() const noexcept { return {entries, k, complete, fn}; }
  operator OneHashView() const noexcept { return view(); }
};

struct KmvSketch {
  std::vector<double> hashes;
  std::uint32_t k = 0;
  bool complete = true;
  std::uint64_t family_seed = 0;

  KmvView view() const noexcept { return {hashes, k, complete, family_seed}; }
  operator KmvView() const noexcept { return view(); }
};

// Bits must be a positive multiple of W; the family supplies b = fam.size()
// functions.
inline BloomSketch build_bloom(std::span<const vertex_t> neigh, std::uint64_t bits,
                               const HashFamily& fam) {
  if (bits < kWordBits || bits % kWordBits != 0) {
    throw ContractViolation("Bloom filter size must be a positive multiple of 64 bits");
  }
  BloomSketch s;
  s.words.assign(bits / kWordBits, 0);
  s.b = static_cast<std::uint32_t>(fam.size());
  s.family_seed = fam.base_seed();
  bloom_fill(neigh, fam, s.b, s.words);
  s.ones = s.view().ones();
  return s;
}

inline BloomSketch build_bloom(std::span<const vertex_t> neigh, const BudgetPlan& plan,
                               const HashFamily& fam) {
  if (plan.kind != SketchKind::Bloom) throw ContractViolation("build_bloom needs a Bloom plan");
  if (fam.size() < plan.hashes) throw ContractViolation("hash family smaller than plan.hashes");
  BloomSketch s;
  s.words.assign(plan.bloom_bits / kWordBits, 0);
  s.b = plan.hashes;
  s.family_seed = fam.base_seed();
  bloom_fill(neigh, fam, s.b, s.words);
  s.ones = s.view().ones();
  return s;
}

// Uses the first k functions of the family.
inline KHashSketch build_khash(std::span<const vertex_t> neigh, std::uint32_t k,
                               const HashFamily& fam) {
  if (k == 0) throw ContractViolation("k must be >= 1");
  if (fam.size() < k) throw ContractViolation("k-Hash needs a family of at least k functions");
  KHashSketch s;
  s.family_seed = fam.base_seed();
  if (!neigh.empty()) {
    s.entries.resize(k);
    khash_fill(neigh, fam, s.entries);
  }
  return s;
}

inline OneHashSketch build_onehash(std::span<const vertex_t> neigh, std::uint32_t k,
                                   const HashFamily& fam) {
  if (k == 0) throw ContractViolation("k must be >= 1");
  OneHashSketch s;
  s.k = k;
  s.fn = fam.at(0);
  s.complete = neigh.size() <= k;
  s.entries.resize(std::min<std::size_t>(k, neigh.size()));
  std::vector<std::pair<std::uint64_t, vertex_t>> scratch;
  onehash_fill(neigh, s.fn, k, scratch, s.entries);
  return s;
}

inline KmvSketch build_kmv(std::span<const vertex_t> neigh, std::uint32_t k,
                           const HashFamily& fam) {
  if (k == 0) throw ContractViolation("k must be >= 1");
  KmvSketch s;
  s.k = k;
  s.family_seed = fam.base_seed();
  s.complete = neigh.size() <= k;
  s.hashes.resize(std::min<std::size_t>(k, neigh.size()));
  std::vector<double> scratch;
  s.hashes.resize(kmv_fill(neigh, fam.at(0), k, scratch, s.hashes));
  return s;
}

// ---------------------------------------------------------------------------
// Serialized sketch dumps.
//
// Little-endian, 8-byte words throughout:
//   "PGSKETCH" magic | version | kind | n | size (B_X or k) | b | seed
//   Bloom:       n * (B_X / 64) words
//   otherwise:   per vertex: length word, then `length` payload words
//                (vertex ids, or IEEE-754 bit patterns for KMV)

inline constexpr std::uint64_t kSketchDumpVersion = 1;
inline constexpr std::array<char, 8> kSketchDumpMagic = {'P', 'G', 'S', 'K', 'E', 'T', 'C', 'H'};

struct SketchDump {
  SketchKind kind = SketchKind::Bloom;
  std::uint64_t n = 0;
  std::uint64_t size = 0;
  std::uint32_t b = 1;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> lengths;  // per vertex, words
  std::vector<std::uint64_t> payload;  // concatenated
};

namespace detail {

inline void put_word(std::ostream& out, std::uint64_t w) {
  std::array<char, 8> buf{};
  for (int i = 0; i < 8; ++i) buf[static_cast<std::size_t>(i)] = static_cast<char>((w >> (8 * i)) & 0xff);
  out.write(buf.data(), 8);
}

inline std::uint64_t get_word(std::istream& in) {
  std::array<unsigned char, 8> buf{};
  if (!in.read(reinterpret_cast<char*>(buf.data()), 8)) throw ParseError("truncated sketch dump", 0);
  std::uint64_t w = 0;
  for (int i = 7; i >= 0; --i) w = (w << 8) | buf[static_cast<std::size_t>(i)];
  return w;
}

}  // namespace detail

inline SketchDump read_sketch_dump(std::istream& in) {
  std::array<char, 8> magic{};
  if (!in.read(magic.data(), 8) || magic != kSketchDumpMagic) {
    throw ParseError("not a sketch dump (bad magic)", 0);
  }
  const std::uint64_t version = detail::get_word(in);
  if (version != kSketchDumpVersion) {
    throw ParseError("unsupported sketch dump version " + std::to_string(version), 0);
  }
  SketchDump d;
  const std::uint64_t kind = detail::get_word(in);
  if (kind > 3) throw ParseError("unknown sketch kind in dump", 0);
  d.kind = static_cast<SketchKind>(kind);
  d.n = detail::get_word(in);
  d.size = detail::get_word(in);
  d.b = static_cast<std::uint32_t>(detail::get_word(in));
  d.seed = detail::get_word(in);
  d.lengths.resize(d.n);
  if (d.kind == SketchKind::Bloom) {
    if (d.size % kWordBits != 0 || d.size == 0) throw ParseError("bad Bloom size in dump", 0);
    std::fill(d.lengths.begin(), d.lengths.end(), d.size / kWordBits);
    d.payload.resize(d.n * (d.size / kWordBits));
    for (auto& w : d.payload) w = detail::get_word(in);
  } else {
    for (std::uint64_t v = 0; v < d.n; ++v) {
      const std::uint64_t len = detail::get_word(in);
      if (len > d.size) throw ParseError("sketch longer than k in dump", 0);
      d.lengths[v] = len;
      for (std::uint64_t i = 0; i < len; ++i) d.payload.push_back(detail::get_word(in));
    }
  }
  return d;
}

// ---------------------------------------------------------------------------

// One sketch per vertex over the neighborhoods of a NeighborhoodSource (N_v
// from a CsrGraph or N+_v from a DirectedView). Sketches are immutable once
// built. The object keeps a non-owning view of the source's CSR offsets to
// read exact set sizes, so the source must outlive it.
class SketchedGraph {
 public:
  SketchedGraph() = default;

  template <NeighborhoodSource G>
  static SketchedGraph build(const G& src, const BudgetPlan& plan,
                             std::uint64_t seed = kDefaultHashSeed, int threads = 0) {
    if (!plan.feasible()) {
      throw BudgetError("sketch plan needs " + std::to_string(plan.total_extra_bits) +
                        " bits but the budget allows " + std::to_string(plan.budget_bits));
    }
    SketchedGraph sg;
    sg.init(plan, seed, src.offsets());
    const auto n = static_cast<std::int64_t>(src.num_vertices());
    const std::uint64_t wpv = plan.words_per_vertex();
    const int nt = resolve_threads(threads);
    (void)nt;

#pragma omp parallel num_threads(nt)
    {
      std::vector<std::pair<std::uint64_t, vertex_t>> pairs;
      std::vector<double> units;
#pragma omp for schedule(dynamic, 256)
      for (std::int64_t iv = 0; iv < n; ++iv) {
        const auto v = static_cast<vertex_t>(iv);
        const auto neigh = src.neighbors(v);
        const std::size_t base = static_cast<std::size_t>(iv) * wpv;
        switch (plan.kind) {
          case SketchKind::Bloom:
            bloom_fill(neigh, sg.family_, plan.hashes,
                       std::span<std::uint64_t>(sg.words_).subspan(base, wpv));
            break;
          case SketchKind::KHash:
            khash_fill(neigh, sg.family_, std::span<vertex_t>(sg.ids_).subspan(base, wpv));
            break;
          case SketchKind::OneHash:
            onehash_fill(neigh, sg.family_[0], plan.k, pairs,
                         std::span<vertex_t>(sg.ids_).subspan(base, wpv));
            break;
          case SketchKind::Kmv:
            kmv_fill(neigh, sg.family_[0], plan.k, units,
                     std::span<double>(sg.units_).subspan(base, wpv));
            break;
        }
      }
    }
    return sg;
  }

  // Rebuilds from a dump; the dump must have been produced over `src`.
  template <NeighborhoodSource G>
  static SketchedGraph restore(const SketchDump& d, const G& src) {
    if (d.n != src.num_vertices()) throw ContractViolation("dump vertex count does not match graph");
    BudgetPlan plan = fixed_plan(src, d.kind, d.size, d.b);
    SketchedGraph sg;
    sg.init(plan, d.seed, src.offsets());
    const std::uint64_t wpv = plan.words_per_vertex();
    std::size_t at = 0;
    for (std::uint64_t v = 0; v < d.n; ++v) {
      const std::uint64_t len = d.lengths[v];
      const std::uint64_t deg = src.degree(static_cast<vertex_t>(v));
      const std::uint64_t expected = d.kind == SketchKind::KHash ? (deg == 0 ? 0 : plan.k)
                                                                  : std::min<std::uint64_t>(plan.k, deg);
      if ((d.kind == SketchKind::KHash || d.kind == SketchKind::OneHash) && len != expected) {
        throw ContractViolation("dump entry count does not match neighborhood size");
      }
      for (std::uint64_t i = 0; i < len; ++i, ++at) {
        const std::uint64_t w = d.payload[at];
        switch (d.kind) {
          case SketchKind::Bloom: sg.words_[v * wpv + i] = w; break;
          case SketchKind::KHash:
          case SketchKind::OneHash: sg.ids_[v * wpv + i] = static_cast<vertex_t>(w); break;
          case SketchKind::Kmv: sg.units_[v * wpv + i] = std::bit_cast<double>(w); break;
        }
      }
    }
    return sg;
  }

  SketchKind kind() const noexcept { return plan_.kind; }
  const BudgetPlan& plan() const noexcept { return plan_; }
  const HashFamily& family() const noexcept { return family_; }
  std::uint64_t seed() const noexcept { return family_.base_seed(); }
  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }

  // Exact size of the set sketched at v (read from the source CSR).
  std::size_t set_size(vertex_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  BloomView bloom(vertex_t v) const noexcept {
    const std::uint64_t wpv = plan_.words_per_vertex();
    return {std::span<const std::uint64_t>(words_).subspan(v * wpv, wpv), plan_.hashes,
            family_.base_seed()};
  }

  // Raw word pointer for the hot loops of the Bloom estimators.
  const std::uint64_t* bloom_words(vertex_t v) const noexcept {
    return words_.data() + static_cast<std::size_t>(v) * plan_.words_per_vertex();
  }

  KHashView khash(vertex_t v) const noexcept {
    const std::size_t len = set_size(v) == 0 ? 0 : plan_.k;
    return {std::span<const vertex_t>(ids_).subspan(std::size_t{v} * plan_.k, len),
            family_.base_seed()};
  }

  OneHashView onehash(vertex_t v) const noexcept {
    const std::size_t d = set_size(v);
    const std::size_t len = std::min<std::size_t>(plan_.k, d);
    return {std::span<const vertex_t>(ids_).subspan(std::size_t{v} * plan_.k, len), plan_.k,
            d <= plan_.k, family_[0]};
  }

  KmvView kmv(vertex_t v) const noexcept {
    const std::size_t d = set_size(v);
    const double* base = units_.data() + std::size_t{v} * plan_.k;
    std::size_t len = std::min<std::size_t>(plan_.k, d);
    while (len > 0 && base[len - 1] == 0.0) --len;  // slots left empty by hash collisions
    return {{base, len}, plan_.k, d <= plan_.k, family_.base_seed()};
  }

  // Memory held by the sketches themselves.
  std::uint64_t extra_bytes() const noexcept {
    return words_.capacity() * sizeof(std::uint64_t) + ids_.capacity() * sizeof(vertex_t) +
           units_.capacity() * sizeof(double);
  }

  double extra_fraction(std::uint64_t footprint_words) const noexcept {
    return footprint_words == 0
               ? 0.0
               : static_cast<double>(extra_bytes() * 8) /
                     static_cast<double>(footprint_words * kWordBits);
  }

  void write_dump(std::ostream& out) const {
    out.write(kSketchDumpMagic.data(), 8);
    detail::put_word(out, kSketchDumpVersion);
    detail::put_word(out, static_cast<std::uint64_t>(plan_.kind));
    detail::put_word(out, num_vertices());
    detail::put_word(out, plan_.size_parameter());
    detail::put_word(out, plan_.hashes);
    detail::put_word(out, family_.base_seed());
    const auto n = static_cast<vertex_t>(num_vertices());
    if (plan_.kind == SketchKind::Bloom) {
      for (auto w : words_) detail::put_word(out, w);
      return;
    }
    for (vertex_t v = 0; v < n; ++v) {
      switch (plan_.kind) {
        case SketchKind::KHash: {
          auto e = khash(v).entries;
          detail::put_word(out, e.size());
          for (auto x : e) detail::put_word(out, x);
          break;
        }
        case SketchKind::OneHash: {
          auto e = onehash(v).entries;
          detail::put_word(out, e.size());
          for (auto x : e) detail::put_word(out, x);
          break;
        }
        case SketchKind::Kmv: {
          auto e = kmv(v).values;
          detail::put_word(out, e.size());
          for (auto x : e) detail::put_word(out, std::bit_cast<std::uint64_t>(x));
          break;
        }
        case SketchKind::Bloom: break;
      }
    }
  }

  friend bool operator==(const SketchedGraph& a, const SketchedGraph& b) {
    return a.plan_.kind == b.plan_.kind && a.plan_.size_parameter() == b.plan_.size_parameter() &&
           a.plan_.hashes == b.plan_.hashes && a.seed() == b.seed() && a.words_ == b.words_ &&
           a.ids_ == b.ids_ && a.units_ == b.units_;
  }

 private:
  void init(const BudgetPlan& plan, std::uint64_t seed, std::span<const std::uint64_t> offsets) {
    plan_ = plan;
    family_ = HashFamily(seed, std::max<std::size_t>(plan.family_size(), 1));
    offsets_ = offsets;
    const std::size_t n = offsets.empty() ? 0 : offsets.size() - 1;
    const std::size_t slots = n * plan.words_per_vertex();
    switch (plan.kind) {
      case SketchKind::Bloom: words_.assign(slots, 0); break;
      case SketchKind::KHash:
      case SketchKind::OneHash: ids_.assign(slots, 0); break;
      case SketchKind::Kmv: units_.assign(slots, 0.0); break;
    }
  }

  BudgetPlan plan_;
  HashFamily family_;
  std::span<const std::uint64_t> offsets_;
  std::vector<std::uint64_t> words_;
  std::vector<vertex_t> ids_;
  std::vector<double> units_;
};

}  // namespace probgraph
