#pragma once

// CSR graphs, the degree-ordered directed view, loaders and generators.

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "probgraph/error.hpp"
#include "probgraph/hashing.hpp"

namespace probgraph {

inline constexpr std::uint64_t kWordBits = 64;

struct Edge {
  vertex_t u;
  vertex_t v;
  friend constexpr bool operator==(Edge, Edge) = default;
  friend constexpr auto operator<=>(Edge, Edge) = default;
};

constexpr Edge canonical(vertex_t a, vertex_t b) noexcept { return a < b ? Edge{a, b} : Edge{b, a}; }

// What from_edges threw away while cleaning its input.
struct CleanupStats {
  std::size_t self_loops = 0;
  std::size_t duplicates = 0;
};

// Undirected simple graph in compressed sparse row form. Every neighborhood
// is sorted ascending, duplicate-free and loop-free; adjacency is symmetric.
class CsrGraph {
 public:
  CsrGraph() : offsets_(1, 0) {}

  // Symmetrizes, drops self-loops and collapses duplicate edges.
  // Vertex ids must be < n.
  static CsrGraph from_edges(std::size_t n, std::span<const Edge> edges,
                             CleanupStats* stats = nullptr) {
    std::vector<std::uint64_t> arcs;
    arcs.reserve(edges.size() * 2);
    std::size_t loops = 0;
    for (const Edge& e : edges) {
      if (e.u >= n || e.v >= n) {
        throw ContractViolation("edge endpoint out of range for n=" + std::to_string(n));
      }
      if (e.u == e.v) {
        ++loops;
        continue;
      }
      arcs.push_back((std::uint64_t{e.u} << 32) | e.v);
      arcs.push_back((std::uint64_t{e.v} << 32) | e.u);
    }
    std::sort(arcs.begin(), arcs.end());
    const std::size_t before = arcs.size();
    arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());
    if (stats != nullptr) {
      stats->self_loops = loops;
      stats->duplicates = (before - arcs.size()) / 2;
    }

    CsrGraph g;
    g.offsets_.assign(n + 1, 0);
    g.adj_.resize(arcs.size());
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      const auto src = static_cast<vertex_t>(arcs[i] >> 32);
      g.adj_[i] = static_cast<vertex_t>(arcs[i] & 0xffffffffULL);
      ++g.offsets_[src + 1];
    }
    std::partial_sum(g.offsets_.begin(), g.offsets_.end(), g.offsets_.begin());
    return g;
  }

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return adj_.size() / 2; }

  std::size_t degree(vertex_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::span<const vertex_t> adjacency() const noexcept { return adj_; }

  bool has_edge(vertex_t u, vertex_t v) const noexcept {
    auto nu = neighbors(u);
    return std::binary_search(nu.begin(), nu.end(), v);
  }

  // Each undirected edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    out.reserve(num_edges());
    for_each_edge([&](vertex_t u, vertex_t v) { out.push_back({u, v}); });
    return out;
  }

  template <class F>
  void for_each_edge(F&& f) const {
    const auto n = static_cast<vertex_t>(num_vertices());
    for (vertex_t u = 0; u < n; ++u) {
      for (vertex_t v : neighbors(u)) {
        if (u < v) f(u, v);
      }
    }
  }

  // Size of the CSR arrays in machine words: n offsets plus 2m neighbor ids.
  std::uint64_t footprint_words() const noexcept { return num_vertices() + 2 * num_edges(); }

  // Checks every structural invariant; returns a description of the first
  // violation or an empty string.
  std::string validate() const {
    const std::size_t n = num_vertices();
    if (offsets_.front() != 0 || offsets_.back() != adj_.size()) return "offset bounds";
    for (std::size_t v = 0; v < n; ++v) {
      if (offsets_[v] > offsets_[v + 1]) return "offsets decrease at " + std::to_string(v);
      auto nv = neighbors(static_cast<vertex_t>(v));
      for (std::size_t i = 0; i < nv.size(); ++i) {
        if (nv[i] >= n) return "neighbor out of range at " + std::to_string(v);
        if (nv[i] == v) return "self-loop at " + std::to_string(v);
        if (i > 0 && nv[i - 1] >= nv[i]) return "unsorted or duplicate at " + std::to_string(v);
        if (!has_edge(nv[i], static_cast<vertex_t>(v))) return "asymmetric at " + std::to_string(v);
      }
    }
    return {};
  }

  friend bool operator==(const CsrGraph&, const CsrGraph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<vertex_t> adj_;
};

// N+_v = { u in N_v : rank(v) < rank(u) }, where rank orders vertices by
// non-decreasing degree with ties broken by id. Each undirected edge appears
// in exactly one N+ list, so node-iterator loops see each triangle once.
class DirectedView {
 public:
  DirectedView() : offsets_(1, 0) {}

  explicit DirectedView(const CsrGraph& g) {
    const std::size_t n = g.num_vertices();
    std::vector<vertex_t> order(n);
    std::iota(order.begin(), order.end(), vertex_t{0});
    std::sort(order.begin(), order.end(), [&](vertex_t a, vertex_t b) {
      const auto da = g.degree(a), db = g.degree(b);
      return da != db ? da < db : a < b;
    });
    rank_.resize(n);
    for (std::size_t r = 0; r < n; ++r) rank_[order[r]] = static_cast<vertex_t>(r);

    offsets_.assign(n + 1, 0);
    adj_.reserve(g.num_edges());
    for (std::size_t v = 0; v < n; ++v) {
      for (vertex_t u : g.neighbors(static_cast<vertex_t>(v))) {
        if (rank_[v] < rank_[u]) adj_.push_back(u);
      }
      offsets_[v + 1] = adj_.size();
    }
    base_vertices_ = n;
    base_edges_ = g.num_edges();
  }

  std::size_t num_vertices() const noexcept { return offsets_.size() - 1; }
  std::size_t num_arcs() const noexcept { return adj_.size(); }

  std::size_t degree(vertex_t v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  std::span<const vertex_t> neighbors(vertex_t v) const noexcept {
    return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
  }

  std::span<const std::uint64_t> offsets() const noexcept { return offsets_; }
  std::span<const vertex_t> rank() const noexcept { return rank_; }

  // Footprint of the undirected graph the view was derived from; sketch
  // budgets are always relative to the full CSR.
  std::uint64_t footprint_words() const noexcept { return base_vertices_ + 2 * base_edges_; }
  std::size_t base_edges() const noexcept { return base_edges_; }

 private:
  std::vector<vertex_t> rank_;
  std::vector<std::uint64_t> offsets_;
  std::vector<vertex_t> adj_;
  std::size_t base_vertices_ = 0;
  std::size_t base_edges_ = 0;
};

inline DirectedView degree_order(const CsrGraph& g) { return DirectedView(g); }

struct DegreeStats {
  std::uint64_t max_degree = 0;
  double mean_degree = 0.0;
  std::uint64_t sum_d2 = 0;
  std::uint64_t sum_d3 = 0;
};

inline DegreeStats degree_stats(const CsrGraph& g) {
  DegreeStats s;
  const std::size_t n = g.num_vertices();
  std::uint64_t total = 0;
  for (std::size_t v = 0; v < n; ++v) {
    const std::uint64_t d = g.degree(static_cast<vertex_t>(v));
    s.max_degree = std::max(s.max_degree, d);
    total += d;
    s.sum_d2 += d * d;
    s.sum_d3 += d * d * d;
  }
  s.mean_degree = n == 0 ? 0.0 : static_cast<double>(total) / static_cast<double>(n);
  return s;
}

// ---------------------------------------------------------------------------
// Generators

namespace detail {

inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

struct KroneckerInitiator {
  double a = 0.57;
  double b = 0.19;
  double c = 0.19;
  double d = 0.05;
};

// R-MAT style recursive descent: edge_factor * 2^scale edges are drawn, then
// symmetrized with self-loops and duplicates removed, so m comes out below
// edge_factor * n on skewed initiators.
inline CsrGraph generate_kronecker(unsigned scale, std::uint64_t edge_factor, std::uint64_t seed,
                                   KroneckerInitiator init = {}) {
  if (scale < 1 || scale > 31) throw ContractViolation("kronecker scale must be in [1, 31]");
  const std::uint64_t n = std::uint64_t{1} << scale;
  const std::uint64_t count = edge_factor * n;
  std::mt19937_64 rng(seed);
  const double ab = init.a + init.b;
  const double abc = ab + init.c;
  std::vector<Edge> edges;
  edges.reserve(count);
  for (std::uint64_t e = 0; e < count; ++e) {
    vertex_t u = 0, v = 0;
    for (unsigned bit = 0; bit < scale; ++bit) {
      const double r = detail::uniform01(rng);
      u <<= 1;
      v <<= 1;
      if (r < init.a) {
      } else if (r < ab) {
        v |= 1;
      } else if (r < abc) {
        u |= 1;
      } else {
        u |= 1;
        v |= 1;
      }
    }
    edges.push_back({u, v});
  }
  return CsrGraph::from_edges(n, edges);
}

// Erdos-Renyi G(n, p).
inline CsrGraph generate_gnp(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) {
      if (detail::uniform01(rng) < p) {
        edges.push_back({static_cast<vertex_t>(u), static_cast<vertex_t>(v)});
      }
    }
  }
  return CsrGraph::from_edges(n, edges);
}

inline CsrGraph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v)
      edges.push_back({static_cast<vertex_t>(u), static_cast<vertex_t>(v)});
  return CsrGraph::from_edges(n, edges);
}

inline CsrGraph cycle_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u)
    edges.push_back({static_cast<vertex_t>(u), static_cast<vertex_t>((u + 1) % n)});
  return CsrGraph::from_edges(n, edges);
}

// ---------------------------------------------------------------------------
// Text formats

struct EdgeListOptions {
  bool one_indexed = false;
  std::string comment_prefix = "#";
  // Compact arbitrary ids to [0, n) preserving their relative order.
  bool remap_ids = false;
};

struct LoadedGraph {
  CsrGraph graph;
  // original_ids[v] is the id vertex v had in the file (identity when not remapped).
  std::vector<std::uint64_t> original_ids;
  CleanupStats cleanup;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Parses the next unsigned integer token; advances `s` past it.
inline bool next_uint(std::string_view& s, std::uint64_t& out) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return false;
  s.remove_prefix(b);
  const auto* first = s.data();
  const auto* last = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || (ptr != last && *ptr != ' ' && *ptr != '\t' && *ptr != '\r' &&
                            *ptr != '\n')) {
    return false;
  }
  s.remove_prefix(static_cast<std::size_t>(ptr - first));
  return true;
}

inline LoadedGraph assemble(std::vector<std::pair<std::uint64_t, std::uint64_t>>& raw,
                            std::uint64_t declared_n, bool remap) {
  LoadedGraph out;
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  if (remap) {
    std::vector<std::uint64_t> ids;
    ids.reserve(raw.size() * 2);
    for (auto [a, b] : raw) {
      ids.push_back(a);
      ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    auto index = [&](std::uint64_t x) {
      return static_cast<vertex_t>(std::lower_bound(ids.begin(), ids.end(), x) - ids.begin());
    };
    for (auto [a, b] : raw) edges.push_back({index(a), index(b)});
    out.graph = CsrGraph::from_edges(ids.size(), edges, &out.cleanup);
    out.original_ids = std::move(ids);
    return out;
  }
  std::uint64_t n = declared_n;
  for (auto [a, b] : raw) n = std::max({n, a + 1, b + 1});
  if (n > 0xffffffffULL) throw ParseError("vertex id exceeds 32-bit range; use remap_ids", 0);
  for (auto [a, b] : raw) edges.push_back({static_cast<vertex_t>(a), static_cast<vertex_t>(b)});
  out.graph = CsrGraph::from_edges(n, edges, &out.cleanup);
  out.original_ids.resize(n);
  std::iota(out.original_ids.begin(), out.original_ids.end(), std::uint64_t{0});
  return out;
}

}  // namespace detail

// Whitespace separated "u v" lines; tokens after the second are ignored. A
// comment of the form "<prefix> n=<count>" fixes the vertex count so that
// trailing isolated vertices survive a write/read round trip.
inline LoadedGraph read_edge_list(std::istream& in, const EdgeListOptions& opt = {}) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  std::uint64_t declared_n = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty()) continue;
    if (!opt.comment_prefix.empty() && s.starts_with(opt.comment_prefix)) {
      if (auto pos = s.find("n="); pos != std::string_view::npos && !opt.remap_ids) {
        std::string_view rest = s.substr(pos + 2);
        std::uint64_t n = 0;
        if (detail::next_uint(rest, n)) declared_n = n;
      }
      continue;
    }
    std::uint64_t a = 0, b = 0;
    if (!detail::next_uint(s, a) || !detail::next_uint(s, b)) {
      throw ParseError("expected two non-negative integer vertex ids", lineno);
    }
    if (opt.one_indexed) {
      if (a == 0 || b == 0) throw ParseError("vertex id 0 in one-indexed input", lineno);
      --a;
      --b;
    }
    raw.emplace_back(a, b);
  }
  return detail::assemble(raw, declared_n, opt.remap_ids);
}

inline LoadedGraph load_edge_list(const std::string& path, const EdgeListOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  return read_edge_list(in, opt);
}

// MatrixMarket "coordinate pattern" (symmetric or general); entries are
// 1-indexed and any value columns are ignored.
inline LoadedGraph read_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) return {};
  ++lineno;
  if (!line.starts_with("%%MatrixMarket")) throw ParseError("missing %%MatrixMarket banner", 1);
  std::istringstream banner(line);
  std::string tag, object, format;
  banner >> tag >> object >> format;
  if (object != "matrix" || format != "coordinate") {
    throw ParseError("only 'matrix coordinate' MatrixMarket files are supported", 1);
  }
  std::uint64_t rows = 0, cols = 0, nnz = 0;
  bool have_size = false;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = detail::trim(line);
    if (s.empty() || s.front() == '%') continue;
    if (!have_size) {
      if (!detail::next_uint(s, rows) || !detail::next_uint(s, cols) || !detail::next_uint(s, nnz)) {
        throw ParseError("malformed size line", lineno);
      }
      have_size = true;
      raw.reserve(nnz);
      continue;
    }
    std::uint64_t a = 0, b = 0;
    if (!detail::next_uint(s, a) || !detail::next_uint(s, b) || a == 0 || b == 0) {
      throw ParseError("malformed coordinate entry", lineno);
    }
    raw.emplace_back(a - 1, b - 1);
  }
  return detail::assemble(raw, std::max(rows, cols), false);
}

inline LoadedGraph load_graph_file(const std::string& path, const EdgeListOptions& opt = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0);
  if (in.peek() == '%') {
    std::string first;
    std::getline(in, first);
    if (first.starts_with("%%MatrixMarket")) {
      in.seekg(0);
      return read_matrix_market(in);
    }
    in.seekg(0);
  }
  return read_edge_list(in, opt);
}

inline void write_edge_list(const CsrGraph& g, std::ostream& out) {
  out << "# n=" << g.num_vertices() << " m=" << g.num_edges() << '\n';
  g.for_each_edge([&](vertex_t u, vertex_t v) { out << u << ' ' << v << '\n'; });
}

}  // namespace probgraph
