#pragma once

// Benchmark harness: runs exact and sketch-based mining kernels over a
// configured cross-product and emits one CSV record per measurement.
//
// Needs nlohmann/json on the include path (target probgraph::bench).

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "probgraph/error.hpp"
#include "probgraph/estimators.hpp"
#include "probgraph/graph.hpp"
#include "probgraph/mining.hpp"
#include "probgraph/sketch.hpp"

namespace probgraph::bench {

// ---------------------------------------------------------------------------
// Configuration

enum class Problem { Tc, TcEstimate, FourClique, JarvisPatrick, Similarity, LinkPrediction };

inline std::string_view to_string(Problem p) {
  switch (p) {
    case Problem::Tc: return "tc";
    case Problem::TcEstimate: return "tc_est";
    case Problem::FourClique: return "4clique";
    case Problem::JarvisPatrick: return "jp";
    case Problem::Similarity: return "similarity";
    case Problem::LinkPrediction: return "linkpred";
  }
  return "?";
}

inline Problem parse_problem(std::string_view s) {
  for (auto p : {Problem::Tc, Problem::TcEstimate, Problem::FourClique, Problem::JarvisPatrick,
                 Problem::Similarity, Problem::LinkPrediction}) {
    if (to_string(p) == s) return p;
  }
  throw ContractViolation("unknown problem '" + std::string(s) + "'");
}

// Estimator names accepted by the harness: every EstimatorKind name plus the
// two sampling baselines.
enum class SamplingMethod { Doulion, Reduced };

inline std::optional<SamplingMethod> parse_sampling(std::string_view s) {
  if (s == "doulion") return SamplingMethod::Doulion;
  if (s == "reduced") return SamplingMethod::Reduced;
  return std::nullopt;
}

struct KroneckerSpec {
  unsigned scale = 10;
  unsigned edge_factor = 16;
  std::uint64_t seed = 1;
};

struct GraphSource {
  std::string name;
  std::string path;                     // edge list or MatrixMarket
  std::optional<KroneckerSpec> kronecker;
};

struct RunConfig {
  std::vector<GraphSource> graphs;
  std::vector<Problem> problems{Problem::Tc};
  std::vector<std::string> estimators{"bf_and"};
  std::vector<double> budgets{0.25};
  std::vector<std::uint32_t> bloom_hashes{2};
  std::vector<std::uint64_t> seeds{kDefaultHashSeed};
  std::vector<int> threads{1};
  double warmup_fraction = 0.01;
  std::size_t repetitions = 3;
  SimilarityMeasure similarity = SimilarityMeasure::Jaccard;
  double jp_tau = 1.0;
  double linkpred_remove_fraction = 0.1;
  std::uint64_t linkpred_seed = 1;
  std::size_t linkpred_top = 0;  // 0: |E_rndm|
  double four_clique_max_sum_d2 = 1e11;
  std::size_t bootstrap_resamples = 1000;

  void validate() const {
    if (graphs.empty()) throw ContractViolation("config lists no graphs");
    if (problems.empty()) throw ContractViolation("config lists no problems");
    if (estimators.empty()) throw ContractViolation("config lists no estimators");
    if (repetitions < 1) throw ContractViolation("repetitions must be >= 1");
    if (!(warmup_fraction >= 0.0 && warmup_fraction <= 0.5)) {
      throw ContractViolation("warmup_fraction must be in [0, 0.5]");
    }
    for (double s : budgets) {
      if (!(s > 0.0 && s <= 1.0)) throw ContractViolation("budgets must lie in (0, 1]");
    }
    for (auto b : bloom_hashes) {
      if (b == 0) throw ContractViolation("bloom_hashes entries must be >= 1");
    }
    for (int t : threads) {
      if (t < 1) throw ContractViolation("thread counts must be >= 1");
    }
    if (seeds.empty() || threads.empty() || budgets.empty() || bloom_hashes.empty()) {
      throw ContractViolation("seeds, threads, budgets and bloom_hashes must be non-empty");
    }
    for (const auto& e : estimators) {
      if (!parse_estimator_kind(e) && !parse_sampling(e)) {
        throw ContractViolation("unknown estimator '" + e + "'");
      }
    }
    for (const auto& g : graphs) {
      if (g.path.empty() == !g.kronecker.has_value()) {
        throw ContractViolation("graph '" + g.name + "' needs exactly one of path or kronecker");
      }
    }
  }

  // Warmup repetitions run before the measured ones and are discarded.
  std::size_t warmup_runs() const noexcept {
    if (warmup_fraction <= 0.0) return 0;
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(warmup_fraction * static_cast<double>(repetitions))));
  }
};

namespace detail {

template <class T>
std::vector<T> one_or_many(const nlohmann::json& j) {
  if (j.is_array()) return j.get<std::vector<T>>();
  return {j.get<T>()};
}

}  // namespace detail

// Relative paths in the config are resolved against `base_dir`.
inline RunConfig config_from_json(const nlohmann::json& j, const std::string& base_dir = "") {
  RunConfig c;
  try {
    for (const auto& g : j.at("graphs")) {
      GraphSource src;
      if (g.contains("kronecker")) {
        const auto& k = g.at("kronecker");
        KroneckerSpec spec;
        spec.scale = k.value("scale", spec.scale);
        spec.edge_factor = k.value("edge_factor", spec.edge_factor);
        spec.seed = k.value("seed", spec.seed);
        src.kronecker = spec;
        src.name = "kron-s" + std::to_string(spec.scale) + "-e" + std::to_string(spec.edge_factor);
      }
      if (g.contains("path")) {
        src.path = g.at("path").get<std::string>();
        if (!base_dir.empty() && !src.path.empty() && src.path.front() != '/') {
          src.path = base_dir + "/" + src.path;
        }
        src.name = g.at("path").get<std::string>();
      }
      src.name = g.value("name", src.name);
      c.graphs.push_back(src);
    }
    if (j.contains("problems")) {
      c.problems.clear();
      for (const auto& p : detail::one_or_many<std::string>(j.at("problems"))) c.problems.push_back(parse_problem(p));
    }
    if (j.contains("estimators")) c.estimators = detail::one_or_many<std::string>(j.at("estimators"));
    if (j.contains("budgets")) c.budgets = detail::one_or_many<double>(j.at("budgets"));
    if (j.contains("bloom_hashes")) c.bloom_hashes = detail::one_or_many<std::uint32_t>(j.at("bloom_hashes"));
    if (j.contains("seeds")) c.seeds = detail::one_or_many<std::uint64_t>(j.at("seeds"));
    if (j.contains("threads")) c.threads = detail::one_or_many<int>(j.at("threads"));
    c.warmup_fraction = j.value("warmup_fraction", c.warmup_fraction);
    c.repetitions = j.value("repetitions", c.repetitions);
    if (j.contains("similarity")) c.similarity = parse_similarity(j.at("similarity").get<std::string>());
    c.jp_tau = j.value("jp_tau", c.jp_tau);
    c.linkpred_remove_fraction = j.value("linkpred_remove_fraction", c.linkpred_remove_fraction);
    c.linkpred_seed = j.value("linkpred_seed", c.linkpred_seed);
    c.linkpred_top = j.value("linkpred_top", c.linkpred_top);
    c.four_clique_max_sum_d2 = j.value("four_clique_max_sum_d2", c.four_clique_max_sum_d2);
    c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad benchmark config: ") + e.what(), 0);
  }
  c.validate();
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config '" + path + "'", 0);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("config '" + path + "' is not valid JSON: " + e.what(), 0);
  }
  const auto slash = path.find_last_of('/');
  return config_from_json(j, slash == std::string::npos ? "" : path.substr(0, slash));
}

// ---------------------------------------------------------------------------
// Records and CSV

inline constexpr std::string_view kCsvVersionLine = "# probgraph-bench v1";

struct BenchRecord {
  std::string mode = "run";  // run | strong | weak
  std::string graph;
  std::string problem;
  std::string estimator;
  double s = 0.0;
  double param = 0.0;  // b (Bloom), k (MinHash, KMV), keep probability (sampling)
  std::uint64_t seed = 0;
  std::uint64_t rep = 0;  // 0 for exact baselines, 1.. for approximate runs
  int threads = 1;
  std::string status = "ok";  // ok | skipped
  double exact_count = 0.0;
  double approx_count = 0.0;
  std::optional<double> accuracy;  // nullopt when the exact count is 0
  double exact_time = 0.0;
  double approx_time = 0.0;
  double construction_time = 0.0;
  double time_mean = 0.0;
  double time_ci_lo = 0.0;
  double time_ci_hi = 0.0;
  double speedup = 0.0;
  double thread_speedup = 1.0;
  std::uint64_t extra_bytes = 0;
  double extra_fraction = 0.0;
  std::string reason;

  friend bool operator==(const BenchRecord&, const BenchRecord&) = default;
};

inline const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{
      "mode", "graph", "problem", "estimator", "s", "param", "seed", "rep", "threads", "status",
      "exact_count", "approx_count", "accuracy", "exact_time", "approx_time", "construction_time",
      "time_mean", "time_ci_lo", "time_ci_hi", "speedup", "thread_speedup", "extra_bytes",
      "extra_fraction", "reason"};
  return cols;
}

namespace detail {

inline std::string fmt_double(double x) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline double parse_double(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  double x = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw ParseError("bad number '" + std::string(s) + "' in records", 0);
  }
  return x;
}

template <class T>
T parse_uint(std::string_view s) {
  T x = 0;
  auto r = std::from_chars(s.data(), s.data() + s.size(), x);
  if (r.ec != std::errc{} || r.ptr != s.data() + s.size()) {
    throw ParseError("bad integer '" + std::string(s) + "' in records", 0);
  }
  return x;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

}  // namespace detail

inline void write_csv_header(std::ostream& out) {
  out << kCsvVersionLine << '\n';
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

inline std::string csv_row(const BenchRecord& r) {
  using detail::fmt_double;
  const std::vector<std::string> f{
      detail::csv_quote(r.mode), detail::csv_quote(r.graph), detail::csv_quote(r.problem),
      detail::csv_quote(r.estimator), fmt_double(r.s), fmt_double(r.param), std::to_string(r.seed),
      std::to_string(r.rep), std::to_string(r.threads), detail::csv_quote(r.status),
      fmt_double(r.exact_count), fmt_double(r.approx_count),
      r.accuracy ? fmt_double(*r.accuracy) : std::string("undefined"), fmt_double(r.exact_time),
      fmt_double(r.approx_time), fmt_double(r.construction_time), fmt_double(r.time_mean),
      fmt_double(r.time_ci_lo), fmt_double(r.time_ci_hi), fmt_double(r.speedup),
      fmt_double(r.thread_speedup), std::to_string(r.extra_bytes), fmt_double(r.extra_fraction),
      detail::csv_quote(r.reason)};
  std::string line;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) line += ',';
    line += f[i];
  }
  return line + '\n';
}

// Each record goes out as a single write followed by a flush.
inline void append_csv_record(std::ostream& out, const BenchRecord& r) {
  const std::string line = csv_row(r);
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  out.flush();
}

inline void write_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  write_csv_header(out);
  for (const auto& r : records) append_csv_record(out, r);
}

inline std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    // A quoted field may span lines.
    std::string more;
    while (std::count(line.begin(), line.end(), '"') % 2 == 1 && std::getline(in, more)) {
      line += '\n' + more;
      ++lineno;
    }
    if (line.front() == '#') {
      if (line != kCsvVersionLine) throw ParseError("unsupported records version: " + line, lineno);
      continue;
    }
    auto f = detail::csv_split(line);
    if (!header_seen) {
      if (f != csv_columns()) throw ParseError("unexpected records header", lineno);
      header_seen = true;
      continue;
    }
    if (f.size() != csv_columns().size()) {
      throw ParseError("record has " + std::to_string(f.size()) + " fields", lineno);
    }
    try {
      BenchRecord r;
      r.mode = f[0];
      r.graph = f[1];
      r.problem = f[2];
      r.estimator = f[3];
      r.s = detail::parse_double(f[4]);
      r.param = detail::parse_double(f[5]);
      r.seed = detail::parse_uint<std::uint64_t>(f[6]);
      r.rep = detail::parse_uint<std::uint64_t>(f[7]);
      r.threads = detail::parse_uint<int>(f[8]);
      r.status = f[9];
      r.exact_count = detail::parse_double(f[10]);
      r.approx_count = detail::parse_double(f[11]);
      if (f[12] != "undefined") r.accuracy = detail::parse_double(f[12]);
      r.exact_time = detail::parse_double(f[13]);
      r.approx_time = detail::parse_double(f[14]);
      r.construction_time = detail::parse_double(f[15]);
      r.time_mean = detail::parse_double(f[16]);
      r.time_ci_lo = detail::parse_double(f[17]);
      r.time_ci_hi = detail::parse_double(f[18]);
      r.speedup = detail::parse_double(f[19]);
      r.thread_speedup = detail::parse_double(f[20]);
      r.extra_bytes = detail::parse_uint<std::uint64_t>(f[21]);
      r.extra_fraction = detail::parse_double(f[22]);
      r.reason = f[23];
      out.push_back(std::move(r));
    } catch (const ParseError& e) {
      throw ParseError(e.what(), lineno);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Statistics

struct Interval {
  double mean = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

// Mean with a 95% bootstrap percentile interval (fixed resampling seed).
inline Interval bootstrap_mean_ci(const std::vector<double>& xs, std::size_t resamples = 1000,
                                  std::uint64_t seed = 0x5eedb007) {
  Interval out;
  if (xs.empty()) return out;
  out.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
  if (xs.size() == 1 || resamples == 0) {
    out.lo = out.hi = out.mean;
    return out;
  }
  std::mt19937_64 rng(seed);
  std::vector<double> means(resamples);
  for (auto& m : means) {
    double sum = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) sum += xs[rng() % xs.size()];
    m = sum / static_cast<double>(xs.size());
  }
  std::sort(means.begin(), means.end());
  auto at = [&](double q) {
    const auto idx = static_cast<std::size_t>(std::floor(q * static_cast<double>(resamples - 1)));
    return means[idx];
  };
  out.lo = std::min(at(0.025), out.mean);
  out.hi = std::max(at(0.975), out.mean);
  return out;
}

inline std::optional<double> relative_error(double approx, double exact) {
  if (exact == 0.0) return std::nullopt;
  return std::abs(approx - exact) / std::abs(exact);
}

// ---------------------------------------------------------------------------
// Running

inline CsrGraph load_source(const GraphSource& src) {
  if (src.kronecker) {
    return generate_kronecker(src.kronecker->scale, src.kronecker->edge_factor, src.kronecker->seed);
  }
  return load_graph_file(src.path).graph;
}

namespace detail {

template <class F>
double seconds(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Everything a problem needs from one input graph, built once.
struct ProblemContext {
  Problem problem;
  const CsrGraph* graph = nullptr;
  std::optional<DirectedView> view;  // tc, 4clique
  LinkPredSplit split;               // linkpred
  CsrGraph sparse;                   // linkpred
  const RunConfig* cfg = nullptr;

  ProblemContext(Problem p, const CsrGraph& g, const RunConfig& c) : problem(p), graph(&g), cfg(&c) {
    if (p == Problem::Tc || p == Problem::FourClique) view.emplace(g);
    if (p == Problem::LinkPrediction) {
      split = make_link_split(g, c.linkpred_remove_fraction, c.linkpred_seed);
      sparse = sparse_graph(g.num_vertices(), split);
    }
  }

  // Graph whose n + 2m footprint the budget refers to.
  const CsrGraph& base() const { return problem == Problem::LinkPrediction ? sparse : *graph; }

  SketchedGraph build(const BudgetPlan& plan, std::uint64_t seed, int threads) const {
    if (view) return SketchedGraph::build(*view, plan, seed, threads);
    return SketchedGraph::build(base(), plan, seed, threads);
  }

  template <class P>
  double solve(const P& p, int threads) const {
    switch (problem) {
      case Problem::Tc: return triangle_count(*view, p, threads);
      case Problem::FourClique: return four_clique_count(*view, p, threads);
      case Problem::TcEstimate: return tc_estimate(*graph, p, threads);
      case Problem::JarvisPatrick:
        return static_cast<double>(jarvis_patrick_cluster(*graph, p, cfg->jp_tau, threads).kept.size());
      case Problem::Similarity: {
        double sum = 0;
        graph->for_each_edge([&](vertex_t u, vertex_t v) {
          sum += vertex_similarity(u, v, cfg->similarity, p, *graph);
        });
        return sum;
      }
      case Problem::LinkPrediction: {
        const std::size_t top = cfg->linkpred_top ? cfg->linkpred_top : split.random.size();
        return static_cast<double>(link_prediction_eval(sparse, split, cfg->similarity, p, top, threads));
      }
    }
    return 0.0;
  }

  double run(EstimatorKind kind, const SketchedGraph* sg, int threads) const {
    auto go = [&](const auto& p) { return solve(p, threads); };
    if (view) return with_provider(kind, *view, sg, go);
    return with_provider(kind, base(), sg, go);
  }
};

}  // namespace detail

using RecordSink = std::function<void(const BenchRecord&)>;

struct RunOptions {
  std::string mode = "run";
};

namespace detail {

inline void fill_thread_speedups(std::vector<BenchRecord>& records, bool ignore_graph) {
  using Key = std::tuple<std::string, std::string, std::string, std::string, double, double,
                         std::uint64_t, std::uint64_t>;
  auto key = [&](const BenchRecord& r) {
    return Key{r.mode, ignore_graph ? std::string() : r.graph, r.problem, r.estimator, r.s, r.param, r.seed, r.rep};
  };
  std::map<Key, std::pair<int, double>> base;  // lowest thread count and its time
  for (const auto& r : records) {
    if (r.status != "ok") continue;
    auto [it, inserted] = base.try_emplace(key(r), r.threads, r.time_mean);
    if (!inserted && r.threads < it->second.first) it->second = {r.threads, r.time_mean};
  }
  for (auto& r : records) {
    if (r.status != "ok") continue;
    const double t0 = base.at(key(r)).second;
    r.thread_speedup = r.time_mean > 0 ? t0 / r.time_mean : 1.0;
  }
}

// All records of one (graph, problem, threads) cell.
inline void run_cell(const RunConfig& cfg, const std::string& graph_name, const CsrGraph& g,
                     Problem problem, int threads, const std::string& mode,
                     std::vector<BenchRecord>& out) {
  const ProblemContext ctx(problem, g, cfg);
  const std::size_t warm = cfg.warmup_runs();
  const std::size_t reps = cfg.repetitions;

  BenchRecord proto;
  proto.mode = mode;
  proto.graph = graph_name;
  proto.problem = std::string(to_string(problem));
  proto.threads = threads;

  auto skipped = [&](BenchRecord r, std::string why) {
    r.status = "skipped";
    r.reason = std::move(why);
    out.push_back(std::move(r));
  };

  if (problem == Problem::FourClique) {
    const double sum_d2 = static_cast<double>(degree_stats(g).sum_d2);
    if (sum_d2 > cfg.four_clique_max_sum_d2) {
      BenchRecord r = proto;
      r.estimator = "*";
      skipped(r, "sum of squared degrees " + fmt_double(sum_d2) + " exceeds four_clique_max_sum_d2");
      return;
    }
  }

  // Exact baselines (merge is the reference count and time).
  double exact_count = 0, exact_time = 0;
  for (auto kind : {EstimatorKind::ExactMerge, EstimatorKind::ExactGallop}) {
    BenchRecord r = proto;
    r.estimator = std::string(to_string(kind));
    std::vector<double> times;
    double count = 0;
    try {
      for (std::size_t i = 0; i < warm + reps; ++i) {
        const double t = seconds([&] { count = ctx.run(kind, nullptr, threads); });
        if (i >= warm) times.push_back(t);
      }
    } catch (const std::exception& e) {
      skipped(r, e.what());
      if (kind == EstimatorKind::ExactMerge) return;
      continue;
    }
    const auto ci = bootstrap_mean_ci(times, cfg.bootstrap_resamples);
    if (kind == EstimatorKind::ExactMerge) {
      exact_count = count;
      exact_time = ci.mean;
    }
    r.exact_count = exact_count;
    r.approx_count = count;
    r.accuracy = relative_error(count, exact_count);
    r.exact_time = exact_time;
    r.approx_time = ci.mean;
    r.time_mean = ci.mean;
    r.time_ci_lo = ci.lo;
    r.time_ci_hi = ci.hi;
    r.speedup = ci.mean > 0 ? exact_time / ci.mean : 1.0;
    out.push_back(r);
  }

  auto emit_reps = [&](BenchRecord r, const std::vector<double>& approx_times,
                       const std::vector<double>& build_times, double count) {
    const auto ci = bootstrap_mean_ci(approx_times, cfg.bootstrap_resamples);
    r.exact_count = exact_count;
    r.approx_count = count;
    r.accuracy = relative_error(count, exact_count);
    r.exact_time = exact_time;
    r.time_mean = ci.mean;
    r.time_ci_lo = ci.lo;
    r.time_ci_hi = ci.hi;
    for (std::size_t i = 0; i < approx_times.size(); ++i) {
      r.rep = i + 1;
      r.approx_time = approx_times[i];
      r.construction_time = build_times[i];
      r.speedup = approx_times[i] > 0 ? exact_time / approx_times[i] : 0.0;
      out.push_back(r);
    }
  };

  for (const auto& name : cfg.estimators) {
    BenchRecord r = proto;
    r.estimator = name;

    if (auto sampling = parse_sampling(name)) {
      std::optional<DirectedView> own_view;
      for (double s : cfg.budgets) {
        for (auto seed : cfg.seeds) {
          BenchRecord c = r;
          c.s = s;
          c.param = s;
          c.seed = seed;
          if (problem != Problem::Tc && problem != Problem::TcEstimate) {
            skipped(c, name + " only estimates triangle counts");
            continue;
          }
          const DirectedView& view = ctx.view ? *ctx.view : own_view.emplace(g);
          std::vector<double> times, builds;
          double count = 0;
          for (std::size_t i = 0; i < warm + reps; ++i) {
            const double t = seconds([&] {
              count = *sampling == SamplingMethod::Doulion ? doulion_tc(view, s, seed, threads)
                                                           : reduced_execution_tc(view, s, seed, threads);
            });
            if (i >= warm) {
              times.push_back(t);
              builds.push_back(0.0);
            }
          }
          emit_reps(c, times, builds, count);
        }
      }
      continue;
    }

    const EstimatorKind kind = *parse_estimator_kind(name);
    if (is_exact(kind)) continue;  // baselines above
    const SketchKind sk = required_sketch(kind);
    const std::vector<std::uint32_t> params =
        sk == SketchKind::Bloom ? cfg.bloom_hashes : std::vector<std::uint32_t>{0};
    for (double s : cfg.budgets) {
      for (auto b : params) {
        const BudgetPlan plan = plan_budget(ctx.base(), sk, s, sk == SketchKind::Bloom ? b : 2);
        for (auto seed : cfg.seeds) {
          BenchRecord c = r;
          c.s = s;
          c.param = static_cast<double>(sk == SketchKind::Bloom ? b : plan.k);
          c.seed = seed;
          if (!plan.feasible()) {
            skipped(c, "plan needs " + std::to_string(plan.total_extra_bits) + " bits, budget is " +
                           fmt_double(plan.budget_bits));
            continue;
          }
          std::vector<double> times, builds;
          double count = 0;
          try {
            for (std::size_t i = 0; i < warm + reps; ++i) {
              SketchedGraph sg;
              const double tb = seconds([&] { sg = ctx.build(plan, seed, threads); });
              const double ta = seconds([&] { count = ctx.run(kind, &sg, threads); });
              c.extra_bytes = sg.extra_bytes();
              c.extra_fraction = sg.extra_fraction(ctx.base().footprint_words());
              if (i >= warm) {
                times.push_back(ta);
                builds.push_back(tb);
              }
            }
          } catch (const UnsupportedCombination& e) {
            skipped(c, e.what());
            continue;
          } catch (const ContractViolation& e) {
            skipped(c, e.what());
            continue;
          }
          emit_reps(c, times, builds, count);
        }
      }
    }
  }
}

}  // namespace detail

// Runs the full cross-product graphs x problems x threads x estimators x
// budgets x params x seeds x repetitions. Records are passed to `sink` as
// soon as their cell finishes (thread speedups are filled in the returned
// vector only).
inline std::vector<BenchRecord> run_benchmark(const RunConfig& cfg, const RecordSink& sink = {},
                                              const RunOptions& opt = {}) {
  cfg.validate();
  std::vector<BenchRecord> all;
  for (const auto& src : cfg.graphs) {
    const CsrGraph g = load_source(src);
    for (Problem p : cfg.problems) {
      for (int t : cfg.threads) {
        std::vector<BenchRecord> cell;
        detail::run_cell(cfg, src.name, g, p, t, opt.mode, cell);
        if (sink) {
          for (const auto& r : cell) sink(r);
        }
        all.insert(all.end(), cell.begin(), cell.end());
      }
    }
  }
  detail::fill_thread_speedups(all, false);
  return all;
}

enum class ScalingMode { Strong, Weak };

inline ScalingMode parse_scaling_mode(std::string_view s) {
  if (s == "strong") return ScalingMode::Strong;
  if (s == "weak") return ScalingMode::Weak;
  throw ContractViolation("scaling mode must be strong or weak, got '" + std::string(s) + "'");
}

// Kronecker parameters for thread count t in a weak sweep starting at t0:
// the edge target grows as (t / t0)^2, i.e. twice as fast as the threads.
inline KroneckerSpec weak_scaled(const KroneckerSpec& base, int t0, int t) {
  const double ratio = static_cast<double>(t) / static_cast<double>(t0);
  const double edges = static_cast<double>(base.edge_factor) * std::ldexp(1.0, static_cast<int>(base.scale)) * ratio * ratio;
  KroneckerSpec out = base;
  out.scale = base.scale + static_cast<unsigned>(std::max(0.0, std::floor(std::log2(ratio))));
  out.edge_factor = static_cast<unsigned>(std::max(1.0, std::round(edges / std::ldexp(1.0, static_cast<int>(out.scale)))));
  return out;
}

// Strong: every configured graph at every thread count. Weak: every
// Kronecker graph grown with the thread count; file inputs are rejected.
inline std::vector<BenchRecord> scaling_sweep(const RunConfig& cfg, ScalingMode mode,
                                              const RecordSink& sink = {}) {
  if (mode == ScalingMode::Strong) return run_benchmark(cfg, sink, {.mode = "strong"});
  cfg.validate();
  std::vector<int> threads = cfg.threads;
  std::sort(threads.begin(), threads.end());
  std::vector<BenchRecord> all;
  for (const auto& src : cfg.graphs) {
    if (!src.kronecker) throw ContractViolation("weak scaling needs Kronecker inputs, got '" + src.name + "'");
    for (int t : threads) {
      const KroneckerSpec spec = weak_scaled(*src.kronecker, threads.front(), t);
      const CsrGraph g = generate_kronecker(spec.scale, spec.edge_factor, spec.seed);
      const std::string name =
          src.name + "@s" + std::to_string(spec.scale) + "-e" + std::to_string(spec.edge_factor);
      for (Problem p : cfg.problems) {
        std::vector<BenchRecord> cell;
        detail::run_cell(cfg, name, g, p, t, "weak", cell);
        if (sink) {
          for (const auto& r : cell) sink(r);
        }
        all.insert(all.end(), cell.begin(), cell.end());
      }
    }
  }
  detail::fill_thread_speedups(all, true);
  return all;
}

// ---------------------------------------------------------------------------
// Plot data

enum class PlotKind { Scatter, Bars };

inline PlotKind parse_plot_kind(std::string_view s) {
  if (s == "scatter") return PlotKind::Scatter;
  if (s == "bars") return PlotKind::Bars;
  throw ContractViolation("plot kind must be scatter or bars, got '" + std::string(s) + "'");
}

// Bars: one row per (graph, estimator). Scatter: one row per (graph,
// problem, estimator, s, param). Speedup is mean exact time over mean
// approximate time; relative_count is approx / exact count averaged over
// rows with a non-zero exact count. Skipped records are ignored.
inline void emit_plot_data(const std::vector<BenchRecord>& records, PlotKind kind, std::ostream& out) {
  out << "graph,problem,estimator,s,param,speedup,relative_count,accuracy,memory_fraction,records\n";
  struct Acc {
    double exact_time = 0, approx_time = 0, rel = 0, acc = 0, mem = 0;
    std::size_t n = 0, n_rel = 0;
  };
  using Key = std::tuple<std::string, std::string, std::string, double, double>;
  std::map<Key, Acc> groups;
  std::vector<Key> order;
  for (const auto& r : records) {
    if (r.status != "ok") continue;
    const Key k = kind == PlotKind::Bars ? Key{r.graph, "", r.estimator, 0.0, 0.0}
                                         : Key{r.graph, r.problem, r.estimator, r.s, r.param};
    auto [it, inserted] = groups.try_emplace(k);
    if (inserted) order.push_back(k);
    Acc& a = it->second;
    a.exact_time += r.exact_time;
    a.approx_time += r.approx_time;
    a.mem += r.extra_fraction;
    ++a.n;
    if (r.exact_count != 0.0) {
      a.rel += r.approx_count / r.exact_count;
      a.acc += r.accuracy.value_or(0.0);
      ++a.n_rel;
    }
  }
  using detail::fmt_double;
  for (const auto& k : order) {
    const Acc& a = groups.at(k);
    const double n = static_cast<double>(a.n);
    const bool bars = kind == PlotKind::Bars;
    out << detail::csv_quote(std::get<0>(k)) << ',' << (bars ? "*" : detail::csv_quote(std::get<1>(k))) << ','
        << detail::csv_quote(std::get<2>(k)) << ',' << (bars ? "*" : fmt_double(std::get<3>(k))) << ','
        << (bars ? "*" : fmt_double(std::get<4>(k))) << ','
        << fmt_double(a.approx_time > 0 ? a.exact_time / a.approx_time : 0.0) << ','
        << (a.n_rel ? fmt_double(a.rel / static_cast<double>(a.n_rel)) : "undefined") << ','
        << (a.n_rel ? fmt_double(a.acc / static_cast<double>(a.n_rel)) : "undefined") << ','
        << fmt_double(a.mem / n) << ',' << a.n << '\n';
  }
}

}  // namespace probgraph::bench
