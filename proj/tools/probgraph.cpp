// probgraph command-line front end: benchmarks, bound evaluation and sketch
// files.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "probgraph/bench.hpp"

using namespace probgraph;
using nlohmann::json;

namespace {

// Either --graph PATH or --kronecker SCALE,EF[,SEED].
struct GraphArgs {
  std::string path;
  std::vector<std::uint64_t> kronecker;

  void add_to(CLI::App* cmd) {
    auto* g = cmd->add_option("--graph", path, "edge list or MatrixMarket file");
    auto* k = cmd->add_option("--kronecker", kronecker, "Kronecker graph SCALE,EF[,SEED]")->delimiter(',');
    g->excludes(k);
  }

  CsrGraph load() const {
    if (!path.empty()) return load_graph_file(path).graph;
    if (kronecker.size() < 2 || kronecker.size() > 3) {
      throw ContractViolation("pass --graph PATH or --kronecker SCALE,EF[,SEED]");
    }
    return generate_kronecker(static_cast<unsigned>(kronecker[0]), static_cast<unsigned>(kronecker[1]),
                              kronecker.size() == 3 ? kronecker[2] : 1);
  }
};

// Output stream that is stdout unless a path is given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ContractViolation("cannot write '" + path + "'");
    }
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

json record_summary(const std::vector<bench::BenchRecord>& records) {
  std::size_t ok = 0, skipped = 0;
  for (const auto& r : records) (r.status == "ok" ? ok : skipped)++;
  return {{"records", records.size()}, {"ok", ok}, {"skipped", skipped}};
}

json bound_to_json(const BoundValue& v) {
  if (v.in_regime()) return {{"in_regime", true}, {"value", *v.value}};
  return {{"in_regime", false}, {"reason", v.reason}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"probgraph: graph mining with probabilistic set representations"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (0: PROBGRAPH_THREADS or OpenMP default)");

  // bench ------------------------------------------------------------------
  auto* bench_cmd = app.add_subcommand("bench", "run benchmarks and post-process records");
  bench_cmd->require_subcommand(1);

  std::string config_path, out_path;
  auto* run_cmd = bench_cmd->add_subcommand("run", "run the configured cross-product");
  run_cmd->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--output", out_path, "records CSV (default stdout)");

  std::string mode = "strong";
  auto* scaling_cmd = bench_cmd->add_subcommand("scaling", "strong or weak scaling sweep over the configured threads");
  scaling_cmd->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
  scaling_cmd->add_option("--mode", mode, "strong | weak")->check(CLI::IsMember({"strong", "weak"}));
  scaling_cmd->add_option("--output", out_path, "records CSV (default stdout)");

  std::string records_path, plot_kind = "bars";
  auto* plot_cmd = bench_cmd->add_subcommand("plot", "turn records into plot-ready CSV");
  plot_cmd->add_option("--input", records_path, "records CSV")->required()->check(CLI::ExistingFile);
  plot_cmd->add_option("--kind", plot_kind, "bars | scatter")->check(CLI::IsMember({"bars", "scatter"}));
  plot_cmd->add_option("--output", out_path, "plot CSV (default stdout)");

  // bounds -----------------------------------------------------------------
  auto* bounds_cmd = app.add_subcommand("bounds", "evaluate deviation bounds");
  bounds_cmd->require_subcommand(1);
  auto* eval_cmd = bounds_cmd->add_subcommand("eval", "print a bound as JSON");
  std::string estimator = "bf_and";
  BoundQuery q;
  bool triangle = false;
  GraphArgs bound_graph;
  std::string form = "squared";
  eval_cmd->add_option("--estimator", estimator, "bf_and | khash | onehash | exact_merge | ...");
  eval_cmd->add_option("--bits", q.bits, "Bloom filter size B_X");
  eval_cmd->add_option("--b", q.b, "Bloom filter hash functions");
  eval_cmd->add_option("--k", q.k, "MinHash sketch size");
  eval_cmd->add_option("--size-x", q.size_x, "|X|");
  eval_cmd->add_option("--size-y", q.size_y, "|Y|");
  eval_cmd->add_option("--intersection", q.intersection, "|X ∩ Y|");
  eval_cmd->add_option("--t", q.t, "deviation t")->required();
  eval_cmd->add_flag("--tc", triangle, "triangle-count bound over --graph/--kronecker");
  eval_cmd->add_option("--form", form, "squared | cubed (MinHash triangle bound)")
      ->check(CLI::IsMember({"squared", "cubed"}));
  bound_graph.add_to(eval_cmd);

  // sketch -----------------------------------------------------------------
  auto* sketch_cmd = app.add_subcommand("sketch", "write and read sketch files");
  sketch_cmd->require_subcommand(1);
  GraphArgs sketch_graph;
  std::string kind_name = "bf", sketch_path;
  double budget = 0.25;
  std::uint64_t size = 0, seed = kDefaultHashSeed;
  std::uint32_t hashes = 2;
  bool directed = false, verify = false;

  auto* dump_cmd = sketch_cmd->add_subcommand("dump", "build sketches for a graph and write them");
  sketch_graph.add_to(dump_cmd);
  dump_cmd->add_option("--kind", kind_name, "bf | khash | onehash | kmv");
  dump_cmd->add_option("--s", budget, "storage budget as a fraction of the CSR");
  dump_cmd->add_option("--size", size, "explicit size (bits for bf, k otherwise); overrides --s");
  dump_cmd->add_option("--b", hashes, "Bloom filter hash functions");
  dump_cmd->add_option("--seed", seed, "hash family seed");
  dump_cmd->add_flag("--directed", directed, "sketch N+ of the degree-ordered view instead of N");
  dump_cmd->add_option("--output", sketch_path, "sketch file")->required();

  auto* load_cmd = sketch_cmd->add_subcommand("load", "read a sketch file and summarize it");
  load_cmd->add_option("--input", sketch_path, "sketch file")->required()->check(CLI::ExistingFile);
  sketch_graph.add_to(load_cmd);
  load_cmd->add_flag("--directed", directed, "the file holds N+ sketches");
  load_cmd->add_flag("--verify", verify, "rebuild from the graph and compare");

  // graph ------------------------------------------------------------------
  auto* graph_cmd = app.add_subcommand("graph", "graph utilities");
  graph_cmd->require_subcommand(1);
  GraphArgs gen_graph;
  auto* gen_cmd = graph_cmd->add_subcommand("gen", "write a generated or cleaned graph as an edge list");
  gen_graph.add_to(gen_cmd);
  gen_cmd->add_option("--output", out_path, "edge list (default stdout)");
  auto* info_cmd = graph_cmd->add_subcommand("info", "print graph statistics as JSON");
  GraphArgs info_graph;
  info_graph.add_to(info_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed() || scaling_cmd->parsed()) {
      auto cfg = bench::load_config(config_path);
      if (threads > 0) cfg.threads = {threads};
      Output out(out_path);
      bench::write_csv_header(out.get());
      auto sink = [&](const bench::BenchRecord& r) { bench::append_csv_record(out.get(), r); };
      const auto records = run_cmd->parsed()
                               ? bench::run_benchmark(cfg, sink)
                               : bench::scaling_sweep(cfg, bench::parse_scaling_mode(mode), sink);
      std::cerr << record_summary(records).dump() << '\n';
      if (!out_path.empty() && scaling_cmd->parsed()) {
        // Rewrite with the thread speedups, which are known only at the end.
        Output again(out_path);
        bench::write_csv(again.get(), records);
      }
    } else if (plot_cmd->parsed()) {
      std::ifstream in(records_path);
      const auto records = bench::read_csv(in);
      Output out(out_path);
      bench::emit_plot_data(records, bench::parse_plot_kind(plot_kind), out.get());
    } else if (eval_cmd->parsed()) {
      const auto kind = parse_estimator_kind(estimator);
      if (!kind) throw ContractViolation("unknown estimator '" + estimator + "'");
      json j{{"estimator", estimator}, {"t", q.t}};
      if (triangle) {
        const CsrGraph g = bound_graph.load();
        TcBoundInputs in = tc_bound_inputs(degree_stats(g), g.num_edges());
        in.bits = q.bits;
        in.b = q.b;
        in.k = q.k;
        j["bound"] = bound_to_json(bound_tc(*kind, in, q.t,
                                            form == "cubed" ? TcBoundForm::CubedDegrees
                                                            : TcBoundForm::SquaredDegrees));
        j["problem"] = "tc";
      } else if (*kind == EstimatorKind::BfAnd) {
        j["mse"] = bound_to_json(bound_bf_mse(q));
        j["bound"] = bound_to_json(bound_bf_deviation(q));
      } else if (*kind == EstimatorKind::KHash || *kind == EstimatorKind::OneHash) {
        j["bound"] = bound_to_json(BoundValue::of(bound_minhash_tail(q.k, q.size_x, q.size_y, q.t)));
      } else if (is_exact(*kind)) {
        j["bound"] = bound_to_json(BoundValue::of(q.t > 0 ? 0.0 : 1.0));
      } else {
        j["bound"] = bound_to_json(BoundValue::out_of_regime("no bound for estimator " + estimator));
      }
      std::cout << j.dump() << '\n';
    } else if (dump_cmd->parsed()) {
      const CsrGraph g = sketch_graph.load();
      const SketchKind sk = parse_sketch_kind(kind_name);
      const BudgetPlan plan = size > 0 ? fixed_plan(g, sk, size, hashes) : plan_budget(g, sk, budget, hashes);
      std::optional<DirectedView> view;
      if (directed) view.emplace(g);
      const SketchedGraph sg =
          directed ? SketchedGraph::build(*view, plan, seed, threads) : SketchedGraph::build(g, plan, seed, threads);
      std::ofstream out(sketch_path, std::ios::binary);
      if (!out) throw ContractViolation("cannot write '" + sketch_path + "'");
      sg.write_dump(out);
      std::cout << json{{"kind", kind_name},
                        {"n", g.num_vertices()},
                        {"size", plan.size_parameter()},
                        {"extra_bytes", sg.extra_bytes()},
                        {"extra_fraction", sg.extra_fraction(g.footprint_words())}}
                       .dump()
                << '\n';
    } else if (load_cmd->parsed()) {
      std::ifstream in(sketch_path, std::ios::binary);
      const SketchDump d = read_sketch_dump(in);
      json j{{"kind", std::string(to_string(d.kind))}, {"n", d.n}, {"size", d.size}, {"b", d.b}, {"seed", d.seed}};
      if (!sketch_graph.path.empty() || !sketch_graph.kronecker.empty()) {
        const CsrGraph g = sketch_graph.load();
        std::optional<DirectedView> view;
        if (directed) view.emplace(g);
        const SketchedGraph sg = directed ? SketchedGraph::restore(d, *view) : SketchedGraph::restore(d, g);
        j["extra_bytes"] = sg.extra_bytes();
        j["extra_fraction"] = sg.extra_fraction(g.footprint_words());
        if (verify) {
          const SketchedGraph fresh = directed ? SketchedGraph::build(*view, sg.plan(), d.seed, threads)
                                               : SketchedGraph::build(g, sg.plan(), d.seed, threads);
          j["verified"] = fresh == sg;
          if (!(fresh == sg)) {
            std::cout << j.dump() << '\n';
            std::cerr << "error: sketch file does not match a rebuild from the graph\n";
            return 1;
          }
        }
      } else if (verify) {
        throw ContractViolation("--verify needs --graph or --kronecker");
      }
      std::cout << j.dump() << '\n';
    } else if (gen_cmd->parsed()) {
      const CsrGraph g = gen_graph.load();
      Output out(out_path);
      write_edge_list(g, out.get());
    } else if (info_cmd->parsed()) {
      const CsrGraph g = info_graph.load();
      const DegreeStats s = degree_stats(g);
      const DirectedView view(g);
      std::cout << json{{"n", g.num_vertices()},
                        {"m", g.num_edges()},
                        {"max_degree", s.max_degree},
                        {"mean_degree", s.mean_degree},
                        {"sum_d2", s.sum_d2},
                        {"triangles", triangle_count(view, ExactProvider<DirectedView>(view), threads)}}
                       .dump()
                << '\n';
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
