// Copyright 2026 The gapart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: data generation, training, partitioning, baselines,
// evaluation over manifests and performance profiles.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gapart/checkpoint.hpp"
#include "gapart/dataset.hpp"
#include "gapart/gap.hpp"
#include "gapart/io.hpp"
#include "gapart/metrics.hpp"
#include "gapart/random.hpp"
#include "gapart/spectral.hpp"
#include "gapart/train.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace gapart::cli {
namespace {

using Clock = std::chrono::steady_clock;

struct Common {
  std::uint64_t seed = 0;
  bool no_timing = false;
  std::string balance = "cardinality";
};

BalanceKind balance_kind(const std::string& name) {
  if (name == "cardinality") return BalanceKind::kCardinality;
  if (name == "volume") return BalanceKind::kVolume;
  throw std::invalid_argument("unknown balance kind '" + name + "'");
}

std::string number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path.string());
  out << text;
  if (!out) throw FormatError("failed writing " + path.string());
}

// ---------------------------------------------------------------------------
// Partitioning methods shared by the single-graph commands and `evaluate`.

enum class Method { kSpectral, kApproxSpectral, kGap };

Method parse_method(const std::string& name) {
  if (name == "spectral") return Method::kSpectral;
  if (name == "approx-spectral") return Method::kApproxSpectral;
  if (name == "gap") return Method::kGap;
  throw std::invalid_argument("unknown method '" + name + "' (spectral, approx-spectral, gap)");
}

struct Networks {
  std::optional<EmbeddingNet> embedding;
  std::optional<PartitionNet> partitioner;
};

Networks load_networks(Method m, const std::string& embed, const std::string& part) {
  Networks n;
  if (m == Method::kSpectral) return n;
  if (embed.empty()) throw std::invalid_argument("--embed is required for this method");
  n.embedding = load_embedding(fs::path(embed));
  if (m == Method::kGap) {
    if (part.empty()) throw std::invalid_argument("--part is required for this method");
    n.partitioner = load_partitioner(fs::path(part));
  }
  return n;
}

// Runs one method; only the partitioning call itself is timed.
PartitionResult run_method(Method m, const Networks& nets, const CsrGraph& g, std::uint64_t seed,
                           std::int32_t evaluations, BalanceKind kind, bool timing) {
  InferenceOptions opts;
  opts.evaluations = evaluations;
  const auto t0 = Clock::now();
  PartitionResult r;
  switch (m) {
    case Method::kSpectral: r = spectral_partition(g); break;
    case Method::kApproxSpectral: r = approx_spectral_partition(*nets.embedding, g, seed, opts).best; break;
    case Method::kGap: r = gap_partition(*nets.embedding, *nets.partitioner, g, seed, opts).best; break;
  }
  const double elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  r.balance = balance(g, r.labels, kind);
  r.runtime_s = timing ? elapsed : 0.0;
  return r;
}

json metrics_json(const std::string& graph, const std::string& method, const ComponentExtraction& ext,
                  const PartitionResult& r, std::uint64_t seed) {
  return {{"graph", graph},
          {"method", method},
          {"seed", seed},
          {"nodes", ext.graph.num_nodes()},
          {"edges", ext.graph.num_edges()},
          {"dropped_nodes", ext.old_to_new.size() - ext.new_to_old.size()},
          {"NC", r.ncut},
          {"B", r.balance},
          {"C", r.cut},
          {"RC", r.rcut},
          {"T", r.runtime_s}};
}

// ---------------------------------------------------------------------------
// Subcommands.

struct GenerateArgs {
  std::vector<std::string> families = SampleOptions{}.families;
  std::int32_t count = 100;
  NodeId min_nodes = 100;
  NodeId max_nodes = 1000;
  std::string out;
  std::string graphs_dir;
};

void cmd_generate(const GenerateArgs& a, const Common& c) {
  SampleOptions opts;
  opts.families = a.families;
  opts.count = a.count;
  opts.min_nodes = a.min_nodes;
  opts.max_nodes = a.max_nodes;
  opts.seed = c.seed;
  auto specs = sample_specs(opts);
  const fs::path manifest(a.out);
  if (!a.graphs_dir.empty()) {
    // Materialise each recipe as a METIS file referenced relative to the manifest.
    const fs::path dir(a.graphs_dir);
    fs::create_directories(dir);
    const fs::path base = manifest.has_parent_path() ? manifest.parent_path() : fs::path(".");
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const fs::path file = dir / (std::to_string(i) + "_" + spec_name(specs[i]) + ".graph");
      write_metis_graph(make_graph(specs[i]), file);
      specs[i].path = fs::relative(file, base).generic_string();
    }
  }
  write_manifest(specs, manifest);
  std::cout << json{{"manifest", a.out}, {"graphs", specs.size()}}.dump() << '\n';
}

struct TrainArgs {
  std::string manifest;
  std::string config;
  std::string out;
  std::string history;
  std::string embed;
  std::optional<double> lr;
  std::optional<std::int32_t> batch_size;
  std::optional<std::int32_t> epochs;
  std::optional<std::uint64_t> init_seed;
  bool balanced = false;
  bool quiet = false;
};

// Defaults, then the JSON config, then explicit flags.
TrainConfig resolve_config(TrainArgs& a, const Common& c, const std::string& stage, CLI::App& sub) {
  TrainConfig cfg;
  cfg.seed = c.seed;
  cfg.epochs = stage == "embedding" ? 120 : 500;
  if (!a.config.empty()) {
    std::ifstream in(a.config);
    if (!in) throw FormatError("cannot open " + a.config);
    json j;
    try {
      j = json::parse(in);
      if (j.contains("stage") && j.at("stage").get<std::string>() != stage) {
        throw std::invalid_argument("config is for stage '" + j.at("stage").get<std::string>() + "'");
      }
      cfg.lr = j.value("lr", cfg.lr);
      cfg.batch_size = j.value("batch_size", cfg.batch_size);
      cfg.epochs = j.value("epochs", cfg.epochs);
      cfg.balanced = j.value("balanced", cfg.balanced);
      if (j.contains("seed") && sub.get_option("--seed")->count() == 0) cfg.seed = j.at("seed").get<std::uint64_t>();
      if (a.manifest.empty()) a.manifest = j.value("manifest", std::string());
    } catch (const json::exception& e) {
      throw FormatError("config " + a.config + ": " + e.what());
    }
  }
  if (a.lr) cfg.lr = *a.lr;
  if (a.batch_size) cfg.batch_size = *a.batch_size;
  if (a.epochs) cfg.epochs = *a.epochs;
  if (a.balanced) cfg.balanced = true;
  if (a.manifest.empty()) throw std::invalid_argument("a dataset manifest is required (--manifest or config)");
  if (!a.quiet) {
    cfg.on_epoch = [](const EpochStats& e) {
      std::cerr << "epoch " << e.epoch + 1 << " loss " << e.mean_loss << " steps " << e.steps << '\n';
    };
  }
  return cfg;
}

void report_training(const TrainArgs& a, const TrainHistory& h) {
  if (!a.history.empty()) write_history_csv(h, a.history);
  json out = {{"checkpoint", a.out}, {"epochs", h.epochs.size()}};
  if (!h.epochs.empty()) {
    out["first_loss"] = h.epochs.front().mean_loss;
    out["final_loss"] = h.epochs.back().mean_loss;
  }
  std::cout << out.dump() << '\n';
}

void cmd_train_embedding(TrainArgs& a, const Common& c, CLI::App& sub) {
  const TrainConfig cfg = resolve_config(a, c, "embedding", sub);
  const auto graphs = load_dataset(a.manifest);
  auto net = EmbeddingNet::initialized(a.init_seed.value_or(derive_seed(cfg.seed, 0x1e)));
  const auto h = train_embedding(net, graphs, cfg);
  save_checkpoint(net, fs::path(a.out));
  report_training(a, h);
}

void cmd_train_partitioner(TrainArgs& a, const Common& c, CLI::App& sub) {
  const TrainConfig cfg = resolve_config(a, c, "partitioning", sub);
  const auto enet = load_embedding(fs::path(a.embed));
  const auto graphs = load_dataset(a.manifest);
  auto net = PartitionNet::initialized(a.init_seed.value_or(derive_seed(cfg.seed, 0x2e)));
  const auto h = train_partitioner(net, enet, graphs, cfg);
  save_checkpoint(net, fs::path(a.out));
  report_training(a, h);
}

struct PartitionArgs {
  std::string graph;
  std::string embed;
  std::string part;
  std::string out;
  std::string metrics;
  std::int32_t evaluations = 2;
};

void cmd_partition(Method m, const std::string& method_name, const PartitionArgs& a, const Common& c) {
  const auto nets = load_networks(m, a.embed, a.part);
  const auto ext = read_graph_for_partitioning(a.graph);
  const auto r = run_method(m, nets, ext.graph, c.seed, a.evaluations, balance_kind(c.balance), !c.no_timing);
  write_partition(r.labels, fs::path(a.out.empty() ? a.graph + ".part" : a.out));
  const std::string text = metrics_json(a.graph, method_name, ext, r, c.seed).dump(2) + "\n";
  if (!a.metrics.empty()) write_text(a.metrics, text);
  std::cout << text;
}

struct EvaluateArgs {
  std::string manifest;
  std::string method;
  std::string embed;
  std::string part;
  std::string out;
  std::int32_t evaluations = 2;
};

std::int32_t thread_count() {
  const char* env = std::getenv("GAPART_THREADS");
  if (!env || !*env) return 1;
  const int v = std::atoi(env);
  if (v < 1) throw std::invalid_argument("GAPART_THREADS must be a positive integer");
  return v;
}

void cmd_evaluate(const EvaluateArgs& a, const Common& c) {
  const Method m = parse_method(a.method);
  const auto nets = load_networks(m, a.embed, a.part);
  const auto specs = read_manifest(a.manifest);
  const fs::path base = fs::path(a.manifest).parent_path();
  const BalanceKind kind = balance_kind(c.balance);

  std::vector<std::string> rows(specs.size());
  std::vector<std::string> errors(specs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < specs.size(); i = next++) {
      try {
        const auto g = load_graph(specs[i], base);
        const auto r = run_method(m, nets, g, derive_seed(c.seed, i), a.evaluations, kind, !c.no_timing);
        rows[i] = spec_name(specs[i]) + "," + number(r.ncut) + "," + number(r.balance) + "," + std::to_string(r.cut) +
                  "," + number(r.runtime_s) + "\n";
      } catch (const std::exception& e) {
        errors[i] = spec_name(specs[i]) + ": " + e.what();
      }
    }
  };
  const auto threads = std::min<std::size_t>(static_cast<std::size_t>(thread_count()), std::max<std::size_t>(specs.size(), 1));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw std::runtime_error(e);
  }

  std::string table = "graph,NC,B,C,T\n";
  for (const auto& r : rows) table += r;
  if (a.out.empty()) {
    std::cout << table;
  } else {
    write_text(a.out, table);
  }
}

struct Table {
  std::vector<std::string> graphs;
  std::vector<double> values;
};

Table read_table(const fs::path& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw FormatError(path.string() + ": empty table");
  const auto header = split(line);
  const auto col = std::find(header.begin(), header.end(), column);
  if (header.empty() || header[0] != "graph" || col == header.end()) {
    throw FormatError(path.string() + ": expected a 'graph' column and a '" + column + "' column");
  }
  const auto idx = static_cast<std::size_t>(col - header.begin());
  Table t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) throw FormatError(path.string() + ": ragged row '" + line + "'");
    t.graphs.push_back(cells[0]);
    try {
      t.values.push_back(std::stod(cells[idx]));
    } catch (const std::exception&) {
      throw FormatError(path.string() + ": bad number '" + cells[idx] + "'");
    }
  }
  return t;
}

struct ProfileArgs {
  std::vector<std::string> tables;
  std::vector<std::string> names;
  std::string column = "NC";
  std::string csv;
  std::string svg;
  int points = 101;
};

void cmd_profile(const ProfileArgs& a) {
  if (!a.names.empty() && a.names.size() != a.tables.size()) {
    throw std::invalid_argument("--names must list one name per table");
  }
  std::vector<std::string> methods;
  std::vector<std::vector<double>> values;
  std::vector<std::string> graphs;
  for (std::size_t k = 0; k < a.tables.size(); ++k) {
    const auto t = read_table(a.tables[k], a.column);
    if (k == 0) {
      graphs = t.graphs;
    } else if (t.graphs != graphs) {
      throw std::invalid_argument(a.tables[k] + ": graph column differs from " + a.tables[0]);
    }
    methods.push_back(a.names.empty() ? fs::path(a.tables[k]).stem().string() : a.names[k]);
    values.push_back(t.values);
  }
  const auto profile = performance_profile(methods, values, default_ratio_grid(values, a.points));
  std::ostringstream csv;
  write_profile_csv(profile, csv);
  if (a.csv.empty()) {
    std::cout << csv.str();
  } else {
    write_text(a.csv, csv.str());
  }
  if (!a.svg.empty()) {
    std::ostringstream svg;
    write_profile_svg(profile, svg);
    write_text(a.svg, svg.str());
  }
}

int run(int argc, char** argv) {
  CLI::App app{"gapart: graph bisection with multilevel graph neural networks and spectral baselines"};
  app.require_subcommand(1);
  Common common;

  auto add_common = [&common](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed for every random choice")->capture_default_str();
  };
  auto add_output_flags = [&common](CLI::App* sub) {
    sub->add_flag("--no-timing", common.no_timing, "Report T = 0 so that outputs are byte-reproducible");
    sub->add_option("--balance", common.balance, "Balance definition: cardinality or volume")
        ->capture_default_str()
        ->check(CLI::IsMember({"cardinality", "volume"}));
  };

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a manifest of synthetic training or test graphs");
  add_common(generate);
  generate->add_option("--out", gen.out, "Manifest path")->required();
  generate->add_option("--families", gen.families, "Graph families")->delimiter(',')->capture_default_str();
  generate->add_option("--count", gen.count, "Number of graphs")->capture_default_str()->check(CLI::NonNegativeNumber);
  generate->add_option("--min-nodes", gen.min_nodes, "Smallest target size")->capture_default_str();
  generate->add_option("--max-nodes", gen.max_nodes, "Largest target size")->capture_default_str();
  generate->add_option("--graphs-dir", gen.graphs_dir, "Also write each graph as a METIS file here");

  TrainArgs te;
  auto* train_e = app.add_subcommand("train-embedding", "Train the spectral embedding network");
  TrainArgs tp;
  auto* train_p = app.add_subcommand("train-partitioner", "Train the partitioning network on a frozen embedding");
  for (auto [sub, args] : {std::pair{train_e, &te}, std::pair{train_p, &tp}}) {
    add_common(sub);
    sub->add_option("--manifest", args->manifest, "Dataset manifest (JSON)");
    sub->add_option("--config", args->config, "JSON config: lr, batch_size, epochs, seed, manifest, stage");
    sub->add_option("--out", args->out, "Checkpoint to write")->required();
    sub->add_option("--history", args->history, "Per-epoch loss history (CSV)");
    sub->add_option("--lr", args->lr, "Adam learning rate")->check(CLI::PositiveNumber);
    sub->add_option("--batch-size", args->batch_size, "Graphs per optimizer step")->check(CLI::PositiveNumber);
    sub->add_option("--epochs", args->epochs, "Passes over the dataset")->check(CLI::NonNegativeNumber);
    sub->add_option("--init-seed", args->init_seed, "Seed of the weight initialisation (derived from --seed by default)");
    sub->add_flag("--quiet", args->quiet, "No per-epoch progress on stderr");
  }
  train_p->add_option("--embed", tp.embed, "Trained embedding checkpoint")->required();
  train_p->add_flag("--balanced", tp.balanced, "Add the cardinality penalty to the loss");

  PartitionArgs pa;
  auto* partition = app.add_subcommand("partition", "Bisect a graph with the trained networks");
  PartitionArgs sa;
  auto* spectral = app.add_subcommand("spectral", "Bisect a graph with the exact Fiedler vector and a sweep");
  PartitionArgs aa;
  auto* approx = app.add_subcommand("approx-spectral", "Bisect a graph with the learned embedding and a sweep");
  for (auto [sub, args] : {std::pair{partition, &pa}, std::pair{spectral, &sa}, std::pair{approx, &aa}}) {
    add_common(sub);
    add_output_flags(sub);
    sub->add_option("--graph", args->graph, "Graph file (.mtx or METIS)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", args->out, "Partition file (default: <graph>.part)");
    sub->add_option("--metrics", args->metrics, "Also write the JSON metrics here");
  }
  for (auto [sub, args] : {std::pair{partition, &pa}, std::pair{approx, &aa}}) {
    sub->add_option("--embed", args->embed, "Embedding checkpoint")->required();
    sub->add_option("--evaluations", args->evaluations, "Independent evaluations; the lowest Ncut is kept")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
  }
  partition->add_option("--part", pa.part, "Partitioner checkpoint")->required();

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "Run one method over a manifest and write graph,NC,B,C,T");
  add_common(evaluate);
  add_output_flags(evaluate);
  evaluate->add_option("--manifest", ea.manifest, "Manifest of graphs")->required();
  evaluate->add_option("--method", ea.method, "spectral, approx-spectral or gap")
      ->required()
      ->check(CLI::IsMember({"spectral", "approx-spectral", "gap"}));
  evaluate->add_option("--embed", ea.embed, "Embedding checkpoint");
  evaluate->add_option("--part", ea.part, "Partitioner checkpoint");
  evaluate->add_option("--evaluations", ea.evaluations, "Evaluations per graph")->capture_default_str();
  evaluate->add_option("--out", ea.out, "CSV output (default: stdout)");
  evaluate->footer("Set GAPART_THREADS to process graphs in parallel; rows keep manifest order.");

  ProfileArgs pr;
  auto* profile = app.add_subcommand("profile", "Performance profile over several evaluate tables");
  profile->add_option("tables", pr.tables, "Tables written by evaluate")->required()->check(CLI::ExistingFile);
  profile->add_option("--names", pr.names, "Method names (default: table file stems)")->delimiter(',');
  profile->add_option("--column", pr.column, "Column to compare")->capture_default_str();
  profile->add_option("--points", pr.points, "Points of the ratio grid")->capture_default_str()->check(CLI::Range(2, 100000));
  profile->add_option("--csv", pr.csv, "Profile CSV (default: stdout)");
  profile->add_option("--svg", pr.svg, "Profile plot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.get_exit_code() == 0 ? 2 : e.get_exit_code();
  }

  if (generate->parsed()) cmd_generate(gen, common);
  if (train_e->parsed()) cmd_train_embedding(te, common, *train_e);
  if (train_p->parsed()) cmd_train_partitioner(tp, common, *train_p);
  if (partition->parsed()) cmd_partition(Method::kGap, "gap", pa, common);
  if (spectral->parsed()) cmd_partition(Method::kSpectral, "spectral", sa, common);
  if (approx->parsed()) cmd_partition(Method::kApproxSpectral, "approx-spectral", aa, common);
  if (evaluate->parsed()) cmd_evaluate(ea, common);
  if (profile->parsed()) cmd_profile(pr);
  return 0;
}

}  // namespace
}  // namespace gapart::cli

int main(int argc, char** argv) {
  try {
    return gapart::cli::run(argc, argv);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& ch : msg) {
      if (ch == '\n' || ch == '\r') ch = ' ';
    }
    std::cerr << "error: " << msg << '\n';
    return 1;
  }
}
