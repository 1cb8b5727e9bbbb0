// Copyright 2026 The sonsim Authors
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

#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "sonsim/config.hpp"
#include "sonsim/dtree.hpp"
#include "sonsim/engine.hpp"
#include "sonsim/error.hpp"
#include "sonsim/ksp.hpp"
#include "sonsim/network.hpp"

namespace sonsim::cli {

namespace {

namespace fs = std::filesystem;

constexpr const char* kConfigKeys[] = {
    "seed",           "np",           "nsp",        "sp_expertise_size", "tokens_per_domain",
    "friends_per_sp", "dup_count",    "min_peer_expertise", "n_components",
    "queries_per_peer", "eps_acc",    "max_hops",   "tau_trust",         "min_leaf",
    "refresh_every",  "c_hop",        "c_map",      "c_tree",            "workload_mode",
};

struct ConfigOptions {
  std::string config_file;
  std::map<std::string, std::string> overrides;
};

void add_config_options(CLI::App* cmd, ConfigOptions& opts) {
  cmd->add_option("--config", opts.config_file, "key = value configuration file")
      ->check(CLI::ExistingFile);
  for (const char* key : kConfigKeys) {
    cmd->add_option(fmt::format("--{}", key), opts.overrides[key],
                    fmt::format("override '{}'", key));
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

Config load_config(const ConfigOptions& opts) {
  Config config;
  if (!opts.config_file.empty()) config = parse_config(read_file(opts.config_file));
  for (const auto& [key, value] : opts.overrides) {
    if (!value.empty()) apply_setting(config, key, value);
  }
  config.validate();
  return config;
}

// --out-dir wins, then $SONSIM_OUT_DIR, then ./out.
fs::path output_dir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env && *env) return env;
  return "out";
}

std::vector<NetworkSize> parse_sizes(const std::string& text) {
  std::vector<NetworkSize> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto x = item.find('x');
    if (x == std::string::npos) throw Error("size '" + item + "' is not of the form NPxNSP");
    try {
      out.push_back({static_cast<std::uint32_t>(std::stoul(item.substr(0, x))),
                     static_cast<std::uint32_t>(std::stoul(item.substr(x + 1)))});
    } catch (const std::logic_error&) {
      throw Error("size '" + item + "' is not of the form NPxNSP");
    }
  }
  return out;
}

void print_summary(const ExperimentReport& report, std::ostream& out) {
  for (const auto& s : report.summaries) {
    out << fmt::format(
        "{:<8} queries={} response_time={:.3f} precision={:.4f} recall={:.4f} "
        "sp_precision={:.4f} mapping_ops={} hops={}\n",
        to_string(s.strategy), s.queries, s.mean_response_time, s.mean_precision,
        s.mean_recall, s.mean_sp_precision, s.total_mapping_ops, s.total_hops);
  }
}

int cmd_generate(const ConfigOptions& opts, const std::string& out_flag, std::ostream& out) {
  auto config = load_config(opts);
  auto net = build_son(config);
  auto path = output_dir(out_flag) / "network.txt";
  write_file(path, serialize(net));
  out << fmt::format("{} peers, {} communities -> {}\n", net.peers.size(),
                     net.super_peers.size(), path.string());
  for (const auto& [id, sp] : net.super_peers) {
    out << fmt::format("  {} domain={} members={} friends={} expertise={}\n", to_string(id),
                       sp.domain.name(), sp.members.size(), sp.friends.size(),
                       sp.expertise.size());
  }
  return 0;
}

int cmd_run(const ConfigOptions& opts, const std::string& strategy,
            const std::string& log_file, const std::string& out_flag, std::ostream& out) {
  auto config = load_config(opts);
  ExperimentOptions options;
  options.report_baseline = strategy != "ksp";
  options.report_ksp = strategy != "baseline";
  if (!log_file.empty()) {
    if (config.workload_mode != WorkloadMode::kReplay) {
      throw Error("--log is only used with workload_mode = replay");
    }
    options.prior_log = parse_query_log(read_file(log_file));
  } else if (config.workload_mode == WorkloadMode::kReplay && strategy == "ksp") {
    throw Error("the ksp strategy in replay mode needs a prior query log (--log)");
  }

  auto report = run_experiment(config, options);
  auto dir = output_dir(out_flag);
  write_file(dir / "config.txt", to_text(config));
  write_file(dir / "queries.csv", per_query_csv(report));
  write_file(dir / "summary.csv", summary_csv(report));
  write_file(dir / "query_log.tsv", to_text(report.training_log));

  if (report.overlay) {
    write_file(dir / "ksp_query_log.tsv", to_text(report.ksp_log));
    for (const auto& group : report.overlay->groups) {
      auto stem = fmt::format("ksp_group_{}", group.id.value);
      auto rows = instances_from_log(group.log_slice);
      write_file(dir / (stem + ".arff"), arff_export(rows, stem, config.n_components));
      if (group.index) write_file(dir / (stem + ".tree.txt"), render_tree(*group.index));
    }
    out << fmt::format("{} domain-groups; index accuracy train={:.4f} held-out={:.4f}\n",
                       report.overlay->groups.size(), report.index_accuracy.training,
                       report.index_accuracy.held_out);
  }
  print_summary(report, out);
  out << "outputs in " << dir.string() << "\n";
  return 0;
}

int cmd_sweep(const ConfigOptions& opts, const std::string& sizes_text, unsigned jobs,
              const std::string& out_flag, std::ostream& out) {
  auto config = load_config(opts);
  auto sizes = sizes_text.empty() ? default_sweep_sizes() : parse_sizes(sizes_text);
  auto reports = sweep(config, sizes, jobs);
  auto path = output_dir(out_flag) / "sweep.csv";
  write_file(path, sweep_csv(reports));
  for (const auto& r : reports) {
    out << fmt::format("np={} nsp={} seed={}\n", r.config.np, r.config.nsp, r.config.seed);
    print_summary(r, out);
  }
  out << "summary in " << path.string() << "\n";
  return 0;
}

int cmd_train_index(const std::string& log_file, std::size_t min_leaf,
                    const std::string& out_flag, std::ostream& out) {
  auto log = parse_query_log(read_file(log_file));
  if (log.empty()) throw Error("the query log is empty");
  auto rows = instances_from_log(log);
  if (rows.empty()) throw Error("no log record has an answering super-peer");
  auto dir = output_dir(out_flag);
  auto arity = log.records().front().components.size();
  write_file(dir / "index.arff", arff_export(rows, "query_log", arity));
  auto tree = build_tree(rows, min_leaf);
  write_file(dir / "index.tree.txt", render_tree(tree));
  auto acc = evaluate_index(log, min_leaf);
  out << fmt::format("{} records, {} instances, depth {}, train accuracy {:.4f}, "
                     "held-out accuracy {:.4f}\n",
                     log.size(), rows.size(), tree.depth(), acc.training, acc.held_out);
  out << "outputs in " << dir.string() << "\n";
  return 0;
}

int cmd_render_tree(const std::string& arff_file, std::size_t min_leaf, std::ostream& out) {
  auto data = arff_import(read_file(arff_file));
  if (data.instances.empty()) throw Error("the ARFF file has no data rows");
  out << render_tree(build_tree(data.instances, min_leaf));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Super-peer semantic overlay and knowledge-based routing simulator", "sonsim"};
  app.require_subcommand(1);

  ConfigOptions gen_opts;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "build a network and write network.txt");
  add_config_options(gen, gen_opts);
  gen->add_option("--out-dir", gen_out, "output directory");

  ConfigOptions run_opts;
  std::string strategy = "both";
  std::string log_file;
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "route a workload and write reports");
  add_config_options(run_cmd, run_opts);
  run_cmd->add_option("--strategy", strategy, "baseline, ksp or both")
      ->check(CLI::IsMember({"baseline", "ksp", "both"}));
  run_cmd->add_option("--log", log_file, "prior query log to replay (replay mode)")
      ->check(CLI::ExistingFile);
  run_cmd->add_option("--out-dir", run_out, "output directory");

  ConfigOptions sweep_opts;
  std::string sizes;
  unsigned jobs = 1;
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "run both strategies over network sizes");
  add_config_options(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--sizes", sizes, "comma-separated NPxNSP list (default 300x10..5000x54)");
  sweep_cmd->add_option("--jobs", jobs, "parallel sweep points")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--out-dir", sweep_out, "output directory");

  std::string train_log;
  std::size_t train_min_leaf = 2;
  std::string train_out;
  auto* train = app.add_subcommand("train-index", "query log -> ARFF -> decision tree");
  train->add_option("--log", train_log, "query log file")->required()->check(CLI::ExistingFile);
  train->add_option("--min_leaf", train_min_leaf, "minimum rows to split a node");
  train->add_option("--out-dir", train_out, "output directory");

  std::string arff_file;
  std::size_t render_min_leaf = 2;
  auto* render = app.add_subcommand("render-tree", "train on an ARFF file and print the tree");
  render->add_option("--arff", arff_file, "ARFF dataset")->required()->check(CLI::ExistingFile);
  render->add_option("--min_leaf", render_min_leaf, "minimum rows to split a node");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen) return cmd_generate(gen_opts, gen_out, out);
    if (*run_cmd) return cmd_run(run_opts, strategy, log_file, run_out, out);
    if (*sweep_cmd) return cmd_sweep(sweep_opts, sizes, jobs, sweep_out, out);
    if (*train) return cmd_train_index(train_log, train_min_leaf, train_out, out);
    if (*render) return cmd_render_tree(arff_file, render_min_leaf, out);
  } catch (const ConfigError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace sonsim::cli
