#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dynppe/analytics.hpp"
#include "dynppe/checks.hpp"
#include "dynppe/commute.hpp"
#include "dynppe/errors.hpp"
#include "dynppe/event_stream.hpp"
#include "dynppe/export.hpp"
#include "dynppe/pipeline.hpp"

namespace {

using namespace dynppe;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParse:
    case ErrorKind::kConfig:
    case ErrorKind::kSequencing:
    case ErrorKind::kUnsupportedEvent:
    case ErrorKind::kDimensionMismatch:
      return 2;
    case ErrorKind::kCapExceeded:
      return 3;
    default:
      return 1;
  }
}

struct EmbedArgs {
  std::string events_path;
  std::string subset_path;
  std::string out_path;
  std::string method = "dynppe";
  std::string commute_init = "gaussian";
  double alpha = 0.15;
  double epsilon = 0.1;
  double beta = 0.0;
  int dim = 128;
  std::uint32_t seed = 42;
  int parallelism = 1;
  int snapshot_every = 0;
};

int run_embed(const EmbedArgs& args) {
  auto start = std::chrono::steady_clock::now();

  ParsedStream stream = parse_event_file(args.events_path, args.snapshot_every);
  std::vector<NodeId> subset = parse_subset_file(args.subset_path);

  RunConfig cfg;
  cfg.alpha = args.alpha;
  cfg.epsilon = args.epsilon;
  cfg.beta = args.beta;
  cfg.dim = args.dim;
  cfg.parallelism = args.parallelism;
  apply_seed(cfg, args.seed);
  cfg.validate();

  std::map<NodeId, EmbeddingHistory> histories;
  if (args.method == "dynppe") {
    Pipeline pipeline = run_stream(stream, subset, cfg);
    histories = pipeline.histories();
  } else {
    CommuteConfig ccfg;
    ccfg.dim = args.dim;
    ccfg.rng_seed = args.seed;
    ccfg.init = args.commute_init == "uniform" ? CommuteInit::kUniform
                                               : CommuteInit::kGaussian;
    histories = commute_run(stream, subset, ccfg);
  }

  write_embeddings_tsv(args.out_path, histories, args.dim, args.method);

  RunManifest manifest;
  manifest.method = args.method;
  manifest.alpha = cfg.alpha;
  manifest.epsilon = cfg.epsilon;
  manifest.beta = cfg.beta;
  manifest.dim = cfg.dim;
  manifest.seed_index = cfg.seed_index;
  manifest.seed_sign = cfg.seed_sign;
  manifest.parallelism = cfg.parallelism;
  manifest.event_count = stream.event_count();
  manifest.snapshot_count = stream.snapshot_count();
  manifest.subset_size = subset.size();
  manifest.events_digest = fnv1a64_file(args.events_path);
  manifest.subset_digest = fnv1a64_file(args.subset_path);

  GraphState replay = build_initial_graph(stream);
  manifest.degree_sum_per_snapshot.push_back(replay.degree_sum());
  for (const SnapshotDelta& d : stream.deltas) {
    replay.apply_delta(d);
    manifest.degree_sum_per_snapshot.push_back(replay.degree_sum());
  }
  manifest.node_count = replay.known_node_count();

  manifest.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_manifest(args.out_path + ".manifest.json", manifest);

  std::cout << "wrote " << args.out_path << " (" << subset.size()
            << " tracked nodes, " << stream.snapshot_count()
            << " snapshots)\n";
  return 0;
}

struct CheckArgs {
  std::string events_path;
  double alpha = 0.15;
  double epsilon = 0.1;
  std::uint32_t seed = 42;
  int snapshot_every = 0;
  std::size_t oracle_cap = 200;
  bool corrupt_residual = false;
};

int run_check(const CheckArgs& args) {
  ParsedStream stream = parse_event_file(args.events_path, args.snapshot_every);

  RunConfig cfg;
  cfg.alpha = args.alpha;
  cfg.epsilon = args.epsilon;
  apply_seed(cfg, args.seed);

  CheckOptions options;
  options.caps.all_pairs_cap = args.oracle_cap;
  options.caps.single_source_cap =
      std::max<std::size_t>(args.oracle_cap, options.caps.single_source_cap);
  options.corrupt_residual = args.corrupt_residual;

  std::vector<CheckResult> results = run_check_suite(stream, cfg, options);

  bool all_passed = true;
  for (const CheckResult& r : results) {
    std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name
              << "  measured=" << std::scientific << std::setprecision(6)
              << r.measured << "  threshold=" << r.threshold
              << std::defaultfloat << '\n';
    all_passed = all_passed && r.passed;
  }
  std::cout << (all_passed ? "all checks passed" : "checks FAILED") << '\n';
  return all_passed ? 0 : 1;
}

struct ChangesArgs {
  std::string embeddings_path;
  std::string out_path;
  std::string subset_path;
  std::string events_path;
  int snapshot_every = 0;
  std::int64_t min_degree_delta = 10;
  bool has_events = false;
  bool has_min_degree_delta = false;
};

int run_changes(const ChangesArgs& args) {
  EmbeddingTable table = read_embeddings_tsv(args.embeddings_path);
  if (table.rows.size() < 2) {
    throw Error(ErrorKind::kConfig,
                "change detection needs at least 2 snapshots");
  }

  // Optional subset filter.
  if (!args.subset_path.empty()) {
    std::vector<NodeId> keep = parse_subset_file(args.subset_path);
    std::set<NodeId> keep_set(keep.begin(), keep.end());
    for (auto& [snapshot, nodes] : table.rows) {
      for (auto it = nodes.begin(); it != nodes.end();) {
        it = keep_set.contains(it->first) ? std::next(it) : nodes.erase(it);
      }
    }
  }

  // Per-snapshot degrees of the reported nodes, replayed from the event
  // stream when provided. Without it degree deltas are reported as 0 and
  // the degree filter is disabled.
  std::map<int, std::map<NodeId, std::uint32_t>> degrees;
  if (args.has_events) {
    ParsedStream stream =
        parse_event_file(args.events_path, args.snapshot_every);
    GraphState replay = build_initial_graph(stream);
    auto record = [&](int snapshot) {
      auto& row = degrees[snapshot];
      for (const auto& [node, w] : table.rows.begin()->second) {
        row[node] = replay.degree(node);
      }
    };
    record(0);
    for (const SnapshotDelta& d : stream.deltas) {
      replay.apply_delta(d);
      record(d.snapshot_index);
    }
  }

  std::vector<ChangeRecord> report;
  auto prev = table.rows.begin();
  for (auto cur = std::next(prev); cur != table.rows.end(); ++cur, ++prev) {
    std::vector<MovementRecord> movements;
    for (const auto& [node, w] : cur->second) {
      auto before = prev->second.find(node);
      if (before == prev->second.end()) continue;
      MovementRecord m;
      m.node = node;
      m.snapshot_from = prev->first;
      m.snapshot_to = cur->first;
      m.distance = movement(before->second, w);
      if (args.has_events) {
        m.degree_delta =
            static_cast<std::int64_t>(degrees[cur->first][node]) -
            static_cast<std::int64_t>(degrees[prev->first][node]);
      }
      movements.push_back(m);
    }

    std::vector<ZScoreRecord> z = zscore_records(movements);
    std::vector<ChangeRecord> snapshot_records;
    for (std::size_t i = 0; i < movements.size(); ++i) {
      snapshot_records.push_back({movements[i], z[i].zscore});
    }
    std::int64_t threshold = args.has_events ? args.min_degree_delta : -1;
    for (ChangeRecord& r :
         rank_changes(std::move(snapshot_records), threshold)) {
      report.push_back(std::move(r));
    }
  }

  write_changes_tsv(args.out_path, report);
  std::cout << "wrote " << args.out_path << " (" << report.size()
            << " records)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dynppe: incremental personalized-PageRank embeddings over "
               "dynamic edge streams"};
  app.require_subcommand(1);

  EmbedArgs embed;
  CLI::App* embed_cmd = app.add_subcommand(
      "embed", "stream snapshots and export tracked-node embeddings");
  embed_cmd->add_option("--events", embed.events_path, "edge-event file")
      ->required();
  embed_cmd->add_option("--subset", embed.subset_path, "tracked-node file")
      ->required();
  embed_cmd->add_option("--out", embed.out_path, "output TSV path")
      ->required();
  embed_cmd->add_option("--alpha", embed.alpha, "teleport probability");
  embed_cmd->add_option("--epsilon", embed.epsilon, "global precision");
  embed_cmd->add_option("--beta", embed.beta, "push laziness");
  embed_cmd->add_option("--dim", embed.dim, "embedding dimension");
  embed_cmd->add_option("--seed", embed.seed, "hash/rng seed");
  embed_cmd->add_option("--parallelism", embed.parallelism,
                        "worker count for the tracked subset");
  embed_cmd->add_option("--snapshot-every", embed.snapshot_every,
                        "snapshot boundary every N events (exclusive with "
                        "#snapshot markers)");
  embed_cmd
      ->add_option("--method", embed.method, "embedding method")
      ->check(CLI::IsMember({"dynppe", "commute"}));
  embed_cmd
      ->add_option("--commute-init", embed.commute_init,
                   "commute initial vector distribution")
      ->check(CLI::IsMember({"gaussian", "uniform"}));

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand(
      "check", "run the oracle-backed invariant suites on a small stream");
  check_cmd->add_option("--events", check.events_path, "edge-event file")
      ->required();
  check_cmd->add_option("--alpha", check.alpha, "teleport probability");
  check_cmd->add_option("--epsilon", check.epsilon, "global precision");
  check_cmd->add_option("--seed", check.seed, "hash/rng seed");
  check_cmd->add_option("--snapshot-every", check.snapshot_every,
                        "snapshot boundary every N events");
  check_cmd->add_option("--oracle-cap", check.oracle_cap,
                        "node cap for the exact solver");
  check_cmd->add_flag("--corrupt-residual", check.corrupt_residual,
                      "test hook: corrupt one residual entry first");

  ChangesArgs changes;
  CLI::App* changes_cmd = app.add_subcommand(
      "changes", "movement and z-score change report from an embedding TSV");
  changes_cmd
      ->add_option("--embeddings", changes.embeddings_path, "embedding TSV")
      ->required();
  changes_cmd->add_option("--out", changes.out_path, "report TSV path")
      ->required();
  changes_cmd->add_option("--subset", changes.subset_path,
                          "restrict the report to these nodes");
  CLI::Option* events_opt = changes_cmd->add_option(
      "--events", changes.events_path,
      "edge-event file for degree-delta tracking");
  changes_cmd->add_option("--snapshot-every", changes.snapshot_every,
                          "snapshot boundary every N events");
  changes_cmd
      ->add_option("--min-degree-delta", changes.min_degree_delta,
                   "drop nodes whose degree grew by at most this")
      ->needs(events_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(embed_cmd)) return run_embed(embed);
    if (app.got_subcommand(check_cmd)) return run_check(check);
    changes.has_events = events_opt->count() > 0;
    return run_changes(changes);
  } catch (const dynppe::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
