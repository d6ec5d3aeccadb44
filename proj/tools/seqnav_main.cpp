#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqnav/cf_engine.hpp"
#include "seqnav/cn_engine.hpp"
#include "seqnav/corpus.hpp"
#include "seqnav/error.hpp"
#include "seqnav/evalbench.hpp"
#include "seqnav/report.hpp"
#include "seqnav/run_config.hpp"
#include "seqnav/synth.hpp"

namespace {

using namespace seqnav;

std::vector<InteractionEvent> load_events(const RunConfig& cfg) {
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) fail("IoError", "cannot open input '" + cfg.input + "'");
  LogFormat format = cfg.format == "hetrec" ? LogFormat::Hetrec
                                            : LogFormat::GenericDelimited;
  return parse_event_log(in, format, cfg.delimiter_char());
}

DatasetSummary summarize(const Corpus& corpus, const TemporalSplit* split) {
  DatasetSummary s;
  s.users = corpus.users.size();
  s.items = corpus.items.size();
  s.events = corpus.total_events();
  if (split) {
    s.evaluable_users = split->train.sequences.size();
    s.excluded_users = split->excluded.size();
  }
  return s;
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> tokens;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t pos = text.find(',', start);
    if (pos == std::string::npos) pos = text.size();
    std::string token = text.substr(start, pos - start);
    std::size_t b = token.find_first_not_of(" \t");
    if (b != std::string::npos) {
      std::size_t e = token.find_last_not_of(" \t");
      tokens.push_back(token.substr(b, e - b + 1));
    }
    start = pos + 1;
  }
  return tokens;
}

KeyValues excluded_section(const TemporalSplit& split) {
  KeyValues kv;
  for (std::size_t i = 0; i < split.excluded.size(); ++i)
    kv.emplace_back("split.excluded." + std::to_string(i),
                    split.excluded[i].user + " (" + split.excluded[i].reason +
                        ")");
  return kv;
}

int run_ingest(const RunConfig& cfg) {
  auto events = load_events(cfg);
  Corpus corpus = build_sequences(events);
  DatasetSummary summary = summarize(corpus, nullptr);
  std::printf("users = %zu\nitems = %zu\nevents = %zu\n", summary.users,
              summary.items, summary.events);
  write_summary(std::filesystem::path(cfg.out) / "summary.txt", "ingest",
                cfg.echo(), summary, {});
  return 0;
}

int run_evaluate(const RunConfig& cfg) {
  auto events = load_events(cfg);
  Corpus corpus = build_sequences(events);
  TemporalSplit split = temporal_split(corpus, cfg.holdout);
  DatasetSummary summary = summarize(corpus, &split);
  MatrixMode mode =
      cfg.matrix_mode == "count" ? MatrixMode::Count : MatrixMode::Binary;
  std::optional<std::uint32_t> neighborhood;
  if (cfg.neighborhood > 0) neighborhood = cfg.neighborhood;

  CfRecommender cf(split, mode, neighborhood);
  CnRecommender cn(split, cfg.max_order);
  EvalReport rep_cf = evaluate(split, cf);
  EvalReport rep_cn = evaluate(split, cn);

  std::filesystem::path out(cfg.out);
  write_eval_report(out / "eval_cf.tsv", rep_cf, cfg.echo(), summary);
  write_eval_report(out / "eval_cn.tsv", rep_cn, cfg.echo(), summary);
  KeyValues sections = excluded_section(split);
  for (auto& kv : eval_summary_section(rep_cf)) sections.push_back(kv);
  for (auto& kv : eval_summary_section(rep_cn)) sections.push_back(kv);
  write_summary(out / "summary.txt", "evaluate", cfg.echo(), summary,
                sections);

  std::printf("evaluated %zu users (%zu excluded)\n", rep_cf.scores.size(),
              split.excluded.size());
  std::printf("cf: sum = %s, mean = %s\n",
              format_double(rep_cf.aggregate_sum).c_str(),
              format_double(rep_cf.aggregate_mean).c_str());
  std::printf("cn: sum = %s, mean = %s\n",
              format_double(rep_cn.aggregate_sum).c_str(),
              format_double(rep_cn.aggregate_mean).c_str());
  return 0;
}

int run_bench(const RunConfig& cfg) {
  auto events = load_events(cfg);
  Corpus corpus = build_sequences(events);
  TemporalSplit split = temporal_split(corpus, cfg.holdout);
  DatasetSummary summary = summarize(corpus, &split);
  MatrixMode mode =
      cfg.matrix_mode == "count" ? MatrixMode::Count : MatrixMode::Binary;
  std::optional<std::uint32_t> neighborhood;
  if (cfg.neighborhood > 0) neighborhood = cfg.neighborhood;

  using clock = std::chrono::steady_clock;
  auto elapsed_ns = [](clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(clock::now() -
                                                                t0)
        .count();
  };

  auto t0 = clock::now();
  CfRecommender cf(split, mode, neighborhood);
  std::int64_t cf_build = elapsed_ns(t0);
  t0 = clock::now();
  CnRecommender cn(split, cfg.max_order);
  std::int64_t cn_build = elapsed_ns(t0);

  std::size_t reps = cfg.reps.value_or(split.train.sequences.size());
  LatencyStats stats_cf = measure_latency(split, cf, cfg.warmup, reps);
  stats_cf.build_ns = cf_build;
  LatencyStats stats_cn = measure_latency(split, cn, cfg.warmup, reps);
  stats_cn.build_ns = cn_build;

  std::filesystem::path out(cfg.out);
  LatencyStats all[] = {stats_cf, stats_cn};
  write_latency_report(out / "latency.tsv", all, cfg.echo(), summary);
  // timing values stay out of summary.txt so identical runs produce
  // identical bytes there
  KeyValues sections = excluded_section(split);
  sections.emplace_back("bench.warmup", std::to_string(cfg.warmup));
  sections.emplace_back("bench.reps", std::to_string(reps));
  write_summary(out / "summary.txt", "bench", cfg.echo(), summary, sections);

  for (const auto& s : all)
    std::printf(
        "%s: build %.3f ms | per query: median %.3f ms, mean %.3f ms, p95 "
        "%.3f ms (%zu samples)\n",
        s.engine.c_str(), static_cast<double>(s.build_ns) / 1e6,
        static_cast<double>(s.median_ns) / 1e6, s.mean_ns / 1e6,
        static_cast<double>(s.p95_ns) / 1e6, s.count);
  if (stats_cn.median_ns > 0)
    std::printf("median ratio cf/cn = %.2f\n",
                static_cast<double>(stats_cf.median_ns) /
                    static_cast<double>(stats_cn.median_ns));
  return 0;
}

int run_recommend(const RunConfig& cfg) {
  auto events = load_events(cfg);
  Corpus corpus = build_sequences(events);
  DatasetSummary summary = summarize(corpus, nullptr);

  std::vector<ItemIdx> history;
  for (const auto& token : split_tokens(cfg.history))
    history.push_back(corpus.items.find(token).value_or(kUnknownItem));
  std::optional<UserIdx> user_idx = corpus.users.find(cfg.user);
  if (history.empty()) {
    if (!user_idx)
      fail("ConfigError", "user '" + cfg.user + "' not in corpus and no history given");
    history = corpus.sequences[*user_idx].items;
  }

  RecommendationDistribution dist;
  if (cfg.engine == "cn") {
    PatternIndex index(corpus, cfg.max_order);
    dist = index.recommend({cfg.user, history}, cfg.top_k);
  } else {
    MatrixMode mode =
        cfg.matrix_mode == "count" ? MatrixMode::Count : MatrixMode::Binary;
    std::optional<std::uint32_t> neighborhood;
    if (cfg.neighborhood > 0) neighborhood = cfg.neighborhood;
    CfEngine engine(build_matrix(corpus, mode), neighborhood);
    dist = engine.recommend_history(history, cfg.user, user_idx, cfg.top_k);
  }

  KeyValues sections;
  sections.emplace_back("recommend.provenance", provenance_label(dist));
  std::printf("provenance = %s\n", provenance_label(dist).c_str());
  if (dist.empty()) {
    std::printf("no recommendation (%s)\n", dist.empty_reason.c_str());
  } else {
    std::printf("rank\titem\tprobability\n");
    for (std::size_t r = 0; r < dist.top_items.size(); ++r) {
      ItemIdx item = dist.top_items[r];
      std::string prob = format_double(dist.prob_of(item));
      std::printf("%zu\t%s\t%s\n", r + 1, corpus.items.token(item).c_str(),
                  prob.c_str());
      sections.emplace_back("recommend.rank." + std::to_string(r + 1),
                            corpus.items.token(item) + ":" + prob);
    }
  }
  write_summary(std::filesystem::path(cfg.out) / "summary.txt", "recommend",
                cfg.echo(), summary, sections);
  return 0;
}

int run_synth(const RunConfig& cfg) {
  SynthParams params;
  params.users = cfg.synth_users;
  params.items = cfg.synth_items;
  params.min_len = cfg.synth_min_len;
  params.max_len = cfg.synth_max_len;
  params.bias = cfg.synth_bias;
  params.seed = cfg.seed;
  auto events = synth_events(params);

  std::filesystem::path out(cfg.out);
  std::filesystem::create_directories(out);
  std::ofstream tsv(out / "synth.tsv", std::ios::binary);
  if (!tsv) fail("IoError", "cannot write synth.tsv");
  for (const auto& ev : events)
    tsv << ev.user << '\t' << ev.item << '\t' << ev.timestamp << '\t'
        << *ev.weight << "\n";
  tsv.close();

  Corpus corpus = build_sequences(events);
  DatasetSummary summary = summarize(corpus, nullptr);
  write_summary(out / "summary.txt", "synth", cfg.echo(), summary, {});
  std::printf("wrote %zu events to %s\n", events.size(),
              (out / "synth.tsv").string().c_str());
  return 0;
}

// --config is honored before regular flag parsing so flags override it
std::optional<std::string> scan_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) return std::string(argv[i + 1]);
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return std::nullopt;
}

void add_common_options(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--config", "config file (key = value lines)");
  cmd->add_option("--input", cfg.input, "event log path");
  cmd->add_option("--format", cfg.format, "generic | hetrec");
  cmd->add_option("--delimiter", cfg.delimiter,
                  "generic format delimiter (char, tab, comma, space)");
  cmd->add_option("--holdout", cfg.holdout, "temporal holdout fraction");
  cmd->add_option("--matrix-mode", cfg.matrix_mode, "binary | count");
  cmd->add_option("--neighborhood", cfg.neighborhood,
                  "cf neighbor cutoff (0 = all users)");
  cmd->add_option("--max-order", cfg.max_order, "cn max pattern length");
  cmd->add_option("--warmup", cfg.warmup, "bench warmup queries");
  cmd->add_option("--reps", cfg.reps, "bench timed queries");
  cmd->add_option("--out", cfg.out, "output directory");
  cmd->add_option("--seed", cfg.seed, "rng seed for synth");
  cmd->add_option("--top-k", cfg.top_k, "ranked head size");
  cmd->add_option("--engine", cfg.engine, "recommend engine: cf | cn");
  cmd->add_option("--history", cfg.history,
                  "recommend history, comma-separated item tokens");
  cmd->add_option("--user", cfg.user, "recommend target user token");
  cmd->add_option("--users", cfg.synth_users, "synth user count");
  cmd->add_option("--items", cfg.synth_items, "synth item count");
  cmd->add_option("--min-len", cfg.synth_min_len, "synth min sequence length");
  cmd->add_option("--max-len", cfg.synth_max_len, "synth max sequence length");
  cmd->add_option("--bias", cfg.synth_bias, "synth popularity skew exponent");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  try {
    if (auto path = scan_config_path(argc, argv))
      cfg = load_config_file(*path);
  } catch (const Error& e) {
    std::fprintf(stderr, "ERROR %s: %s\n", e.code().c_str(), e.what());
    return 1;
  }

  CLI::App app{"seqnav: collaborative-filtering vs sequence-pattern "
               "recommendation toolkit"};
  app.require_subcommand(1);
  struct Sub {
    Command command;
    CLI::App* app;
  };
  std::vector<Sub> subs = {
      {Command::Ingest, app.add_subcommand("ingest", "validate and summarize a dataset")},
      {Command::Evaluate, app.add_subcommand("evaluate", "score both engines on a temporal split")},
      {Command::Bench, app.add_subcommand("bench", "measure per-query latency of both engines")},
      {Command::Recommend, app.add_subcommand("recommend", "print a top-k recommendation")},
      {Command::Synth, app.add_subcommand("synth", "generate a seeded random event log")},
  };
  for (auto& sub : subs) add_common_options(sub.app, cfg);

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& sub : subs) {
      if (!sub.app->parsed()) continue;
      cfg.validate(sub.command);
      switch (sub.command) {
        case Command::Ingest: return run_ingest(cfg);
        case Command::Evaluate: return run_evaluate(cfg);
        case Command::Bench: return run_bench(cfg);
        case Command::Recommend: return run_recommend(cfg);
        case Command::Synth: return run_synth(cfg);
      }
    }
  } catch (const Error& e) {
    std::fprintf(stderr, "ERROR %s: %s\n", e.code().c_str(), e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "ERROR Internal: %s\n", e.what());
    return 1;
  }
  return 0;
}
