#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "seqnav/evalbench.hpp"
#include "seqnav/run_config.hpp"

namespace seqnav {

struct DatasetSummary {
  std::size_t users = 0;
  std::size_t items = 0;
  std::size_t events = 0;
  std::size_t evaluable_users = 0;
  std::size_t excluded_users = 0;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

// Shortest-round-trip formatting; identical bytes for identical values.
std::string format_double(double value);

// eval_<engine>.tsv: '#' comment block (config echo + dataset summary),
// then one "user<TAB>score<TAB>provenance" row per evaluable user.
void write_eval_report(const std::filesystem::path& file,
                       const EvalReport& report, const KeyValues& config_echo,
                       const DatasetSummary& summary);

// latency.tsv: "engine<TAB>stat<TAB>value_ns" rows (build, count, mean,
// median, p95, min, max per engine). count's value is a sample count.
void write_latency_report(const std::filesystem::path& file,
                          std::span<const LatencyStats> stats,
                          const KeyValues& config_echo,
                          const DatasetSummary& summary);

// summary.txt: flat key = value lines. `sections` are appended after the
// config echo and dataset summary, in the order given.
void write_summary(const std::filesystem::path& file,
                   const std::string& command, const KeyValues& config_echo,
                   const DatasetSummary& summary, const KeyValues& sections);

// key = value lines for an EvalReport, prefixed "eval_<engine>.".
KeyValues eval_summary_section(const EvalReport& report);

}  // namespace seqnav
