#include "seqnav/report.hpp"

#include <charconv>
#include <fstream>

#include "seqnav/error.hpp"

namespace seqnav {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path())
    std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary);  // binary: no newline translation
  if (!out) fail("IoError", "cannot write '" + file.string() + "'");
  return out;
}

void write_header(std::ofstream& out, const std::string& kind,
                  const KeyValues& config_echo, const DatasetSummary& summary) {
  out << "# seqnav " << kind << "\n";
  for (const auto& [key, value] : config_echo)
    out << "# config." << key << " = " << value << "\n";
  out << "# dataset.users = " << summary.users << "\n";
  out << "# dataset.items = " << summary.items << "\n";
  out << "# dataset.events = " << summary.events << "\n";
  out << "# split.evaluable_users = " << summary.evaluable_users << "\n";
  out << "# split.excluded_users = " << summary.excluded_users << "\n";
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void write_eval_report(const std::filesystem::path& file,
                       const EvalReport& report, const KeyValues& config_echo,
                       const DatasetSummary& summary) {
  auto out = open_out(file);
  write_header(out, "eval report (engine " + report.engine + ")", config_echo,
               summary);
  out << "# columns: user\tscore\tprovenance\n";
  for (const auto& row : report.scores)
    out << row.user << '\t' << format_double(row.score) << '\t'
        << row.provenance << "\n";
}

void write_latency_report(const std::filesystem::path& file,
                          std::span<const LatencyStats> stats,
                          const KeyValues& config_echo,
                          const DatasetSummary& summary) {
  auto out = open_out(file);
  write_header(out, "latency report", config_echo, summary);
  out << "# columns: engine\tstat\tvalue_ns\n";
  for (const auto& s : stats) {
    out << s.engine << "\tbuild\t" << s.build_ns << "\n";
    out << s.engine << "\tcount\t" << s.count << "\n";
    out << s.engine << "\tmean\t" << format_double(s.mean_ns) << "\n";
    out << s.engine << "\tmedian\t" << s.median_ns << "\n";
    out << s.engine << "\tp95\t" << s.p95_ns << "\n";
    out << s.engine << "\tmin\t" << s.min_ns << "\n";
    out << s.engine << "\tmax\t" << s.max_ns << "\n";
  }
}

void write_summary(const std::filesystem::path& file,
                   const std::string& command, const KeyValues& config_echo,
                   const DatasetSummary& summary, const KeyValues& sections) {
  auto out = open_out(file);
  out << "command = " << command << "\n";
  for (const auto& [key, value] : config_echo)
    out << "config." << key << " = " << value << "\n";
  out << "dataset.users = " << summary.users << "\n";
  out << "dataset.items = " << summary.items << "\n";
  out << "dataset.events = " << summary.events << "\n";
  out << "split.evaluable_users = " << summary.evaluable_users << "\n";
  out << "split.excluded_users = " << summary.excluded_users << "\n";
  for (const auto& [key, value] : sections) out << key << " = " << value << "\n";
}

KeyValues eval_summary_section(const EvalReport& report) {
  KeyValues kv;
  const std::string prefix = "eval_" + report.engine + ".";
  kv.emplace_back(prefix + "scored_users", std::to_string(report.scores.size()));
  kv.emplace_back(prefix + "aggregate_sum", format_double(report.aggregate_sum));
  kv.emplace_back(prefix + "aggregate_mean",
                  format_double(report.aggregate_mean));
  kv.emplace_back(prefix + "skipped", std::to_string(report.skipped.size()));
  for (const auto& [label, count] : report.provenance_histogram)
    kv.emplace_back(prefix + "provenance." + label, std::to_string(count));
  return kv;
}

}  // namespace seqnav
