#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace seqnav {

enum class Command { Ingest, Evaluate, Bench, Recommend, Synth };

const char* command_name(Command cmd);

// Resolved run configuration. Loaded from a flat key = value config file,
// then overridden by CLI flags; validated before any work starts and
// echoed into every report.
struct RunConfig {
  std::string input;
  std::string format = "generic";  // generic | hetrec
  std::string delimiter = "tab";   // single char, or tab | comma | space
  double holdout = 0.2;

  std::string matrix_mode = "binary";  // binary | count
  std::uint32_t neighborhood = 0;      // 0 = all other users

  std::uint32_t max_order = 5;

  std::uint32_t warmup = 10;
  std::optional<std::uint32_t> reps;  // unset = one pass over evaluable users

  std::string out = "out";
  std::uint64_t seed = 1;
  std::uint32_t top_k = 10;

  std::string engine = "cn";  // recommend: cf | cn
  std::string history;        // recommend: comma-separated item tokens
  std::string user;           // recommend: target user token

  std::uint32_t synth_users = 50;
  std::uint32_t synth_items = 25;
  std::uint32_t synth_min_len = 2;
  std::uint32_t synth_max_len = 12;
  double synth_bias = 1.0;

  char delimiter_char() const;

  // Throws ConfigError on any invalid field for the given command.
  void validate(Command cmd) const;

  // Resolved fields in a fixed order, for embedding into reports.
  std::vector<std::pair<std::string, std::string>> echo() const;

  // Applies one key = value pair; throws ConfigError on unknown keys or
  // unparsable values.
  void set(const std::string& key, const std::string& value);
};

RunConfig load_config_file(const std::string& path);

}  // namespace seqnav
