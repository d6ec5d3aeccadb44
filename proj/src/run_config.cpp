#include "seqnav/run_config.hpp"

#include <charconv>
#include <fstream>

#include "seqnav/error.hpp"

namespace seqnav {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_num(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(),
                                   out);
  if (ec != std::errc() || ptr != value.data() + value.size())
    fail("ConfigError", "invalid value for " + key + ": '" + value + "'");
  return out;
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return out;
  } catch (const std::exception&) {
    fail("ConfigError", "invalid value for " + key + ": '" + value + "'");
  }
}

std::string real_str(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

}  // namespace

const char* command_name(Command cmd) {
  switch (cmd) {
    case Command::Ingest: return "ingest";
    case Command::Evaluate: return "evaluate";
    case Command::Bench: return "bench";
    case Command::Recommend: return "recommend";
    case Command::Synth: return "synth";
  }
  return "?";
}

char RunConfig::delimiter_char() const {
  if (delimiter == "tab" || delimiter == "\\t") return '\t';
  if (delimiter == "comma") return ',';
  if (delimiter == "space") return ' ';
  if (delimiter.size() == 1) return delimiter[0];
  fail("ConfigError", "delimiter must be a single character, tab, comma or space");
}

void RunConfig::validate(Command cmd) const {
  if (!(holdout > 0.0 && holdout < 1.0))
    fail("ConfigError", "holdout must be in (0, 1)");
  if (format != "generic" && format != "hetrec")
    fail("ConfigError", "format must be generic or hetrec");
  if (matrix_mode != "binary" && matrix_mode != "count")
    fail("ConfigError", "matrix_mode must be binary or count");
  if (max_order < 1) fail("ConfigError", "max_order must be >= 1");
  if (top_k < 1) fail("ConfigError", "top_k must be >= 1");
  (void)delimiter_char();

  bool needs_input = cmd == Command::Ingest || cmd == Command::Evaluate ||
                     cmd == Command::Bench || cmd == Command::Recommend;
  if (needs_input && input.empty())
    fail("ConfigError", "input path is required");

  if (cmd == Command::Bench && reps && *reps < 1)
    fail("ConfigError", "reps must be >= 1");

  if (cmd == Command::Recommend) {
    if (engine != "cf" && engine != "cn")
      fail("ConfigError", "engine must be cf or cn");
    if (history.empty() && user.empty())
      fail("ConfigError", "recommend needs --history and/or --user");
  }

  if (cmd == Command::Synth) {
    if (synth_users < 1 || synth_items < 1)
      fail("ConfigError", "synth_users and synth_items must be >= 1");
    if (synth_min_len < 1 || synth_min_len > synth_max_len)
      fail("ConfigError", "need 1 <= synth_min_len <= synth_max_len");
    if (!(synth_bias > 0.0)) fail("ConfigError", "synth_bias must be > 0");
  }
}

std::vector<std::pair<std::string, std::string>> RunConfig::echo() const {
  return {
      {"input", input},
      {"format", format},
      {"delimiter", delimiter},
      {"holdout", real_str(holdout)},
      {"matrix_mode", matrix_mode},
      {"neighborhood", std::to_string(neighborhood)},
      {"max_order", std::to_string(max_order)},
      {"warmup", std::to_string(warmup)},
      {"reps", reps ? std::to_string(*reps) : "auto"},
      {"out", out},
      {"seed", std::to_string(seed)},
      {"top_k", std::to_string(top_k)},
      {"engine", engine},
      {"history", history},
      {"user", user},
      {"synth_users", std::to_string(synth_users)},
      {"synth_items", std::to_string(synth_items)},
      {"synth_min_len", std::to_string(synth_min_len)},
      {"synth_max_len", std::to_string(synth_max_len)},
      {"synth_bias", real_str(synth_bias)},
  };
}

void RunConfig::set(const std::string& key, const std::string& value) {
  if (key == "input") input = value;
  else if (key == "format") format = value;
  else if (key == "delimiter") delimiter = value;
  else if (key == "holdout") holdout = parse_real(key, value);
  else if (key == "matrix_mode") matrix_mode = value;
  else if (key == "neighborhood") neighborhood = parse_num<std::uint32_t>(key, value);
  else if (key == "max_order") max_order = parse_num<std::uint32_t>(key, value);
  else if (key == "warmup") warmup = parse_num<std::uint32_t>(key, value);
  else if (key == "reps") {
    if (value == "auto") reps.reset();
    else reps = parse_num<std::uint32_t>(key, value);
  }
  else if (key == "out") out = value;
  else if (key == "seed") seed = parse_num<std::uint64_t>(key, value);
  else if (key == "top_k") top_k = parse_num<std::uint32_t>(key, value);
  else if (key == "engine") engine = value;
  else if (key == "history") history = value;
  else if (key == "user") user = value;
  else if (key == "synth_users") synth_users = parse_num<std::uint32_t>(key, value);
  else if (key == "synth_items") synth_items = parse_num<std::uint32_t>(key, value);
  else if (key == "synth_min_len") synth_min_len = parse_num<std::uint32_t>(key, value);
  else if (key == "synth_max_len") synth_max_len = parse_num<std::uint32_t>(key, value);
  else if (key == "synth_bias") synth_bias = parse_real(key, value);
  else fail("ConfigError", "unknown config key '" + key + "'");
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("IoError", "cannot open config file '" + path + "'");
  RunConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      fail("ConfigError", path + ":" + std::to_string(line_no) +
                              ": expected key = value");
    cfg.set(trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  return cfg;
}

}  // namespace seqnav
