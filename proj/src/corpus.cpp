#include "seqnav/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <numeric>
#include <string_view>

#include "seqnav/error.hpp"

namespace seqnav {

namespace {

std::vector<std::string_view> split_fields(std::string_view line, char delim) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(delim, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

bool parse_int(std::string_view text, std::int64_t& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !text.empty();
}

bool parse_uint(std::string_view text, std::uint64_t& out) {
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && !text.empty();
}

std::int64_t civil_to_epoch(int year, unsigned month, unsigned day) {
  using namespace std::chrono;
  year_month_day ymd{std::chrono::year{year}, std::chrono::month{month},
                     std::chrono::day{day}};
  if (!ymd.ok()) return std::numeric_limits<std::int64_t>::min();
  return static_cast<std::int64_t>(
             sys_days{ymd}.time_since_epoch().count()) *
         86400;
}

// "YYYY-MM-DD", optionally followed by "THH:MM[:SS]" or " HH:MM[:SS]",
// or a bare integer epoch.
bool parse_timestamp(std::string_view text, std::int64_t& out) {
  if (parse_int(text, out)) return true;
  if (text.size() < 10 || text[4] != '-' || text[7] != '-') return false;
  std::int64_t y, mo, d;
  if (!parse_int(text.substr(0, 4), y) || !parse_int(text.substr(5, 2), mo) ||
      !parse_int(text.substr(8, 2), d))
    return false;
  std::int64_t base = civil_to_epoch(static_cast<int>(y),
                                     static_cast<unsigned>(mo),
                                     static_cast<unsigned>(d));
  if (base == std::numeric_limits<std::int64_t>::min()) return false;
  if (text.size() == 10) {
    out = base;
    return true;
  }
  if (text[10] != 'T' && text[10] != ' ') return false;
  std::string_view rest = text.substr(11);
  if (rest.size() != 5 && rest.size() != 8) return false;
  std::int64_t hh, mm, ss = 0;
  if (rest[2] != ':' || !parse_int(rest.substr(0, 2), hh) ||
      !parse_int(rest.substr(3, 2), mm))
    return false;
  if (rest.size() == 8 &&
      (rest[5] != ':' || !parse_int(rest.substr(6, 2), ss)))
    return false;
  if (hh < 0 || hh > 23 || mm < 0 || mm > 59 || ss < 0 || ss > 60)
    return false;
  out = base + hh * 3600 + mm * 60 + ss;
  return true;
}

[[noreturn]] void malformed(std::size_t line_no, const std::string& what) {
  fail("MalformedRecord", "line " + std::to_string(line_no) + ": " + what);
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

std::vector<InteractionEvent> parse_generic(std::istream& in, char delim) {
  std::vector<InteractionEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_fields(line, delim);
    if (fields.size() < 3 || fields.size() > 4)
      malformed(line_no, "expected 3 or 4 fields, got " +
                             std::to_string(fields.size()));
    if (fields[0].empty()) malformed(line_no, "empty user_id");
    if (fields[1].empty()) malformed(line_no, "empty item_id");
    InteractionEvent ev;
    ev.user = std::string(fields[0]);
    ev.item = std::string(fields[1]);
    if (!parse_timestamp(fields[2], ev.timestamp))
      malformed(line_no, "unparsable timestamp '" + std::string(fields[2]) +
                             "'");
    if (fields.size() == 4) {
      std::uint64_t w;
      if (!parse_uint(fields[3], w) || w < 1)
        malformed(line_no, "weight must be an integer >= 1");
      ev.weight = w;
    }
    events.push_back(std::move(ev));
  }
  if (events.empty()) fail("EmptyInput", "no records in input");
  return events;
}

enum class HetrecFlavor { WeightedPairs, TaggedDmy, TaggedMillis };

std::vector<InteractionEvent> parse_hetrec(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) fail("EmptyInput", "no records in input");
  strip_cr(line);
  auto header = split_fields(line, '\t');
  HetrecFlavor flavor;
  if (header.size() == 3 && header[2] == "weight") {
    flavor = HetrecFlavor::WeightedPairs;
  } else if (header.size() == 6 && header[2] == "tagID") {
    flavor = HetrecFlavor::TaggedDmy;
  } else if (header.size() == 4 && header[2] == "tagID" &&
             header[3] == "timestamp") {
    flavor = HetrecFlavor::TaggedMillis;
  } else {
    malformed(1, "unrecognized hetrec header '" + line + "'");
  }

  std::vector<InteractionEvent> events;
  // numeric artist ids, kept for the weighted-pairs order synthesis
  std::vector<std::uint64_t> artist_ids;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;
    auto fields = split_fields(line, '\t');
    InteractionEvent ev;
    switch (flavor) {
      case HetrecFlavor::WeightedPairs: {
        if (fields.size() != 3) malformed(line_no, "expected 3 fields");
        std::uint64_t artist, weight;
        if (fields[0].empty()) malformed(line_no, "empty user id");
        if (!parse_uint(fields[1], artist))
          malformed(line_no, "non-numeric artist id");
        if (!parse_uint(fields[2], weight) || weight < 1)
          malformed(line_no, "weight must be an integer >= 1");
        ev.user = std::string(fields[0]);
        ev.item = std::string(fields[1]);
        ev.weight = weight;
        artist_ids.push_back(artist);
        break;
      }
      case HetrecFlavor::TaggedDmy: {
        if (fields.size() != 6) malformed(line_no, "expected 6 fields");
        std::int64_t day, month, year;
        if (fields[0].empty() || fields[1].empty())
          malformed(line_no, "empty id field");
        if (!parse_int(fields[3], day) || !parse_int(fields[4], month) ||
            !parse_int(fields[5], year))
          malformed(line_no, "non-numeric date field");
        std::int64_t ts = civil_to_epoch(static_cast<int>(year),
                                         static_cast<unsigned>(month),
                                         static_cast<unsigned>(day));
        if (ts == std::numeric_limits<std::int64_t>::min())
          malformed(line_no, "invalid calendar date");
        ev.user = std::string(fields[0]);
        ev.item = std::string(fields[1]);
        ev.timestamp = ts;
        break;
      }
      case HetrecFlavor::TaggedMillis: {
        if (fields.size() != 4) malformed(line_no, "expected 4 fields");
        std::int64_t millis;
        if (fields[0].empty() || fields[1].empty())
          malformed(line_no, "empty id field");
        if (!parse_int(fields[3], millis))
          malformed(line_no, "non-numeric timestamp");
        ev.user = std::string(fields[0]);
        ev.item = std::string(fields[1]);
        // floor division keeps pre-1970 values ordered correctly
        ev.timestamp =
            millis >= 0 ? millis / 1000 : (millis - 999) / 1000;
        break;
      }
    }
    events.push_back(std::move(ev));
  }
  if (events.empty()) fail("EmptyInput", "no records in input");

  if (flavor == HetrecFlavor::WeightedPairs) {
    // No real timestamps: synthesize a per-user order by descending
    // weight, ascending artist id, and assign ordinal timestamps.
    std::unordered_map<std::string, std::vector<std::size_t>> per_user;
    for (std::size_t i = 0; i < events.size(); ++i)
      per_user[events[i].user].push_back(i);
    for (auto& [user, idxs] : per_user) {
      std::stable_sort(idxs.begin(), idxs.end(),
                       [&](std::size_t a, std::size_t b) {
                         std::uint64_t wa = *events[a].weight;
                         std::uint64_t wb = *events[b].weight;
                         if (wa != wb) return wa > wb;
                         return artist_ids[a] < artist_ids[b];
                       });
      for (std::size_t rank = 0; rank < idxs.size(); ++rank)
        events[idxs[rank]].timestamp = static_cast<std::int64_t>(rank);
    }
  }
  return events;
}

}  // namespace

std::uint32_t Vocabulary::intern(const std::string& token) {
  auto it = index_.find(token);
  if (it != index_.end()) return it->second;
  auto idx = static_cast<std::uint32_t>(tokens_.size());
  tokens_.push_back(token);
  index_.emplace(token, idx);
  return idx;
}

std::optional<std::uint32_t> Vocabulary::find(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Corpus::total_events() const {
  std::size_t n = 0;
  for (const auto& seq : sequences) n += seq.items.size();
  return n;
}

std::vector<InteractionEvent> parse_event_log(std::istream& in,
                                              LogFormat format,
                                              char delimiter) {
  if (!in) fail("IoError", "input stream not readable");
  switch (format) {
    case LogFormat::GenericDelimited:
      return parse_generic(in, delimiter);
    case LogFormat::Hetrec:
      return parse_hetrec(in);
  }
  fail("InvalidArgument", "unknown log format");
}

Corpus build_sequences(const std::vector<InteractionEvent>& events) {
  if (events.empty()) fail("EmptyInput", "no events");
  Corpus corpus;
  struct Slot {
    std::int64_t timestamp;
    ItemIdx item;
  };
  std::vector<std::vector<Slot>> per_user;
  for (const auto& ev : events) {
    UserIdx u = corpus.users.intern(ev.user);
    ItemIdx i = corpus.items.intern(ev.item);
    if (per_user.size() <= u) per_user.resize(u + 1);
    per_user[u].push_back({ev.timestamp, i});
  }
  corpus.sequences.resize(per_user.size());
  for (UserIdx u = 0; u < per_user.size(); ++u) {
    auto& slots = per_user[u];
    std::stable_sort(slots.begin(), slots.end(),
                     [](const Slot& a, const Slot& b) {
                       return a.timestamp < b.timestamp;
                     });
    auto& seq = corpus.sequences[u];
    seq.user = u;
    seq.items.reserve(slots.size());
    for (const Slot& s : slots) seq.items.push_back(s.item);
  }
  return corpus;
}

TemporalSplit temporal_split(const Corpus& corpus, double holdout_fraction) {
  if (!(holdout_fraction > 0.0 && holdout_fraction < 1.0))
    fail("InvalidHoldout", "holdout fraction must be in (0, 1)");
  TemporalSplit split;
  split.holdout_fraction = holdout_fraction;
  split.train.items = corpus.items;
  for (const auto& seq : corpus.sequences) {
    std::size_t n = seq.items.size();
    auto held = static_cast<std::size_t>(
        std::ceil(holdout_fraction * static_cast<double>(n) - 1e-9));
    held = std::clamp<std::size_t>(held, 1, n);
    std::size_t kept = n - held;
    const std::string& token = corpus.users.token(seq.user);
    if (kept == 0) {
      split.excluded.push_back({token, "empty-train"});
      continue;
    }
    UserIdx u = split.train.users.intern(token);
    ConsumptionSequence train_seq;
    train_seq.user = u;
    train_seq.items.assign(seq.items.begin(), seq.items.begin() + kept);
    split.train.sequences.push_back(std::move(train_seq));
    split.test.emplace_back(seq.items.begin() + kept, seq.items.end());
  }
  if (split.train.sequences.empty())
    fail("DegenerateSplit", "no user has a non-empty train prefix");
  return split;
}

UserItemMatrix build_matrix(const Corpus& corpus, MatrixMode mode) {
  if (corpus.sequences.empty()) fail("EmptyInput", "empty corpus");
  UserItemMatrix matrix;
  matrix.mode = mode;
  matrix.item_count = corpus.items.size();
  matrix.rows.resize(corpus.sequences.size());
  for (const auto& seq : corpus.sequences) {
    std::vector<ItemIdx> sorted = seq.items;
    std::sort(sorted.begin(), sorted.end());
    auto& row = matrix.rows[seq.user];
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      double value =
          mode == MatrixMode::Binary ? 1.0 : static_cast<double>(j - i);
      row.push_back({sorted[i], value});
      i = j;
    }
  }
  return matrix;
}

}  // namespace seqnav
