#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace seqnav {

using UserIdx = std::uint32_t;
using ItemIdx = std::uint32_t;

// Sentinel for history items that are not in the vocabulary. It never
// occurs in any stored sequence, so patterns containing it match nothing.
inline constexpr ItemIdx kUnknownItem = std::numeric_limits<ItemIdx>::max();

// One (user, item, timestamp, optional weight) record from an event log.
struct InteractionEvent {
  std::string user;
  std::string item;
  std::int64_t timestamp = 0;  // seconds since epoch, or ordinal rank
  std::optional<std::uint64_t> weight;  // listen count, >= 1 when present

  bool operator==(const InteractionEvent&) const = default;
};

enum class LogFormat { GenericDelimited, Hetrec };

// token <-> dense index bijection; indices assigned in first-appearance order.
class Vocabulary {
 public:
  std::uint32_t intern(const std::string& token);
  std::optional<std::uint32_t> find(const std::string& token) const;
  const std::string& token(std::uint32_t idx) const { return tokens_[idx]; }
  std::size_t size() const noexcept { return tokens_.size(); }

  bool operator==(const Vocabulary& other) const {
    return tokens_ == other.tokens_;
  }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, std::uint32_t> index_;
};

// A user's items in consumption order (ascending timestamp, ties stable).
struct ConsumptionSequence {
  UserIdx user = 0;
  std::vector<ItemIdx> items;

  bool operator==(const ConsumptionSequence&) const = default;
};

struct Corpus {
  Vocabulary users;
  Vocabulary items;
  std::vector<ConsumptionSequence> sequences;  // sequences[u].user == u

  std::size_t total_events() const;

  bool operator==(const Corpus&) const = default;
};

struct ExcludedUser {
  std::string user;
  std::string reason;
};

// Per-user temporal holdout. `train` keeps the source corpus's item
// vocabulary (held-out items must stay addressable) but re-interns only
// the evaluable users, in their original order. For every train user u,
// train.sequences[u].items + test[u] is exactly the original sequence.
struct TemporalSplit {
  Corpus train;
  std::vector<std::vector<ItemIdx>> test;  // per train user, time order
  double holdout_fraction = 0.0;
  std::vector<ExcludedUser> excluded;
};

enum class MatrixMode { Binary, Count };

struct SparseEntry {
  ItemIdx item;
  double value;
};

// Per-user sparse item vectors. Binary mode: 1 on items present in the
// user's train sequence. Count mode: occurrence counts in that sequence.
struct UserItemMatrix {
  MatrixMode mode = MatrixMode::Binary;
  std::size_t item_count = 0;
  std::vector<std::vector<SparseEntry>> rows;  // ascending item index

  std::size_t user_count() const noexcept { return rows.size(); }
};

// Parses a delimited event log. Generic format: user, item, ISO-8601 date
// or integer epoch, optional weight; '#' lines and blank lines ignored.
// Hetrec format: first line is the header as distributed; the header
// decides the flavor (weighted pairs, tagged day/month/year, or tagged
// epoch-millis). Weighted pairs carry no timestamps, so a per-user order
// is synthesized: descending weight, ascending numeric artist id, ordinal
// timestamps 0,1,2,...
// Throws EmptyInput when no records, MalformedRecord (with 1-based line
// number) on any arity or type violation.
std::vector<InteractionEvent> parse_event_log(std::istream& in,
                                              LogFormat format,
                                              char delimiter = '\t');

// Groups events per user, orders them by (timestamp, input order), and
// assigns user/item indices in first-appearance order over the input.
Corpus build_sequences(const std::vector<InteractionEvent>& events);

// Holds out the last ceil(fraction * length) events of every user. Users
// whose train part would be empty are excluded and logged. Throws
// DegenerateSplit when nobody is evaluable.
TemporalSplit temporal_split(const Corpus& corpus, double holdout_fraction);

UserItemMatrix build_matrix(const Corpus& corpus, MatrixMode mode);

}  // namespace seqnav
