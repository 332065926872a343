#include "slpgrep/repair.hpp"

#include <cassert>
#include <limits>
#include <memory_resource>
#include <set>
#include <unordered_map>
#include <vector>

#include "slpgrep/error.hpp"

namespace slpgrep {
namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

using PairKey = std::uint64_t;

PairKey make_key(SymbolId a, SymbolId b) { return (PairKey{a} << 32) | b; }

// Queue order: most frequent first, then leftmost first occurrence.
struct QueueEntry {
  std::uint32_t count;
  std::uint32_t first;
  PairKey key;

  bool operator<(const QueueEntry& o) const {
    if (count != o.count) return count > o.count;
    if (first != o.first) return first < o.first;
    return key < o.key;
  }
};

// Working sequence as a doubly linked list over the original positions.
// Position order never changes, so it doubles as "leftmost" order. A tracked
// position is the left end of a counted (non-overlapping) pair occurrence.
class RePairState {
 public:
  explicit RePairState(std::string_view text)
      : sym_(text.size()), next_(text.size()), prev_(text.size()), tracked_(text.size(), false) {
    for (std::uint32_t i = 0; i < text.size(); ++i) {
      sym_[i] = static_cast<std::uint8_t>(text[i]);
      next_[i] = i + 1 < text.size() ? i + 1 : kNone;
      prev_[i] = i == 0 ? kNone : i - 1;
    }
    std::uint32_t pos = 0;
    while (pos != kNone && next_[pos] != kNone) {
      if (sym_[pos] == sym_[next_[pos]]) {
        pos = track_run_from(pos);
      } else {
        track(pos);
        pos = next_[pos];
      }
    }
  }

  Slp run() {
    Slp slp;
    flush();
    while (!queue_.empty() && queue_.begin()->count >= 2) {
      const PairKey key = queue_.begin()->key;
      const SymbolId a = static_cast<SymbolId>(key >> 32);
      const SymbolId b = static_cast<SymbolId>(key & 0xFFFFFFFFu);
      const SymbolId fresh = variable_for_rule(slp.rules.size());
      slp.rules.push_back({fresh, a, b});
      replace_all(key, a, b, fresh);
      flush();
    }
    for (std::uint32_t pos = 0; pos != kNone; pos = next_[pos]) slp.axiom.push_back(sym_[pos]);
    return slp;
  }

 private:
  // The queue holds (queued_count, queued_first) for pairs counted at least
  // twice; it is brought up to date by flush() once per replacement round.
  struct PairRecord {
    explicit PairRecord(std::pmr::memory_resource* pool) : occurrences(pool) {}

    std::pmr::set<std::uint32_t> occurrences;
    std::uint32_t queued_count = 0;
    std::uint32_t queued_first = 0;
    bool dirty = false;
  };

  PairKey key_at(std::uint32_t pos) const { return make_key(sym_[pos], sym_[next_[pos]]); }

  void mark_dirty(PairKey key, PairRecord& rec) {
    if (!rec.dirty) {
      rec.dirty = true;
      dirty_.push_back(key);
    }
  }

  void flush() {
    for (PairKey key : dirty_) {
      auto it = pairs_.find(key);
      PairRecord& rec = it->second;
      rec.dirty = false;
      if (rec.queued_count >= 2) queue_.erase({rec.queued_count, rec.queued_first, key});
      rec.queued_count = static_cast<std::uint32_t>(rec.occurrences.size());
      if (rec.queued_count >= 2) {
        rec.queued_first = *rec.occurrences.begin();
        queue_.insert({rec.queued_count, rec.queued_first, key});
      }
      if (rec.occurrences.empty()) pairs_.erase(it);
    }
    dirty_.clear();
  }

  void track(std::uint32_t pos) {
    const PairKey key = key_at(pos);
    PairRecord& rec = pairs_.try_emplace(key, &pool_).first->second;
    rec.occurrences.insert(pos);
    mark_dirty(key, rec);
    tracked_[pos] = true;
  }

  void untrack(std::uint32_t pos) {
    if (pos == kNone || !tracked_[pos]) return;
    const PairKey key = key_at(pos);
    auto it = pairs_.find(key);
    assert(it != pairs_.end());
    it->second.occurrences.erase(pos);
    mark_dirty(key, it->second);
    tracked_[pos] = false;
  }

  // Greedy non-overlapping occurrences of (c,c) inside the run starting at
  // `start`. Returns the last position of the run.
  std::uint32_t track_run_from(std::uint32_t start) {
    const SymbolId c = sym_[start];
    std::uint32_t pos = start;
    for (std::size_t rank = 0; next_[pos] != kNone && sym_[next_[pos]] == c; ++rank) {
      if (rank % 2 == 0) track(pos);
      pos = next_[pos];
    }
    return pos;
  }

  void untrack_run_from(std::uint32_t start) {
    const SymbolId c = sym_[start];
    for (std::uint32_t pos = start; next_[pos] != kNone && sym_[next_[pos]] == c; pos = next_[pos]) {
      untrack(pos);
    }
  }

  void replace_all(PairKey key, SymbolId a, SymbolId b, SymbolId fresh) {
    const auto& occ = pairs_.at(key).occurrences;
    const std::vector<std::uint32_t> positions(occ.begin(), occ.end());
    std::uint32_t last_replaced = kNone;
    std::size_t fresh_run = 0;  // length of the run of `fresh` ending at last_replaced
    for (std::uint32_t i : positions) {
      const std::uint32_t j = next_[i];
      const std::uint32_t p = prev_[i];
      const std::uint32_t n = next_[j];
      assert(tracked_[i] && key_at(i) == key);

      untrack(p);
      untrack(i);
      untrack(j);
      // Dropping j shifts the (b,b) run that continues at n.
      const bool retrack_right = n != kNone && a != b && sym_[n] == b;
      if (retrack_right) untrack_run_from(n);

      sym_[i] = fresh;
      next_[i] = n;
      if (n != kNone) prev_[n] = i;

      if (p != kNone) {
        if (p == last_replaced) {
          if ((fresh_run - 1) % 2 == 0) track(p);
          ++fresh_run;
        } else {
          track(p);
          fresh_run = 1;
        }
      } else {
        fresh_run = 1;
      }
      last_replaced = i;

      if (n != kNone) track(i);
      if (retrack_right) track_run_from(n);
    }
    assert(pairs_.at(key).occurrences.empty());
  }

  std::vector<SymbolId> sym_;
  std::vector<std::uint32_t> next_;
  std::vector<std::uint32_t> prev_;
  std::vector<bool> tracked_;
  std::pmr::unsynchronized_pool_resource pool_;
  std::unordered_map<PairKey, PairRecord> pairs_;
  std::set<QueueEntry> queue_;
  std::vector<PairKey> dirty_;
};

}  // namespace

Slp compress(std::string_view text) {
  if (text.empty()) throw Error("empty input: nothing to compress");
  if (text.size() >= kNone) throw Error("input too large");
  return RePairState(text).run();
}

CompressionReport compression_report(const Slp& slp, std::size_t original_len) {
  CompressionReport report;
  report.rules = slp.rules.size();
  report.axiom_len = slp.axiom.size();
  report.encoded_bytes = encode_slp(slp).size();
  report.ratio = static_cast<double>(original_len) / static_cast<double>(report.encoded_bytes);
  return report;
}

}  // namespace slpgrep
