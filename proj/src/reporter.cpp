#include "slpgrep/reporter.hpp"

#include <memory>
#include <string>
#include <vector>

#include "slpgrep/error.hpp"
#include "slpgrep/search.hpp"

namespace slpgrep {
namespace {

// Top-down walk that keeps only the current line. `reach_` holds the states
// reachable from an initial state by reading some suffix of that line.
class LineWalker {
 public:
  LineWalker(const Slp& slp, const Fsa& fsa, const Engine* engine, std::ostream& sink,
             ReportOptions options)
      : slp_(slp),
        fsa_(fsa),
        engine_(engine),
        sink_(sink),
        options_(options),
        in_reach_(fsa.state_count(), false) {}

  void walk(SymbolId root) {
    std::vector<SymbolId> stack{root};
    while (!stack.empty()) {
      const SymbolId sym = stack.back();
      stack.pop_back();
      if (is_terminal(sym)) {
        feed(static_cast<std::uint8_t>(sym));
        continue;
      }
      if (options_.prune && engine_ != nullptr && can_skip(sym)) {
        skip(sym);
        continue;
      }
      const Rule& r = slp_.rule_for(sym);
      stack.push_back(r.second);
      stack.push_back(r.first);
    }
  }

  ReportResult finish() {
    if (!line_.empty()) end_line();
    sink_.flush();
    if (!sink_) throw IoError("write to output failed");
    return result_;
  }

 private:
  void feed(std::uint8_t byte) {
    ++result_.bytes_visited;
    if (byte == kNewline) {
      end_line();
      return;
    }
    line_.push_back(static_cast<char>(byte));
    if (matched_ || fsa_.matches_empty()) return;
    next_.clear();
    auto step_from = [&](State q) {
      for (State to : fsa_.successors(q, byte)) {
        if (fsa_.is_final(to)) matched_ = true;
        next_.push_back(to);
      }
    };
    for (State q : reach_) step_from(q);
    for (State q : fsa_.initials()) {
      if (!in_reach_[q]) step_from(q);
    }
    set_reach(next_);
  }

  void set_reach(const std::vector<State>& states) {
    for (State q : reach_) in_reach_[q] = false;
    reach_.clear();
    for (State q : states) {
      if (!in_reach_[q]) {
        in_reach_[q] = true;
        reach_.push_back(q);
      }
    }
  }

  void end_line() {
    if (matched_ || fsa_.matches_empty()) {
      line_.push_back('\n');
      sink_.write(line_.data(), static_cast<std::streamsize>(line_.size()));
      if (!sink_) throw IoError("write to output failed");
      ++result_.lines;
    }
    line_.clear();
    matched_ = false;
    set_reach({});
  }

  // The subtree holds a newline, none of its lines match, and the line in
  // progress cannot be completed into a match by its first line.
  bool can_skip(SymbolId sym) const {
    const SymbolEntry& e = engine_->entry(sym);
    if (!e.info.nl || e.info.count != 0 || e.info.left || e.info.right || matched_) return false;
    for (const StatePair& p : e.edges) {
      if (in_reach_[p.from] && fsa_.is_final(p.to)) return false;
    }
    return true;
  }

  // Drops the current line and everything up to the last newline of `sym`,
  // then materialises only the trailing partial line.
  void skip(SymbolId sym) {
    ++result_.pruned_subtrees;
    line_.clear();
    matched_ = false;

    next_.clear();
    for (const StatePair& p : engine_->entry(sym).edges) {
      if (fsa_.is_initial(p.from)) {
        if (fsa_.is_final(p.to)) matched_ = true;
        next_.push_back(p.to);
      }
    }
    set_reach(next_);

    std::vector<SymbolId> right_parts;
    SymbolId cur = sym;
    while (!is_terminal(cur)) {
      const Rule& r = slp_.rule_for(cur);
      if (engine_->entry(r.second).info.nl) {
        cur = r.second;
      } else {
        right_parts.push_back(r.second);
        cur = r.first;
      }
    }
    for (auto it = right_parts.rbegin(); it != right_parts.rend(); ++it) {
      const std::size_t before = line_.size();
      append_expansion(slp_, *it, line_);
      result_.bytes_visited += line_.size() - before;
    }
  }

  const Slp& slp_;
  const Fsa& fsa_;
  const Engine* engine_;
  std::ostream& sink_;
  ReportOptions options_;

  std::string line_;
  bool matched_ = false;
  std::vector<State> reach_;
  std::vector<bool> in_reach_;
  std::vector<State> next_;
  ReportResult result_;
};

}  // namespace

ReportResult report_matching_lines(const Slp& slp, const Fsa& fsa, std::ostream& sink,
                                   ReportOptions options) {
  require_valid(slp);
  std::unique_ptr<Engine> engine;
  if (!fsa.matches_empty()) {
    engine = std::make_unique<Engine>(fsa);
    for (const Rule& r : slp.rules) engine->process_rule(r);
  }
  LineWalker walker(slp, engine ? engine->fsa() : fsa, engine.get(), sink, options);
  for (SymbolId sym : slp.axiom) walker.walk(sym);
  return walker.finish();
}

}  // namespace slpgrep
