#include "slpgrep/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "slpgrep/error.hpp"
#include "slpgrep/regex.hpp"
#include "slpgrep/repair.hpp"
#include "slpgrep/reporter.hpp"
#include "slpgrep/search.hpp"
#include "slpgrep/slp.hpp"

namespace slpgrep {
namespace {

constexpr int kExitMatch = 0;
constexpr int kExitNoMatch = 1;
constexpr int kExitError = 2;

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file_) throw IoError("cannot open " + path);
    stream_ = file_.get();
  }

  std::istream& get() { return *stream_; }

  std::string slurp() {
    std::string data{std::istreambuf_iterator<char>(*stream_), std::istreambuf_iterator<char>()};
    if (stream_->bad()) throw IoError("read failed");
    return data;
  }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_;
};

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*file_) throw IoError("cannot open " + path + " for writing");
    stream_ = file_.get();
  }

  std::ostream& get() { return *stream_; }

  void write(const void* data, std::size_t size) {
    stream_->write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
    stream_->flush();
    if (!*stream_) throw IoError("write to output failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

std::string error_kind(const std::exception& e) {
  if (const auto* p = dynamic_cast<const PatternError*>(&e)) {
    return p->kind() == PatternError::Kind::kNewline ? "pattern error" : "syntax error";
  }
  if (const auto* f = dynamic_cast<const FormatError*>(&e)) {
    return std::string("format error (") + FormatError::kind_name(f->kind()) + ")";
  }
  if (dynamic_cast<const InvalidSlpError*>(&e)) return "invalid grammar";
  if (dynamic_cast<const IoError*>(&e)) return "i/o error";
  return "error";
}

nlohmann::json percentiles_json(const Percentiles& p) {
  return {{"p50", p.p50}, {"p75", p.p75}, {"p95", p.p95}, {"p98", p.p98}, {"p100", p.p100}};
}

void print_stats(const SearchStats& st, bool json, std::ostream& out) {
  const std::uint64_t s = st.states;
  if (json) {
    nlohmann::json j = {
        {"states", st.states},
        {"rules", st.rules},
        {"axiom_len", st.axiom_len},
        {"rule_ops", percentiles_json(st.rule_percentiles)},
        {"axiom_ops", percentiles_json(st.axiom_percentiles)},
        {"rule_bound", s * s * s + s},
        {"axiom_bound", s * s},
        {"measured_ops", st.measured_ops},
        {"deterministic", st.deterministic},
    };
    out << j.dump(2) << '\n';
    return;
  }
  auto row = [&out](const char* name, const Percentiles& p, std::uint64_t bound) {
    out << std::left << std::setw(8) << name << std::right << std::setw(10) << p.p50
        << std::setw(10) << p.p75 << std::setw(10) << p.p95 << std::setw(10) << p.p98
        << std::setw(10) << p.p100 << std::setw(12) << bound << '\n';
  };
  out << "states " << st.states << ", rules " << st.rules << ", axiom " << st.axiom_len
      << ", measured ops " << st.measured_ops << '\n';
  out << std::left << std::setw(8) << "" << std::right << std::setw(10) << "50%"
      << std::setw(10) << "75%" << std::setw(10) << "95%" << std::setw(10) << "98%"
      << std::setw(10) << "100%" << std::setw(12) << "bound" << '\n';
  row("rule", st.rule_percentiles, s * s * s + s);
  row("axiom", st.axiom_percentiles, s * s);
}

void print_trace(const TraceEvent& ev, std::ostream& err) {
  const CountInfo& c = ev.info;
  auto b = [](bool v) { return v ? 'T' : 'F'; };
  if (ev.kind == TraceEvent::Kind::kRule) {
    err << "rule X" << (ev.symbol - kFirstVariable + 1);
  } else {
    err << "axiom[" << ev.axiom_index << "]";
  }
  err << " <" << b(c.nl) << ',' << b(c.left) << ',' << b(c.right) << ',' << c.count << ">"
      << (ev.boundary_match ? " new_match" : "") << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Regular expression search over grammar-compressed text", "slpgrep"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  std::string pattern;
  bool json = false;
  bool no_prune = false;
  bool trace = false;

  auto* compress_cmd = app.add_subcommand("compress", "Compress bytes into a ZSLP grammar");
  compress_cmd->add_option("IN", input, "Input file (default: stdin)");
  compress_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* decompress_cmd = app.add_subcommand("decompress", "Expand a ZSLP grammar to bytes");
  decompress_cmd->add_option("IN", input, "Input file (default: stdin)");
  decompress_cmd->add_option("-o,--output", output, "Output file (default: stdout)");

  auto* count_cmd = app.add_subcommand("count", "Print the number of matching lines");
  count_cmd->add_option("-e,--regexp", pattern, "Pattern")->required();
  count_cmd->add_option("IN", input, "ZSLP file (default: stdin)");
  count_cmd->add_flag("--trace", trace, "Print per-rule counting information to stderr")
      ->group("");

  auto* search_cmd = app.add_subcommand("search", "Print the matching lines");
  search_cmd->add_option("-e,--regexp", pattern, "Pattern")->required();
  search_cmd->add_option("IN", input, "ZSLP file (default: stdin)");
  search_cmd->add_flag("--no-prune", no_prune)->group("");

  auto* stats_cmd = app.add_subcommand("stats", "Print operation-count percentiles");
  stats_cmd->add_option("-e,--regexp", pattern, "Pattern")->required();
  stats_cmd->add_option("IN", input, "ZSLP file (default: stdin)");
  stats_cmd->add_flag("--json", json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitMatch;
  } catch (const CLI::ParseError& e) {
    err << "slpgrep: usage error: " << e.what() << '\n';
    return kExitError;
  }

  try {
    Input source(input, in);

    if (compress_cmd->parsed()) {
      const std::string text = source.slurp();
      const Slp slp = compress(text);
      const std::vector<std::uint8_t> bytes = encode_slp(slp);
      Output(output, out).write(bytes.data(), bytes.size());
      const CompressionReport r = compression_report(slp, text.size());
      err << "rules " << r.rules << ", axiom " << r.axiom_len << ", " << text.size() << " -> "
          << r.encoded_bytes << " bytes, ratio " << std::fixed << std::setprecision(2) << r.ratio
          << '\n';
      return kExitMatch;
    }

    if (decompress_cmd->parsed()) {
      const Slp slp = read_slp(source.get());
      const std::string text = expand(slp);
      Output(output, out).write(text.data(), text.size());
      return kExitMatch;
    }

    const Fsa fsa = compile(pattern);

    if (count_cmd->parsed()) {
      std::uint64_t n = 0;
      if (trace && !fsa.matches_empty()) {
        const Slp slp = read_slp(source.get());
        require_valid(slp);
        EngineOptions options;
        options.trace = [&err](const TraceEvent& ev) { print_trace(ev, err); };
        Engine engine(fsa, options);
        for (const Rule& r : slp.rules) engine.process_rule(r);
        n = matching_lines(engine.process_axiom(slp.axiom));
      } else {
        SlpReader reader(source.get());
        n = count_matching_lines(reader, fsa);
      }
      out << n << '\n';
      out.flush();
      if (!out) throw IoError("write to output failed");
      return n > 0 ? kExitMatch : kExitNoMatch;
    }

    if (search_cmd->parsed()) {
      const Slp slp = read_slp(source.get());
      ReportOptions options;
      options.prune = !no_prune;
      const ReportResult r = report_matching_lines(slp, fsa, out, options);
      return r.lines > 0 ? kExitMatch : kExitNoMatch;
    }

    SlpReader reader(source.get());
    print_stats(collect_stats(reader, fsa), json, out);
    out.flush();
    if (!out) throw IoError("write to output failed");
    return kExitMatch;
  } catch (const std::exception& e) {
    err << "slpgrep: " << error_kind(e) << ": " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace slpgrep
