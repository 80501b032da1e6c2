// simullat: latency evaluation for simultaneous translation traces.
//
//   simullat eval traces.jsonl --metrics AL,DAL,ATD --output report.csv
//   simullat simulate --strategy chunk-k --range 1:20 --output chunk.jsonl
//   simullat evs alignments.jsonl --mode verified --output evs.csv
//   simullat correlate --report report.csv --report evs.csv -a ATD -b EVS
//   simullat concat traces.jsonl --pairing adjacent --output pairs.jsonl
//
// Exit codes: 0 ok, 1 usage, 2 data error.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "simullat/error.hpp"
#include "simullat/report.hpp"
#include "simullat/sim.hpp"
#include "simullat/trace_io.hpp"

namespace {

using namespace simullat;

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

// "-" or empty means the standard stream.
class Input {
 public:
  explicit Input(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ifstream>(path);
    if (!*file_) throw DataError("cannot open '" + path + "'");
  }
  std::istream& get() { return file_ ? *file_ : std::cin; }

 private:
  std::unique_ptr<std::ifstream> file_;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw DataError("cannot write '" + path + "'");
  }
  std::ostream& get() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, colon)), std::stoi(s.substr(colon + 1))};
  } catch (const std::exception&) {
    throw ConfigError("range must look like A:B, got '" + s + "'");
  }
}

int report_warnings(const std::vector<std::string>& warnings, bool strict) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
  return strict && !warnings.empty() ? kExitData : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latency metrics for simultaneous translation traces"};
  app.require_subcommand(1);

  // eval
  auto* eval = app.add_subcommand("eval", "Score every session in a trace file");
  std::string eval_input = "-";
  std::string eval_metrics = "all";
  std::string eval_granularity = "word";
  std::string eval_timeline;
  double eval_tau = 300.0;
  bool eval_strict = false;
  std::string eval_output;
  std::string eval_json;
  eval->add_option("input", eval_input, "Trace JSONL ('-' for stdin)");
  eval->add_option("--metrics", eval_metrics,
                   "Comma-separated: AL,AL-ref,LAAL,DAL,AP,CW,ATD,StartOffset,EndOffset or all");
  eval->add_option("--granularity", eval_granularity, "word or char:N");
  eval->add_option("--timeline", eval_timeline, "Score on ca, nca or steps")
      ->check(CLI::IsMember({"ca", "nca", "steps"}));
  eval->add_option("--tau", eval_tau, "Speech sub-segment length in ms")
      ->check(CLI::PositiveNumber);
  eval->add_flag("--strict", eval_strict, "Exit 2 on any warning");
  eval->add_option("--output,-o", eval_output, "CSV report path (default stdout)");
  eval->add_option("--json", eval_json, "Also write a JSON report here");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Generate synthetic unit-step traces");
  std::string sim_strategy = "wait-k";
  std::string sim_range = "1:20";
  int sim_src_len = 20;
  int sim_tgt_len = 20;
  std::string sim_output;
  std::string sim_curve;
  simulate->add_option("--strategy", sim_strategy, "wait-k, chunk-k or case4")
      ->check(CLI::IsMember({"wait-k", "chunk-k", "case4"}));
  simulate->add_option("--range", sim_range, "k (or L1 for case4) range A:B");
  simulate->add_option("--src-len", sim_src_len, "Source length")->check(CLI::PositiveNumber);
  simulate->add_option("--tgt-len", sim_tgt_len, "Target length")->check(CLI::PositiveNumber);
  simulate->add_option("--output,-o", sim_output, "Trace JSONL path (default stdout)");
  simulate->add_option("--curve", sim_curve,
                       "Instead of traces, write a parameter,metric,value table for these metrics");

  // evs
  auto* evs = app.add_subcommand("evs", "Mean EVS per sentence from alignment JSONL");
  std::string evs_input = "-";
  std::string evs_mode = "verified";
  std::string evs_output;
  evs->add_option("input", evs_input, "Alignment JSONL ('-' for stdin)");
  evs->add_option("--mode", evs_mode, "verified or automatic")
      ->check(CLI::IsMember({"verified", "automatic"}));
  evs->add_option("--output,-o", evs_output, "CSV path (default stdout)");

  // correlate
  auto* correlate = app.add_subcommand("correlate", "Spearman's rho between two report columns");
  std::vector<std::string> corr_reports;
  std::string corr_a;
  std::string corr_b;
  std::string corr_output;
  correlate->add_option("--report,-r", corr_reports, "Report CSV(s), joined on id")->required();
  correlate->add_option("-a", corr_a, "First column")->required();
  correlate->add_option("-b", corr_b, "Second column")->required();
  correlate->add_option("--output,-o", corr_output, "CSV path (default stdout)");

  // concat
  auto* concat = app.add_subcommand("concat", "Join consecutive sessions into one");
  std::string cat_input = "-";
  std::string cat_pairing = "adjacent";
  std::string cat_timing = "relative";
  std::string cat_alignments;
  std::string cat_alignments_output;
  std::string cat_output;
  bool cat_strict = false;
  concat->add_option("input", cat_input, "Trace JSONL ('-' for stdin)");
  concat->add_option("--pairing", cat_pairing, "adjacent or sliding")
      ->check(CLI::IsMember({"adjacent", "sliding"}));
  concat->add_option("--timing", cat_timing, "relative or absolute")
      ->check(CLI::IsMember({"relative", "absolute"}));
  concat->add_option("--alignments", cat_alignments, "Alignment JSONL to merge alongside");
  concat->add_option("--alignments-output", cat_alignments_output, "Merged alignment JSONL path");
  concat->add_option("--output,-o", cat_output, "Trace JSONL path (default stdout)");
  concat->add_flag("--strict", cat_strict, "Exit 2 on any warning");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (eval->parsed()) {
      EvalOptions opts;
      opts.metrics = parse_metric_list(eval_metrics);
      opts.granularity = TokenGranularity::parse(eval_granularity);
      if (!eval_timeline.empty()) opts.timeline = parse_timeline(eval_timeline);
      opts.subsegment.tau = eval_tau;

      Input in(eval_input);
      const auto traces = read_traces(in.get());
      const auto report = evaluate_corpus(traces, opts);
      Output out(eval_output);
      write_report_csv(out.get(), report);
      if (!eval_json.empty()) {
        Output json_out(eval_json);
        json_out.get() << report_to_json(report).dump(2) << '\n';
      }
      return report_warnings(report.warnings, eval_strict);
    }

    if (simulate->parsed()) {
      const auto strategy = sim::parse_strategy(sim_strategy);
      const auto [first, last] = parse_range(sim_range);
      Output out(sim_output);
      if (!sim_curve.empty()) {
        const auto metrics = parse_metric_list(sim_curve);
        const std::vector<std::string> header{"parameter", "metric", "value"};
        write_csv_row(out.get(), header);
        for (const auto& row : sim::sweep(metrics, strategy, first, last, sim_src_len, sim_tgt_len)) {
          const std::vector<std::string> cells{std::to_string(row.parameter), row.metric,
                                               format_value(row.value)};
          write_csv_row(out.get(), cells);
        }
        return 0;
      }
      if (first < 1 || last < first) throw ConfigError("invalid range '" + sim_range + "'");
      std::vector<SessionTrace> traces;
      for (int p = first; p <= last; ++p) {
        traces.push_back(sim::generate(strategy, p, sim_src_len, sim_tgt_len));
      }
      write_traces(out.get(), traces);
      return 0;
    }

    if (evs->parsed()) {
      const auto mode = evs_mode == "automatic" ? EvsMode::kAutomatic : EvsMode::kVerifiedOnly;
      Input in(evs_input);
      const auto records = read_alignments(in.get());
      if (records.empty()) throw DataError("no alignment records");
      Output out(evs_output);
      write_evs_csv(out.get(), evaluate_evs(records, mode), mode);
      return 0;
    }

    if (correlate->parsed()) {
      std::vector<CsvTable> tables;
      for (const auto& path : corr_reports) {
        Input in(path);
        tables.push_back(read_csv(in.get()));
      }
      const auto r = correlate_tables(tables, corr_a, corr_b);
      Output out(corr_output);
      const std::vector<std::string> header{"a", "b", "rho", "p", "n"};
      const std::vector<std::string> cells{corr_a, corr_b, format_value(r.rho),
                                           format_value(r.p_value), std::to_string(r.n)};
      write_csv_row(out.get(), header);
      write_csv_row(out.get(), cells);
      return 0;
    }

    if (concat->parsed()) {
      Input in(cat_input);
      const auto traces = read_traces(in.get());
      if (traces.empty()) throw DataError("no sessions");
      std::vector<AlignmentRecord> alignments;
      if (!cat_alignments.empty()) {
        Input ain(cat_alignments);
        alignments = read_alignments(ain.get());
      }
      const auto timing =
          cat_timing == "absolute" ? ConcatTiming::kAbsolute : ConcatTiming::kRelative;
      const auto result = concat_corpus(traces, alignments, parse_pairing(cat_pairing), timing);
      Output out(cat_output);
      write_traces(out.get(), result.traces);
      if (!cat_alignments_output.empty()) {
        Output aout(cat_alignments_output);
        write_alignments(aout.get(), result.alignments);
      }
      return report_warnings(result.warnings, cat_strict);
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return 0;
}
