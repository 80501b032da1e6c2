#pragma once

// Corpus-level evaluation and the CSV/JSON reports behind the CLI.

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "simullat/core.hpp"
#include "simullat/evs.hpp"
#include "simullat/metrics.hpp"
#include "simullat/stats.hpp"
#include "simullat/trace_io.hpp"

namespace simullat {

inline constexpr std::string_view kCorpusRowId = "CORPUS";

struct EvalOptions {
  std::vector<Metric> metrics = all_metrics();
  TokenGranularity granularity;
  // Score on this timeline instead of the record's own. ca -> nca uses the
  // computation spans; any timeline -> steps keeps only g(t).
  std::optional<TimelineKind> timeline;
  SubSegmentConfig subsegment;
};

struct SessionScores {
  std::string id;
  std::vector<std::optional<double>> values;  // parallel to EvalReport::metrics
  std::vector<std::string> notes;
};

struct EvalReport {
  std::vector<Metric> metrics;
  std::vector<SessionScores> sessions;
  // Unweighted mean over the sessions that produced a value.
  std::vector<std::optional<double>> corpus;
  std::vector<std::string> warnings;
};

// Sub-segments speech segments, switches timeline, and re-tokenizes the
// target as requested. Non-fatal findings are appended to `notes`.
SessionTrace prepare_session(const SessionTrace& s, const EvalOptions& opts,
                             std::vector<std::string>& notes);

// Metrics that do not apply to a session are left empty and reported as
// warnings; malformed sessions are skipped with a warning.
EvalReport evaluate_corpus(std::span<const SessionTrace> sessions, const EvalOptions& opts);

// Shortest decimal form that parses back to the same double.
std::string format_value(double v);

// Header "id,<metric>..." then one row per session and a final CORPUS row.
// Absent values are empty cells.
void write_report_csv(std::ostream& out, const EvalReport& report);
nlohmann::json report_to_json(const EvalReport& report);

struct EvsRow {
  std::string id;
  EvsSummary summary;
};

std::vector<EvsRow> evaluate_evs(std::span<const AlignmentRecord> records, EvsMode mode);

// Header "id,EVS,links,duplicates" ("AutoEVS" in automatic mode), one row per
// record, then CORPUS with the mean over sentences that have a value.
void write_evs_csv(std::ostream& out, std::span<const EvsRow> rows, EvsMode mode);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Index of `name` in the header; throws ConfigError when missing.
  std::size_t column(std::string_view name) const;
};

CsvTable read_csv(std::istream& in);
void write_csv_row(std::ostream& out, std::span<const std::string> cells);

// Joins tables on their "id" column (first table's row order, CORPUS rows
// ignored), takes columns a and b from whichever table has them, and drops
// rows where either cell is empty before ranking.
SpearmanResult correlate_tables(std::span<const CsvTable> tables, std::string_view col_a,
                                std::string_view col_b);

enum class Pairing {
  kAdjacent,  // (1,2), (3,4), ...; an odd last record is dropped
  kSliding,   // (1,2), (2,3), ...
};

Pairing parse_pairing(std::string_view s);

struct ConcatResult {
  std::vector<SessionTrace> traces;
  std::vector<AlignmentRecord> alignments;  // only when alignments were given
  std::vector<std::string> warnings;
};

// Concatenates paired records. When `alignments` is non-empty, the matching
// alignment records (by id) are merged with the same time shift and index
// offsets so two-sentence EVS can be scored alongside.
ConcatResult concat_corpus(std::span<const SessionTrace> traces,
                           std::span<const AlignmentRecord> alignments, Pairing pairing,
                           ConcatTiming timing);

}  // namespace simullat
