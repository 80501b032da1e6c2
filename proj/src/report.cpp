#include "simullat/report.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <string>

#include "simullat/error.hpp"
#include "simullat/metrics_step.hpp"
#include "simullat/metrics_time.hpp"

namespace simullat {

namespace {

using nlohmann::json;

SessionTrace to_unit_steps(const SessionTrace& s) {
  SessionTrace out = s;
  out.timeline = TimelineKind::kUnitStep;
  out.source = step_tokens(static_cast<int>(s.source.size()));
  out.target = step_tokens(static_cast<int>(s.target.size()));
  for (std::size_t i = 0; i < s.source.size(); ++i) out.source[i].text = s.source[i].text;
  for (std::size_t i = 0; i < s.target.size(); ++i) out.target[i].text = s.target[i].text;
  out.spans.reset();
  return out;
}

std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (const char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  return cells;
}

std::optional<double> parse_cell(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
    throw DataError("non-numeric cell '" + cell + "'");
  }
  return v;
}

std::optional<double> mean_of(std::span<const std::optional<double>> values) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& v : values) {
    if (v) {
      sum += *v;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

}  // namespace

SessionTrace prepare_session(const SessionTrace& s, const EvalOptions& opts,
                             std::vector<std::string>& notes) {
  SessionTrace out = s.segment_units ? subsegment_session(s, opts.subsegment) : s;

  if (opts.timeline && *opts.timeline != out.timeline) {
    switch (*opts.timeline) {
      case TimelineKind::kUnitStep:
        out = to_unit_steps(out);
        break;
      case TimelineKind::kNonComputationAware:
        if (out.timeline != TimelineKind::kComputationAware) {
          throw IncompatibleError("cannot derive an NCA timeline from a unit-step session");
        }
        out = build_nca_timeline(out);
        break;
      case TimelineKind::kComputationAware:
        throw IncompatibleError("a CA timeline cannot be derived from '" +
                                std::string(to_string(out.timeline)) + "'");
    }
  }

  out = apply_granularity(out, opts.granularity);

  if (out.timeline == TimelineKind::kComputationAware) {
    const auto early = causality_violations(out);
    if (!early.empty()) {
      notes.push_back(std::to_string(early.size()) +
                      " target token(s) start before their source prefix ends");
    }
  }
  if (!out.reads.empty() && !out.source.empty() &&
      al_cutoff(out.reads, static_cast<int>(out.source.size())).fallback) {
    notes.push_back("g never reaches |x|; AL cut-off set to |y|");
  }
  return out;
}

EvalReport evaluate_corpus(std::span<const SessionTrace> sessions, const EvalOptions& opts) {
  if (sessions.empty()) throw DataError("no sessions");
  EvalReport report;
  report.metrics = opts.metrics;

  for (const auto& raw : sessions) {
    SessionScores scores;
    scores.id = raw.id;
    SessionTrace s;
    try {
      s = prepare_session(raw, opts, scores.notes);
    } catch (const DataError& e) {
      report.warnings.push_back("session '" + raw.id + "' skipped: " + e.what());
      continue;
    }
    for (const auto m : opts.metrics) {
      try {
        scores.values.emplace_back(evaluate(m, s));
      } catch (const IncompatibleError& e) {
        scores.values.emplace_back();
        report.warnings.push_back(e.what());
      } catch (const DataError& e) {
        scores.values.emplace_back();
        report.warnings.push_back("session '" + raw.id + "', " +
                                  std::string(metric_name(m)) + ": " + e.what());
      }
    }
    for (const auto& note : scores.notes) {
      report.warnings.push_back("session '" + raw.id + "': " + note);
    }
    report.sessions.push_back(std::move(scores));
  }

  for (std::size_t k = 0; k < report.metrics.size(); ++k) {
    std::vector<std::optional<double>> column;
    for (const auto& row : report.sessions) column.push_back(row.values[k]);
    report.corpus.push_back(mean_of(column));
  }
  return report;
}

std::string format_value(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

void write_csv_row(std::ostream& out, std::span<const std::string> cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << csv_escape(cells[i]);
  }
  out << '\n';
}

void write_report_csv(std::ostream& out, const EvalReport& report) {
  std::vector<std::string> header{"id"};
  for (const auto m : report.metrics) header.emplace_back(metric_name(m));
  write_csv_row(out, header);

  const auto emit = [&out](const std::string& id, std::span<const std::optional<double>> values) {
    std::vector<std::string> cells{id};
    for (const auto& v : values) cells.push_back(v ? format_value(*v) : "");
    write_csv_row(out, cells);
  };
  for (const auto& row : report.sessions) emit(row.id, row.values);
  emit(std::string(kCorpusRowId), report.corpus);
}

json report_to_json(const EvalReport& report) {
  const auto values = [&report](std::span<const std::optional<double>> vs) {
    json obj = json::object();
    for (std::size_t k = 0; k < report.metrics.size(); ++k) {
      obj[std::string(metric_name(report.metrics[k]))] = vs[k] ? json(*vs[k]) : json(nullptr);
    }
    return obj;
  };
  json j;
  j["sessions"] = json::array();
  for (const auto& row : report.sessions) {
    j["sessions"].push_back({{"id", row.id}, {"metrics", values(row.values)}, {"notes", row.notes}});
  }
  j["corpus"] = values(report.corpus);
  j["warnings"] = report.warnings;
  return j;
}

std::vector<EvsRow> evaluate_evs(std::span<const AlignmentRecord> records, EvsMode mode) {
  std::vector<EvsRow> rows;
  rows.reserve(records.size());
  for (const auto& r : records) rows.push_back({r.id, summarize_evs(r.links, mode)});
  return rows;
}

void write_evs_csv(std::ostream& out, std::span<const EvsRow> rows, EvsMode mode) {
  const std::vector<std::string> header{"id", mode == EvsMode::kAutomatic ? "AutoEVS" : "EVS",
                                        "links", "duplicates"};
  write_csv_row(out, header);
  std::vector<std::optional<double>> means;
  for (const auto& row : rows) {
    means.push_back(row.summary.mean);
    const std::vector<std::string> cells{
        row.id, row.summary.mean ? format_value(*row.summary.mean) : "",
        std::to_string(row.summary.links_used), std::to_string(row.summary.duplicates)};
    write_csv_row(out, cells);
  }
  const auto corpus = mean_of(means);
  const std::vector<std::string> last{std::string(kCorpusRowId),
                                      corpus ? format_value(*corpus) : "", "", ""};
  write_csv_row(out, last);
}

std::size_t CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError("no column '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = parse_csv_line(line);
    if (first) {
      table.header = std::move(cells);
      first = false;
      continue;
    }
    cells.resize(table.header.size());
    table.rows.push_back(std::move(cells));
  }
  if (table.header.empty()) throw DataError("empty CSV");
  return table;
}

SpearmanResult correlate_tables(std::span<const CsvTable> tables, std::string_view col_a,
                                std::string_view col_b) {
  if (tables.empty()) throw ConfigError("no report tables given");

  // id -> value, for whichever table carries each column
  const auto lookup = [&tables](std::string_view col) {
    for (const auto& t : tables) {
      if (std::find(t.header.begin(), t.header.end(), col) == t.header.end()) continue;
      const auto id_col = t.column("id");
      const auto val_col = t.column(col);
      std::map<std::string, std::optional<double>> values;
      for (const auto& row : t.rows) {
        if (row[id_col] == kCorpusRowId) continue;
        values[row[id_col]] = parse_cell(row[val_col]);
      }
      return values;
    }
    throw ConfigError("no report has a column '" + std::string(col) + "'");
  };
  const auto a_values = lookup(col_a);
  const auto b_values = lookup(col_b);

  const auto& order = tables.front();
  const auto id_col = order.column("id");
  std::vector<std::optional<double>> xs;
  std::vector<std::optional<double>> ys;
  for (const auto& row : order.rows) {
    const auto& id = row[id_col];
    if (id == kCorpusRowId) continue;
    const auto a = a_values.find(id);
    const auto b = b_values.find(id);
    xs.push_back(a == a_values.end() ? std::nullopt : a->second);
    ys.push_back(b == b_values.end() ? std::nullopt : b->second);
  }
  return spearman(std::span<const std::optional<double>>(xs),
                  std::span<const std::optional<double>>(ys));
}

Pairing parse_pairing(std::string_view s) {
  if (s == "adjacent") return Pairing::kAdjacent;
  if (s == "sliding") return Pairing::kSliding;
  throw ConfigError("pairing must be 'adjacent' or 'sliding'");
}

ConcatResult concat_corpus(std::span<const SessionTrace> traces,
                           std::span<const AlignmentRecord> alignments, Pairing pairing,
                           ConcatTiming timing) {
  std::map<std::string, const AlignmentRecord*> by_id;
  for (const auto& r : alignments) by_id[r.id] = &r;

  ConcatResult result;
  const std::size_t stride = pairing == Pairing::kAdjacent ? 2 : 1;
  for (std::size_t i = 0; i + 1 < traces.size(); i += stride) {
    const auto& a = traces[i];
    const auto& b = traces[i + 1];
    try {
      result.traces.push_back(concat_sessions(a, b, timing));
    } catch (const DataError& e) {
      result.warnings.push_back("pair (" + a.id + ", " + b.id + ") skipped: " + e.what());
      continue;
    }
    if (alignments.empty()) continue;

    const auto ra = by_id.find(a.id);
    const auto rb = by_id.find(b.id);
    if (ra == by_id.end() || rb == by_id.end()) {
      result.warnings.push_back("no alignment for pair (" + a.id + ", " + b.id + ")");
      continue;
    }
    AlignmentRecord merged;
    merged.id = result.traces.back().id;
    merged.links = ra->second->links;
    int src_offset = 0;
    int tgt_offset = 0;
    for (const auto& p : merged.links) {
      src_offset = std::max(src_offset, p.src_index);
      tgt_offset = std::max(tgt_offset, p.tgt_index);
    }
    const double shift = concat_shift(a, timing);
    for (auto p : rb->second->links) {
      p.src_index += src_offset;
      p.tgt_index += tgt_offset;
      p.src_start += shift;
      p.tgt_start += shift;
      merged.links.push_back(p);
    }
    result.alignments.push_back(std::move(merged));
  }
  if (pairing == Pairing::kAdjacent && traces.size() % 2 == 1) {
    result.warnings.push_back("odd record count; '" + traces.back().id + "' left unpaired");
  }
  return result;
}

}  // namespace simullat
