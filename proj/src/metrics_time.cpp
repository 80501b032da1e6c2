#include "simullat/metrics_time.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "simullat/error.hpp"
#include "simullat/metrics_step.hpp"

namespace simullat {

namespace {

void require_timed(const SessionTrace& s, const char* metric) {
  if (!s.is_timed()) {
    throw IncompatibleError(std::string(metric) + " needs a millisecond timeline; session '" +
                            s.id + "' is unit-step");
  }
}

void require_sides(const SessionTrace& s) {
  if (s.source.empty()) throw DataError("session '" + s.id + "': no input");
  if (s.target.empty()) throw DataError("session '" + s.id + "': no output produced");
}

// Total length of the union of `spans` clipped to [lo, hi].
double covered_length(std::vector<std::pair<double, double>> spans, double lo, double hi) {
  if (hi <= lo) return 0.0;
  std::sort(spans.begin(), spans.end());
  double total = 0.0;
  double cur_lo = 0.0;
  double cur_hi = 0.0;
  bool open = false;
  for (auto [a, b] : spans) {
    a = std::max(a, lo);
    b = std::min(b, hi);
    if (b <= a) continue;
    if (open && a <= cur_hi) {
      cur_hi = std::max(cur_hi, b);
      continue;
    }
    if (open) total += cur_hi - cur_lo;
    cur_lo = a;
    cur_hi = b;
    open = true;
  }
  if (open) total += cur_hi - cur_lo;
  return total;
}

}  // namespace

double atd_timed(const SessionTrace& s) {
  require_timed(s, "ATD");
  validate(s);
  require_sides(s);
  const auto a = atd_source_alignment(s.reads);
  double sum = 0.0;
  for (std::size_t t = 0; t < s.target.size(); ++t) {
    sum += s.target[t].end - s.source[static_cast<std::size_t>(a[t] - 1)].end;
  }
  return sum / static_cast<double>(s.target.size());
}

double start_offset(const SessionTrace& s) {
  require_timed(s, "StartOffset");
  require_sides(s);
  return s.target.front().start - s.source.front().start;
}

double end_offset(const SessionTrace& s) {
  require_timed(s, "EndOffset");
  require_sides(s);
  return s.target.back().end - s.source.back().end;
}

std::vector<std::size_t> causality_violations(const SessionTrace& s) {
  std::vector<std::size_t> out;
  if (!s.is_timed()) return out;
  for (std::size_t t = 0; t < s.target.size() && t < s.reads.size(); ++t) {
    const auto g = static_cast<std::size_t>(s.reads[t]);
    if (g >= 1 && g <= s.source.size() && s.target[t].start < s.source[g - 1].end) {
      out.push_back(t + 1);
    }
  }
  return out;
}

SessionTrace build_nca_timeline(const SessionTrace& s) {
  require_timed(s, "NCA re-scheduling");
  if (!s.spans) {
    throw DataError("session '" + s.id + "' has no computation-span annotations");
  }
  validate(s);

  std::vector<std::pair<double, double>> spans;
  spans.reserve(s.spans->size());
  for (const auto& span : *s.spans) spans.emplace_back(span.start, span.end);

  SessionTrace out = s;
  out.timeline = TimelineKind::kNonComputationAware;
  out.spans = std::vector<ComputationSpan>{};

  double prev_end = 0.0;
  bool first = true;
  std::size_t begin = 0;
  for (const auto end : chunk_ends_from_reads(s.reads)) {
    const auto& head = s.target[begin];
    const double trigger = s.source[static_cast<std::size_t>(s.reads[begin] - 1)].end;
    double start = head.start - covered_length(spans, trigger, head.start);
    if (!first) start = std::max(start, prev_end);
    const double shift = start - head.start;
    for (std::size_t t = begin; t < end; ++t) {
      out.target[t].start += shift;
      out.target[t].end += shift;
    }
    prev_end = out.target[end - 1].end;
    first = false;
    begin = end;
  }
  validate(out);
  return out;
}

}  // namespace simullat
