#include "simullat/metrics.hpp"

#include <array>
#include <string>
#include <utility>

#include "simullat/error.hpp"
#include "simullat/metrics_step.hpp"
#include "simullat/metrics_time.hpp"

namespace simullat {

namespace {

constexpr std::array<std::pair<Metric, std::string_view>, 9> kNames{{
    {Metric::kAL, "AL"},
    {Metric::kALRef, "AL-ref"},
    {Metric::kLAAL, "LAAL"},
    {Metric::kDAL, "DAL"},
    {Metric::kAP, "AP"},
    {Metric::kCW, "CW"},
    {Metric::kATD, "ATD"},
    {Metric::kStartOffset, "StartOffset"},
    {Metric::kEndOffset, "EndOffset"},
}};

}  // namespace

std::string_view metric_name(Metric m) {
  for (const auto& [metric, name] : kNames) {
    if (metric == m) return name;
  }
  return "?";
}

Metric parse_metric(std::string_view name) {
  for (const auto& [metric, known] : kNames) {
    if (known == name) return metric;
  }
  throw ConfigError("unknown metric '" + std::string(name) + "'");
}

std::vector<Metric> all_metrics() {
  std::vector<Metric> out;
  for (const auto& entry : kNames) out.push_back(entry.first);
  return out;
}

std::vector<Metric> parse_metric_list(std::string_view csv) {
  if (csv == "all") return all_metrics();
  std::vector<Metric> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto comma = csv.find(',', pos);
    const auto item = csv.substr(pos, comma == std::string_view::npos ? csv.npos : comma - pos);
    if (!item.empty()) out.push_back(parse_metric(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("no metrics selected");
  return out;
}

bool is_applicable(Metric m, const SessionTrace& s) {
  switch (m) {
    case Metric::kALRef:
    case Metric::kLAAL:
      return s.reference.has_value() && !s.reference->empty();
    case Metric::kStartOffset:
    case Metric::kEndOffset:
      return s.is_timed();
    default:
      return true;
  }
}

double evaluate(Metric m, const SessionTrace& s) {
  if (!is_applicable(m, s)) {
    throw IncompatibleError(std::string(metric_name(m)) + " is not applicable to session '" +
                            s.id + "' (" + std::string(to_string(s.timeline)) +
                            (s.reference ? "" : ", no reference") + ")");
  }
  switch (m) {
    case Metric::kAL:
      return average_lagging(StepMetricInput::from_session(s), LagRatio::kHypothesis);
    case Metric::kALRef:
      return average_lagging(StepMetricInput::from_session(s), LagRatio::kReference);
    case Metric::kLAAL:
      return average_lagging(StepMetricInput::from_session(s), LagRatio::kLengthAdaptive);
    case Metric::kDAL:
      return differentiable_average_lagging(StepMetricInput::from_session(s));
    case Metric::kAP:
      return average_proportion(StepMetricInput::from_session(s));
    case Metric::kCW:
      return consecutive_wait(StepMetricInput::from_session(s));
    case Metric::kATD:
      return s.is_timed() ? atd_timed(s) : atd_steps(StepMetricInput::from_session(s));
    case Metric::kStartOffset:
      return start_offset(s);
    case Metric::kEndOffset:
      return end_offset(s);
  }
  throw ConfigError("unhandled metric");
}

}  // namespace simullat
