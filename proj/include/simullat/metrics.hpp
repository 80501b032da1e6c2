#pragma once

// Name-based dispatch over every metric the toolkit reports.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simullat/core.hpp"

namespace simullat {

enum class Metric {
  kAL,
  kALRef,
  kLAAL,
  kDAL,
  kAP,
  kCW,
  kATD,
  kStartOffset,
  kEndOffset,
};

// Report column names: AL, AL-ref, LAAL, DAL, AP, CW, ATD, StartOffset,
// EndOffset.
std::string_view metric_name(Metric m);
Metric parse_metric(std::string_view name);
// Comma-separated list; "all" expands to every metric.
std::vector<Metric> parse_metric_list(std::string_view csv);
std::vector<Metric> all_metrics();

// True when `m` can be computed on this session at all (offsets need a
// millisecond timeline, AL-ref/LAAL need a reference).
bool is_applicable(Metric m, const SessionTrace& s);

// ATD is taken on the step timeline for unit-step sessions and from token
// end times otherwise. Throws IncompatibleError when !is_applicable.
double evaluate(Metric m, const SessionTrace& s);

}  // namespace simullat
