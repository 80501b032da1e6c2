#pragma once

// Ear-Voice Span from externally produced word alignments and word start
// times. No linguistic filtering is applied here; stop-word removal is up
// to whoever verified the links.

#include <cstddef>
#include <optional>
#include <span>

namespace simullat {

struct AlignedPair {
  int src_index = 1;
  int tgt_index = 1;
  double src_start = 0.0;  // ms
  double tgt_start = 0.0;  // ms
  bool verified = false;

  double span() const { return tgt_start - src_start; }
  auto operator<=>(const AlignedPair&) const = default;
};

enum class EvsMode {
  kVerifiedOnly,  // mean EVS
  kAutomatic,     // mean automatic EVS, wrong links included
};

struct EvsSummary {
  std::optional<double> mean;  // absent when no link qualifies
  std::size_t links_used = 0;
  std::size_t duplicates = 0;  // exact duplicate links dropped
};

// Exact duplicate links are dropped first. Every remaining link contributes
// one EVS, so a target word aligned to two source words counts twice.
// Negative spans are averaged as-is.
EvsSummary summarize_evs(std::span<const AlignedPair> pairs, EvsMode mode);

std::optional<double> mean_evs(std::span<const AlignedPair> pairs, EvsMode mode);

}  // namespace simullat
