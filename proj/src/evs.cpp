#include "simullat/evs.hpp"

#include <algorithm>
#include <vector>

namespace simullat {

EvsSummary summarize_evs(std::span<const AlignedPair> pairs, EvsMode mode) {
  std::vector<AlignedPair> unique(pairs.begin(), pairs.end());
  std::sort(unique.begin(), unique.end());
  const auto last = std::unique(unique.begin(), unique.end());
  EvsSummary out;
  out.duplicates = static_cast<std::size_t>(unique.end() - last);
  unique.erase(last, unique.end());

  double sum = 0.0;
  for (const auto& p : unique) {
    if (mode == EvsMode::kVerifiedOnly && !p.verified) continue;
    sum += p.span();
    ++out.links_used;
  }
  if (out.links_used > 0) out.mean = sum / static_cast<double>(out.links_used);
  return out;
}

std::optional<double> mean_evs(std::span<const AlignedPair> pairs, EvsMode mode) {
  return summarize_evs(pairs, mode).mean;
}

}  // namespace simullat
