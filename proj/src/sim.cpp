#include "simullat/sim.hpp"

#include <algorithm>
#include <string>

#include "simullat/error.hpp"
#include "simullat/metrics_step.hpp"

namespace simullat::sim {

namespace {

void check_lengths(int k, int src_len, int tgt_len) {
  if (k < 1) throw ConfigError("k must be >= 1");
  if (src_len < 1 || tgt_len < 1) throw ConfigError("sequence lengths must be >= 1");
}

SessionTrace make_trace(std::string id, int src_len, std::vector<int> reads) {
  SessionTrace s;
  s.id = std::move(id);
  s.modality = Modality::kTextToText;
  s.timeline = TimelineKind::kUnitStep;
  s.source = step_tokens(src_len);
  s.target = step_tokens(static_cast<int>(reads.size()));
  s.reads = std::move(reads);
  validate(s);
  return s;
}

}  // namespace

SessionTrace wait_k(int k, int src_len, int tgt_len) {
  check_lengths(k, src_len, tgt_len);
  std::vector<int> reads(static_cast<std::size_t>(tgt_len));
  for (int t = 1; t <= tgt_len; ++t) {
    // long arithmetic: k may be huge
    reads[t - 1] = static_cast<int>(std::min<long>(static_cast<long>(k) + t - 1, src_len));
  }
  auto s = make_trace("wait-" + std::to_string(k), src_len, std::move(reads));
  s.meta = {{"strategy", "wait-k"}, {"param", k}};
  return s;
}

SessionTrace chunk_k(int k, int src_len, int tgt_len) {
  check_lengths(k, src_len, tgt_len);
  std::vector<int> reads(static_cast<std::size_t>(tgt_len));
  for (int t = 1; t <= tgt_len; ++t) {
    const long chunks = (static_cast<long>(t) + k - 1) / k;
    reads[t - 1] = static_cast<int>(std::min<long>(chunks * k, src_len));
  }
  auto s = make_trace("chunk-" + std::to_string(k), src_len, std::move(reads));
  s.meta = {{"strategy", "chunk-k"}, {"param", k}};
  return s;
}

SessionTrace two_chunk(int l1) {
  if (l1 < 1) throw ConfigError("L1 must be >= 1");
  std::vector<int> reads(static_cast<std::size_t>(l1), 10);
  reads.insert(reads.end(), 10, 20);
  auto s = make_trace("case4-L1=" + std::to_string(l1), 20, std::move(reads));
  s.meta = {{"strategy", "case4"}, {"param", l1}};
  return s;
}

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::kWaitK:
      return "wait-k";
    case Strategy::kChunkK:
      return "chunk-k";
    case Strategy::kTwoChunk:
      return "case4";
  }
  return "wait-k";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "wait-k") return Strategy::kWaitK;
  if (s == "chunk-k") return Strategy::kChunkK;
  if (s == "case4") return Strategy::kTwoChunk;
  throw ConfigError("unknown strategy '" + std::string(s) + "'");
}

SessionTrace generate(Strategy strategy, int param, int src_len, int tgt_len) {
  switch (strategy) {
    case Strategy::kWaitK:
      return wait_k(param, src_len, tgt_len);
    case Strategy::kChunkK:
      return chunk_k(param, src_len, tgt_len);
    case Strategy::kTwoChunk:
      return two_chunk(param);
  }
  throw ConfigError("unhandled strategy");
}

std::vector<CurveRow> sweep(std::span<const Metric> metrics, Strategy strategy, int first,
                            int last, int src_len, int tgt_len) {
  if (first < 1 || last < first) {
    throw ConfigError("invalid parameter range " + std::to_string(first) + ".." +
                      std::to_string(last));
  }
  std::vector<CurveRow> rows;
  for (int p = first; p <= last; ++p) {
    const auto trace = generate(strategy, p, src_len, tgt_len);
    for (const auto m : metrics) {
      if (!is_applicable(m, trace)) continue;
      rows.push_back({p, std::string(metric_name(m)), evaluate(m, trace)});
    }
  }
  return rows;
}

SessionTrace two_case_example(int which) {
  if (which == 1) {
    auto s = make_trace("case1", 4, {1, 1, 4, 4, 4});
    s.meta = {{"strategy", "example"}, {"param", 1}};
    return s;
  }
  if (which == 2) {
    auto s = make_trace("case2", 4, {1, 1, 1, 1, 1, 4, 4, 4});
    s.meta = {{"strategy", "example"}, {"param", 2}};
    return s;
  }
  throw ConfigError("example case must be 1 or 2");
}

std::vector<AlignedPair> two_case_alignment(int which) {
  const auto trace = two_case_example(which);
  const auto emitted = step_emission_times(trace.reads);
  const auto link = [&emitted](int src, int tgt, bool verified) {
    return AlignedPair{src, tgt, static_cast<double>(src - 1),
                       static_cast<double>(emitted[static_cast<std::size_t>(tgt - 1)] - 1),
                       verified};
  };
  if (which == 1) {
    // y1 is a function word.
    return {link(1, 2, true), link(2, 3, true), link(3, 4, true), link(4, 5, true)};
  }
  // y1, y2 and y4 are function words; the y1 link is an aligner error.
  return {link(1, 1, false), link(1, 3, true), link(2, 6, true), link(3, 7, true),
          link(4, 8, true)};
}

}  // namespace simullat::sim
