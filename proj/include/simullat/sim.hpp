#pragma once

// Synthetic unit-step schedules for the fixed policies used to study how
// the metrics behave: wait-k, chunk-k, the two-chunk (10+10)-(L1+10) family,
// and the two-case example where a longer first output chunk lowers AL.

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "simullat/core.hpp"
#include "simullat/evs.hpp"
#include "simullat/metrics.hpp"

namespace simullat::sim {

// Read k tokens, then alternate one write and one read:
// g(t) = min(k + t - 1, src_len).
SessionTrace wait_k(int k, int src_len, int tgt_len);

// Alternate k-token input and output chunks; the final chunks may be short:
// g(t) = min(ceil(t / k) * k, src_len).
SessionTrace chunk_k(int k, int src_len, int tgt_len);

// Two 10-token input chunks translated into l1 and 10 output tokens:
// g(t) = 10 for t <= l1, 20 afterwards.
SessionTrace two_chunk(int l1);

enum class Strategy { kWaitK, kChunkK, kTwoChunk };

std::string_view to_string(Strategy s);
// "wait-k", "chunk-k" or "case4".
Strategy parse_strategy(std::string_view s);

// `param` is k for wait-k/chunk-k and L1 for the two-chunk family (whose
// lengths are fixed, so src_len/tgt_len are ignored there).
SessionTrace generate(Strategy strategy, int param, int src_len, int tgt_len);

struct CurveRow {
  int parameter = 0;
  std::string metric;
  double value = 0.0;
};

// Metric values for every parameter in [first, last], ordered by parameter
// then by the order of `metrics`.
std::vector<CurveRow> sweep(std::span<const Metric> metrics, Strategy strategy, int first,
                            int last, int src_len = 20, int tgt_len = 20);

// Two chunked translations of the same 4-token input. Case 2 emits a
// five-token first chunk where case 1 emits two tokens; AL and DAL rate
// case 2 as faster, ATD and EVS as slower.
SessionTrace two_case_example(int which);

// Content-word alignment links for two_case_example(which), with start
// times in steps: source token j starts at j-1, target token t at T(y_t)-1.
std::vector<AlignedPair> two_case_alignment(int which);

}  // namespace simullat::sim
