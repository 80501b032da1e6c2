#pragma once

// Latency metrics that only depend on the READ schedule g(t) and the
// sequence lengths: AL and its reference-based variants, DAL, AP, CW, and
// ATD on the unit-step timeline.

#include <optional>
#include <span>
#include <vector>

#include "simullat/core.hpp"

namespace simullat {

struct StepMetricInput {
  std::vector<int> reads;  // g(1..|y|)
  int src_len = 0;         // |x|
  int tgt_len = 0;         // |y|
  std::optional<int> ref_len;  // |y*|

  // Takes |x|, |y|, g and (when present) the reference length from a session.
  static StepMetricInput from_session(const SessionTrace& s);

  // Throws DataError on empty reads, |reads| != tgt_len, or a g(t) outside
  // [1, src_len] / decreasing.
  void validate() const;
};

// Which length ratio r AL divides the ideal diagonal by.
enum class LagRatio {
  kHypothesis,      // |y| / |x|
  kReference,       // |y*| / |x|  (AL-ref)
  kLengthAdaptive,  // max(|y|, |y*|) / |x|  (LAAL)
};

struct AlCutoff {
  int step = 0;           // tau_g(|x|), 1-based
  bool fallback = false;  // g never reached |x|; step is |y|
};

// First t with g(t) = |x|, or |y| when the translation stops before the whole
// source has been read.
AlCutoff al_cutoff(std::span<const int> reads, int src_len);

// Average Lagging. Can be negative when |y| << |x|.
double average_lagging(const StepMetricInput& in, LagRatio ratio = LagRatio::kHypothesis);

// Differentiable Average Lagging, no cut-off. The recurrence is
//   g'(1) = g(1),  g'(t) = max(g(t), g'(t-1) + 1/r),  r = |y|/|x|
// so each output token is charged at least one source-token's worth of time.
double differentiable_average_lagging(const StepMetricInput& in);

// g'(t) from the DAL recurrence above.
std::vector<double> dal_adjusted_reads(const StepMetricInput& in);

// Average Proportion: mean of g(t)/|x|.
double average_proportion(const StepMetricInput& in);

// Consecutive Wait: |x| over the number of read bursts (positions where g
// increases, with g(0) = 0).
double consecutive_wait(const StepMetricInput& in);

// a(t) for t = 1..|y|: the source token each output token is measured
// against. a(t) = min(t - d(t), g(t)), d(t) = (t-1) - a(t-1), a(0) = 0.
// An output prefix longer than its input prefix pushes later outputs onto
// earlier inputs, which is what makes ATD charge long outputs.
std::vector<int> atd_source_alignment(std::span<const int> reads);

// End step of each output token on the non-computation-aware step timeline:
// input token j ends at step j, and
//   T(y_t) = max(T(x_{g(t)}), T(y_{t-1})) + 1,  T(y_0) = 0.
// Reading and writing proceed in parallel; writes are serialized.
std::vector<int> step_emission_times(std::span<const int> reads);

// Average Token Delay on the step timeline.
double atd_steps(const StepMetricInput& in);

}  // namespace simullat
