#include "simullat/metrics_step.hpp"

#include <algorithm>
#include <string>

#include "simullat/error.hpp"

namespace simullat {

StepMetricInput StepMetricInput::from_session(const SessionTrace& s) {
  StepMetricInput in;
  in.reads = s.reads;
  in.src_len = static_cast<int>(s.source.size());
  in.tgt_len = static_cast<int>(s.target.size());
  if (s.reference) in.ref_len = static_cast<int>(s.reference->size());
  return in;
}

void StepMetricInput::validate() const {
  if (reads.empty() || tgt_len < 1) throw DataError("empty reads: no output tokens");
  if (src_len < 1) throw DataError("empty source");
  if (static_cast<int>(reads.size()) != tgt_len) {
    throw DataError("|reads| = " + std::to_string(reads.size()) + " but |y| = " +
                    std::to_string(tgt_len));
  }
  int prev = 0;
  for (std::size_t t = 0; t < reads.size(); ++t) {
    const int g = reads[t];
    if (g < 1 || g > src_len || g < prev) {
      throw DataError("invalid g(" + std::to_string(t + 1) + ") = " + std::to_string(g));
    }
    prev = g;
  }
  if (ref_len && *ref_len < 1) throw DataError("empty reference");
}

AlCutoff al_cutoff(std::span<const int> reads, int src_len) {
  const auto it = std::find(reads.begin(), reads.end(), src_len);
  if (it == reads.end()) return {static_cast<int>(reads.size()), true};
  return {static_cast<int>(it - reads.begin()) + 1, false};
}

double average_lagging(const StepMetricInput& in, LagRatio ratio) {
  in.validate();
  double out_len = in.tgt_len;
  if (ratio != LagRatio::kHypothesis) {
    if (!in.ref_len) throw DataError("AL-ref and LAAL need a reference length");
    out_len = ratio == LagRatio::kReference ? *in.ref_len : std::max(in.tgt_len, *in.ref_len);
  }
  const double r = out_len / in.src_len;
  const int cutoff = al_cutoff(in.reads, in.src_len).step;

  double sum = 0.0;
  for (int t = 1; t <= cutoff; ++t) {
    sum += in.reads[t - 1] - (t - 1) / r;
  }
  return sum / cutoff;
}

std::vector<double> dal_adjusted_reads(const StepMetricInput& in) {
  in.validate();
  const double r = static_cast<double>(in.tgt_len) / in.src_len;
  std::vector<double> adjusted(in.reads.size());
  adjusted[0] = in.reads[0];
  for (std::size_t t = 1; t < in.reads.size(); ++t) {
    adjusted[t] = std::max<double>(in.reads[t], adjusted[t - 1] + 1.0 / r);
  }
  return adjusted;
}

double differentiable_average_lagging(const StepMetricInput& in) {
  const auto adjusted = dal_adjusted_reads(in);
  const double r = static_cast<double>(in.tgt_len) / in.src_len;
  double sum = 0.0;
  for (std::size_t t = 0; t < adjusted.size(); ++t) {
    sum += adjusted[t] - static_cast<double>(t) / r;
  }
  return sum / in.tgt_len;
}

double average_proportion(const StepMetricInput& in) {
  in.validate();
  double sum = 0.0;
  for (const int g : in.reads) sum += g;
  return sum / (static_cast<double>(in.src_len) * in.tgt_len);
}

double consecutive_wait(const StepMetricInput& in) {
  in.validate();
  int bursts = 0;
  int prev = 0;
  for (const int g : in.reads) {
    if (g > prev) ++bursts;
    prev = g;
  }
  return static_cast<double>(in.src_len) / bursts;
}

std::vector<int> atd_source_alignment(std::span<const int> reads) {
  std::vector<int> a(reads.size());
  int prev_a = 0;  // a(0)
  for (std::size_t i = 0; i < reads.size(); ++i) {
    const int t = static_cast<int>(i) + 1;
    const int surplus = (t - 1) - prev_a;  // d(t)
    a[i] = std::min(t - surplus, reads[i]);
    prev_a = a[i];
  }
  return a;
}

std::vector<int> step_emission_times(std::span<const int> reads) {
  std::vector<int> times(reads.size());
  int prev = 0;
  for (std::size_t i = 0; i < reads.size(); ++i) {
    prev = std::max(reads[i], prev) + 1;
    times[i] = prev;
  }
  return times;
}

double atd_steps(const StepMetricInput& in) {
  in.validate();
  const auto a = atd_source_alignment(in.reads);
  const auto emitted = step_emission_times(in.reads);
  double sum = 0.0;
  for (std::size_t t = 0; t < a.size(); ++t) {
    // T(x_j) = j on the step timeline.
    sum += emitted[t] - a[t];
  }
  return sum / in.tgt_len;
}

}  // namespace simullat
