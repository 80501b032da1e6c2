#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "schedules.hpp"
#include "simullat/error.hpp"
#include "simullat/metrics_step.hpp"

using namespace simullat;

namespace {

StepMetricInput input(std::vector<int> reads, int src_len, std::optional<int> ref_len = {}) {
  StepMetricInput in;
  in.tgt_len = static_cast<int>(reads.size());
  in.reads = std::move(reads);
  in.src_len = src_len;
  in.ref_len = ref_len;
  return in;
}

std::vector<int> wait_k_reads(int k, int n) {
  std::vector<int> g;
  for (int t = 1; t <= n; ++t) g.push_back(std::min(t + k - 1, n));
  return g;
}

std::vector<int> chunk_k_reads(int k, int n) {
  std::vector<int> g;
  for (int t = 1; t <= n; ++t) g.push_back(std::min((t + k - 1) / k * k, n));
  return g;
}

// Independent a(t): each output token either claims the next input token
// (when that token has been read) or adds one to the output surplus. The
// token is measured against input t - surplus.
std::vector<int> surplus_alignment(const std::vector<int>& reads) {
  std::vector<int> out;
  int surplus = 0;
  int consumed = 0;
  int t = 0;
  for (const int g : reads) {
    ++t;
    if (consumed < g) {
      ++consumed;
    } else {
      ++surplus;
    }
    out.push_back(t - surplus);
  }
  return out;
}

}  // namespace

TEST_CASE("AL reproduces the chunk-19 / chunk-20 jump") {
  // (1/20) * (sum_{t=1}^{19} t + 1) = 191/20
  CHECK(average_lagging(input(chunk_k_reads(19, 20), 20)) == 9.55);
  CHECK(average_lagging(input(chunk_k_reads(20, 20), 20)) == 20.0);
}

TEST_CASE("AL, DAL and ATD equal k for wait-k on equal lengths") {
  for (int k = 1; k <= 19; ++k) {
    CAPTURE(k);
    const auto in = input(wait_k_reads(k, 20), 20, 20);
    CHECK(average_lagging(in) == doctest::Approx(k).epsilon(1e-12));
    CHECK(average_lagging(in, LagRatio::kReference) == doctest::Approx(k).epsilon(1e-12));
    CHECK(average_lagging(in, LagRatio::kLengthAdaptive) == doctest::Approx(k).epsilon(1e-12));
    CHECK(differentiable_average_lagging(in) == doctest::Approx(k).epsilon(1e-12));
    CHECK(atd_steps(in) == doctest::Approx(k).epsilon(1e-12));
  }
  CHECK(atd_steps(input(wait_k_reads(20, 20), 20)) == 20.0);
}

TEST_CASE("AL cut-off falls back to |y| when the source is never fully read") {
  const auto cut = al_cutoff(std::vector<int>{1, 2}, 10);
  CHECK(cut.fallback);
  CHECK(cut.step == 2);
  const auto full = al_cutoff(std::vector<int>{3, 5, 5}, 5);
  CHECK_FALSE(full.fallback);
  CHECK(full.step == 2);
}

TEST_CASE("AL goes negative for short outputs; LAAL does not") {
  const auto in = input({1, 2}, 10, 10);
  // terms: 1 - 0, 2 - 1/0.2 -> mean -1
  CHECK(average_lagging(in) == doctest::Approx(-1.0));
  CHECK(average_lagging(in, LagRatio::kLengthAdaptive) == doctest::Approx(1.0));
  CHECK(average_lagging(in, LagRatio::kReference) == doctest::Approx(1.0));

  // g(t) = t over |x| = 10, |y| = 2 is the constructed pathology
  CHECK(average_lagging(input({1, 2}, 10)) < 0.0);
}

TEST_CASE("AL-ref and LAAL need a reference length") {
  const auto in = input({1, 2}, 2);
  CHECK_THROWS_AS(average_lagging(in, LagRatio::kReference), DataError);
  CHECK_THROWS_AS(average_lagging(in, LagRatio::kLengthAdaptive), DataError);
}

TEST_CASE("LAAL uses the longer of hypothesis and reference") {
  // |y| = 4 > |y*| = 2 on |x| = 4: LAAL uses r = 1, AL-ref uses r = 0.5
  const auto in = input({1, 2, 3, 4}, 4, 2);
  CHECK(average_lagging(in, LagRatio::kLengthAdaptive) == doctest::Approx(1.0));
  // AL-ref: cut-off 4, terms 1, 2-2, 3-4, 4-6 -> (1+0-1-2)/4
  CHECK(average_lagging(in, LagRatio::kReference) == doctest::Approx(-0.5));
}

TEST_CASE("DAL examples") {
  CHECK(differentiable_average_lagging(input(wait_k_reads(3, 20), 20)) == doctest::Approx(3.0));
  // g'(t) = 19 + t, each term 20
  CHECK(differentiable_average_lagging(input(chunk_k_reads(20, 20), 20)) == doctest::Approx(20.0));
  CHECK(differentiable_average_lagging(input({1}, 1)) == 1.0);
}

TEST_CASE("DAL adjusted reads dominate g") {
  std::mt19937 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const int x = 1 + trial % 9;
    const int y = 1 + (trial * 7) % 11;
    const auto in = input(testing::random_schedule(rng, x, y), x);
    const auto adjusted = dal_adjusted_reads(in);
    for (std::size_t t = 0; t < adjusted.size(); ++t) CHECK(adjusted[t] >= in.reads[t]);
  }
}

TEST_CASE("AP examples") {
  CHECK(average_proportion(input({5, 5, 5}, 5)) == 1.0);
  CHECK(average_proportion(input({1, 2}, 2)) == doctest::Approx(0.75));
  CHECK(average_proportion(input(wait_k_reads(1, 20), 20)) == doctest::Approx(0.525));
}

TEST_CASE("CW examples") {
  CHECK(consecutive_wait(input(wait_k_reads(1, 20), 20)) == doctest::Approx(1.0));
  CHECK(consecutive_wait(input(chunk_k_reads(20, 20), 20)) == doctest::Approx(20.0));
  CHECK(consecutive_wait(input(wait_k_reads(5, 20), 20)) == doctest::Approx(1.25));
}

TEST_CASE("ATD alignment for a first chunk longer than its input") {
  CHECK(atd_source_alignment(std::vector<int>{3, 3, 3}) == std::vector<int>{1, 2, 3});
  CHECK(atd_source_alignment(std::vector<int>{3, 3, 3, 3}) == std::vector<int>{1, 2, 3, 3});
  // second chunk after an over-long first chunk: y5 maps to x4
  CHECK(atd_source_alignment(std::vector<int>{3, 3, 3, 3, 5, 5}) ==
        std::vector<int>{1, 2, 3, 3, 4, 5});
  // second chunk after a short first chunk: y5 maps to x5
  CHECK(atd_source_alignment(std::vector<int>{3, 5, 5, 5, 5}) == std::vector<int>{1, 2, 3, 4, 5});
}

TEST_CASE("ATD step examples") {
  CHECK(atd_steps(input(chunk_k_reads(20, 20), 20)) == doctest::Approx(20.0));
  CHECK(step_emission_times(std::vector<int>{2, 2, 4}) == std::vector<int>{3, 4, 5});
  CHECK(atd_steps(input({1}, 1)) == 1.0);
}

TEST_CASE("ATD equals DAL on wait-k and chunk-k") {
  for (int k = 1; k <= 20; ++k) {
    CAPTURE(k);
    const double wait = atd_steps(input(wait_k_reads(k, 20), 20));
    const double chunk = atd_steps(input(chunk_k_reads(k, 20), 20));
    CHECK(wait == doctest::Approx(chunk));
    CHECK(differentiable_average_lagging(input(chunk_k_reads(k, 20), 20)) ==
          doctest::Approx(chunk));
  }
}

TEST_CASE("a(t) recurrence matches the surplus-counter oracle on every small schedule") {
  int checked = 0;
  for (int x = 1; x <= 6; ++x) {
    for (int y = 1; y <= 6; ++y) {
      testing::for_each_schedule(x, y, [&](const std::vector<int>& g) {
        const auto a = atd_source_alignment(g);
        CHECK(a == surplus_alignment(g));
        for (std::size_t t = 0; t < a.size(); ++t) {
          CHECK(a[t] <= static_cast<int>(t + 1));
          CHECK(a[t] <= g[t]);
          if (t > 0) CHECK(a[t] >= a[t - 1]);
        }
        ++checked;
      });
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("empty or malformed inputs are rejected") {
  StepMetricInput empty;
  empty.src_len = 3;
  CHECK_THROWS_AS(average_lagging(empty), DataError);
  CHECK_THROWS_AS(differentiable_average_lagging(empty), DataError);
  CHECK_THROWS_AS(average_proportion(empty), DataError);
  CHECK_THROWS_AS(atd_steps(empty), DataError);
  CHECK_THROWS_AS(consecutive_wait(input({2, 1}, 3)), DataError);
  CHECK_THROWS_AS(atd_steps(input({1, 4}, 3)), DataError);
}
