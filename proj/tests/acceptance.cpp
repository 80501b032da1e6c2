// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "schedules.hpp"
#include "simullat/evs.hpp"
#include "simullat/metrics.hpp"
#include "simullat/metrics_step.hpp"
#include "simullat/metrics_time.hpp"
#include "simullat/sim.hpp"
#include "simullat/stats.hpp"

using namespace simullat;

namespace {

bool close(double a, double b, double tol = 1e-9) { return std::abs(a - b) <= tol; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

Outcome criterion1() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  const double al19 = evaluate(Metric::kAL, sim::chunk_k(19, 20, 20));
  const double al20 = evaluate(Metric::kAL, sim::chunk_k(20, 20, 20));
  const double elapsed = seconds_since(t0);
  o.require(al19 == 9.55, "AL(chunk-19) = " + std::to_string(al19));
  o.require(al20 == 20.0, "AL(chunk-20) = " + std::to_string(al20));
  o.require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s");
  return o;
}

Outcome criterion2() {
  Outcome o;
  for (int k = 1; k <= 19; ++k) {
    const auto s = sim::wait_k(k, 20, 20);
    const std::string at = " at k=" + std::to_string(k);
    o.require(close(evaluate(Metric::kAL, s), k), "AL" + at);
    o.require(close(evaluate(Metric::kDAL, s), k), "DAL" + at);
    o.require(close(evaluate(Metric::kATD, s), k), "ATD" + at);
  }
  return o;
}

Outcome criterion3() {
  Outcome o;
  bool al_differs = false;
  for (int k = 1; k <= 20; ++k) {
    const auto w = sim::wait_k(k, 20, 20);
    const auto c = sim::chunk_k(k, 20, 20);
    const std::string at = " at k=" + std::to_string(k);
    o.require(close(evaluate(Metric::kATD, w), evaluate(Metric::kATD, c)), "ATD differs" + at);
    o.require(close(evaluate(Metric::kDAL, w), evaluate(Metric::kDAL, c)), "DAL differs" + at);
    if (!close(evaluate(Metric::kAL, w), evaluate(Metric::kAL, c))) al_differs = true;
  }
  o.require(al_differs, "AL identical for every k");
  return o;
}

Outcome criterion4() {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> atd(21);
  std::vector<double> al(21);
  std::vector<double> dal(21);
  for (int l1 = 1; l1 <= 20; ++l1) {
    const auto s = sim::two_chunk(l1);
    atd[l1] = evaluate(Metric::kATD, s);
    al[l1] = evaluate(Metric::kAL, s);
    dal[l1] = evaluate(Metric::kDAL, s);
  }
  for (int l1 = 1; l1 < 9; ++l1) {
    o.require(atd[l1 + 1] < atd[l1], "ATD not decreasing at L1=" + std::to_string(l1));
  }
  for (int l1 = 11; l1 < 20; ++l1) {
    o.require(atd[l1 + 1] > atd[l1], "ATD not increasing at L1=" + std::to_string(l1));
  }
  for (int l1 = 1; l1 < 20; ++l1) {
    o.require(al[l1 + 1] <= al[l1] + 1e-12, "AL rises at L1=" + std::to_string(l1 + 1));
    o.require(dal[l1 + 1] <= dal[l1] + 1e-12, "DAL rises at L1=" + std::to_string(l1 + 1));
  }
  o.require(seconds_since(t0) < 1.0, "sweep took over 1 s");
  return o;
}

Outcome criterion5() {
  Outcome o;
  const auto c1 = sim::two_case_example(1);
  const auto c2 = sim::two_case_example(2);
  o.require(evaluate(Metric::kAL, c1) > evaluate(Metric::kAL, c2), "AL1 <= AL2");
  o.require(evaluate(Metric::kDAL, c1) > evaluate(Metric::kDAL, c2), "DAL1 <= DAL2");
  o.require(evaluate(Metric::kATD, c1) < evaluate(Metric::kATD, c2), "ATD1 >= ATD2");
  const auto e1 = mean_evs(sim::two_case_alignment(1), EvsMode::kVerifiedOnly);
  const auto e2 = mean_evs(sim::two_case_alignment(2), EvsMode::kVerifiedOnly);
  o.require(e1 && e2 && *e1 < *e2, "EVS1 >= EVS2");
  return o;
}

Outcome criterion6() {
  Outcome o;
  StepMetricInput in;
  in.reads = {1, 2};
  in.src_len = 10;
  in.tgt_len = 2;
  in.ref_len = 10;
  o.require(average_lagging(in) < 0.0, "AL not negative");
  o.require(average_lagging(in, LagRatio::kLengthAdaptive) >= 0.0, "LAAL negative");
  return o;
}

// Brute force: walk the outputs keeping a surplus count of tokens that had
// no fresh input left to claim.
std::vector<int> surplus_oracle(const std::vector<int>& g) {
  std::vector<int> a;
  int claimed = 0;
  int surplus = 0;
  for (std::size_t t = 0; t < g.size(); ++t) {
    if (claimed < g[t]) {
      ++claimed;
    } else {
      ++surplus;
    }
    a.push_back(static_cast<int>(t + 1) - surplus);
  }
  return a;
}

SessionTrace timed_from_schedule(const std::vector<int>& g, int src_len, double offset) {
  SessionTrace s;
  s.modality = Modality::kSpeechToText;
  s.timeline = TimelineKind::kNonComputationAware;
  for (int j = 1; j <= src_len; ++j) {
    s.source.push_back({j, std::nullopt, offset + 280.0 * (j - 1), offset + 280.0 * j});
  }
  double prev = offset;
  for (std::size_t t = 0; t < g.size(); ++t) {
    const double start =
        std::max(prev, s.source[static_cast<std::size_t>(g[t] - 1)].end) + 15.0 * (t % 3);
    prev = start + 190.0;
    s.target.push_back({static_cast<int>(t + 1), std::nullopt, start, prev});
  }
  s.reads = g;
  return s;
}

Outcome criterion7() {
  Outcome o;
  for (int x = 1; x <= 6; ++x) {
    for (int y = 1; y <= 6; ++y) {
      testing::for_each_schedule(x, y, [&](const std::vector<int>& g) {
        o.require(atd_source_alignment(g) == surplus_oracle(g), "a(t) mismatch");
        const auto base = timed_from_schedule(g, x, 0.0);
        const double atd = atd_timed(base);
        for (const double c : {1.0, 1000.0, 1e6}) {
          const double moved = atd_timed(timed_from_schedule(g, x, c));
          o.require(close(moved, atd, 1e-6), "ATD shifts with c=" + std::to_string(c));
        }
      });
    }
  }
  return o;
}

Outcome criterion8() {
  Outcome o;
  const std::vector<double> x{4, 8, 15, 16, 23, 42, 7};
  auto rev = x;
  std::reverse(rev.begin(), rev.end());
  o.require(close(spearman(x, x).rho, 1.0), "rho(x, x) != 1");
  const std::vector<double> up{1, 2, 3, 4, 5};
  const std::vector<double> down{5, 4, 3, 2, 1};
  o.require(close(spearman(up, down).rho, -1.0), "rho(x, reversed x) != -1");
  const std::vector<double> swapped{1, 2, 3, 5, 4};
  o.require(close(spearman(up, swapped).rho, 0.9), "swap example != 0.9");

  const std::vector<std::optional<double>> a{1, 2, std::nullopt, 4, 5, 6, 7};
  const std::vector<std::optional<double>> b{1, 3, 2, 5, std::nullopt, 6, 8};
  const auto r = spearman(std::span<const std::optional<double>>(a),
                          std::span<const std::optional<double>>(b));
  o.require(r.n == 5, "pairwise deletion kept " + std::to_string(r.n) + " rows");
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"AL chunk-19 = 9.55, chunk-20 = 20, under 1 s", criterion1},
      {"wait-k on 20/20: AL = DAL = ATD = k", criterion2},
      {"wait-k vs chunk-k: ATD and DAL agree, AL does not", criterion3},
      {"two-chunk L1 sweep: ATD V-shape, AL and DAL non-increasing", criterion4},
      {"two-case example orderings of AL, DAL, ATD, EVS", criterion5},
      {"short output: AL < 0, LAAL >= 0", criterion6},
      {"a(t) matches surplus oracle; timed ATD shift-invariant", criterion7},
      {"Spearman identities and pairwise deletion", criterion8},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail = std::string("threw: ") + e.what();
    }
    std::printf("%s criterion %zu: %s%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.ok ? "" : " -- ", o.detail.c_str());
    if (!o.ok) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
