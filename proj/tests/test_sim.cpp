#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "simullat/error.hpp"
#include "simullat/metrics.hpp"
#include "simullat/sim.hpp"

using namespace simullat;

namespace {

double metric(Metric m, const SessionTrace& s) { return evaluate(m, s); }

}  // namespace

TEST_CASE("generators") {
  CHECK(sim::wait_k(3, 5, 6).reads == std::vector<int>{3, 4, 5, 5, 5, 5});
  CHECK(sim::chunk_k(2, 5, 6).reads == std::vector<int>{2, 2, 4, 4, 5, 5});
  CHECK(sim::chunk_k(20, 20, 20).reads == std::vector<int>(20, 20));
  // k far above the source length just reads everything first
  CHECK(sim::wait_k(2'000'000'000, 4, 2).reads == std::vector<int>{4, 4});

  const auto c = sim::two_chunk(3);
  CHECK(c.reads == std::vector<int>{10, 10, 10, 20, 20, 20, 20, 20, 20, 20, 20, 20, 20});
  CHECK(c.source.size() == 20);
  CHECK(c.id == "case4-L1=3");
  CHECK(c.timeline == TimelineKind::kUnitStep);

  CHECK_THROWS_AS(sim::wait_k(0, 5, 5), ConfigError);
  CHECK_THROWS_AS(sim::chunk_k(1, 0, 5), ConfigError);
  CHECK_THROWS_AS(sim::two_chunk(0), ConfigError);
  CHECK_THROWS_AS(sim::parse_strategy("wait"), ConfigError);
}

TEST_CASE("chunk-19 to chunk-20 makes AL jump from 9.55 to 20") {
  CHECK(metric(Metric::kAL, sim::chunk_k(19, 20, 20)) == 9.55);
  CHECK(metric(Metric::kAL, sim::chunk_k(20, 20, 20)) == 20.0);
  // DAL and ATD see chunk-19 as almost as slow as chunk-20
  CHECK(metric(Metric::kDAL, sim::chunk_k(19, 20, 20)) == doctest::Approx(19.0));
  CHECK(metric(Metric::kATD, sim::chunk_k(19, 20, 20)) == doctest::Approx(19.0));
}

TEST_CASE("wait-k and chunk-k agree on ATD and DAL but not on AL") {
  bool al_differs = false;
  for (int k = 1; k <= 20; ++k) {
    CAPTURE(k);
    const auto w = sim::wait_k(k, 20, 20);
    const auto c = sim::chunk_k(k, 20, 20);
    CHECK(metric(Metric::kATD, w) == doctest::Approx(metric(Metric::kATD, c)));
    CHECK(metric(Metric::kDAL, w) == doctest::Approx(metric(Metric::kDAL, c)));
    if (std::abs(metric(Metric::kAL, w) - metric(Metric::kAL, c)) > 1e-9) al_differs = true;
  }
  CHECK(al_differs);
}

TEST_CASE("two-chunk family: ATD bottoms out at L1 = 10, AL and DAL do not rise") {
  std::map<int, double> atd;
  std::map<int, double> al;
  std::map<int, double> dal;
  for (int l1 = 1; l1 <= 20; ++l1) {
    const auto s = sim::two_chunk(l1);
    atd[l1] = metric(Metric::kATD, s);
    al[l1] = metric(Metric::kAL, s);
    dal[l1] = metric(Metric::kDAL, s);
  }
  // up to the balanced split every output token is 20 steps behind in total
  for (int l1 = 1; l1 <= 10; ++l1) CHECK(atd[l1] == doctest::Approx(200.0 / (l1 + 10)));
  for (int l1 = 1; l1 < 10; ++l1) CHECK(atd[l1 + 1] < atd[l1]);
  for (int l1 = 11; l1 < 20; ++l1) CHECK(atd[l1 + 1] > atd[l1]);
  CHECK(atd[11] > atd[10]);
  for (int l1 = 1; l1 < 20; ++l1) {
    CAPTURE(l1);
    CHECK(al[l1 + 1] <= al[l1] + 1e-12);
    CHECK(dal[l1 + 1] <= dal[l1] + 1e-12);
  }
  CHECK(dal[20] == doctest::Approx(10.0));
}

TEST_CASE("two-case example reproduces the tabulated values") {
  const auto c1 = sim::two_case_example(1);
  const auto c2 = sim::two_case_example(2);
  CHECK(c1.source.size() == 4);
  CHECK(c2.source.size() == 4);

  CHECK(metric(Metric::kAL, c1) == doctest::Approx(1.2));
  CHECK(metric(Metric::kDAL, c1) == doctest::Approx(1.84));
  CHECK(metric(Metric::kATD, c1) == doctest::Approx(2.4));
  CHECK(metric(Metric::kAL, c2) == doctest::Approx(0.25));
  CHECK(metric(Metric::kDAL, c2) == doctest::Approx(1.1875));
  CHECK(metric(Metric::kATD, c2) == doctest::Approx(3.75));

  CHECK(metric(Metric::kAL, c1) > metric(Metric::kAL, c2));
  CHECK(metric(Metric::kDAL, c1) > metric(Metric::kDAL, c2));
  CHECK(metric(Metric::kATD, c1) < metric(Metric::kATD, c2));
  CHECK_THROWS_AS(sim::two_case_example(3), ConfigError);
}

TEST_CASE("sweep rows come out parameter-major") {
  const std::vector<Metric> ms{Metric::kAL, Metric::kATD};
  const auto rows = sim::sweep(ms, sim::Strategy::kChunkK, 19, 20);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].parameter == 19);
  CHECK(rows[0].metric == "AL");
  CHECK(rows[0].value == 9.55);
  CHECK(rows[1].metric == "ATD");
  CHECK(rows[3].parameter == 20);
  CHECK(rows[2].value == 20.0);
  CHECK_THROWS_AS(sim::sweep(ms, sim::Strategy::kWaitK, 5, 4), ConfigError);

  // metrics that need times or a reference are left out of unit-step sweeps
  const std::vector<Metric> timed{Metric::kStartOffset, Metric::kLAAL};
  CHECK(sim::sweep(timed, sim::Strategy::kWaitK, 1, 3).empty());
}
