#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "helpers.hpp"
#include "stylecast/errors.hpp"
#include "stylecast/ingest.hpp"
#include "stylecast/styles.hpp"
#include "stylecast/types.hpp"

using namespace stylecast;

namespace {

// Two symmetric 1-D Gaussians at 0 and 1 with variance 0.5: the posterior of
// the first component is 1 / (1 + exp(2x - 1)), so inputs with any desired
// posterior can be solved for in closed form.
StyleModel two_component_model() {
  StyleModel m;
  m.kind = StyleModelKind::kGmm;
  m.k = 2;
  m.m = 1;
  m.weights = {0.5, 0.5};
  m.means = {{0.0}, {1.0}};
  m.variances = {{0.5}, {0.5}};
  return m;
}

// Input whose first-component posterior is p under two_component_model.
double input_for_posterior(double p) {
  return (1.0 + std::log((1.0 - p) / p)) / 2.0;
}

EventRecord event(std::string unit, TimeIndex t, double attr) {
  return EventRecord{std::move(unit), t, {attr}};
}

}  // namespace

TEST_CASE("posterior control points solve correctly") {
  const StyleModel m = two_component_model();
  CHECK(m.posterior({input_for_posterior(0.2)})[0] ==
        doctest::Approx(0.2).epsilon(1e-12));
  CHECK(m.posterior({input_for_posterior(0.6)})[0] ==
        doctest::Approx(0.6).epsilon(1e-12));
  CHECK(m.posterior({0.5})[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("bucket value is the mean posterior over its events") {
  const StyleModel model = two_component_model();
  const std::vector<EventRecord> events{
      event("a", 0, input_for_posterior(0.2)),
      event("a", 0, input_for_posterior(0.6)),
  };
  const TrajectorySet ts = build_trajectories(events, model);
  REQUIRE(ts.style_count() == 2);
  REQUIRE(ts.unit_count() == 1);
  REQUIRE(ts.length() == 1);
  CHECK(ts.at(0, 0).values[0] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(ts.at(1, 0).values[0] == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("singleton bucket keeps its event's posterior") {
  const TrajectorySet ts =
      build_trajectories({event("a", 7, 0.5)}, two_component_model());
  REQUIRE(ts.length() == 1);  // the time axis starts at the earliest event
  CHECK(ts.at(0, 0).values[0] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("empty buckets carry values forward and backfill leading gaps") {
  const StyleModel model = two_component_model();
  const std::vector<EventRecord> events{
      event("a", 0, input_for_posterior(0.2)),
      event("a", 2, input_for_posterior(0.6)),
      event("b", 1, input_for_posterior(0.3)),
  };
  const TrajectorySet ts = build_trajectories(events, model);
  REQUIRE(ts.length() == 3);
  const auto& a = ts.at(0, ts.unit_index("a")).values;
  const auto& b = ts.at(0, ts.unit_index("b")).values;
  CHECK(a[1] == a[0]);  // interior gap: carry forward
  CHECK(a[2] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(b[0] == b[1]);  // leading gap: first observed value
  CHECK(b[2] == b[1]);  // trailing gap: carry forward
}

TEST_CASE("trajectory construction is event-order invariant") {
  const StyleModel model = two_component_model();
  std::vector<EventRecord> events;
  for (int t = 0; t < 6; ++t) {
    events.push_back(event("a", t, 0.1 * t));
    events.push_back(event("b", t, 0.9 - 0.1 * t));
    events.push_back(event("a", t, 0.3 + 0.05 * t));
  }
  const TrajectorySet forward = build_trajectories(events, model);
  std::reverse(events.begin(), events.end());
  const TrajectorySet backward = build_trajectories(events, model);
  for (std::size_t i = 0; i < forward.size(); ++i)
    CHECK(forward.item(i).values == backward.item(i).values);
}

TEST_CASE("trajectory values stay in the unit interval") {
  const StyleModel model = two_component_model();
  std::vector<EventRecord> events;
  for (int t = 0; t < 20; ++t) events.push_back(event("a", t, -3.0 + 0.4 * t));
  const TrajectorySet ts = build_trajectories(events, model);
  for (std::size_t i = 0; i < ts.size(); ++i)
    for (double v : ts.item(i).values) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
}

TEST_CASE("ingest input validation") {
  const StyleModel model = two_component_model();
  CHECK_THROWS_AS(build_trajectories({}, model), DataError);
  // Event naming a unit outside the fixed table.
  CHECK_THROWS_AS(build_trajectories({event("x", 0, 0.5)}, model,
                                     std::vector<std::string>{"a", "b"}),
                  DataError);
  // Listed unit without any events.
  CHECK_THROWS_AS(build_trajectories({event("a", 0, 0.5)}, model,
                                     std::vector<std::string>{"a", "b"}),
                  DataError);
}

TEST_CASE("deseasonalize removes exactly periodic signals") {
  std::vector<double> period_values(52);
  for (std::size_t i = 0; i < 52; ++i)
    period_values[i] = 0.5 + 0.3 * std::sin(2.0 * 3.14159265358979 *
                                            static_cast<double>(i) / 52.0);
  std::vector<double> y(120);
  for (std::size_t t = 0; t < y.size(); ++t) y[t] = period_values[t % 52];
  for (double r : deseasonalize(y, 52)) CHECK(r == 0.0);
}

TEST_CASE("deseasonalize on a constant is zero") {
  const std::vector<double> y(80, 0.37);
  for (double r : deseasonalize(y, 52)) CHECK(r == 0.0);
}

TEST_CASE("deseasonalize turns a ramp into a constant") {
  std::vector<double> y(120);
  for (std::size_t t = 0; t < y.size(); ++t)
    y[t] = 0.25 * static_cast<double>(t);
  for (double r : deseasonalize(y, 52)) CHECK(r == 13.0);  // slope * period
}

TEST_CASE("deseasonalize residual ignores added periodic signals") {
  std::vector<double> base(130), shifted(130);
  for (std::size_t t = 0; t < base.size(); ++t) {
    base[t] = 0.01 * static_cast<double>(t) + ((t * 7) % 13) * 0.02;
    shifted[t] = base[t] + 0.4 * std::sin(2.0 * 3.14159265358979 *
                                          static_cast<double>(t % 52) / 52.0);
  }
  const auto r1 = deseasonalize(base, 52);
  const auto r2 = deseasonalize(shifted, 52);
  REQUIRE(r1.size() == r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i)
    CHECK(r1[i] == doctest::Approx(r2[i]).epsilon(1e-12));
}

TEST_CASE("deseasonalize rejects short series") {
  CHECK_THROWS_AS(deseasonalize(std::vector<double>(52, 1.0), 52),
                  std::invalid_argument);
}

TEST_CASE("deseasonalize restamps the split with the same window sizes") {
  TrajectorySet ts = testutil::make_set(
      1, 2, 120, [](std::size_t, std::size_t j, std::size_t t) {
        return 0.001 * static_cast<double>(t + j);
      });
  ts.apply_split(4, 26);
  REQUIRE(ts.split()->train_end == 90);
  const TrajectorySet out = deseasonalize(ts, 52);
  REQUIRE(out.length() == 68);
  REQUIRE(out.split().has_value());
  CHECK(out.split()->train_end == 38);
  CHECK(out.split()->val_end == 42);
  CHECK(out.split()->total == 68);
}

TEST_CASE("global trend is the unweighted unit mean") {
  const TrajectorySet ts = testutil::make_set(
      1, 2, 5, [](std::size_t, std::size_t j, std::size_t) {
        return j == 0 ? 0.2 : 0.4;
      });
  for (double v : global_trend(ts, "s0"))
    CHECK(v == doctest::Approx(0.3).epsilon(1e-12));
}

TEST_CASE("global trend of one unit is that unit's trajectory") {
  const TrajectorySet ts = testutil::make_set(
      2, 1, 8, [](std::size_t i, std::size_t, std::size_t t) {
        return 0.1 * static_cast<double>(i + t);
      });
  CHECK(global_trend(ts, "s1") == ts.at(1, 0).values);
}

TEST_CASE("global trend of constants is constant") {
  const TrajectorySet ts = testutil::make_set(
      1, 3, 6, [](std::size_t, std::size_t, std::size_t) { return 0.77; });
  for (double v : global_trend(ts, "s0"))
    CHECK(v == doctest::Approx(0.77).epsilon(1e-12));
}

TEST_CASE("global trend rejects unknown styles") {
  const TrajectorySet ts = testutil::make_set(
      1, 1, 4, [](std::size_t, std::size_t, std::size_t) { return 0.5; });
  CHECK_THROWS_AS(global_trend(ts, "nope"), DataError);
}

TEST_CASE("split boundaries for the standard window sizes") {
  TrajectorySet ts = testutil::make_set(
      1, 1, 120, [](std::size_t, std::size_t, std::size_t) { return 0.5; });
  ts.apply_split(4, 26);
  CHECK(ts.split()->train_end == 90);
  CHECK(ts.split()->val_end == 94);
  CHECK(ts.split()->total == 120);
  // Values untouched, every trajectory stamped.
  CHECK(ts.at(0, 0).values[0] == 0.5);
  CHECK(ts.at(0, 0).split == ts.split());
}

TEST_CASE("split boundary edge cases") {
  TrajectorySet ok = testutil::make_set(
      1, 1, 31, [](std::size_t, std::size_t, std::size_t) { return 0.5; });
  ok.apply_split(4, 26);  // exactly one training row remains
  CHECK(ok.split()->train_end == 1);

  TrajectorySet bad = testutil::make_set(
      1, 1, 30, [](std::size_t, std::size_t, std::size_t) { return 0.5; });
  CHECK_THROWS_AS(bad.apply_split(4, 26), std::invalid_argument);
}
