#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "optiwind/adversaries.hpp"
#include "optiwind/game.hpp"
#include "optiwind/offline.hpp"
#include "optiwind/policies.hpp"

using namespace optiwind;
using namespace optiwind::testing;

namespace {
Instance segment_instance(double delay, std::vector<std::tuple<double, double, double>> reqs) {
  Instance inst;
  inst.space = MetricSpace::segment();
  inst.delay = delay;
  int id = 0;
  for (auto [x, release, weight] : reqs)
    inst.requests.push_back({id++, inst.space.make_point(x), release, weight});
  return inst;
}
}  // namespace

TEST_CASE("single request is always served") {
  Instance inst = segment_instance(0, {{-1.0, 1.0, 1.0}});
  auto policy = make_policy("gr0", PolicyParams{1, 0, 0});
  GameTrace trace = run_game(inst, *policy);
  REQUIRE(trace.served.size() == 1);
  CHECK(trace.served[0].time == doctest::Approx(2.0));
  CHECK(performance(trace) == doctest::Approx(1.0));
}

TEST_CASE("performance arithmetic") {
  Instance inst = segment_instance(0.5, {{-1.0, 1.0, 1.0}, {1.0, 1.6, 4.0}});
  auto policy = make_policy("gr0", PolicyParams{2, 0.5, 0});
  GameTrace trace = run_game(inst, *policy);  // gr0 chases the weight-4 request
  CHECK(trace.is_served(1));
  CHECK(!trace.is_served(0));
  CHECK(performance(trace) == doctest::Approx(0.8));

  GameTrace empty;
  empty.config.space = MetricSpace::segment();
  CHECK(performance(empty) == 1.0);  // empty game convention
}

TEST_CASE("competitive ratio basics") {
  Instance inst = segment_instance(0, {{-1.0, 1.0, 1.0}});
  auto policy = make_policy("gr0", PolicyParams{1, 0, 0});
  GameTrace trace = run_game(inst, *policy);
  double off = offline_solve(trace.released_instance()).total_weight;
  CHECK(competitive_ratio(trace, off) == doctest::Approx(1.0));
  CHECK_THROWS_AS(competitive_ratio(trace, 0.0), std::domain_error);
}

TEST_CASE("drive-by serving along the path") {
  // An interior request on the way to a heavier one is picked up in passing.
  Instance inst = segment_instance(0.2, {{1.0, 1.0, 5.0}, {0.5, 1.2, 1.0}});
  auto policy = make_policy("gr0", PolicyParams{2, 0.2, 0});
  GameTrace trace = run_game(inst, *policy);
  CHECK(trace.is_served(0));
  CHECK(trace.is_served(1));
  for (const auto& sv : trace.served)
    if (sv.request_id == 1) CHECK(sv.time == doctest::Approx(1.5));
}

TEST_CASE("request released on the vehicle's position is served immediately") {
  Instance inst = segment_instance(0, {{0.0, 0.7, 1.0}});
  auto policy = make_policy("idle", PolicyParams{1, 0, 0});
  GameTrace trace = run_game(inst, *policy);
  REQUIRE(trace.served.size() == 1);
  CHECK(trace.served[0].time == doctest::Approx(0.7));
}

TEST_CASE("waiting at a location until the window opens") {
  // gr0 reaches the location before release and stands there.
  Instance inst = segment_instance(0, {{-0.3, 2.0, 1.0}});
  GameConfig cfg{1, 0.0, MetricSpace::segment(), MetricSpace::segment().make_point(-0.3)};
  class FirstThing final : public Adversary {
   public:
    AdversaryAction act(const GameView& v) override {
      if (v.released_count() > 0) return AdversaryAction::done();
      return AdversaryAction::release_at(2.0, Point{-0.3, 0}, 1.0);
    }
    std::string name() const override { return "one"; }
  } adv;
  auto policy = make_policy("gr0", PolicyParams{1, 0, 0});
  GameTrace trace = run_game(cfg, *policy, adv);
  REQUIRE(trace.served.size() == 1);
  CHECK(trace.served[0].time == doctest::Approx(2.0));
}

TEST_CASE("can_serve_two examples") {
  auto seg = MetricSpace::segment();
  SUBCASE("co-located overlapping windows") {
    std::vector<Request> open = {{0, seg.make_point(0.5), 1.0, 1.0}, {1, seg.make_point(0.5), 1.5, 1.0}};
    CHECK(can_serve_two(seg, seg.make_point(0), 1.0, open));
  }
  SUBCASE("opposite ends both out of reach in sequence") {
    std::vector<Request> open = {{0, seg.make_point(-1), 1.0, 1.0}, {1, seg.make_point(1), 1.5, 1.0}};
    CHECK(!can_serve_two(seg, seg.make_point(0), 2.0, open));
  }
  SUBCASE("near pair is feasible") {
    // Oracle-checked positive pair: serve -0.5 at 1.5, then +0.5 at 2.5.
    std::vector<Request> open = {{0, seg.make_point(-0.5), 1.0, 1.0}, {1, seg.make_point(0.5), 1.0, 1.0}};
    CHECK(can_serve_two(seg, seg.make_point(0), 1.0, open));
    CHECK(two_serve_oracle(seg, seg.make_point(0), 1.0, open));
  }
}

TEST_CASE("can_serve_two agrees with the enumeration oracle") {
  std::mt19937_64 rng(555);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int it = 0; it < 2000; ++it) {
    MetricSpace sp = it % 2 ? MetricSpace::segment() : MetricSpace::star(3);
    Instance inst = random_instance(rng, 4, 0.2, sp);
    double now = 0.5 + 2.0 * u01(rng);
    Point pos = it % 2 ? sp.make_point(2.0 * u01(rng) - 1.0) : sp.make_point(u01(rng), 0);
    std::vector<Request> open;
    for (const auto& r : inst.requests)
      if (r.deadline() >= now) open.push_back(r);
    CHECK(can_serve_two(sp, pos, now, open) == two_serve_oracle(sp, pos, now, open));
  }
}

TEST_CASE("trace invariants hold across policies and instances") {
  std::mt19937_64 rng(808);
  for (int it = 0; it < 200; ++it) {
    Instance inst = random_instance(rng, 5, 0.4);
    for (const char* name : {"gr0", "gr1", "al1", "idle"}) {
      auto policy = make_policy(name, PolicyParams{5, 0.4, 0});
      GameTrace trace = run_game(inst, *policy);
      CHECK_NOTHROW(validate_trace(trace));
      // Served weight never exceeds the offline optimum of what was released.
      double off = offline_solve(trace.released_instance()).total_weight;
      CHECK(trace.served_weight() <= off + 1e-9);
    }
  }
}

TEST_CASE("adversary protocol violations are engine errors") {
  class BadDelay final : public Adversary {
   public:
    AdversaryAction act(const GameView& v) override {
      if (v.released_count() == 0) return AdversaryAction::release_at(1.0, Point{-1.0, 0}, 1.0);
      if (v.released_count() == 1) return AdversaryAction::release_at(1.1, Point{1.0, 0}, 1.0);
      return AdversaryAction::done();
    }
    std::string name() const override { return "bad"; }
  } bad;
  GameConfig cfg{2, 1.0, MetricSpace::segment(), MetricSpace::segment().origin()};
  auto policy = make_policy("gr0", PolicyParams{2, 1.0, 0});
  CHECK_THROWS_AS(run_game(cfg, *policy, bad), ProtocolError);

  class TooMany final : public Adversary {
   public:
    AdversaryAction act(const GameView& v) override {
      return AdversaryAction::release_at(1.0 + v.released_count(), Point{-1.0, 0}, 1.0);
    }
    std::string name() const override { return "many"; }
  } many;
  GameConfig cfg2{1, 0.0, MetricSpace::segment(), MetricSpace::segment().origin()};
  auto policy2 = make_policy("idle", PolicyParams{1, 0, 0});
  CHECK_THROWS_AS(run_game(cfg2, *policy2, many), ProtocolError);
}

TEST_CASE("speed bound and delay validity on adversary duels") {
  for (int n : {3, 4, 5}) {
    auto policy = make_policy("gr0", PolicyParams{n, 0.0, 0});
    GameTrace trace = duel("no_delay", *policy, AdversaryParams{n, 0.0, 0});
    CHECK_NOTHROW(validate_trace(trace));
  }
}

TEST_CASE("deterministic replay") {
  std::mt19937_64 rng(99);
  Instance inst = random_instance(rng, 5, 0.3);
  for (const char* name : {"gr0", "gr1", "al1", "al2", "al3"}) {
    auto p1 = make_policy(name, PolicyParams{5, 0.3, 0});
    auto p2 = make_policy(name, PolicyParams{5, 0.3, 0});
    GameTrace t1 = run_game(inst, *p1);
    GameTrace t2 = run_game(inst, *p2);
    CHECK(t1.export_lines() == t2.export_lines());
  }
}
