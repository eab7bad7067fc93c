#include <doctest.h>

#include <random>
#include <stdexcept>

#include "helpers.hpp"
#include "optiwind/instance.hpp"
#include "optiwind/game.hpp"
#include "optiwind/policies.hpp"

using namespace optiwind;
using namespace optiwind::testing;

TEST_CASE("instance json round trip reproduces identical games") {
  std::mt19937_64 rng(2024);
  for (int it = 0; it < 50; ++it) {
    MetricSpace space = it % 3 == 0   ? MetricSpace::segment()
                        : it % 3 == 1 ? MetricSpace::star(3)
                                      : MetricSpace::circle();
    Instance inst = random_instance(rng, 4, 0.3, space);
    Instance back = parse_instance(instance_to_json(inst));

    auto p1 = make_policy("gr0", PolicyParams{4, 0.3, 0});
    auto p2 = make_policy("gr0", PolicyParams{4, 0.3, 0});
    GameTrace t1 = run_game(inst, *p1);
    GameTrace t2 = run_game(back, *p2);
    REQUIRE(t1.export_lines() == t2.export_lines());  // bit-identical summaries
  }
}

TEST_CASE("star points serialize as [branch, radius]") {
  Instance inst;
  inst.space = MetricSpace::star(3);
  inst.delay = 0.1;
  inst.requests.push_back({0, inst.space.make_point(1.0, 2), 1.0, 2.5});
  std::string text = instance_to_json(inst);
  Instance back = parse_instance(text);
  CHECK(back.requests[0].loc.branch == 2);
  CHECK(back.requests[0].loc.coord == 1.0);
  CHECK(back.requests[0].weight == 2.5);
}

TEST_CASE("malformed instances are rejected with a named field") {
  CHECK_THROWS_WITH_AS(parse_instance("{\"delay\": 0.5, \"requests\": []}"),
                       doctest::Contains("space"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(parse_instance("{\"space\": {\"kind\": \"segment\"}, \"requests\": []}"),
                       doctest::Contains("delay"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      parse_instance("{\"space\": {\"kind\": \"segment\"}, \"delay\": 0, \"requests\": [{\"loc\": 0.5}]}"),
      doctest::Contains("release"), std::invalid_argument);
  CHECK_THROWS_AS(parse_instance("not json"), std::invalid_argument);
}

TEST_CASE("delay violations are rejected") {
  std::string text =
      "{\"space\": {\"kind\": \"segment\"}, \"delay\": 1.0, \"requests\": "
      "[{\"loc\": -1, \"release\": 1, \"weight\": 1},"
      " {\"loc\": 1, \"release\": 1.5, \"weight\": 1}]}";
  CHECK_THROWS_AS(parse_instance(text), std::invalid_argument);
}

TEST_CASE("prefix weight sums are strictly increasing") {
  Instance inst;
  inst.space = MetricSpace::segment();
  inst.requests.push_back({0, inst.space.make_point(-1), 1.0, 1.0});
  inst.requests.push_back({1, inst.space.make_point(1), 1.5, 0.5});
  inst.requests.push_back({2, inst.space.make_point(0), 2.0, 2.0});
  auto s = prefix_weights(inst.requests);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == 1.0);
  CHECK(s[2] == 1.5);
  CHECK(s[3] == 3.5);
  for (size_t i = 1; i < s.size(); ++i) CHECK(s[i] > s[i - 1]);
}

TEST_CASE("scale_weights") {
  Instance inst;
  inst.space = MetricSpace::segment();
  inst.requests.push_back({0, inst.space.make_point(-1), 1.0, 1.0});
  inst.requests.push_back({1, inst.space.make_point(1), 1.5, 2.0});
  Instance doubled = scale_weights(inst, 2.0);
  CHECK(doubled.requests[0].weight == 2.0);
  CHECK(doubled.requests[1].weight == 4.0);
  Instance same = scale_weights(inst, 1.0);
  CHECK(same.requests[1].weight == 2.0);
  CHECK_THROWS_AS(scale_weights(inst, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(scale_weights(inst, -2.0), std::invalid_argument);
}

TEST_CASE("trace export format") {
  Instance inst;
  inst.space = MetricSpace::segment();
  inst.requests.push_back({0, inst.space.make_point(-1.0), 1.0, 1.0});
  auto policy = make_policy("gr0", PolicyParams{1, 0, 0});
  GameTrace trace = run_game(inst, *policy);
  auto lines = trace.export_lines();
  REQUIRE(!lines.empty());
  CHECK(lines.front().rfind("t=1 event=released", 0) == 0);
  CHECK(lines.back().find("summary served=[0] performance=1") != std::string::npos);
  for (const auto& line : lines)
    if (line.rfind("t=", 0) == 0) {
      CHECK(line.find(" pos=") != std::string::npos);
      CHECK(line.find(" target=") != std::string::npos);
    }
}
