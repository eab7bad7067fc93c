#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "optiwind/game.hpp"
#include "optiwind/instance.hpp"

namespace optiwind::testing {

// Random valid instance: release gaps >= delay (plus a small slack), a mix of
// endpoint and interior locations, log-uniform weights.
inline Instance random_instance(std::mt19937_64& rng, int n, double delay,
                                MetricSpace space = MetricSpace::segment(),
                                bool distinct_weights = false) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  Instance inst;
  inst.space = space;
  inst.delay = delay;
  inst.start = space.origin();
  double t = 0.5 + u01(rng);
  for (int i = 0; i < n; ++i) {
    Request r;
    r.id = i;
    r.release = t;
    t += delay + 0.6 * u01(rng);
    double w = std::exp(std::log(0.2) + u01(rng) * (std::log(5.0) - std::log(0.2)));
    if (distinct_weights) w += 1e-6 * (i + 1);  // break exact ties
    r.weight = w;
    double pick = u01(rng);
    switch (space.kind()) {
      case SpaceKind::Segment:
        if (pick < 0.35) r.loc = space.make_point(-1.0);
        else if (pick < 0.7) r.loc = space.make_point(1.0);
        else r.loc = space.make_point(2.0 * u01(rng) - 1.0);
        break;
      case SpaceKind::Star:
        r.loc = space.make_point(pick < 0.6 ? 1.0 : u01(rng),
                                 static_cast<int>(u01(rng) * space.branches()) % space.branches());
        break;
      case SpaceKind::Circle:
        r.loc = space.make_point(4.0 * u01(rng));
        break;
    }
    inst.requests.push_back(r);
  }
  validate_instance(inst);
  return inst;
}

// Independent enumeration for the two-serve predicate: explicit serve-time
// chains over all ordered pairs, written apart from the library's version.
inline bool two_serve_oracle(const MetricSpace& sp, Point pos, double now,
                             const std::vector<Request>& open) {
  for (const auto& a : open)
    for (const auto& b : open) {
      if (a.id == b.id) continue;
      double arrive_a = now + sp.distance(pos, a.loc);
      double serve_a = arrive_a < a.release ? a.release : arrive_a;
      if (serve_a > a.deadline() + 1e-9) continue;
      double arrive_b = serve_a + sp.distance(a.loc, b.loc);
      double serve_b = arrive_b < b.release ? b.release : arrive_b;
      if (serve_b <= b.deadline() + 1e-9) return true;
    }
  return false;
}

// Heading targets in event order, for determinism / scale-invariance checks.
inline std::vector<Point> heading_sequence(const GameTrace& trace) {
  std::vector<Point> out;
  for (const auto& rec : trace.records) {
    if (out.empty() || trace.config.space.distance(out.back(), rec.target) > 1e-9)
      out.push_back(rec.target);
  }
  return out;
}

}  // namespace optiwind::testing
