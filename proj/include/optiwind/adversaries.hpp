#pragma once

#include <memory>
#include <string>
#include <vector>

#include "optiwind/game.hpp"

namespace optiwind {

struct AdversaryParams {
  int n = 4;
  double delay = 0.0;
  double epsilon = 0.0;  // construction epsilon; 0 selects a per-strategy default
};

// Registry keys: no_delay, small_delay_perf, small_delay_cr, large_delay,
// n3_golden, n4_medium, star_counterexample. Constructors validate the
// hypotheses of the construction they implement and refuse anything else.
std::unique_ptr<Adversary> make_adversary(const std::string& name, const AdversaryParams& params);
std::vector<std::string> adversary_names();

// Game configuration matching an adversary's hypotheses (space, n_max, delay).
GameConfig adversary_config(const std::string& name, const AdversaryParams& params);

// Runs the named adversary against the named policy and returns the trace.
GameTrace duel(const std::string& adversary, Policy& policy, const AdversaryParams& params);

// The small-delay performance schedule as a fixed instance. Its release gaps
// stay >= delay exactly up to delay = T0, so it also serves as the tightness
// family member at T0 (where the adversary constructor itself refuses).
Instance small_delay_perf_instance(int n, double delay);

}  // namespace optiwind
