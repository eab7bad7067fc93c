#pragma once

#include <vector>

#include "optiwind/instance.hpp"

namespace optiwind {

// A feasible serving schedule for one unit-speed vehicle starting at the
// instance's start point at t=0. Waiting anywhere is allowed.
struct OfflinePlan {
  struct Stop {
    int request_id = -1;
    double serve_time = 0.0;
  };
  std::vector<Stop> stops;
  double total_weight = 0.0;
};

// Exact maximum served weight via dynamic programming over (subset, last
// served); the state value is the earliest feasible completion time. Ties in
// weight break by earlier completion, then by lexicographically smaller
// subset. Hard cap of 20 requests.
OfflinePlan offline_solve(const Instance& inst);

// Independent oracle: exhaustive subsets and permutations with greedy-earliest
// serve times. Cap of 8 requests.
OfflinePlan offline_brute_force(const Instance& inst);

}  // namespace optiwind
