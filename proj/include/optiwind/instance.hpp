#pragma once

#include <string>
#include <vector>

#include "optiwind/geometry.hpp"

namespace optiwind {

// A request (A, [r, r+2], delta): location, release time, weight. The window
// length always equals the space diameter 2, so the deadline is implied.
struct Request {
  int id = -1;
  Point loc;
  double release = 0.0;
  double weight = 1.0;
  double deadline() const { return release + 2.0; }
};

struct Instance {
  MetricSpace space = MetricSpace::segment();
  double delay = 0.0;  // minimum gap T between consecutive releases
  std::vector<Request> requests;
  Point start;  // vehicle position at t=0, default origin

  double total_weight() const;
};

// Prefix sums S_i = sum_{k<=i} of the weights, 1-based (S[0] = 0).
std::vector<double> prefix_weights(const std::vector<Request>& requests);

// Throws std::invalid_argument on: unsorted releases, gaps below delay,
// non-positive weights, invalid points.
void validate_instance(const Instance& inst);

Instance scale_weights(const Instance& inst, double factor);  // factor > 0

// JSON file format:
//   {"space": {"kind": "segment"|"star"|"circle", "branches": k?},
//    "delay": T, "start": <point>?,
//    "requests": [{"loc": <point>, "release": r, "weight": d}, ...]}
// where <point> is a number (segment/circle) or [branch, radius] (star).
Instance load_instance(const std::string& path);
Instance parse_instance(const std::string& json_text);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::string& path);

}  // namespace optiwind
