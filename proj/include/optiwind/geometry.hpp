#pragma once

#include <string>

namespace optiwind {

// Global comparison tolerance for coordinates, times and weights.
double eq_tolerance();
void set_eq_tolerance(double tol);

enum class SpaceKind { Segment, Star, Circle };

// Space-tagged coordinate. Segment: coord = x in [-1,1]. Star: coord = radius
// in [0,1], branch in {0..k-1}. Circle: coord = arc position in [0,4).
struct Point {
  double coord = 0.0;
  int branch = 0;
};

// Geodesic metric space of diameter 2: the segment [-1,1], a k-branch star
// with unit branches, or a circle of circumference 4. Segment and star are
// centred (contained in the unit ball around the origin); the circle is not.
class MetricSpace {
 public:
  static MetricSpace segment();
  static MetricSpace star(int branches = 3);
  static MetricSpace circle();

  SpaceKind kind() const { return kind_; }
  int branches() const { return branches_; }
  Point origin() const;

  Point make_point(double coord, int branch = 0) const;  // validates

  double distance(const Point& a, const Point& b) const;
  // Unit-speed motion along a minimum-length geodesic. Clamps at the target.
  Point move_toward(const Point& from, const Point& target, double dist) const;
  bool in_ball(const Point& p, const Point& centre, double radius) const;
  bool same_point(const Point& a, const Point& b) const;

  // Distance along the geodesic from `from` to `target` at which the path
  // passes through q, or -1 if q is not on the path.
  double crossing_offset(const Point& from, const Point& target, const Point& q) const;

  void validate(const Point& p) const;  // throws std::invalid_argument
  std::string format(const Point& p) const;
  std::string name() const;

  bool operator==(const MetricSpace& o) const {
    return kind_ == o.kind_ && branches_ == o.branches_;
  }

 private:
  MetricSpace(SpaceKind k, int b) : kind_(k), branches_(b) {}
  SpaceKind kind_ = SpaceKind::Segment;
  int branches_ = 0;
};

}  // namespace optiwind
