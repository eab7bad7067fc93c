#include "optiwind/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace optiwind {

namespace {
double g_eq_tol = 1e-9;

double wrap4(double s) {
  s = std::fmod(s, 4.0);
  if (s < 0) s += 4.0;
  if (s >= 4.0) s -= 4.0;  // fmod can land exactly on 4 after the add
  return s;
}
}  // namespace

double eq_tolerance() { return g_eq_tol; }

void set_eq_tolerance(double tol) {
  if (!(tol > 0) || tol > 1e-3) throw std::invalid_argument("eq tolerance must be in (0, 1e-3]");
  g_eq_tol = tol;
}

MetricSpace MetricSpace::segment() { return MetricSpace(SpaceKind::Segment, 0); }

MetricSpace MetricSpace::star(int branches) {
  if (branches < 3) throw std::invalid_argument("star needs at least 3 branches");
  return MetricSpace(SpaceKind::Star, branches);
}

MetricSpace MetricSpace::circle() { return MetricSpace(SpaceKind::Circle, 0); }

Point MetricSpace::origin() const { return Point{0.0, 0}; }

Point MetricSpace::make_point(double coord, int branch) const {
  Point p{coord, kind_ == SpaceKind::Star ? branch : 0};
  if (kind_ == SpaceKind::Circle) p.coord = wrap4(p.coord);
  if (kind_ == SpaceKind::Star && std::abs(p.coord) <= g_eq_tol) {
    p.coord = 0.0;
    p.branch = 0;  // centre is branch-agnostic
  }
  validate(p);
  return p;
}

void MetricSpace::validate(const Point& p) const {
  switch (kind_) {
    case SpaceKind::Segment:
      if (std::abs(p.coord) > 1.0 + g_eq_tol) throw std::invalid_argument("segment coordinate outside [-1,1]");
      break;
    case SpaceKind::Star:
      if (p.coord < -g_eq_tol || p.coord > 1.0 + g_eq_tol) throw std::invalid_argument("star radius outside [0,1]");
      if (p.branch < 0 || p.branch >= branches_) throw std::invalid_argument("star branch index out of range");
      break;
    case SpaceKind::Circle:
      if (p.coord < -g_eq_tol || p.coord >= 4.0 + g_eq_tol) throw std::invalid_argument("circle coordinate outside [0,4)");
      break;
  }
}

double MetricSpace::distance(const Point& a, const Point& b) const {
  switch (kind_) {
    case SpaceKind::Segment:
      return std::abs(a.coord - b.coord);
    case SpaceKind::Star:
      // Same branch: along the branch. Different branches: through the centre
      // (correct even when one point is the centre under another branch tag).
      return a.branch == b.branch ? std::abs(a.coord - b.coord) : a.coord + b.coord;
    case SpaceKind::Circle: {
      double d = std::abs(a.coord - b.coord);
      return std::min(d, 4.0 - d);
    }
  }
  return 0.0;
}

bool MetricSpace::same_point(const Point& a, const Point& b) const {
  return distance(a, b) <= g_eq_tol;
}

bool MetricSpace::in_ball(const Point& p, const Point& centre, double radius) const {
  return distance(p, centre) <= radius;
}

Point MetricSpace::move_toward(const Point& from, const Point& target, double dist) const {
  if (dist < 0) throw std::invalid_argument("move_toward: negative distance");
  const double total = distance(from, target);
  if (dist >= total) return target;
  switch (kind_) {
    case SpaceKind::Segment: {
      double dir = target.coord > from.coord ? 1.0 : -1.0;
      return Point{from.coord + dir * dist, 0};
    }
    case SpaceKind::Star: {
      if (from.branch == target.branch || target.coord <= g_eq_tol) {
        double dir = target.coord > from.coord ? 1.0 : -1.0;
        double r = from.coord + dir * dist;
        return r <= g_eq_tol ? Point{0.0, 0} : Point{r, from.branch};
      }
      if (from.coord <= g_eq_tol) return Point{dist, target.branch};  // outward from centre
      if (dist < from.coord) return Point{from.coord - dist, from.branch};
      double r = dist - from.coord;
      return r <= g_eq_tol ? Point{0.0, 0} : Point{r, target.branch};
    }
    case SpaceKind::Circle: {
      double forward = wrap4(target.coord - from.coord);  // arc length moving in +direction
      // Shorter arc wins; tie (antipodal) resolved toward increasing coordinate.
      double dir = forward <= 2.0 ? 1.0 : -1.0;
      return Point{wrap4(from.coord + dir * dist), 0};
    }
  }
  return target;
}

double MetricSpace::crossing_offset(const Point& from, const Point& target, const Point& q) const {
  const double total = distance(from, target);
  switch (kind_) {
    case SpaceKind::Segment: {
      if (total <= g_eq_tol) return same_point(from, q) ? 0.0 : -1.0;
      double dir = target.coord > from.coord ? 1.0 : -1.0;
      double rel = (q.coord - from.coord) * dir;
      if (rel < -g_eq_tol || rel > total + g_eq_tol) return -1.0;
      return std::clamp(rel, 0.0, total);
    }
    case SpaceKind::Star: {
      if (total <= g_eq_tol) return same_point(from, q) ? 0.0 : -1.0;
      bool q_centre = q.coord <= g_eq_tol;
      if (from.branch == target.branch || from.coord <= g_eq_tol || target.coord <= g_eq_tol) {
        // Single-leg path (possibly passing the centre only at an endpoint).
        int leg_branch = from.coord > g_eq_tol ? from.branch : target.branch;
        double a = (from.coord > g_eq_tol && from.branch == leg_branch) ? from.coord : 0.0;
        double b = (target.coord > g_eq_tol && target.branch == leg_branch) ? target.coord : 0.0;
        if (from.coord <= g_eq_tol) a = 0.0;
        if (target.coord <= g_eq_tol) b = 0.0;
        if (!q_centre && q.branch != leg_branch) return -1.0;
        double rq = q_centre ? 0.0 : q.coord;
        double dir = b > a ? 1.0 : -1.0;
        double rel = (rq - a) * dir;
        if (rel < -g_eq_tol || rel > total + g_eq_tol) return -1.0;
        return std::clamp(rel, 0.0, total);
      }
      // Two legs: in along from.branch, out along target.branch.
      if (q_centre) return from.coord;
      if (q.branch == from.branch && q.coord <= from.coord + g_eq_tol)
        return std::clamp(from.coord - q.coord, 0.0, total);
      if (q.branch == target.branch && q.coord <= target.coord + g_eq_tol)
        return std::clamp(from.coord + q.coord, 0.0, total);
      return -1.0;
    }
    case SpaceKind::Circle: {
      if (total <= g_eq_tol) return same_point(from, q) ? 0.0 : -1.0;
      double forward = wrap4(target.coord - from.coord);
      double dir = forward <= 2.0 ? 1.0 : -1.0;
      double rel = dir > 0 ? wrap4(q.coord - from.coord) : wrap4(from.coord - q.coord);
      if (rel > total + g_eq_tol) {
        if (rel >= 4.0 - g_eq_tol) rel = 0.0;  // wrapped hit at the start point
        else return -1.0;
      }
      return std::clamp(rel, 0.0, total);
    }
  }
  return -1.0;
}

std::string MetricSpace::format(const Point& p) const {
  char buf[64];
  if (kind_ == SpaceKind::Star)
    std::snprintf(buf, sizeof(buf), "(%d,%.6g)", p.branch, p.coord);
  else
    std::snprintf(buf, sizeof(buf), "%.6g", p.coord);
  return buf;
}

std::string MetricSpace::name() const {
  switch (kind_) {
    case SpaceKind::Segment: return "segment";
    case SpaceKind::Star: return "star";
    case SpaceKind::Circle: return "circle";
  }
  return "?";
}

}  // namespace optiwind
