#include "optiwind/offline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace optiwind {

namespace {
constexpr double kInf = 1e300;

// Greedy-earliest serve times are optimal within a fixed visiting order:
// s_{k+1} = max(release, s_k + travel).
double order_completion(const Instance& inst, const std::vector<int>& order) {
  double t = 0.0;
  Point at = inst.start;
  for (int id : order) {
    const Request& r = inst.requests[id];
    t = std::max(t + inst.space.distance(at, r.loc), r.release);
    if (t > r.deadline() + eq_tolerance()) return kInf;
    at = r.loc;
  }
  return t;
}
}  // namespace

OfflinePlan offline_solve(const Instance& inst) {
  const int m = static_cast<int>(inst.requests.size());
  if (m > 20) throw std::length_error("offline_solve: more than 20 requests");
  OfflinePlan plan;
  if (m == 0) return plan;

  const double tol = eq_tolerance();
  // completion[mask][last]: earliest time at which exactly `mask` is served,
  // finishing at request `last`. Stored sparsely by reachable mask.
  std::unordered_map<uint32_t, std::vector<double>> completion;
  completion.reserve(1u << std::min(m, 16));

  auto row = [&](uint32_t mask) -> std::vector<double>& {
    auto it = completion.find(mask);
    if (it == completion.end()) it = completion.emplace(mask, std::vector<double>(m, kInf)).first;
    return it->second;
  };

  for (int j = 0; j < m; ++j) {
    const Request& r = inst.requests[j];
    double s = std::max(inst.space.distance(inst.start, r.loc), r.release);
    if (s <= r.deadline() + tol) row(1u << j)[j] = s;
  }

  // Every transition adds a bit, so increasing numeric mask order is a valid
  // topological order.
  for (uint32_t mask = 1; mask < (1u << m); ++mask) {
    auto it = completion.find(mask);
    if (it == completion.end()) continue;
    const std::vector<double> times = it->second;  // copy: `row` may rehash
    for (int last = 0; last < m; ++last) {
      if (times[last] >= kInf) continue;
      for (int j = 0; j < m; ++j) {
        if (mask & (1u << j)) continue;
        const Request& r = inst.requests[j];
        double s = std::max(times[last] + inst.space.distance(inst.requests[last].loc, r.loc), r.release);
        if (s > r.deadline() + tol) continue;
        auto& nrow = row(mask | (1u << j));
        if (s < nrow[j]) nrow[j] = s;
      }
    }
  }

  // Pick the best-weight mask; ties by earlier completion, then smaller mask.
  uint32_t best_mask = 0;
  int best_last = -1;
  double best_weight = 0.0, best_time = 0.0;
  for (const auto& [mask, times] : completion) {
    double w = 0;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) w += inst.requests[j].weight;
    for (int last = 0; last < m; ++last) {
      if (times[last] >= kInf) continue;
      bool better = w > best_weight + tol;
      if (!better && std::abs(w - best_weight) <= tol) {
        if (times[last] < best_time - tol) better = true;
        else if (std::abs(times[last] - best_time) <= tol && mask < best_mask) better = true;
      }
      if (better || best_last < 0) {
        best_mask = mask;
        best_last = last;
        best_weight = w;
        best_time = times[last];
      }
    }
  }
  if (best_last < 0) return plan;

  // Reconstruct by walking the DP backwards.
  std::vector<int> order;
  uint32_t mask = best_mask;
  int last = best_last;
  double t = best_time;
  while (mask) {
    order.push_back(last);
    uint32_t pmask = mask & ~(1u << last);
    if (!pmask) break;
    const Request& r = inst.requests[last];
    int prev = -1;
    auto it = completion.find(pmask);
    if (it != completion.end()) {
      for (int p = 0; p < m; ++p) {
        if (!(pmask & (1u << p)) || it->second[p] >= kInf) continue;
        double s = std::max(it->second[p] + inst.space.distance(inst.requests[p].loc, r.loc), r.release);
        if (std::abs(s - t) <= 1e-6 && (prev < 0)) prev = p;
      }
    }
    if (prev < 0) throw std::logic_error("offline_solve: reconstruction failed");
    t = it->second[prev];
    mask = pmask;
    last = prev;
  }
  std::reverse(order.begin(), order.end());

  double s = 0.0;
  Point at = inst.start;
  for (int id : order) {
    const Request& r = inst.requests[id];
    s = std::max(s + inst.space.distance(at, r.loc), r.release);
    plan.stops.push_back({r.id, s});
    plan.total_weight += r.weight;
    at = r.loc;
  }
  return plan;
}

OfflinePlan offline_brute_force(const Instance& inst) {
  const int m = static_cast<int>(inst.requests.size());
  if (m > 8) throw std::length_error("offline_brute_force: more than 8 requests");
  OfflinePlan best;
  double best_time = kInf;
  uint32_t best_mask = 0;

  for (uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<int> ids;
    double w = 0;
    for (int j = 0; j < m; ++j)
      if (mask & (1u << j)) {
        ids.push_back(j);
        w += inst.requests[j].weight;
      }
    if (w < best.total_weight - eq_tolerance()) continue;
    std::sort(ids.begin(), ids.end());
    do {
      double t = order_completion(inst, ids);
      if (t >= kInf) continue;
      bool better = w > best.total_weight + eq_tolerance();
      if (!better && std::abs(w - best.total_weight) <= eq_tolerance()) {
        if (t < best_time - eq_tolerance()) better = true;
        else if (std::abs(t - best_time) <= eq_tolerance() && mask < best_mask) better = true;
      }
      if (better) {
        best.total_weight = w;
        best_time = t;
        best_mask = mask;
        best.stops.clear();
        double s = 0.0;
        Point at = inst.start;
        for (int id : ids) {
          const Request& r = inst.requests[id];
          s = std::max(s + inst.space.distance(at, r.loc), r.release);
          best.stops.push_back({r.id, s});
          at = r.loc;
        }
      }
    } while (std::next_permutation(ids.begin(), ids.end()));
  }
  return best;
}

}  // namespace optiwind
