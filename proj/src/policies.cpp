#include "optiwind/policies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optiwind/numerics.hpp"

namespace optiwind {

double PolicyParams::eps() const {
  if (epsilon > 0) return epsilon;
  return 1.0 / (static_cast<double>(n) * (n - 1) * (n + 3));
}

double PolicyParams::kappa() const {
  double e = eps();
  double denom = 1.0 - n * (n - 1) * e;
  if (!(denom > 0) || !(e < 1.0 / (static_cast<double>(n) * n)))
    throw std::domain_error("policy epsilon too large (needs eps < 1/n^2)");
  return (1.0 + n * e) / denom;
}

std::vector<double> PolicyParams::omega() const {
  double e = eps(), k = kappa();
  std::vector<double> w(n + 1, 1.0);
  for (int i = 2; i <= n; ++i) w[i] = w[i - 1] * (1.0 - n * n * e) - (i - 2) * (k - w[i - 1]);
  return std::vector<double>(w.begin() + 1, w.end());
}

int PolicyParams::i0() const { return i0_of_delay(delay); }

double PolicyParams::threshold_alpha() const {
  int idx = std::clamp(n - i0(), 1, n);
  return alpha_solution(idx).alpha;
}

namespace {

double heading_tol() { return eq_tolerance(); }

bool reachable(const MetricSpace& sp, const Point& pos, double now, const Request& r) {
  return now + sp.distance(pos, r.loc) <= r.deadline() + heading_tol();
}

std::vector<Request> reachable_open(const GameView& v) {
  std::vector<Request> out;
  for (const auto& r : v.open_requests())
    if (reachable(v.space(), v.position, v.time, r)) out.push_back(r);
  return out;
}

// Greedy by weight: always head for the heaviest open request that is still
// reachable. Ties keep the current pursuit, then prefer the nearest, then the
// lowest id.
class Gr0Policy : public Policy {
 public:
  void reset(const GameConfig&) override { pursuit_ = -1; }

  Point decide(const GameView& v) override {
    auto cands = reachable_open(v);
    if (cands.empty()) {
      pursuit_ = -1;
      return v.position;
    }
    const double tol = heading_tol();
    double wmax = 0;
    for (const auto& r : cands) wmax = std::max(wmax, r.weight);
    const Request* pick = nullptr;
    for (const auto& r : cands) {
      if (r.weight < wmax - tol) continue;
      if (r.id == pursuit_) {
        pick = &r;
        break;
      }
      if (!pick) {
        pick = &r;
        continue;
      }
      double dn = v.space().distance(v.position, r.loc);
      double dp = v.space().distance(v.position, pick->loc);
      if (dn < dp - tol || (std::abs(dn - dp) <= tol && r.id < pick->id)) pick = &r;
    }
    pursuit_ = pick->id;
    return pick->loc;
  }

  std::string name() const override { return "gr0"; }

 private:
  int pursuit_ = -1;
};

// Greedy with the alpha threshold for large delays. Within a pursuit phase
// (since the last serve) the requests are numbered in release order; when a
// new one appears, keep the current pursuit f_i iff d_i / S >= alpha where S
// sums all weights of the phase including the newcomer.
class Gr1Policy : public Policy {
 public:
  explicit Gr1Policy(const PolicyParams& params) : params_(params), alpha_(params.threshold_alpha()) {}

  void reset(const GameConfig&) override {
    phase_sum_ = 0;
    pursuit_ = -1;
    seen_serves_ = 0;
    seen_releases_ = 0;
  }

  Point decide(const GameView& v) override {
    if (static_cast<int>(v.served->size()) > seen_serves_) {
      seen_serves_ = static_cast<int>(v.served->size());
      phase_sum_ = 0;
      pursuit_ = -1;
    }

    auto serviceable = reachable_open(v);
    if (pursuit_ >= 0) {
      bool still = false;
      for (const auto& r : serviceable)
        if (r.id == pursuit_) still = true;
      if (!still) {
        pursuit_ = -1;
        phase_sum_ = 0;
      }
    }

    // Fold releases that arrived since the last decision into the phase, in
    // release order, applying the threshold rule one at a time.
    int released = v.released_count();
    for (int id = seen_releases_; id < released; ++id) {
      const Request& r = (*v.released)[id];
      if (!v.is_open(r) || !reachable(v.space(), v.position, v.time, r)) continue;
      if (pursuit_ < 0) {
        pursuit_ = r.id;
        phase_sum_ = r.weight;
        continue;
      }
      double cur_weight = (*v.released)[pursuit_].weight;
      phase_sum_ += r.weight;
      if (cur_weight / phase_sum_ >= alpha_ - 1e-12) {
        // keep course toward the current pursuit
      } else {
        pursuit_ = r.id;
      }
    }
    seen_releases_ = released;

    if (pursuit_ >= 0) return (*v.released)[pursuit_].loc;
    if (serviceable.empty()) return v.space().origin();
    // Fresh phase with requests already open (only possible for T < 1):
    // pursue the earliest-released serviceable one.
    pursuit_ = serviceable.front().id;
    phase_sum_ = serviceable.front().weight;
    return serviceable.front().loc;
  }

  std::string name() const override { return "gr1"; }

 private:
  PolicyParams params_;
  double alpha_;
  double phase_sum_ = 0;
  int pursuit_ = -1;
  int seen_serves_ = 0;
  int seen_releases_ = 0;
};

// Greedy-by-weight where a feasible two-serve pair counts as one combined
// request; used as the takeover mode of Al1/Al2/Al3.
class CombinedGreedy {
 public:
  void reset() { pair_.reset(); }

  Point decide(const GameView& v, bool allow_pairs) {
    auto open = v.open_requests();
    auto cands = reachable_open(v);
    const double tol = heading_tol();

    if (pair_) {
      // Drop the pair when a leg is gone or the tour is no longer feasible.
      const Request* first = nullptr;
      const Request* second = nullptr;
      for (const auto& r : open) {
        if (r.id == pair_->first_id) first = &r;
        if (r.id == pair_->second_id) second = &r;
      }
      if (!second || (!first && !v.is_served(pair_->first_id))) pair_.reset();
      else if (first) {
        double s1 = std::max(v.time + v.space().distance(v.position, first->loc), first->release);
        double s2 = std::max(s1 + v.space().distance(first->loc, second->loc), second->release);
        if (s1 > first->deadline() + tol || s2 > second->deadline() + tol) pair_.reset();
      } else {
        // First leg served; the pair degenerates to its second leg.
        if (!reachable(v.space(), v.position, v.time, *second)) pair_.reset();
      }
    }
    if (!pair_ && allow_pairs) pair_ = best_serve_pair(v.space(), v.position, v.time, open);

    double best_single = 0;
    const Request* single = nullptr;
    for (const auto& r : cands)
      if (!single || r.weight > best_single + tol) {
        single = &r;
        best_single = r.weight;
      }

    if (pair_ && (!single || pair_->weight >= best_single - tol)) {
      int head = v.is_served(pair_->first_id) ? pair_->second_id : pair_->first_id;
      return (*v.released)[head].loc;
    }
    pair_.reset();
    if (!single) return v.position;
    return single->loc;
  }

 private:
  std::optional<ServePair> pair_;
};

// Al1: pursue the first request; bail out to combined greedy when a weight
// exceeds kappa (relative to the first weight) or when two requests become
// jointly serveable.
class Al1Policy : public Policy {
 public:
  explicit Al1Policy(const PolicyParams& params) : kappa_(params.kappa()) {}

  void reset(const GameConfig&) override {
    greedy_.reset();
    mode_ = Mode::PursueFirst;
    first_id_ = -1;
    pairs_allowed_ = false;
  }

  Point decide(const GameView& v) override {
    if (v.released_count() == 0) return v.position;
    if (first_id_ < 0) first_id_ = 0;
    double w1 = (*v.released)[first_id_].weight;

    if (mode_ == Mode::PursueFirst) {
      for (const auto& r : v.open_requests()) {
        if (r.weight > kappa_ * w1 + heading_tol()) {
          mode_ = Mode::Greedy;  // big weight: plain greedy takeover
          pairs_allowed_ = false;
        }
      }
    }
    if (mode_ == Mode::PursueFirst && can_serve_two(v.space(), v.position, v.time, v.open_requests())) {
      mode_ = Mode::Greedy;
      pairs_allowed_ = true;
    }
    if (mode_ == Mode::PursueFirst && (v.is_served(first_id_) || !v.is_open((*v.released)[first_id_]))) {
      mode_ = Mode::Greedy;  // first request resolved; stay useful afterwards
      pairs_allowed_ = true;
    }

    if (mode_ == Mode::PursueFirst) return (*v.released)[first_id_].loc;
    return greedy_.decide(v, pairs_allowed_);
  }

  std::string name() const override { return "al1"; }

 private:
  enum class Mode { PursueFirst, Greedy };
  double kappa_;
  Mode mode_ = Mode::PursueFirst;
  bool pairs_allowed_ = false;
  int first_id_ = -1;
  CombinedGreedy greedy_;
};

// Al2: alternating-endpoint threshold rule. While each new request lands at
// the far endpoint and the vehicle has switched with every one so far, switch
// iff t_i <= tau_{i-1} - 2^{n-1-i} T1; afterwards hold course until either a
// two-serve opportunity or the pursuit is resolved. Releases off the far
// endpoint keep the current course.
class Al2Core {
 public:
  void configure(int n, double t1) {
    n_ = n;
    t1_ = t1;
  }

  void reset() {
    pursuit_ = -1;
    tau_ = 0;
    index_ = 0;
    committed_keep_ = false;
    seen_releases_ = 0;
  }

  // Returns the pursuit target, or nullopt once the phase is over (pursuit
  // served/expired) so the wrapper can take over.
  std::optional<Point> decide(const GameView& v) {
    int released = v.released_count();
    for (int id = seen_releases_; id < released; ++id) on_release(v, (*v.released)[id]);
    seen_releases_ = released;

    if (pursuit_ < 0) return std::nullopt;
    const Request& cur = (*v.released)[pursuit_];
    if (v.is_served(cur.id) || !v.is_open(cur)) return std::nullopt;
    return cur.loc;
  }

  bool committed_keep() const { return committed_keep_; }

 private:
  void on_release(const GameView& v, const Request& r) {
    if (pursuit_ < 0 && index_ == 0) {
      pursuit_ = r.id;
      tau_ = r.release + v.space().distance(v.position, r.loc);
      index_ = 1;
      return;
    }
    if (pursuit_ < 0 || committed_keep_) return;
    const Request& cur = (*v.released)[pursuit_];
    bool far_end = v.space().distance(r.loc, cur.loc) >= 2.0 - heading_tol();
    if (!far_end) return;  // outside the alternating pattern: keep course
    int i = index_ + 1;
    double threshold = tau_ - std::pow(2.0, n_ - 1 - i) * t1_;
    if (r.release > threshold + heading_tol()) {
      committed_keep_ = true;  // hold course until two-serve or arrival
      return;
    }
    pursuit_ = r.id;
    tau_ = r.release + v.space().distance(v.position, r.loc);
    index_ = i;
  }

  int n_ = 3;
  double t1_ = 0.5;
  int pursuit_ = -1;
  double tau_ = 0;
  int index_ = 0;
  bool committed_keep_ = false;
  int seen_releases_ = 0;
};

class Al2Policy : public Policy {
 public:
  explicit Al2Policy(const PolicyParams& params) {
    core_.configure(params.n, thresholds(std::max(params.n, 3)).t1);
  }

  void reset(const GameConfig&) override {
    core_.reset();
    greedy_.reset();
    taken_over_ = false;
  }

  Point decide(const GameView& v) override {
    if (!taken_over_ && can_serve_two(v.space(), v.position, v.time, v.open_requests()))
      taken_over_ = true;  // two-serve exit: take the pair
    if (!taken_over_) {
      if (auto target = core_.decide(v)) return *target;
      taken_over_ = true;
    }
    return greedy_.decide(v, true);
  }

  std::string name() const override { return "al2"; }

 private:
  Al2Core core_;
  CombinedGreedy greedy_;
  bool taken_over_ = false;
};

// Al3: Al2 guarded by the weight corridor [omega_i, kappa] (relative to the
// first weight); leaving the corridor or a two-serve opportunity hands over
// to greedy (with pair combining in the two-serve case).
class Al3Policy : public Policy {
 public:
  explicit Al3Policy(const PolicyParams& params)
      : kappa_(params.kappa()), omega_(params.omega()) {
    core_.configure(params.n, thresholds(std::max(params.n, 3)).t1);
  }

  void reset(const GameConfig&) override {
    core_.reset();
    greedy_.reset();
    mode_ = Mode::Al2;
    pairs_allowed_ = false;
    seen_releases_ = 0;
  }

  Point decide(const GameView& v) override {
    if (mode_ == Mode::Al2) {
      int released = v.released_count();
      for (int id = seen_releases_; id < released && mode_ == Mode::Al2; ++id) {
        const Request& r = (*v.released)[id];
        double w1 = (*v.released)[0].weight;
        size_t ord = static_cast<size_t>(id);  // release ordinal, 0-based
        double lo = ord < omega_.size() ? omega_[ord] : omega_.back();
        if (r.weight > kappa_ * w1 + heading_tol() || r.weight < lo * w1 - heading_tol()) {
          mode_ = Mode::Greedy;
          pairs_allowed_ = false;
        }
      }
      seen_releases_ = released;
    }
    if (mode_ == Mode::Al2 && can_serve_two(v.space(), v.position, v.time, v.open_requests())) {
      mode_ = Mode::Greedy;
      pairs_allowed_ = true;
    }
    if (mode_ == Mode::Al2) {
      if (auto target = core_.decide(v)) return *target;
      mode_ = Mode::Greedy;
      pairs_allowed_ = true;
    }
    return greedy_.decide(v, pairs_allowed_);
  }

  std::string name() const override { return "al3"; }

 private:
  enum class Mode { Al2, Greedy };
  double kappa_;
  std::vector<double> omega_;
  Al2Core core_;
  CombinedGreedy greedy_;
  Mode mode_ = Mode::Al2;
  bool pairs_allowed_ = false;
  int seen_releases_ = 0;
};

class IdlePolicy : public Policy {
 public:
  Point decide(const GameView& v) override { return v.position; }
  std::string name() const override { return "idle"; }
};

class ScriptedPolicy : public Policy {
 public:
  explicit ScriptedPolicy(std::vector<ScriptStep> steps) : steps_(std::move(steps)) {}

  void reset(const GameConfig&) override {
    seen_releases_ = 0;
    target_id_ = -1;
  }

  Point decide(const GameView& v) override {
    int released = v.released_count();
    for (int id = seen_releases_; id < released; ++id) {
      if (target_id_ < 0) {
        target_id_ = id;  // always pursue the first request
        continue;
      }
      size_t step = static_cast<size_t>(id) - 1;
      if (step < steps_.size() && steps_[step] == ScriptStep::Switch) target_id_ = id;
    }
    seen_releases_ = released;
    if (target_id_ < 0) return v.position;
    return (*v.released)[target_id_].loc;
  }

  std::string name() const override { return "scripted"; }

 private:
  std::vector<ScriptStep> steps_;
  int seen_releases_ = 0;
  int target_id_ = -1;
};

}  // namespace

std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyParams& params) {
  if (name == "gr0") return std::make_unique<Gr0Policy>();
  if (name == "gr1") return std::make_unique<Gr1Policy>(params);
  if (name == "al1") return std::make_unique<Al1Policy>(params);
  if (name == "al2") return std::make_unique<Al2Policy>(params);
  if (name == "al3") return std::make_unique<Al3Policy>(params);
  if (name == "idle") return std::make_unique<IdlePolicy>();
  throw std::invalid_argument("unknown policy: " + name);
}

std::vector<std::string> policy_names() { return {"gr0", "gr1", "al1", "al2", "al3", "idle"}; }

std::unique_ptr<Policy> make_scripted_policy(std::vector<ScriptStep> steps) {
  return std::make_unique<ScriptedPolicy>(std::move(steps));
}

}  // namespace optiwind
