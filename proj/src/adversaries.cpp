#include "optiwind/adversaries.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "optiwind/numerics.hpp"

namespace optiwind {

namespace {

// Which end of the segment the vehicle currently heads for: +1, -1, or 0 when
// holding position. The lower-bound constructions react to end flips only.
int heading_end(const GameView& v) {
  double delta = v.target.coord - v.position.coord;
  if (delta > eq_tolerance()) return 1;
  if (delta < -eq_tolerance()) return -1;
  return 0;
}

Point seg(double x) { return Point{x, 0}; }

// No-delay lower bound: pin the vehicle to its first pursuit with a geometric
// burst of unit requests at the opposite end, re-anchoring on every direction
// change; exactly n requests total, all servable offline by the 2i+1 zig-zag.
class NoDelayAdversary final : public Adversary {
 public:
  explicit NoDelayAdversary(const AdversaryParams& p) : n_(p.n) {
    if (n_ < 1) throw std::domain_error("no_delay: needs n >= 1");
    if (p.delay != 0.0) throw std::domain_error("no_delay: defined for T = 0");
  }

  void reset(const GameConfig& cfg) override {
    if (cfg.delay != 0.0) throw std::domain_error("no_delay: defined for T = 0");
    stopped_ = false;
    started_ = false;
    end_ = -1;
    tau_ = 2.0;
    phase_base_ = 1;
  }

  AdversaryAction act(const GameView& v) override {
    int released = v.released_count();
    if (released == 0) return AdversaryAction::release_at(1.0, seg(-1.0), 1.0);
    if (released >= n_ || stopped_) return AdversaryAction::done();

    int cur = heading_end(v);
    if (!started_) {
      // First reaction: if the vehicle is not heading for f_1, stop for good.
      if (cur != -1) {
        stopped_ = true;
        return AdversaryAction::done();
      }
      started_ = true;
    } else if (cur != 0 && cur != end_) {
      // Direction change: re-anchor the ETA at the new end.
      end_ = cur;
      tau_ = v.time + v.space().distance(v.position, seg(end_));
      phase_base_ = released;
    }
    int k = released - phase_base_;  // burst index within the current phase
    double t = tau_ - 1.0 / (4.0 * std::pow(3.0, k) * n_);
    return AdversaryAction::release_at(t, seg(-end_), 1.0);
  }

  std::string name() const override { return "no_delay"; }

 private:
  int n_;
  bool stopped_ = false, started_ = false;
  int end_ = -1;
  double tau_ = 2.0;
  int phase_base_ = 1;
};

// Small-delay performance bound (T < T0): fixed schedule, f_1 at -1 and the
// rest at +1, each arriving past the point of no return for its predecessor.
std::vector<Request> small_delay_perf_schedule(int n, double t) {
  std::vector<Request> reqs;
  auto add = [&](double x, double release) {
    Request r;
    r.id = static_cast<int>(reqs.size());
    r.loc = seg(x);
    r.release = release;
    r.weight = 1.0;
    reqs.push_back(r);
  };
  add(-1.0, 1.0);
  for (int i = 2; i <= n - 1; ++i)
    add(1.0, 2.0 - (1.0 - t) / std::pow(2.0, i - 2) + (1.0 - t) / std::pow(2.0, n - 2) - t / 2.0);
  add(1.0, reqs.back().release + t);
  return reqs;
}

class SmallDelayPerfAdversary final : public Adversary {
 public:
  explicit SmallDelayPerfAdversary(const AdversaryParams& p) : n_(p.n), t_(p.delay) {
    if (n_ < 3) throw std::domain_error("small_delay_perf: needs n >= 3");
    double t0 = thresholds(n_).t0;
    if (!(t_ >= 0 && t_ < t0))
      throw std::domain_error("small_delay_perf: needs 0 <= T < T0 = 1/(2^(n-3)+1)");
    schedule_ = small_delay_perf_schedule(n_, t_);
  }

  void reset(const GameConfig&) override { next_ = 0; }

  AdversaryAction act(const GameView& v) override {
    while (next_ < schedule_.size() && next_ < static_cast<size_t>(v.released_count())) ++next_;
    if (next_ >= schedule_.size()) return AdversaryAction::done();
    const Request& r = schedule_[next_];
    return AdversaryAction::release_at(r.release, r.loc, r.weight);
  }

  std::string name() const override { return "small_delay_perf"; }

 private:
  int n_;
  double t_;
  std::vector<Request> schedule_;
  size_t next_ = 0;
};

// Small-delay competitive bound (T < T1): doubling offsets 2^(n-2-i-k)(T+2e)+e
// at the opposite end, re-anchoring on direction changes; n-1 requests, then
// a finisher at tau_j - e across from the final pursuit.
class SmallDelayCrAdversary final : public Adversary {
 public:
  explicit SmallDelayCrAdversary(const AdversaryParams& p) : n_(p.n), t_(p.delay) {
    if (n_ < 3) throw std::domain_error("small_delay_cr: needs n >= 3");
    double t1 = thresholds(n_).t1;
    if (!(t_ > 0 && t_ < t1)) throw std::domain_error("small_delay_cr: needs 0 < T < T1 = 1/(2^(n-1)-2)");
    eps_ = p.epsilon > 0 ? p.epsilon : std::min(t_, t1 * std::pow(2.0, -n_)) / 10.0;
    if (!(eps_ < t_)) throw std::domain_error("small_delay_cr: needs 0 < eps < T");
  }

  void reset(const GameConfig&) override {
    stopped_ = false;
    started_ = false;
    end_ = -1;
    tau_ = 2.0;
    phase_ = 1;
    phase_base_ = 1;
  }

  AdversaryAction act(const GameView& v) override {
    int released = v.released_count();
    if (released == 0) return AdversaryAction::release_at(1.0, seg(-1.0), 1.0);
    if (released >= n_ || stopped_) return AdversaryAction::done();

    int cur = heading_end(v);
    if (!started_) {
      if (cur != -1) {
        stopped_ = true;
        return AdversaryAction::done();
      }
      started_ = true;
    } else if (cur != 0 && cur != end_) {
      end_ = cur;
      tau_ = v.time + v.space().distance(v.position, seg(end_));
      phase_ += 1;
      phase_base_ = released;
    }

    if (released == n_ - 1)  // finisher across from the current pursuit
      return AdversaryAction::release_at(tau_ - eps_, seg(-end_), 1.0);

    int k = released - phase_base_;
    int expo = n_ - 2 - phase_ - k;
    if (expo < 0) throw ProtocolError("small_delay_cr: offset exponent underflow");
    double t = tau_ - std::pow(2.0, expo) * (t_ + 2.0 * eps_) + eps_;
    return AdversaryAction::release_at(t, seg(-end_), 1.0);
  }

  std::string name() const override { return "small_delay_cr"; }

 private:
  int n_;
  double t_;
  double eps_ = 0;
  bool stopped_ = false, started_ = false;
  int end_ = -1;
  double tau_ = 2.0;
  int phase_ = 1;
  int phase_base_ = 1;
};

// Large-delay bound (1 <= T < 2 - 1/(n-1)): an initial run of geometric
// weights 4^(i-1) eps released one per serve, then the alpha-realizing
// sequence on alternating ends with the eta_i offsets; stops as soon as a
// post-run request is served.
class LargeDelayAdversary final : public Adversary {
 public:
  explicit LargeDelayAdversary(const AdversaryParams& p) : n_(p.n), t_(p.delay) {
    if (n_ < 2) throw std::domain_error("large_delay: needs n >= 2");
    if (!(t_ >= 1.0 && t_ < 2.0 - 1.0 / (n_ - 1)))
      throw std::domain_error("large_delay: needs 1 <= T < 2 - 1/(n-1)");
    eps_ = p.epsilon > 0 ? p.epsilon : 1e-4;
    i0_ = i0_of_delay(t_);
    deltas_ = alpha_solution(std::max(1, n_ - i0_)).deltas;
  }

  void reset(const GameConfig&) override { stopped_ = false; }

  AdversaryAction act(const GameView& v) override {
    if (stopped_) return AdversaryAction::done();
    int released = v.released_count();
    int i = released + 1;  // index of the next request f_i
    if (i > n_) return AdversaryAction::done();

    if (released == 0) return AdversaryAction::release_at(1.0, seg(-1.0), eps_);

    // A serve of any request beyond the initial run ends the game.
    for (const auto& sv : *v.served)
      if (sv.request_id >= i0_) {  // ids are 0-based; f_{i0+1} has id i0
        stopped_ = true;
        return AdversaryAction::done();
      }

    if (i <= i0_) {
      // Release the next geometric-weight request once f_{i-1} is served.
      if (!v.is_served(released - 1)) {
        if (!v.is_open((*v.released)[released - 1])) {
          stopped_ = true;  // vehicle dropped the run: stop for good
          return AdversaryAction::done();
        }
        return AdversaryAction::wait();
      }
      double x = (i % 2 == 0) ? 1.0 : -1.0;  // f_i sits at (-1)^i
      // Late serves push the release past its nominal slot; the gap to the
      // previous release only grows, so the delay stays respected.
      double when = std::max(1.0 + (i - 1) * t_, v.time);
      return AdversaryAction::release_at(when, seg(x), std::pow(4.0, i - 1) * eps_);
    }
    if (i == i0_ + 1) {
      if (!v.is_served(released - 1)) {
        if (!v.is_open((*v.released)[released - 1])) {
          stopped_ = true;
          return AdversaryAction::done();
        }
        return AdversaryAction::wait();
      }
      double x = (i % 2 == 0) ? 1.0 : -1.0;
      return AdversaryAction::release_at(std::max(1.0 + i0_ * t_, v.time), seg(x), deltas_[0]);
    }
    // Main run: fixed times 2i - 2 - eta_i with eta_i = (i-i0)/n - 3/(2n).
    double eta = static_cast<double>(i - i0_) / n_ - 3.0 / (2.0 * n_);
    double x = (i % 2 == 0) ? 1.0 : -1.0;
    return AdversaryAction::release_at(2.0 * i - 2.0 - eta, seg(x), deltas_[i - i0_ - 1]);
  }

  std::string name() const override { return "large_delay"; }

 private:
  int n_;
  double t_;
  double eps_;
  int i0_ = 1;
  std::vector<double> deltas_;
  bool stopped_ = false;
};

// n = 3, 1/2 <= T < 1: the golden-ratio script. Withholds the third request
// if the vehicle stays on course for f_1.
class N3GoldenAdversary final : public Adversary {
 public:
  explicit N3GoldenAdversary(const AdversaryParams& p) : t_(p.delay) {
    if (p.n != 3) throw std::domain_error("n3_golden: defined for n = 3");
    if (!(t_ >= 0.5 && t_ < 1.0)) throw std::domain_error("n3_golden: needs 1/2 <= T < 1");
    double cap = std::min(1.0 / 3.0, 1.0 - t_);
    eps_ = p.epsilon > 0 ? p.epsilon : cap / 2.0;
    if (!(eps_ < cap)) throw std::domain_error("n3_golden: needs eps < min(1/3, 1-T)");
  }

  void reset(const GameConfig&) override {
    stopped_ = false;
    branch_taken_ = false;
  }

  AdversaryAction act(const GameView& v) override {
    if (stopped_) return AdversaryAction::done();
    int released = v.released_count();
    double phi = golden_ratio();
    if (released == 0) return AdversaryAction::release_at(1.0, seg(-1.0), 1.0);
    if (released == 1) {
      if (heading_end(v) != -1) {
        stopped_ = true;  // not committing to f_1: no more requests
        return AdversaryAction::done();
      }
      return AdversaryAction::release_at(2.0 - eps_, seg(1.0), phi);
    }
    if (released == 2 && !branch_taken_) {
      branch_taken_ = true;
      keep_branch_ = heading_end(v) != 1;  // decision snapshot at f_2's release
    }
    if (released == 2 && !keep_branch_)
      return AdversaryAction::release_at(4.0 - 3.0 * eps_, seg(-1.0), phi);
    return AdversaryAction::done();
  }

  std::string name() const override { return "n3_golden"; }

 private:
  double t_;
  double eps_ = 0;
  bool stopped_ = false;
  bool branch_taken_ = false;
  bool keep_branch_ = true;
};

// n = 4, 1/3 <= T < 1/2: the four-step script with the 2 - sqrt(3) weights;
// eps = 1/2 - T as in the construction.
class N4MediumAdversary final : public Adversary {
 public:
  explicit N4MediumAdversary(const AdversaryParams& p) : t_(p.delay) {
    if (p.n != 4) throw std::domain_error("n4_medium: defined for n = 4");
    if (!(t_ >= 1.0 / 3.0 && t_ < 0.5)) throw std::domain_error("n4_medium: needs 1/3 <= T < 1/2");
    eps_ = 0.5 - t_;
    d2_ = (1.0 + std::sqrt(3.0)) / 2.0;
    d3_ = (1.0 - d2_) / 2.0 + std::sqrt(d2_ * d2_ + 2.0 * d2_ + 5.0) / 2.0;
  }

  void reset(const GameConfig&) override {
    stopped_ = false;
    decided2_ = decided3_ = false;
  }

  AdversaryAction act(const GameView& v) override {
    if (stopped_) return AdversaryAction::done();
    int released = v.released_count();
    if (released == 0) return AdversaryAction::release_at(1.0, seg(-1.0), 1.0);
    if (released == 1) {
      if (heading_end(v) != -1) {
        stopped_ = true;
        return AdversaryAction::done();
      }
      return AdversaryAction::release_at(2.0 - t_ - eps_, seg(1.0), d2_);
    }
    if (released == 2) {
      if (!decided2_) {
        decided2_ = true;
        kept2_ = heading_end(v) != 1;
      }
      if (kept2_) return AdversaryAction::release_at(2.0 - eps_, seg(1.0), d3_);
      return AdversaryAction::release_at(4.0 - 3.0 * t_ - 3.0 * eps_, seg(-1.0), d2_);  // f'_3
    }
    if (released == 3) {
      if (!decided3_) {
        decided3_ = true;
        kept3_ = kept2_ ? (heading_end(v) != 1) : (heading_end(v) != -1);
      }
      if (kept2_) {
        if (kept3_) {
          stopped_ = true;  // keep/keep: no fourth request at this delay
          return AdversaryAction::done();
        }
        return AdversaryAction::release_at(4.0 - 3.0 * eps_, seg(-1.0), d3_);  // f'_4
      }
      if (kept3_)  // stayed on f_2 after f'_3
        return AdversaryAction::release_at(4.0 - 2.0 * t_ - 3.0 * eps_, seg(-1.0), d2_);  // f'''_4
      return AdversaryAction::release_at(6.0 - 4.0 * t_ - 5.0 * eps_, seg(1.0), d2_);  // f''_4
    }
    return AdversaryAction::done();
  }

  std::string name() const override { return "n4_medium"; }

 private:
  double t_;
  double eps_;
  double d2_, d3_;
  bool stopped_ = false;
  bool decided2_ = false, kept2_ = true;
  bool decided3_ = false, kept3_ = true;
};

// Star with 3 branches, n = 5, T0(5) < T < 1/4: one request at tip A, then
// four at tips B and C while the vehicle stays on course for A. Not possible
// on the segment, where two of these would become jointly serveable.
class StarCounterexampleAdversary final : public Adversary {
 public:
  explicit StarCounterexampleAdversary(const AdversaryParams& p) : t_(p.delay) {
    if (p.n != 5) throw std::domain_error("star_counterexample: defined for n = 5");
    if (!(t_ > 0.2 && t_ < 0.25))
      throw std::domain_error("star_counterexample: needs T0(5) = 1/5 < T < 1/4");
    double cap = 1.0 - 4.0 * t_;
    eps_ = p.epsilon > 0 ? p.epsilon : cap / 2.0;
    if (!(eps_ < cap)) throw std::domain_error("star_counterexample: needs eps < 1 - 4T");
  }

  void reset(const GameConfig& cfg) override {
    if (cfg.space.kind() != SpaceKind::Star) throw std::domain_error("star_counterexample: needs a star space");
    stopped_ = false;
  }

  AdversaryAction act(const GameView& v) override {
    if (stopped_) return AdversaryAction::done();
    int released = v.released_count();
    Point a{1.0, 0}, b{1.0, 1}, c{1.0, 2};
    if (released == 0) return AdversaryAction::release_at(1.0, a, 1.0);
    if (released >= 5) return AdversaryAction::done();
    if (!v.space().same_point(v.target, a)) {
      stopped_ = true;  // vehicle gave up on A
      return AdversaryAction::done();
    }
    switch (released) {
      case 1: return AdversaryAction::release_at(2.0 - 3.0 * t_ - eps_, b, 1.0);
      case 2: return AdversaryAction::release_at(2.0 - 2.0 * t_ - eps_, c, 1.0);
      case 3: return AdversaryAction::release_at(2.0 - t_ - eps_, c, 1.0);
      default: return AdversaryAction::release_at(2.0 - eps_, c, 1.0);
    }
  }

  std::string name() const override { return "star_counterexample"; }

 private:
  double t_;
  double eps_ = 0;
  bool stopped_ = false;
};

}  // namespace

std::unique_ptr<Adversary> make_adversary(const std::string& name, const AdversaryParams& params) {
  if (name == "no_delay") return std::make_unique<NoDelayAdversary>(params);
  if (name == "small_delay_perf") return std::make_unique<SmallDelayPerfAdversary>(params);
  if (name == "small_delay_cr") return std::make_unique<SmallDelayCrAdversary>(params);
  if (name == "large_delay") return std::make_unique<LargeDelayAdversary>(params);
  if (name == "n3_golden") return std::make_unique<N3GoldenAdversary>(params);
  if (name == "n4_medium") return std::make_unique<N4MediumAdversary>(params);
  if (name == "star_counterexample") return std::make_unique<StarCounterexampleAdversary>(params);
  throw std::invalid_argument("unknown adversary: " + name);
}

std::vector<std::string> adversary_names() {
  return {"no_delay", "small_delay_perf", "small_delay_cr", "large_delay",
          "n3_golden", "n4_medium", "star_counterexample"};
}

GameConfig adversary_config(const std::string& name, const AdversaryParams& params) {
  GameConfig cfg;
  cfg.n_max = params.n;
  cfg.delay = params.delay;
  cfg.space = name == "star_counterexample" ? MetricSpace::star(3) : MetricSpace::segment();
  cfg.start = cfg.space.origin();
  return cfg;
}

GameTrace duel(const std::string& adversary, Policy& policy, const AdversaryParams& params) {
  auto adv = make_adversary(adversary, params);
  GameConfig cfg = adversary_config(adversary, params);
  return run_game(cfg, policy, *adv);
}

Instance small_delay_perf_instance(int n, double delay) {
  if (n < 3) throw std::domain_error("small_delay_perf_instance: needs n >= 3");
  if (!(delay <= thresholds(n).t0))
    throw std::domain_error("small_delay_perf_instance: gaps valid only for T <= T0");
  Instance inst;
  inst.space = MetricSpace::segment();
  inst.delay = delay;
  inst.requests = small_delay_perf_schedule(n, delay);
  validate_instance(inst);
  return inst;
}

}  // namespace optiwind
