#include "optiwind/game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace optiwind {

namespace {
constexpr double kInf = 1e300;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}
}  // namespace

std::string event_kind_name(EventKind k) {
  switch (k) {
    case EventKind::RequestReleased: return "released";
    case EventKind::TargetReached: return "target_reached";
    case EventKind::WindowClosed: return "window_closed";
    case EventKind::RequestServed: return "served";
    case EventKind::GameEnd: return "game_end";
  }
  return "?";
}

double GameTrace::released_weight() const {
  double s = 0;
  for (const auto& r : released) s += r.weight;
  return s;
}

double GameTrace::served_weight() const {
  double s = 0;
  for (const auto& sv : served) s += released[sv.request_id].weight;
  return s;
}

bool GameTrace::is_served(int request_id) const {
  for (const auto& sv : served)
    if (sv.request_id == request_id) return true;
  return false;
}

Instance GameTrace::released_instance() const {
  Instance inst;
  inst.space = config.space;
  inst.delay = config.delay;
  inst.start = config.start;
  inst.requests = released;
  return inst;
}

std::vector<std::string> GameTrace::export_lines(std::optional<double> competitive) const {
  std::vector<std::string> lines;
  for (const auto& rec : records) {
    std::string line = "t=" + fmt(rec.time) + " event=" + event_kind_name(rec.kind);
    if (rec.request_id >= 0) line += " request=" + std::to_string(rec.request_id);
    line += " pos=" + config.space.format(rec.pos) + " target=" + config.space.format(rec.target);
    lines.push_back(line);
  }
  std::string ids;
  for (const auto& sv : served) ids += (ids.empty() ? "" : ",") + std::to_string(sv.request_id);
  std::string summary = "summary served=[" + ids + "] performance=" + fmt(performance(*this));
  if (competitive) summary += " competitive_ratio=" + fmt(*competitive);
  lines.push_back(summary);
  return lines;
}

std::vector<Request> GameView::open_requests() const {
  std::vector<Request> out;
  for (const auto& r : *released)
    if (is_open(r)) out.push_back(r);
  return out;
}

double performance(const GameTrace& trace) {
  double total = trace.released_weight();
  if (total <= 0) return 1.0;
  return trace.served_weight() / total;
}

double competitive_ratio(const GameTrace& trace, double offline_value) {
  if (offline_value <= 0) {
    if (trace.released.empty()) return 1.0;
    throw std::domain_error("degenerate instance: offline optimum is zero with released requests");
  }
  double ratio = trace.served_weight() / offline_value;
  if (ratio > 1.0 + 1e-6) throw std::logic_error("served weight exceeds offline optimum");
  return ratio;
}

bool can_serve_two(const MetricSpace& space, const Point& pos, double time,
                   const std::vector<Request>& open) {
  return best_serve_pair(space, pos, time, open).has_value();
}

std::optional<ServePair> best_serve_pair(const MetricSpace& space, const Point& pos, double time,
                                         const std::vector<Request>& open) {
  const double tol = eq_tolerance();
  std::optional<ServePair> best;
  for (const auto& a : open) {
    double s_a = std::max(time + space.distance(pos, a.loc), a.release);
    if (s_a > a.deadline() + tol) continue;
    for (const auto& b : open) {
      if (a.id == b.id) continue;
      double s_b = std::max(s_a + space.distance(a.loc, b.loc), b.release);
      if (s_b > b.deadline() + tol) continue;
      double w = a.weight + b.weight;
      if (!best || w > best->weight + tol) best = ServePair{a.id, b.id, w};
    }
  }
  return best;
}

namespace {

// Single game run. Sequential and deterministic; all decisions happen at
// event instants, between which the heading is frozen.
class Engine {
 public:
  Engine(const GameConfig& config, Policy& policy, Adversary& adversary)
      : config_(config), policy_(policy), adversary_(adversary) {
    config_.space.validate(config_.start);
    if (config_.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  }

  GameTrace run() {
    policy_.reset(config_);
    adversary_.reset(config_);
    pos_ = config_.start;
    target_ = pos_;
    time_ = 0.0;

    query_adversary();  // initial plan (typically the first release)

    const int iteration_cap = 256 * config_.n_max + 1024;
    int iterations = 0;
    while (true) {
      if (++iterations > iteration_cap) throw ProtocolError("game did not terminate (event loop cap)");
      double next = next_event_time();
      if (next >= kInf) {
        if (open_count() > 0) throw ProtocolError("open requests but no pending event");
        break;  // nothing can happen any more
      }
      step_to(next);
      if (finished()) break;
    }
    record(EventKind::GameEnd, -1);
    flush_records();
    trace_.config = config_;
    trace_.end_time = time_;
    return std::move(trace_);
  }

 private:
  const double tol_ = eq_tolerance();

  int open_count() const {
    int c = 0;
    for (size_t i = 0; i < requests_.size(); ++i)
      if (!served_flags_[i] && !expired_flags_[i]) ++c;
    return c;
  }

  bool finished() const {
    if (open_count() > 0) return false;
    bool cap = static_cast<int>(requests_.size()) >= config_.n_max;
    return cap || adversary_done_;
  }

  double next_event_time() const {
    double next = kInf;
    if (plan_ && plan_->time < next) next = plan_->time;
    for (size_t i = 0; i < requests_.size(); ++i) {
      if (served_flags_[i] || expired_flags_[i]) continue;
      double dl = requests_[i].deadline();
      if (dl < next) next = dl;  // window close
      double s = serve_opportunity(requests_[i]);
      if (s >= 0 && s < next) next = s;
    }
    double d = config_.space.distance(pos_, target_);
    if (d > tol_) next = std::min(next, time_ + d);
    return std::max(next, time_);
  }

  // Earliest time >= now at which the current motion serves r, or -1.
  double serve_opportunity(const Request& r) const {
    const auto& sp = config_.space;
    double d = sp.distance(pos_, target_);
    if (d <= tol_) {
      // Stationary: can only serve if standing on the location.
      if (!sp.same_point(pos_, r.loc)) return -1;
      double s = std::max(time_, r.release);
      return s <= r.deadline() + tol_ ? s : -1;
    }
    double off = sp.crossing_offset(pos_, target_, r.loc);
    if (off < 0) return -1;
    double t_pass = time_ + off;
    if (t_pass < r.release - tol_) return -1;  // passes before the window opens
    return t_pass <= r.deadline() + tol_ ? t_pass : -1;
  }

  void step_to(double t) {
    const auto& sp = config_.space;
    bool was_moving = sp.distance(pos_, target_) > tol_;
    pos_ = sp.move_toward(pos_, target_, t - time_);
    time_ = t;
    bool arrived = was_moving && sp.distance(pos_, target_) <= tol_;

    serve_sweep();

    for (size_t i = 0; i < requests_.size(); ++i) {
      if (!served_flags_[i] && !expired_flags_[i] && requests_[i].deadline() <= time_ + tol_) {
        expired_flags_[i] = 1;
        record(EventKind::WindowClosed, requests_[i].id);
      }
    }

    if (plan_ && plan_->time <= time_ + tol_) {
      ReleasePlan p = *plan_;
      plan_.reset();
      add_release(p);
    }

    serve_sweep();  // a release at the vehicle's feet is served immediately

    if (arrived) record(EventKind::TargetReached, -1);

    Point want;
    try {
      want = policy_.decide(view());
      config_.space.validate(want);
    } catch (const std::invalid_argument& e) {
      throw ProtocolError(std::string("policy emitted an invalid target: ") + e.what());
    }
    target_ = want;
    flush_records();  // event records carry the post-decision heading

    query_adversary();
  }

  void serve_sweep() {
    const auto& sp = config_.space;
    for (size_t i = 0; i < requests_.size(); ++i) {
      if (served_flags_[i] || expired_flags_[i]) continue;
      const Request& r = requests_[i];
      if (sp.same_point(pos_, r.loc) && time_ >= r.release - tol_ && time_ <= r.deadline() + tol_) {
        served_flags_[i] = 1;
        trace_.served.push_back({r.id, time_});
        record(EventKind::RequestServed, r.id);
      }
    }
  }

  void add_release(const ReleasePlan& p) {
    if (static_cast<int>(requests_.size()) >= config_.n_max)
      throw ProtocolError("adversary exceeded n_max releases");
    if (p.time < last_release_ + config_.delay - tol_)
      throw ProtocolError("adversary violated the minimum delay");
    if (p.time < time_ - tol_) throw ProtocolError("adversary released in the past");
    if (!(p.weight > 0)) throw ProtocolError("adversary released non-positive weight");
    config_.space.validate(p.loc);
    Request r;
    r.id = static_cast<int>(requests_.size());
    r.loc = p.loc;
    r.release = p.time;
    r.weight = p.weight;
    requests_.push_back(r);
    served_flags_.push_back(0);
    expired_flags_.push_back(0);
    trace_.released.push_back(r);
    last_release_ = p.time;
    record(EventKind::RequestReleased, r.id);
  }

  void query_adversary() {
    if (adversary_done_) return;
    AdversaryAction act = adversary_.act(view());
    switch (act.kind) {
      case AdversaryAction::Kind::Done:
        adversary_done_ = true;
        plan_.reset();
        break;
      case AdversaryAction::Kind::Wait:
        plan_.reset();
        break;
      case AdversaryAction::Kind::Release:
        plan_ = act.release;
        if (plan_->time < time_ - tol_) throw ProtocolError("adversary planned a release in the past");
        break;
    }
  }

  GameView view() const {
    GameView v;
    v.config = &config_;
    v.time = time_;
    v.position = pos_;
    v.target = target_;
    v.released = &requests_;
    v.served_flags = &served_flags_;
    v.served = &trace_.served;
    v.last_release_time = last_release_;
    return v;
  }

  void record(EventKind kind, int id) {
    pending_records_.push_back({time_, kind, id, pos_, target_});
  }

  void flush_records() {
    for (auto& rec : pending_records_) {
      rec.target = target_;
      trace_.records.push_back(rec);
    }
    pending_records_.clear();
  }

  GameConfig config_;
  Policy& policy_;
  Adversary& adversary_;

  double time_ = 0.0;
  Point pos_, target_;
  std::vector<TraceRecord> pending_records_;
  std::vector<Request> requests_;
  std::vector<char> served_flags_;
  std::vector<char> expired_flags_;
  std::optional<ReleasePlan> plan_;
  bool adversary_done_ = false;
  double last_release_ = -1e300;
  GameTrace trace_;
};

class FixedInstanceAdversary final : public Adversary {
 public:
  explicit FixedInstanceAdversary(std::vector<Request> requests) : requests_(std::move(requests)) {}
  void reset(const GameConfig&) override { next_ = 0; }
  AdversaryAction act(const GameView& view) override {
    // Skip entries already taken over by the engine.
    while (next_ < requests_.size() && next_ < static_cast<size_t>(view.released_count())) ++next_;
    if (next_ >= requests_.size()) return AdversaryAction::done();
    const Request& r = requests_[next_];
    return AdversaryAction::release_at(r.release, r.loc, r.weight);
  }
  std::string name() const override { return "fixed"; }

 private:
  std::vector<Request> requests_;
  size_t next_ = 0;
};

}  // namespace

GameTrace run_game(const GameConfig& config, Policy& policy, Adversary& adversary) {
  Engine engine(config, policy, adversary);
  return engine.run();
}

GameTrace run_game(const Instance& fixed, Policy& policy) {
  validate_instance(fixed);
  GameConfig config;
  config.n_max = std::max<int>(1, static_cast<int>(fixed.requests.size()));
  config.delay = fixed.delay;
  config.space = fixed.space;
  config.start = fixed.start;
  FixedInstanceAdversary adv(fixed.requests);
  return run_game(config, policy, adv);
}

void validate_trace(const GameTrace& trace) {
  const double tol = eq_tolerance();
  const auto& sp = trace.config.space;

  if (static_cast<int>(trace.released.size()) > trace.config.n_max)
    throw std::logic_error("trace: more releases than n_max");
  for (size_t i = 1; i < trace.released.size(); ++i)
    if (trace.released[i].release < trace.released[i - 1].release + trace.config.delay - tol)
      throw std::logic_error("trace: delay violated between releases");

  double prev_t = 0.0;
  for (size_t i = 1; i < trace.records.size(); ++i) {
    if (trace.records[i].time < prev_t - tol) throw std::logic_error("trace: time went backwards");
    double moved = sp.distance(trace.records[i - 1].pos, trace.records[i].pos);
    if (moved > (trace.records[i].time - prev_t) + 1e-6)
      throw std::logic_error("trace: unit speed bound violated");
    prev_t = trace.records[i].time;
  }

  for (const auto& sv : trace.served) {
    const Request& r = trace.released[sv.request_id];
    if (sv.time < r.release - tol || sv.time > r.deadline() + tol)
      throw std::logic_error("trace: serve outside the time window");
    // Re-derive the position at serve time from the records.
    bool found = false;
    for (const auto& rec : trace.records)
      if (std::abs(rec.time - sv.time) <= tol && sp.same_point(rec.pos, r.loc)) found = true;
    if (!found) throw std::logic_error("trace: serve position does not match the request location");
  }
}

bool trace_had_two_serve_opportunity(const GameTrace& trace) {
  for (const auto& rec : trace.records) {
    std::vector<Request> open;
    for (const auto& r : trace.released) {
      if (r.release > rec.time + eq_tolerance()) continue;
      if (r.deadline() < rec.time - eq_tolerance()) continue;
      bool served_by_now = false;
      for (const auto& sv : trace.served)
        if (sv.request_id == r.id && sv.time <= rec.time + eq_tolerance()) served_by_now = true;
      if (!served_by_now) open.push_back(r);
    }
    if (can_serve_two(trace.config.space, rec.pos, rec.time, open)) return true;
  }
  return false;
}

}  // namespace optiwind
