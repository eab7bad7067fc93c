#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "optiwind/instance.hpp"

namespace optiwind {

struct GameConfig {
  int n_max = 1;
  double delay = 0.0;
  MetricSpace space = MetricSpace::segment();
  Point start;
};

enum class EventKind { RequestReleased, TargetReached, WindowClosed, RequestServed, GameEnd };

struct TraceRecord {
  double time = 0.0;
  EventKind kind = EventKind::GameEnd;
  int request_id = -1;
  Point pos;
  Point target;
};

struct ServeRecord {
  int request_id = -1;
  double time = 0.0;
};

// A policy or adversary bug, as opposed to a game outcome.
struct ProtocolError : std::logic_error {
  explicit ProtocolError(const std::string& what) : std::logic_error(what) {}
};

struct GameTrace {
  GameConfig config;
  std::vector<Request> released;
  std::vector<ServeRecord> served;
  std::vector<TraceRecord> records;
  double end_time = 0.0;

  double released_weight() const;
  double served_weight() const;
  bool is_served(int request_id) const;
  Instance released_instance() const;
  // Line-oriented trace format; the summary line carries the competitive
  // ratio when one has been computed.
  std::vector<std::string> export_lines(std::optional<double> competitive = std::nullopt) const;
};

// Snapshot handed to policies and adversaries at every event.
struct GameView {
  const GameConfig* config = nullptr;
  double time = 0.0;
  Point position;
  Point target;
  const std::vector<Request>* released = nullptr;
  const std::vector<char>* served_flags = nullptr;
  std::vector<ServeRecord> const* served = nullptr;
  double last_release_time = -1e300;

  const MetricSpace& space() const { return config->space; }
  int released_count() const { return static_cast<int>(released->size()); }
  bool is_served(int id) const { return (*served_flags)[id] != 0; }
  bool is_open(const Request& r) const {
    return !is_served(r.id) && r.deadline() >= time - eq_tolerance();
  }
  std::vector<Request> open_requests() const;
};

class Policy {
 public:
  virtual ~Policy() = default;
  virtual void reset(const GameConfig&) {}
  // Desired heading target; returning the current position means waiting.
  virtual Point decide(const GameView& view) = 0;
  virtual std::string name() const = 0;
};

struct ReleasePlan {
  double time = 0.0;
  Point loc;
  double weight = 1.0;
};

struct AdversaryAction {
  enum class Kind { Release, Wait, Done };
  Kind kind = Kind::Done;
  ReleasePlan release;

  static AdversaryAction done() { return {Kind::Done, {}}; }
  static AdversaryAction wait() { return {Kind::Wait, {}}; }
  static AdversaryAction release_at(double t, Point loc, double weight) {
    return {Kind::Release, {t, loc, weight}};
  }
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void reset(const GameConfig&) {}
  // Re-queried at every event. A Release commits the next request provided no
  // earlier event changes the adversary's mind; Wait defers; Done is final.
  virtual AdversaryAction act(const GameView& view) = 0;
  virtual std::string name() const = 0;
};

GameTrace run_game(const GameConfig& config, Policy& policy, Adversary& adversary);
GameTrace run_game(const Instance& fixed, Policy& policy);

double performance(const GameTrace& trace);  // served / released, 1 on empty
// served / offline_value; throws std::domain_error when offline_value <= 0
// with nonzero releases.
double competitive_ratio(const GameTrace& trace, double offline_value);

// True iff some ordered pair of open requests can be served in sequence,
// departing now at unit speed (arriving before a release and waiting is fine).
bool can_serve_two(const MetricSpace& space, const Point& pos, double time,
                   const std::vector<Request>& open);
struct ServePair {
  int first_id = -1;
  int second_id = -1;
  double weight = 0.0;
};
std::optional<ServePair> best_serve_pair(const MetricSpace& space, const Point& pos, double time,
                                         const std::vector<Request>& open);

// Trace checks used by tests: delay gaps, unit-speed bound, serve soundness.
void validate_trace(const GameTrace& trace);
// Replays the trace and reports whether a two-serve opportunity existed at
// any recorded event.
bool trace_had_two_serve_opportunity(const GameTrace& trace);

std::string event_kind_name(EventKind k);

}  // namespace optiwind
