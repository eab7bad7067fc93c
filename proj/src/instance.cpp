#include "optiwind/instance.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace optiwind {

using nlohmann::json;

double Instance::total_weight() const {
  double s = 0;
  for (const auto& r : requests) s += r.weight;
  return s;
}

std::vector<double> prefix_weights(const std::vector<Request>& requests) {
  std::vector<double> s(requests.size() + 1, 0.0);
  for (size_t i = 0; i < requests.size(); ++i) s[i + 1] = s[i] + requests[i].weight;
  return s;
}

void validate_instance(const Instance& inst) {
  const double tol = eq_tolerance();
  double prev = -1e300;
  for (const auto& r : inst.requests) {
    inst.space.validate(r.loc);
    if (!(r.weight > 0)) throw std::invalid_argument("request weight must be positive");
    if (r.release < prev + inst.delay - tol)
      throw std::invalid_argument("release times violate the minimum delay");
    prev = r.release;
  }
  inst.space.validate(inst.start);
}

Instance scale_weights(const Instance& inst, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("scale factor must be positive");
  Instance out = inst;
  for (auto& r : out.requests) r.weight *= factor;
  return out;
}

namespace {

Point point_from_json(const MetricSpace& space, const json& j, const std::string& field) {
  try {
    if (space.kind() == SpaceKind::Star) {
      if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("star point must be [branch, radius]");
      return space.make_point(j[1].get<double>(), j[0].get<int>());
    }
    return space.make_point(j.get<double>());
  } catch (const json::exception&) {
    throw std::invalid_argument("field '" + field + "': malformed point");
  }
}

json point_to_json(const MetricSpace& space, const Point& p) {
  if (space.kind() == SpaceKind::Star) return json::array({p.branch, p.coord});
  return json(p.coord);
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("instance file is not valid JSON: ") + e.what());
  }
  Instance inst;
  if (!j.contains("space")) throw std::invalid_argument("field 'space': missing");
  const json& sp = j["space"];
  std::string kind = sp.value("kind", "");
  if (kind == "segment") inst.space = MetricSpace::segment();
  else if (kind == "star") inst.space = MetricSpace::star(sp.value("branches", 3));
  else if (kind == "circle") inst.space = MetricSpace::circle();
  else throw std::invalid_argument("field 'space.kind': expected segment|star|circle");

  if (!j.contains("delay")) throw std::invalid_argument("field 'delay': missing");
  if (!j["delay"].is_number()) throw std::invalid_argument("field 'delay': expected number");
  inst.delay = j["delay"].get<double>();
  if (inst.delay < 0) throw std::invalid_argument("field 'delay': must be >= 0");

  inst.start = j.contains("start") ? point_from_json(inst.space, j["start"], "start") : inst.space.origin();

  if (!j.contains("requests") || !j["requests"].is_array())
    throw std::invalid_argument("field 'requests': missing or not an array");
  int id = 0;
  for (const auto& rj : j["requests"]) {
    Request r;
    r.id = id++;
    std::string at = "requests[" + std::to_string(r.id) + "]";
    if (!rj.contains("loc")) throw std::invalid_argument("field '" + at + ".loc': missing");
    r.loc = point_from_json(inst.space, rj["loc"], at + ".loc");
    if (!rj.contains("release") || !rj["release"].is_number())
      throw std::invalid_argument("field '" + at + ".release': missing or not a number");
    r.release = rj["release"].get<double>();
    if (!rj.contains("weight") || !rj["weight"].is_number())
      throw std::invalid_argument("field '" + at + ".weight': missing or not a number");
    r.weight = rj["weight"].get<double>();
    inst.requests.push_back(r);
  }
  validate_instance(inst);
  return inst;
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open instance file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_instance(ss.str());
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["space"]["kind"] = inst.space.name();
  if (inst.space.kind() == SpaceKind::Star) j["space"]["branches"] = inst.space.branches();
  j["delay"] = inst.delay;
  j["start"] = point_to_json(inst.space, inst.start);
  j["requests"] = json::array();
  for (const auto& r : inst.requests) {
    json rj;
    rj["loc"] = point_to_json(inst.space, r.loc);
    rj["release"] = r.release;
    rj["weight"] = r.weight;
    j["requests"].push_back(rj);
  }
  return j.dump(2);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write instance file: " + path);
  out << instance_to_json(inst) << "\n";
}

}  // namespace optiwind
