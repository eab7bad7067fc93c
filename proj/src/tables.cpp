#include "optiwind/tables.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "optiwind/adversaries.hpp"
#include "optiwind/game.hpp"
#include "optiwind/numerics.hpp"
#include "optiwind/offline.hpp"
#include "optiwind/policies.hpp"

namespace optiwind {

namespace {

std::string fmt(double v, int prec = 10) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
  return buf;
}

TableCell eq_cell(const std::string& column, double value, const std::string& source,
                  double golden, double tol) {
  TableCell c;
  c.column = column;
  c.value = value;
  c.source = source;
  c.golden = golden;
  c.tol = tol;
  c.pass = std::abs(value - golden) <= tol;
  c.rendered = fmt(value, 6);
  return c;
}

TableCell plain_cell(const std::string& column, double value, const std::string& source) {
  TableCell c;
  c.column = column;
  c.value = value;
  c.source = source;
  c.rendered = fmt(value, 6);
  return c;
}

TableCell bound_cell(const std::string& column, double value, const std::string& source,
                     double bound, const std::string& relation) {
  TableCell c;
  c.column = column;
  c.value = value;
  c.source = source;
  c.golden = bound;
  c.relation = relation;
  c.pass = relation == ">" ? value > bound : value >= bound - 1e-9;
  c.rendered = relation + " " + fmt(bound, 6) + " (witness " + fmt(value, 6) + ")";
  return c;
}

void finish(TableResult& out) {
  std::string s = "table " + out.id + "\n";
  for (const auto& row : out.rows) {
    s += "  " + row.label;
    for (const auto& c : row.cells) {
      s += "  | " + c.column + " = " + c.rendered;
      if (c.golden && c.relation == "=") s += " [want " + fmt(*c.golden, 6) + "]";
      s += c.pass ? "" : "  FAIL";
      s += "  <" + c.source + ">";
      if (!c.pass) out.all_pass = false;
    }
    s += "\n";
  }
  out.rendered = s;
}

double duel_performance(const std::string& adversary, const std::string& policy,
                        const AdversaryParams& params) {
  auto pol = make_policy(policy, PolicyParams{params.n, params.delay, 0.0});
  GameTrace trace = duel(adversary, *pol, params);
  return performance(trace);
}

double duel_ratio(const std::string& adversary, const std::string& policy,
                  const AdversaryParams& params) {
  auto pol = make_policy(policy, PolicyParams{params.n, params.delay, 0.0});
  GameTrace trace = duel(adversary, *pol, params);
  return competitive_ratio(trace, offline_solve(trace.released_instance()).total_weight);
}

// Worst performance / ratio of a policy over the alternating family at T.
std::pair<double, double> family_worst(const std::string& policy, int n, double delay) {
  double worst_perf = 1.0, worst_ratio = 1.0;
  for (int variant = 0; variant < 3; ++variant) {
    Instance inst = alternating_schedule(n, delay, variant);
    auto pol = make_policy(policy, PolicyParams{n, delay, 0.0});
    GameTrace trace = run_game(inst, *pol);
    worst_perf = std::min(worst_perf, performance(trace));
    double off = offline_solve(inst).total_weight;
    if (off > 0) worst_ratio = std::min(worst_ratio, competitive_ratio(trace, off));
  }
  return {worst_perf, worst_ratio};
}

}  // namespace

Instance alternating_schedule(int n, double delay, int variant) {
  if (n < 3) throw std::invalid_argument("alternating_schedule: needs n >= 3");
  double t1c = thresholds(n).t1;
  Instance inst;
  inst.space = MetricSpace::segment();
  inst.delay = delay;
  auto add = [&](double x, double t) {
    Request r;
    r.id = static_cast<int>(inst.requests.size());
    r.loc = Point{x, 0};
    r.release = t;
    r.weight = 1.0;
    inst.requests.push_back(r);
  };
  add(-1.0, 1.0);
  double tau_prev = 2.0, t_prev = 1.0;
  for (int i = 2; i <= n; ++i) {
    double x = (i % 2 == 0) ? 1.0 : -1.0;
    double t;
    if (i < n) {
      double thr = tau_prev - std::pow(2.0, n - 1 - i) * t1c;
      if (variant == 0) t = thr;
      else if (variant == 1) t = thr + 0.4 * delay;
      else t = thr - 0.25 * delay;
    } else {
      t = variant == 1 ? tau_prev - 0.5 * delay : t_prev + delay;
    }
    t = std::max(t, t_prev + delay);
    add(x, t);
    tau_prev = 2.0 * t + 2.0 - tau_prev;  // ETA if the vehicle switches at t
    t_prev = t;
  }
  validate_instance(inst);
  return inst;
}

std::vector<std::string> table_ids() { return {"alpha", "n3", "n4", "summary"}; }

namespace {

TableResult table_alpha() {
  TableResult out;
  out.id = "alpha";
  const double phi = golden_ratio();
  const double golden[4] = {1.0, 0.5, 1.0 / (phi * phi), 1.0 / 3.0};
  for (int n = 1; n <= 8; ++n) {
    TableRow row;
    row.label = "n=" + std::to_string(n);
    double a = alpha_solution(n).alpha;
    if (n <= 4) row.cells.push_back(eq_cell("alpha", a, "alpha(" + std::to_string(n) + ")", golden[n - 1], 1e-9));
    else row.cells.push_back(plain_cell("alpha", a, "alpha(" + std::to_string(n) + ")"));
    out.rows.push_back(row);
  }
  finish(out);
  return out;
}

TableResult table_n3() {
  TableResult out;
  out.id = "n3";
  const double phi = golden_ratio();
  const double inv_phi2 = 1.0 / (phi * phi);

  TableRow r1{"T<1/2", {}};
  r1.cells.push_back(eq_cell("perf", duel_performance("small_delay_perf", "gr0", {3, 0.25, 0}),
                             "duel(small_delay_perf,gr0,T=0.25)", 1.0 / 3.0, 1e-9));
  r1.cells.push_back(eq_cell("cr", duel_ratio("small_delay_cr", "gr0", {3, 0.25, 0}),
                             "duel(small_delay_cr,gr0,T=0.25)", 1.0 / 3.0, 1e-9));
  out.rows.push_back(r1);

  TableRow r2{"[1/2,1)", {}};
  r2.cells.push_back(eq_cell("perf", beta(3), "beta(3)", inv_phi2, 1e-9));
  r2.cells.push_back(eq_cell("cr", duel_ratio("n3_golden", "gr0", {3, 0.6, 0}),
                             "duel(n3_golden,gr0,T=0.6)", inv_phi2, 1e-9));
  out.rows.push_back(r2);

  TableRow r3{"[1,1.5)", {}};
  double a2 = alpha_solution(2).alpha;
  r3.cells.push_back(eq_cell("perf", a2, "alpha(2)", 0.5, 1e-9));
  r3.cells.push_back(eq_cell("cr", a2, "alpha(2)", 0.5, 1e-9));
  out.rows.push_back(r3);

  TableRow r4{"[1.5,inf)", {}};
  double a1 = alpha_solution(1).alpha;
  r4.cells.push_back(eq_cell("perf", a1, "alpha(1)", 1.0, 1e-12));
  r4.cells.push_back(eq_cell("cr", a1, "alpha(1)", 1.0, 1e-12));
  out.rows.push_back(r4);

  finish(out);
  return out;
}

TableResult table_n4() {
  TableResult out;
  out.id = "n4";
  const double phi = golden_ratio();
  const double inv_phi2 = 1.0 / (phi * phi);
  const double v_sqrt3 = 2.0 - std::sqrt(3.0);
  const double v_sqrt2 = 1.0 - std::sqrt(2.0) / 2.0;

  struct RowSpec {
    const char* label;
    const char* perf_regime;
    double perf_gold;
    double perf_tol;
    const char* cr_regime;
    double cr_gold;
    double cr_tol;
  };
  const RowSpec rows[] = {
      {"T<1/6", "T<1/3", 0.25, 1e-8, "T<1/6", 0.25, 1e-8},
      {"[1/6,1/5)", "T<1/3", 0.25, 1e-8, "[1/6,1/5)", 0.2578, 5e-4},
      {"[1/5,1/4)", "T<1/3", 0.25, 1e-8, "[1/5,1/4)", v_sqrt3, 1e-8},
      {"[1/4,1/3)", "T<1/3", 0.25, 1e-8, "[1/4,1/3)", 0.2803, 5e-4},
      {"[1/3,1/2)", "[1/3,1/2)", v_sqrt3, 1e-8, "[1/3,1/2)", v_sqrt2, 1e-8},
      {"[1/2,1)", "[1/2,1)", v_sqrt2, 1e-8, "[1/2,1)", 0.3177, 5e-4},
  };
  for (const auto& s : rows) {
    TableRow row{s.label, {}};
    double pv = tree_minimax(tree_regime(MinimaxMode::Performance, s.perf_regime));
    row.cells.push_back(eq_cell("perf", pv, std::string("minimax(perf,") + s.perf_regime + ")", s.perf_gold, s.perf_tol));
    double cv = tree_minimax(tree_regime(MinimaxMode::Competitive, s.cr_regime));
    row.cells.push_back(eq_cell("cr", cv, std::string("minimax(cr,") + s.cr_regime + ")", s.cr_gold, s.cr_tol));
    out.rows.push_back(row);
  }

  struct AlphaRow {
    const char* label;
    int idx;
    double gold;
  };
  const AlphaRow arows[] = {{"[1,1.5)", 3, inv_phi2}, {"[1.5,5/3)", 2, 0.5}, {"[5/3,inf)", 1, 1.0}};
  for (const auto& s : arows) {
    TableRow row{s.label, {}};
    double v = alpha_solution(s.idx).alpha;
    row.cells.push_back(eq_cell("perf", v, "alpha(" + std::to_string(s.idx) + ")", s.gold, 1e-9));
    row.cells.push_back(eq_cell("cr", v, "alpha(" + std::to_string(s.idx) + ")", s.gold, 1e-9));
    out.rows.push_back(row);
  }
  finish(out);
  return out;
}

TableResult table_summary(int n) {
  TableResult out;
  out.id = "summary";
  if (n < 3) throw std::invalid_argument("summary table: needs n >= 3");
  Thresholds th = thresholds(n);
  double inv_n = 1.0 / n;

  TableRow r1{"T<T1", {}};
  r1.cells.push_back(eq_cell("perf", duel_performance("small_delay_perf", "gr0", {n, th.t1 / 2, 0}),
                             "duel(small_delay_perf,gr0,T=T1/2)", inv_n, 1e-9));
  r1.cells.push_back(eq_cell("cr", duel_ratio("small_delay_cr", "gr0", {n, th.t1 / 2, 0}),
                             "duel(small_delay_cr,gr0,T=T1/2)", inv_n, 1e-9));
  out.rows.push_back(r1);

  TableRow r2{"[T1,T0)", {}};
  double mid = 0.5 * (th.t0 + th.t1);
  r2.cells.push_back(eq_cell("perf", duel_performance("small_delay_perf", "gr0", {n, mid, 0}),
                             "duel(small_delay_perf,gr0,T=(T0+T1)/2)", inv_n, 1e-9));
  auto [al3_perf, al3_ratio] = family_worst("al3", n, th.t1);
  (void)al3_perf;
  r2.cells.push_back(bound_cell("cr", al3_ratio, "worst over alternating family vs al3 at T1", inv_n, ">"));
  out.rows.push_back(r2);

  TableRow r3{"[T0,1/2)", {}};
  double al1_worst = 1.0;
  {
    Instance fam = small_delay_perf_instance(n, th.t0);
    auto pol = make_policy("al1", PolicyParams{n, th.t0, 0.0});
    GameTrace tr = run_game(fam, *pol);
    al1_worst = std::min(al1_worst, performance(tr));
    auto [p, r] = family_worst("al1", n, th.t0);
    (void)r;
    al1_worst = std::min(al1_worst, p);
  }
  r3.cells.push_back(bound_cell("perf", al1_worst, "worst vs al1 at T0", inv_n + th.epsilon, ">="));
  r3.cells.push_back(bound_cell("cr", al1_worst, "perf lower-bounds cr", inv_n + th.epsilon, ">="));
  out.rows.push_back(r3);

  TableRow r4{"[1/2,1)", {}};
  double bn = beta(n);
  r4.cells.push_back(plain_cell("perf", bn, "beta(" + std::to_string(n) + ")"));
  r4.cells.push_back(bound_cell("cr", bn, "beta lower-bounds cr", bn, ">="));
  out.rows.push_back(r4);

  for (int i0 = 1; i0 <= n - 2; ++i0) {
    double lo = 2.0 - 1.0 / i0, hi = 2.0 - 1.0 / (i0 + 1);
    if (hi > 2.0 - 1.0 / (n - 1)) hi = 2.0 - 1.0 / (n - 1);
    if (lo >= hi) break;
    TableRow row{"[" + fmt(lo, 4) + "," + fmt(hi, 4) + ")", {}};
    double v = alpha_solution(n - i0).alpha;
    row.cells.push_back(plain_cell("perf", v, "alpha(" + std::to_string(n - i0) + ")"));
    row.cells.push_back(plain_cell("cr", v, "alpha(" + std::to_string(n - i0) + ")"));
    out.rows.push_back(row);
  }

  TableRow rlast{"T>=2-1/(n-1)", {}};
  rlast.cells.push_back(eq_cell("perf", alpha_solution(1).alpha, "alpha(1)", 1.0, 1e-12));
  rlast.cells.push_back(eq_cell("cr", alpha_solution(1).alpha, "alpha(1)", 1.0, 1e-12));
  out.rows.push_back(rlast);

  finish(out);
  return out;
}

}  // namespace

TableResult compute_table(const std::string& id, int n) {
  if (id == "alpha") return table_alpha();
  if (id == "n3") return table_n3();
  if (id == "n4") return table_n4();
  if (id == "summary") return table_summary(n);
  throw std::invalid_argument("unknown table: " + id);
}

}  // namespace optiwind
