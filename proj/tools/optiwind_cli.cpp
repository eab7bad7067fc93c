// optiwind: play the online orienteering game with time windows and release
// delay on segment / star / circle spaces, solve fixed instances offline, and
// evaluate the optimal-performance numerics.
//
// Exit codes: 0 success, 1 tolerance/criteria failure, 2 usage error.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "optiwind/adversaries.hpp"
#include "optiwind/game.hpp"
#include "optiwind/numerics.hpp"
#include "optiwind/offline.hpp"
#include "optiwind/policies.hpp"
#include "optiwind/tables.hpp"

using namespace optiwind;

namespace {

bool g_json = false;
nlohmann::json g_out;

void print_kv(const std::string& key, double value) {
  if (g_json) g_out[key] = value;
  else std::printf("%s=%.12g\n", key.c_str(), value);
}

void flush_json() {
  if (g_json && !g_out.empty()) std::printf("%s\n", g_out.dump(2).c_str());
}

void print_trace_report(const GameTrace& trace, bool with_offline, const std::string& trace_out) {
  for (const auto& sv : trace.served)
    std::printf("served id=%d t=%.12g weight=%.12g\n", sv.request_id, sv.time,
                trace.released[sv.request_id].weight);
  print_kv("released", static_cast<double>(trace.released.size()));
  print_kv("served_weight", trace.served_weight());
  print_kv("released_weight", trace.released_weight());
  print_kv("performance", performance(trace));
  std::optional<double> ratio;
  if (with_offline) {
    OfflinePlan plan = offline_solve(trace.released_instance());
    ratio = competitive_ratio(trace, plan.total_weight);
    print_kv("offline_value", plan.total_weight);
    print_kv("competitive_ratio", *ratio);
  }
  if (!trace_out.empty()) {
    std::ofstream out(trace_out);
    if (!out) throw std::invalid_argument("cannot write trace file: " + trace_out);
    for (const auto& line : trace.export_lines(ratio)) out << line << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* env_tol = std::getenv("OPTIWIND_TOL")) {
    try {
      set_eq_tolerance(std::stod(env_tol));
    } catch (const std::exception&) {
      std::fprintf(stderr, "error: OPTIWIND_TOL is not a valid tolerance\n");
      return 2;
    }
  }

  CLI::App app{"online orienteering with time windows and release delay"};
  app.require_subcommand(1);

  double tol_flag = 0;
  app.add_option("--tol", tol_flag, "override the comparison tolerance");
  app.add_flag("--json", g_json, "emit key/value results as JSON");

  // simulate
  auto* sim = app.add_subcommand("simulate", "run a policy on a fixed instance file");
  std::string sim_file, sim_policy = "gr0", sim_trace_out;
  bool sim_offline = false;
  int sim_n = 0;
  double sim_eps = 0;
  sim->add_option("--instance", sim_file, "instance JSON file")->required();
  sim->add_option("--policy", sim_policy, "policy name");
  sim->add_flag("--offline", sim_offline, "also compute the offline optimum and ratio");
  sim->add_option("--trace", sim_trace_out, "write the trace records to a file");
  sim->add_option("--n", sim_n, "policy parameter n (default: instance size)");
  sim->add_option("--eps", sim_eps, "policy epsilon");

  // duel
  auto* du = app.add_subcommand("duel", "run a policy against an adversary strategy");
  std::string du_adv, du_policy = "gr0", du_save, du_trace_out;
  int du_n = 4;
  double du_t = 0.0, du_eps = 0.0;
  bool du_offline = false;
  du->add_option("--adversary", du_adv, "adversary name")->required();
  du->add_option("--policy", du_policy, "policy name");
  du->add_option("--n", du_n, "number of requests");
  du->add_option("--T", du_t, "delay T");
  du->add_option("--eps", du_eps, "construction epsilon");
  du->add_flag("--offline", du_offline, "also compute the offline optimum and ratio");
  du->add_option("--save-instance", du_save, "export the realized instance to a file");
  du->add_option("--trace", du_trace_out, "write the trace records to a file");

  // offline
  auto* off = app.add_subcommand("offline", "exact offline optimum of an instance file");
  std::string off_file;
  off->add_option("--instance", off_file, "instance JSON file")->required();

  // alpha
  auto* al = app.add_subcommand("alpha", "the large-delay value alpha_n and its weight vector");
  int al_n = 4;
  bool al_vec = false;
  al->add_option("--n", al_n, "index n");
  al->add_flag("--vector", al_vec, "also print the realizing weights");

  // beta
  auto* be = app.add_subcommand("beta", "optimal performance for delays in [1/2,1)");
  int be_n = 3;
  double be_d0 = 0.0;
  be->add_option("--n", be_n, "number of requests (<= 8)");
  be->add_option("--delta0", be_d0, "weight already missed");

  // minimax
  auto* mm = app.add_subcommand("minimax", "4-request decision-tree value per delay regime");
  std::string mm_regime, mm_mode = "perf";
  bool mm_grid = false;
  mm->add_option("--regime", mm_regime, "regime id (see --mode list)");
  mm->add_option("--mode", mm_mode, "perf or cr")->check(CLI::IsMember({"perf", "cr"}));
  mm->add_flag("--grid", mm_grid, "also run the grid-search oracle");

  // thresholds
  auto* th = app.add_subcommand("thresholds", "T0, T1 and epsilon for a given n");
  int th_n = 4;
  double th_t = -1.0;
  th->add_option("--n", th_n, "number of requests");
  th->add_option("--T", th_t, "also print i0 = floor(1/(2-T))");

  // tables
  auto* tb = app.add_subcommand("tables", "compute a results table and check golden values");
  std::string tb_id = "summary";
  int tb_n = 5;
  std::string tb_out;
  tb->add_option("--table", tb_id, "alpha | n3 | n4 | summary");
  tb->add_option("--n", tb_n, "n for the summary table");
  tb->add_option("--out", tb_out, "also write the rendering to a file");

  try {
    app.parse(argc, argv);
    if (tol_flag > 0) set_eq_tolerance(tol_flag);

    if (*sim) {
      Instance inst = load_instance(sim_file);
      PolicyParams pp{sim_n > 0 ? sim_n : static_cast<int>(inst.requests.size()), inst.delay, sim_eps};
      auto policy = make_policy(sim_policy, pp);
      GameTrace trace = run_game(inst, *policy);
      print_trace_report(trace, sim_offline, sim_trace_out);
      return 0;
    }
    if (*du) {
      AdversaryParams ap{du_n, du_t, du_eps};
      auto policy = make_policy(du_policy, PolicyParams{du_n, du_t, 0.0});
      GameTrace trace = duel(du_adv, *policy, ap);
      print_trace_report(trace, du_offline, du_trace_out);
      if (!du_save.empty()) save_instance(trace.released_instance(), du_save);
      return 0;
    }
    if (*off) {
      Instance inst = load_instance(off_file);
      OfflinePlan plan = offline_solve(inst);
      for (const auto& stop : plan.stops)
        std::printf("serve id=%d t=%.12g\n", stop.request_id, stop.serve_time);
      print_kv("offline_value", plan.total_weight);
      return 0;
    }
    if (*al) {
      AlphaSolution sol = alpha_solution(al_n);
      print_kv("alpha", sol.alpha);
      print_kv("residual", sol.residual);
      if (al_vec)
        for (int i = 0; i < al_n; ++i) print_kv("delta_" + std::to_string(i + 1), sol.deltas[i]);
      flush_json();
      return 0;
    }
    if (*be) {
      print_kv(be_d0 == 0.0 ? "beta" : "lambda", weighted_lambda(be_n, be_d0));
      flush_json();
      return 0;
    }
    if (*mm) {
      MinimaxMode mode = mm_mode == "perf" ? MinimaxMode::Performance : MinimaxMode::Competitive;
      if (mm_regime.empty()) {
        for (const auto& reg : tree_regimes(mode)) {
          double v = tree_minimax(reg);
          std::printf("regime=%s value=%.12g\n", reg.id.c_str(), v);
        }
        return 0;
      }
      const TreeRegime& reg = tree_regime(mode, mm_regime);
      double v = tree_minimax(reg);
      print_kv("value", v);
      if (mm_grid) {
        double g = tree_minimax_grid(reg);
        print_kv("grid_value", g);
        if (std::abs(g - v) > 5e-4) {
          std::fprintf(stderr, "error: grid oracle disagrees beyond 5e-4\n");
          return 1;
        }
      }
      flush_json();
      return 0;
    }
    if (*th) {
      Thresholds t = thresholds(th_n);
      print_kv("T0", t.t0);
      print_kv("T1", t.t1);
      print_kv("epsilon", t.epsilon);
      if (th_t >= 0) print_kv("i0", i0_of_delay(th_t));
      flush_json();
      return 0;
    }
    if (*tb) {
      TableResult res = compute_table(tb_id, tb_n);
      std::fputs(res.rendered.c_str(), stdout);
      if (!tb_out.empty()) {
        std::ofstream out(tb_out);
        out << res.rendered;
      }
      if (!res.all_pass) {
        for (const auto& row : res.rows)
          for (const auto& cell : row.cells)
            if (!cell.pass)
              std::fprintf(stderr, "cell outside tolerance: %s / %s = %.10g (want %s %.10g)\n",
                           row.label.c_str(), cell.column.c_str(), cell.value,
                           cell.relation.c_str(), cell.golden.value_or(0.0));
        return 1;
      }
      return 0;
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? 2 : 0;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}
