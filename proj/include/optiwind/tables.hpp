#pragma once

#include <optional>
#include <string>
#include <vector>

#include "optiwind/instance.hpp"

namespace optiwind {

// One computed table cell. `relation` is "=" for exact golden comparisons,
// ">=" / ">" for one-sided bound rows (witnessed by a policy duel).
struct TableCell {
  std::string column;
  double value = 0.0;
  std::string source;  // which numerics/simulation call produced it
  std::optional<double> golden;
  double tol = 0.0;
  std::string relation = "=";
  bool pass = true;
  std::string rendered;
};

struct TableRow {
  std::string label;  // delay interval
  std::vector<TableCell> cells;
};

struct TableResult {
  std::string id;
  std::vector<TableRow> rows;
  bool all_pass = true;
  std::string rendered;
};

// Table ids: "alpha" (first values of the alpha sequence), "n3", "n4"
// (per-delay performance and competitive ratio for 3 and 4 requests),
// "summary" (general-n table; bound rows are checked one-sided through
// policy duels at the threshold delays).
TableResult compute_table(const std::string& id, int n = 5);
std::vector<std::string> table_ids();

// Deterministic alternating-endpoint schedules with gaps >= delay, used for
// the one-sided bound rows and by the tightness tests: index 0 releases at
// the switch thresholds, index 1 just past them, index 2 midway.
Instance alternating_schedule(int n, double delay, int variant);

}  // namespace optiwind
