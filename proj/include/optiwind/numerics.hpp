#pragma once

#include <string>
#include <vector>

namespace optiwind {

// alpha_n = inf over positive weight vectors of
//   max{ d_1/S_2, ..., d_{n-1}/S_n, d_n/S_n },
// together with the unique realizing vector (normalized d_1 = 1).
struct AlphaSolution {
  int n = 0;
  double alpha = 0.0;
  std::vector<double> deltas;
  double residual = 0.0;  // |d_n - d_{n-1}| at the root
};

// Solves d_1 = 1, d_2 = 1/a - 1, d_{i+1} = (d_i - d_{i-1})/a with the root
// condition d_n = d_{n-1}, by bisection over a in (1/4, alpha_{n-1}].
AlphaSolution alpha_solution(int n);

// Closed form d_i = lam * r_+^{i-1} + mu * r_-^{i-1} with
// r_{+-} = (1 +- sqrt(1-4a)) / (2a), evaluated in complex arithmetic.
// Requires alpha > 1/4.
std::vector<double> alpha_closed_form(int n, double alpha);

// Optimal weighted performance lambda^{n, delta0} for delays in [1/2, 1):
// lambda(1,d0) = 1/(1+d0), lambda(2,d0) = 1/(2+d0), and for n >= 3 the
// inf over d2 of max{ 1/(d0+1+d2), min{ lambda(n-2, (d0+1+d2)/d2),
// lambda(n-1, (d0+1)/d2) } }. Closed forms serve as base cases for n <= 4.
double weighted_lambda(int n, double delta0);
// Same recursion with closed-form bases disabled (n <= 2 only); the oracle
// that validates the n = 3, 4 closed forms.
double weighted_lambda_raw(int n, double delta0);
double lambda3_closed(double delta0);  // 2 / (3 + d0 + sqrt(d0^2 + 2 d0 + 5))
double lambda4_closed(double delta0);  // 2 / (4 + d0 + sqrt(d0^2 + 8))

double beta(int n);  // = weighted_lambda(n, 0); practical cap n <= 8

// lambda(n-2, (d0+1+d2*)/d2*) - lambda(n-1, (d0+1)/d2*) at the optimizer d2*
// of the full recursion; <= 0 supports dropping the (n-1) term.
double conjecture1_gap(int n, double delta0);
// beta computed with the two-term (simplified) recursion.
double beta_simplified(int n);

// One delay regime of the 4-request decision-tree game. The vehicle's
// keep/switch choices give four leaves; each leaf's denominator counts
// exactly the requests released along its branch. The fourth request on each
// branch mirrors the weight the vehicle would otherwise serve
// (d4 = d1, d'4 = d3, d''4 = d'3, d'''4 = d2); a regime may withhold some of
// them, and for delays >= 1/2 the same-end third request is impossible, which
// removes the upper subtree entirely.
struct TreeRegime {
  std::string id;
  bool competitive = false;
  double t_lo = 0.0, t_hi = 0.0;  // delay validity interval
  bool has_f3 = true;             // upper subtree present (requires T < 1/2)
  bool release_f4 = true;         // weight d1, on the keep/keep branch
  bool release_fpp4 = true;       // f''_4, weight d'3
  bool release_fppp4 = true;      // f'''_4, weight d2
};

enum class MinimaxMode { Performance, Competitive };
std::vector<TreeRegime> tree_regimes(MinimaxMode mode);
const TreeRegime& tree_regime(MinimaxMode mode, const std::string& id);

// Nested equalization: every inner max pits a decreasing against an
// increasing ratio, so each level is a bisection on their crossing.
double tree_minimax(const TreeRegime& regime);
// Grid oracle: log-spaced grids per axis with local refinement.
double tree_minimax_grid(const TreeRegime& regime, int points_per_axis = 200);

struct Thresholds {
  double t0 = 0.0;       // 1 / (2^{n-3} + 1)
  double t1 = 0.0;       // 1 / (2^{n-1} - 2)
  double epsilon = 0.0;  // 1 / (n (n-1) (n+3))
};
Thresholds thresholds(int n);       // n >= 3
int i0_of_delay(double t);          // floor(1 / (2 - T)), T < 2
double golden_ratio();

}  // namespace optiwind
