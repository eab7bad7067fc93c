#include "optiwind/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

namespace optiwind {

namespace {

// Recurrence vector for a given alpha, in extended precision to control the
// cancellation in d_n - d_{n-1} (the deltas grow like |r_+|^i = a^{-i/2}).
std::vector<long double> delta_recurrence(int n, long double a) {
  std::vector<long double> d(n + 1, 0.0L);
  d[1] = 1.0L;
  if (n >= 2) d[2] = 1.0L / a - 1.0L;
  for (int i = 2; i < n; ++i) d[i + 1] = (d[i] - d[i - 1]) / a;
  return d;
}

long double alpha_gap(int n, long double a) {
  auto d = delta_recurrence(n, a);
  return d[n] - d[n - 1];
}

// Bisection for the crossing of a decreasing and an increasing term:
// f = decreasing - increasing, normally f(lo) > 0 > f(hi). When the crossing
// sits at or beyond an endpoint the endpoint is returned; well-posedness of
// the brackets is asserted separately by the property tests.
double cross_bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
  if (f(lo) <= 0) return lo;
  if (f(hi) >= 0) return hi;
  for (int i = 0; i < iters && hi - lo > 1e-14 * std::max(1.0, hi); ++i) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double golden_ratio() { return 0.5 * (1.0 + std::sqrt(5.0)); }

AlphaSolution alpha_solution(int n) {
  if (n < 1) throw std::invalid_argument("alpha_solution: n must be >= 1");
  if (n == 1) return {1, 1.0, {1.0}, 0.0};

  double upper = alpha_solution(n - 1).alpha;
  const long double lo_limit = 0.25L + 1e-9L;
  const long double hi_limit = static_cast<long double>(upper) - 1e-13L;

  // Scan from the right for the sign change closest to alpha_{n-1}; the
  // realizing root is the largest one with an all-positive vector.
  const int kScan = 512;
  long double step = (hi_limit - lo_limit) / kScan;
  for (int s = kScan - 1; s >= 0; --s) {
    long double a_lo = lo_limit + s * step;
    long double a_hi = a_lo + step;
    long double g_lo = alpha_gap(n, a_lo);
    long double g_hi = alpha_gap(n, a_hi);
    if (!(g_lo > 0 && g_hi <= 0)) continue;
    for (int it = 0; it < 200 && a_hi - a_lo > 1e-16L; ++it) {
      long double mid = 0.5L * (a_lo + a_hi);
      (alpha_gap(n, mid) > 0 ? a_lo : a_hi) = mid;
    }
    long double a = 0.5L * (a_lo + a_hi);
    auto d = delta_recurrence(n, a);
    bool positive = true;
    for (int i = 1; i <= n; ++i)
      if (!(d[i] > 0)) positive = false;
    if (!positive) continue;
    AlphaSolution sol;
    sol.n = n;
    sol.alpha = static_cast<double>(a);
    sol.deltas.assign(d.begin() + 1, d.end());
    sol.residual = static_cast<double>(std::abs(alpha_gap(n, a)));
    return sol;
  }
  throw std::logic_error("alpha_solution: no realizing root found");
}

std::vector<double> alpha_closed_form(int n, double alpha) {
  if (!(alpha > 0.25)) throw std::domain_error("alpha_closed_form: requires alpha > 1/4");
  if (n < 1) throw std::invalid_argument("alpha_closed_form: n must be >= 1");
  using C = std::complex<double>;
  C disc = std::sqrt(C(1.0 - 4.0 * alpha, 0.0));
  C rp = (C(1.0) + disc) / (2.0 * alpha);
  C rm = (C(1.0) - disc) / (2.0 * alpha);
  C lam = C(0.5) + C(1.0 - 2.0 * alpha) / (2.0 * disc);
  C mu = C(1.0) - lam;
  std::vector<double> d(n);
  C rp_pow(1.0), rm_pow(1.0);
  for (int i = 0; i < n; ++i) {
    C v = lam * rp_pow + mu * rm_pow;
    if (std::abs(v.imag()) > 1e-9 * std::max(1.0, std::abs(v.real())))
      throw std::logic_error("alpha_closed_form: non-negligible imaginary part");
    d[i] = v.real();
    rp_pow *= rp;
    rm_pow *= rm;
  }
  return d;
}

double lambda3_closed(double d0) { return 2.0 / (3.0 + d0 + std::sqrt(d0 * d0 + 2.0 * d0 + 5.0)); }
double lambda4_closed(double d0) { return 2.0 / (4.0 + d0 + std::sqrt(d0 * d0 + 8.0)); }

namespace {

double weighted_lambda_impl(int n, double d0, bool closed_bases) {
  if (n < 1) throw std::invalid_argument("weighted_lambda: n must be >= 1");
  if (!(d0 >= 0)) throw std::invalid_argument("weighted_lambda: delta0 must be >= 0");
  if (n == 1) return 1.0 / (1.0 + d0);
  if (n == 2) return 1.0 / (2.0 + d0);
  if (closed_bases && n == 3) return lambda3_closed(d0);
  if (closed_bases && n == 4) return lambda4_closed(d0);

  auto first = [&](double d2) { return 1.0 / (d0 + 1.0 + d2); };
  auto second = [&](double d2) {
    return std::min(weighted_lambda_impl(n - 2, (d0 + 1.0 + d2) / d2, closed_bases),
                    weighted_lambda_impl(n - 1, (d0 + 1.0) / d2, closed_bases));
  };
  double lo = 1e-6, hi = d0 + 10.0;
  // first(lo) > second(lo) since second -> 0 as d2 -> 0; widen hi if needed.
  while (first(hi) >= second(hi) && hi < 1e4) hi *= 2.0;
  double d2 = cross_bisect([&](double x) { return first(x) - second(x); }, lo, hi);
  return std::max(first(d2), second(d2));
}

}  // namespace

double weighted_lambda(int n, double d0) { return weighted_lambda_impl(n, d0, true); }
double weighted_lambda_raw(int n, double d0) { return weighted_lambda_impl(n, d0, false); }

double beta(int n) {
  if (n > 8) throw std::length_error("beta: practical cap is n <= 8");
  return weighted_lambda(n, 0.0);
}

double conjecture1_gap(int n, double d0) {
  if (n < 3) throw std::invalid_argument("conjecture1_gap: n must be >= 3");
  auto first = [&](double d2) { return 1.0 / (d0 + 1.0 + d2); };
  auto second = [&](double d2) {
    return std::min(weighted_lambda(n - 2, (d0 + 1.0 + d2) / d2),
                    weighted_lambda(n - 1, (d0 + 1.0) / d2));
  };
  double hi = d0 + 10.0;
  while (first(hi) >= second(hi) && hi < 1e4) hi *= 2.0;
  double d2 = cross_bisect([&](double x) { return first(x) - second(x); }, 1e-6, hi);
  return weighted_lambda(n - 2, (d0 + 1.0 + d2) / d2) - weighted_lambda(n - 1, (d0 + 1.0) / d2);
}

double beta_simplified(int n) {
  if (n < 3) return beta(n);
  auto first = [&](double d2) { return 1.0 / (1.0 + d2); };
  auto second = [&](double d2) { return weighted_lambda(n - 2, (1.0 + d2) / d2); };
  double hi = 10.0;
  while (first(hi) >= second(hi) && hi < 1e4) hi *= 2.0;
  double d2 = cross_bisect([&](double x) { return first(x) - second(x); }, 1e-6, hi);
  return std::max(first(d2), second(d2));
}

namespace {

// Leaf ratios of the 4-request tree. Upper subtree (vehicle kept course at
// f_2, third request at the same end as f_2):
//   A = d1/S_4 with d4 = d1 or withheld; B = d3/S'_4 with d'4 = d3.
// Lower subtree (vehicle switched at f_2, f'_3 at the first end):
//   C = d'3/S''_4 with d''4 = d'3 or withheld; D = d2/S'''_4 with
//   d'''4 = d2 or withheld.
struct TreeEval {
  const TreeRegime& reg;

  double upper(double d2) const {
    if (!reg.has_f3) return 1.0 / (1.0 + d2);  // only f_1, f_2 released
    double d4 = reg.release_f4 ? 1.0 : 0.0;
    auto a = [&](double d3) { return 1.0 / (1.0 + d2 + d3 + d4); };
    auto b = [&](double d3) { return d3 / (1.0 + d2 + 2.0 * d3); };
    double d3 = cross_bisect([&](double x) { return a(x) - b(x); }, 1e-9, 100.0);
    return std::max(a(d3), b(d3));
  }

  double lower(double d2) const {
    auto c = [&](double dp3) { return dp3 / (1.0 + d2 + dp3 + (reg.release_fpp4 ? dp3 : 0.0)); };
    auto d = [&](double dp3) { return d2 / (1.0 + d2 + dp3 + (reg.release_fppp4 ? d2 : 0.0)); };
    // d decreases and c increases in d'3.
    double dp3 = cross_bisect([&](double x) { return d(x) - c(x); }, 1e-9, 100.0 + 100.0 * d2);
    return std::max(c(dp3), d(dp3));
  }

  double solve() const {
    // upper decreases and lower increases in d2.
    double d2 = cross_bisect([&](double x) { return upper(x) - lower(x); }, 1e-9, 100.0);
    return std::max(upper(d2), lower(d2));
  }
};

std::vector<double> log_grid(double lo, double hi, int points) {
  std::vector<double> g(points);
  double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < points; ++i) g[i] = std::exp(llo + (lhi - llo) * i / (points - 1));
  return g;
}

}  // namespace

double tree_minimax(const TreeRegime& regime) { return TreeEval{regime}.solve(); }

double tree_minimax_grid(const TreeRegime& regime, int points_per_axis) {
  auto inner_min = [&](const std::function<double(double)>& f, double lo, double hi) {
    double best = 1e300, arg = lo;
    for (int round = 0; round < 3; ++round) {
      for (double x : log_grid(lo, hi, points_per_axis)) {
        double v = f(x);
        if (v < best) {
          best = v;
          arg = x;
        }
      }
      lo = arg / 1.6;
      hi = arg * 1.6;
    }
    return best;
  };

  auto upper = [&](double d2) {
    if (!regime.has_f3) return 1.0 / (1.0 + d2);
    double d4 = regime.release_f4 ? 1.0 : 0.0;
    return inner_min(
        [&](double d3) {
          return std::max(1.0 / (1.0 + d2 + d3 + d4), d3 / (1.0 + d2 + 2.0 * d3));
        },
        1e-3, 50.0);
  };
  auto lower = [&](double d2) {
    return inner_min(
        [&](double dp3) {
          double c = dp3 / (1.0 + d2 + dp3 + (regime.release_fpp4 ? dp3 : 0.0));
          double d = d2 / (1.0 + d2 + dp3 + (regime.release_fppp4 ? d2 : 0.0));
          return std::max(c, d);
        },
        1e-3, 50.0 + 50.0 * d2);
  };
  return inner_min([&](double d2) { return std::max(upper(d2), lower(d2)); }, 1e-3, 50.0);
}

std::vector<TreeRegime> tree_regimes(MinimaxMode mode) {
  if (mode == MinimaxMode::Performance) {
    return {
        {"T<1/3", false, 0.0, 1.0 / 3.0, true, true, true, true},
        {"[1/3,1/2)", false, 1.0 / 3.0, 0.5, true, false, true, true},
        {"[1/2,1)", false, 0.5, 1.0, false, false, true, true},
    };
  }
  return {
      {"T<1/6", true, 0.0, 1.0 / 6.0, true, true, true, true},
      {"[1/6,1/5)", true, 1.0 / 6.0, 0.2, true, true, false, true},
      {"[1/5,1/4)", true, 0.2, 0.25, true, false, true, true},
      {"[1/4,1/3)", true, 0.25, 1.0 / 3.0, true, false, false, true},
      {"[1/3,1/2)", true, 1.0 / 3.0, 0.5, true, false, true, false},
      {"[1/2,1)", true, 0.5, 1.0, false, false, false, true},
  };
}

const TreeRegime& tree_regime(MinimaxMode mode, const std::string& id) {
  static std::vector<TreeRegime> perf = tree_regimes(MinimaxMode::Performance);
  static std::vector<TreeRegime> comp = tree_regimes(MinimaxMode::Competitive);
  auto& list = mode == MinimaxMode::Performance ? perf : comp;
  for (const auto& r : list)
    if (r.id == id) return r;
  throw std::invalid_argument("unknown tree regime: " + id);
}

Thresholds thresholds(int n) {
  if (n < 3) throw std::domain_error("thresholds: defined for n >= 3");
  Thresholds t;
  t.t0 = 1.0 / (std::pow(2.0, n - 3) + 1.0);
  t.t1 = 1.0 / (std::pow(2.0, n - 1) - 2.0);
  t.epsilon = 1.0 / (static_cast<double>(n) * (n - 1) * (n + 3));
  return t;
}

int i0_of_delay(double t) {
  if (!(t < 2.0)) throw std::domain_error("i0: delay must be < 2");
  if (t < 0) throw std::domain_error("i0: delay must be >= 0");
  return static_cast<int>(std::floor(1.0 / (2.0 - t)));
}

}  // namespace optiwind
