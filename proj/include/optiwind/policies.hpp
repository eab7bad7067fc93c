#pragma once

#include <memory>
#include <string>
#include <vector>

#include "optiwind/game.hpp"

namespace optiwind {

struct PolicyParams {
  int n = 4;            // expected maximum number of requests
  double delay = 0.0;   // T
  double epsilon = 0.0; // 0 selects the default 1/(n(n-1)(n+3))

  // Derived quantities. kappa = (1+n eps)/(1-n(n-1) eps). The omega sequence
  // follows omega_i = omega_{i-1}(1 - n^2 eps) - (i-2)(kappa - omega_{i-1})
  // from omega_1 = 1, so omega_2 = 1 - n^2 eps and (omega_i) is decreasing.
  double eps() const;
  double kappa() const;
  std::vector<double> omega() const;           // omega_1..omega_n
  double threshold_alpha() const;              // alpha_{max(1, n - i0(T))}
  int i0() const;
};

std::unique_ptr<Policy> make_policy(const std::string& name, const PolicyParams& params);
std::vector<std::string> policy_names();

// Test helper: at release ordinal i (1-based, counting from the second
// release), Switch targets the new request, Keep retains the current target.
enum class ScriptStep { Keep, Switch };
std::unique_ptr<Policy> make_scripted_policy(std::vector<ScriptStep> steps);

}  // namespace optiwind
