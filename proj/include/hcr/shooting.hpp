#pragma once

#include <cstddef>
#include <vector>

#include "hcr/envelope_model.hpp"
#include "hcr/numerics.hpp"

namespace hcr {

inline constexpr std::size_t kTableSteps = 20000;
inline constexpr std::size_t kOracleSteps = 200000;

/// Step count from HCR_DEFAULT_STEPS when set to a positive integer, else `fallback`.
std::size_t default_steps(std::size_t fallback);

/// Trajectory of y' = sqrt(2) B sqrt(y^5 - 5y + 4 + delta), integrated backward from y(1) = T.
struct ShootResult {
  double delta;
  std::vector<double> x;           ///< descending from 1 to 0
  std::vector<double> y_minus_one;  ///< y - 1, carried directly to keep digits near y = 1
  double terminal_y0;
  bool blewup;

  double y(std::size_t i) const { return 1.0 + y_minus_one[i]; }
  std::size_t size() const { return x.size(); }
};

/// Integration nodes: `steps` uniform intervals merged with `steps` intervals graded toward x = 1
/// at the rate of the boundary layer, so thin layers are resolved.
Grid shooting_grid(const ProblemParams& p, std::size_t steps);

ShootResult shoot(const ProblemParams& p, double delta, const Grid& grid);
ShootResult shoot(const ProblemParams& p, double delta, std::size_t steps);

struct BracketError {
  double max_err;    ///< max over the grid of y_RK+ - y_RK-
  double log_ratio;  ///< ln(max_err) / B
  double x_at_max;
  ShootResult upper;  ///< delta = 0
  ShootResult lower;  ///< delta = Delta
};

BracketError bracket_error(const ProblemParams& p, std::size_t steps = kTableSteps);

struct OracleSolution {
  double delta_star;
  ShootResult trajectory;
  int halvings;
};

/// Bisection on delta in [0, Delta] until |y(0) - 1| <= tol.
OracleSolution oracle_solve(const ProblemParams& p, double tol = 1e-12,
                            std::size_t steps = kOracleSteps);

}  // namespace hcr
