#pragma once

#include <cstddef>
#include <vector>

namespace hcr {

inline constexpr std::size_t kLimitZeroSteps = 100000;

/// [1 + (1.5 sqrt(2)/sqrt(5)) b x]^(-2/3), the t -> 0 limit of t y~+(1 - x).
double u0_upper(double b, double x);

/// (1 + 1.5 sqrt(2) b / sqrt(5))^r; r = -10/3 gives the Gamma approximation.
double gamma_of_exponent(double b, double r);
double gamma_of_b(double b);

/// Seed exponent -10/3 + rho / ln(b).
double exponent_seed(double b, double rho);

struct WTrajectory {
  double terminal;  ///< w(1); may be slightly negative
  std::vector<double> x;
  std::vector<double> w;
};

/// w' = -(sqrt(2) b / sqrt(5)) sqrt(w^5 + gamma), w(0) = 1, integrated to x = 1 with RK4 in
/// s = ln(1 + kx), k = 1.5 sqrt(2) b / sqrt(5), which spreads the layer at x = 0 evenly.
WTrajectory w0_integrate_gamma(double b, double gamma, std::size_t steps = kLimitZeroSteps);
WTrajectory w0_integrate(double b, double exponent_r, std::size_t steps = kLimitZeroSteps);

/// Exponent bracket for the limiting problem.
///
/// w(1) decreases in r, so the exponent giving the lower envelope (w(1) < 0) is the larger one:
/// r_lower > r_upper numerically.
struct LimitZeroResult {
  double b;
  double gamma;  ///< Gamma approximation (1 + k)^(-10/3)
  double r_lower;
  double r_upper;
  double w_terminal_lower;
  double w_terminal_upper;
  double u0p_terminal;
  bool below_validated_range;  ///< b < 16, where the seeds are not known to bracket
};

LimitZeroResult bracket_r(double b, double tol_r = 1e-7, std::size_t steps = kLimitZeroSteps);

struct U0Oracle {
  double gamma;
  WTrajectory trajectory;
};

/// Independent reference for u0: bisection on gamma until |u(1)| <= tol.
U0Oracle u0_oracle(double b, double tol = 1e-13, std::size_t steps = kLimitZeroSteps);

}  // namespace hcr
