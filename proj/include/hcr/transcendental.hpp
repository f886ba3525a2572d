#pragma once

#include "hcr/numerics.hpp"

namespace hcr {

inline constexpr int kDefaultC0Iterations = 30;

/// Iterate of c = tanh(lambda c) started from 1, stored through its rapidity.
struct FixedPoint {
  double lambda;
  double c0;        ///< tanh(rapidity); an upper bound of the true fixed point
  double rapidity;  ///< atanh(c0), exact to rounding even when c0 rounds to 1
  int iterations;
  double complement() const { return tanh_complement(rapidity); }
};

FixedPoint fixed_point_c0(double lambda, int iters = kDefaultC0Iterations);

/// Rapidity of the true fixed point; zero for lambda <= 1.
double c0_exact_rapidity(double lambda);

/// rhs(c) = c (1 - c tanh(lambda c)) / (c - tanh(lambda c)), written in the rapidity y = atanh(c).
double rhs_of_rapidity(double y, double lambda);

/// Root of rhs(c) = zeta, returned through its rapidity. Bisection width <= tol in rapidity.
SaturatingArg solve_c_exact(double zeta, double lambda, double tol = 1e-15);

enum class Regime { SmallLambda, LargeLambda, VeryLargeLambda };
const char* to_string(Regime r);

/// Certified bracket lower <= c <= upper together with the explicit estimates it came from.
/// The bracket is the estimates widened outward by 8 ulps in rapidity.
///
/// For lambda >= 1.5 the explicit c_minus sits below the root and c_plus above it.
/// For lambda < 1.5 the bracket is the pair of bi-quadratic roots c_0.35 < c < c_0.05; the
/// sharpened c_minus/c_plus of that regime are kept for reference only.
struct TranscendentalBounds {
  double zeta;
  double lambda;
  SaturatingArg c_lower;
  SaturatingArg c_upper;
  SaturatingArg c_minus;
  SaturatingArg c_plus;
  Regime regime;
};

TranscendentalBounds bound_c(double zeta, double lambda);

/// Explicit estimate tanh(lambda c0 + atanh(c0 / zeta)) with c0 from `iters` iterations.
SaturatingArg c_minus_iterated(double zeta, double lambda, int iters = kDefaultC0Iterations);
/// Explicit estimate tanh(lambda c0 + atanh(1/zeta) / (1 - lambda sech^2(lambda c0))).
SaturatingArg c_plus_iterated(double zeta, double lambda, int iters = kDefaultC0Iterations);

/// Root of the bi-quadratic (zeta-1)/lambda = (zeta - c^2)(1 - rho lambda^2 c^2).
double c_rho(double zeta, double lambda, double rho);

/// Parameters of (z1 - aC)/(z1 + bC) = (z0 - aC)/(z0 + bC) e^{2LC}.
struct CEquationParams {
  double z0;
  double z1;
  double bigL;
  double alpha;
  double beta;
  void validate() const;
};

/// Substitution that turns the C-equation into rhs(c) = zeta. zeta and lambda depend on C.
struct CReduction {
  CEquationParams p;
  double zeta(double C) const;
  double lambda(double C) const;
  double c_of_C(double C) const;
  double C_of_c(double c) const;
  /// Same map fed by the complement 1 - c, accurate when c rounds to 1.
  double C_of_c(const SaturatingArg& c) const;
  /// Residual (z1 - aC)/(z1 + bC) - (z0 - aC)/(z0 + bC) e^{2LC}.
  double residual(double C) const;
};

CReduction reduce_C_equation(const CEquationParams& p);

struct ZetaPair {
  double zeta_minus;
  double zeta_plus;
};

ZetaPair zeta_plus_minus(const CEquationParams& p, int iters = kDefaultC0Iterations);

/// 1 / cosh^2(x), safe for large |x|.
double sech2(double x);

}  // namespace hcr
