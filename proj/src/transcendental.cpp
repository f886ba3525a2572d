#include "hcr/transcendental.hpp"

#include <cmath>
#include <limits>

namespace hcr {

namespace {

void check_zeta_lambda(double zeta, double lambda) {
  if (!(zeta > 1.0) || !std::isfinite(zeta)) throw PreconditionError("zeta must exceed 1");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw PreconditionError("lambda must be positive");
  if (lambda < 1.0 && !(zeta < 1.0 / (1.0 - lambda)))
    throw PreconditionError("no root: zeta >= 1/(1 - lambda) for lambda < 1");
}

// y - lambda tanh(y), with the large-y part rearranged to avoid losing the complement.
double pole_gap(double y, double lambda) {
  if (y > kSaturation) return (y - lambda) + lambda * tanh_complement(y);
  return y - lambda * std::tanh(y);
}

// Widen a bracket outward by a few ulps so rounding in the explicit formulas cannot cut off the root.
constexpr double kOutward = 8.0 * std::numeric_limits<double>::epsilon();
SaturatingArg widen_down(const SaturatingArg& a) { return SaturatingArg(a.value() * (1.0 - kOutward)); }
SaturatingArg widen_up(const SaturatingArg& a) { return SaturatingArg(a.value() * (1.0 + kOutward)); }

}  // namespace

double sech2(double x) {
  const double e = std::exp(-2.0 * std::abs(x));
  const double s = 2.0 * std::sqrt(e) / (1.0 + e);
  return s * s;
}

const char* to_string(Regime r) {
  switch (r) {
    case Regime::SmallLambda: return "SmallLambda";
    case Regime::LargeLambda: return "LargeLambda";
    case Regime::VeryLargeLambda: return "VeryLargeLambda";
  }
  return "?";
}

FixedPoint fixed_point_c0(double lambda, int iters) {
  if (!(lambda > 0.0)) throw PreconditionError("fixed_point_c0: lambda must be positive");
  if (iters < 1) throw PreconditionError("fixed_point_c0: iters must be >= 1");
  // Iterate on the rapidity y_{k+1} = lambda tanh(y_k); c = tanh(y) then never saturates.
  double y = lambda;
  for (int k = 1; k < iters; ++k) y = lambda * std::tanh(y);
  return FixedPoint{lambda, std::tanh(y), y, iters};
}

double c0_exact_rapidity(double lambda) {
  if (!(lambda > 0.0)) throw PreconditionError("c0_exact: lambda must be positive");
  if (lambda <= 1.0) return 0.0;
  // y - lambda tanh(y) is negative on (0, y0) and positive beyond.
  const auto h = [lambda](double y) { return pole_gap(y, lambda); };
  double lo = 0.0;
  double hi = lambda;
  if (h(hi) <= 0.0) return hi;
  for (int k = 0; k < 2000 && hi - lo > 0.0; ++k) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  return hi;
}

double rhs_of_rapidity(double y, double lambda) {
  const double gap = pole_gap(y, lambda);
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  return std::tanh(y) / std::tanh(gap);
}

SaturatingArg solve_c_exact(double zeta, double lambda, double tol) {
  check_zeta_lambda(zeta, lambda);
  if (!(tol > 0.0)) throw PreconditionError("solve_c_exact: tol must be positive");
  const auto g = [&](double y) { return rhs_of_rapidity(y, lambda) - zeta; };

  // Lower edge just above the pole; rhs decreases from +inf (or 1/(1-lambda)) there.
  const double y0 = c0_exact_rapidity(lambda);
  double lo = y0 > 0.0 ? y0 * (1.0 + 1e-15) : 1e-300;
  while (!(g(lo) > 0.0)) {
    // only reachable through rounding right at the pole
    lo = std::nextafter(lo, std::numeric_limits<double>::infinity());
  }
  double hi = std::max(lambda, 1.0) + std::atanh(1.0 / zeta) + 1.0;
  for (int k = 0; g(hi) >= 0.0; ++k) {
    if (k > 60) throw NoRootError("solve_c_exact: upper edge not found");
    hi *= 2.0;
  }
  const double y = bisect(g, lo, hi, tol);
  return SaturatingArg(y);
}

SaturatingArg c_minus_iterated(double zeta, double lambda, int iters) {
  const FixedPoint fp = fixed_point_c0(lambda, iters);
  return SaturatingArg(lambda * fp.c0 + std::atanh(fp.c0 / zeta));
}

SaturatingArg c_plus_iterated(double zeta, double lambda, int iters) {
  const FixedPoint fp = fixed_point_c0(lambda, iters);
  const double lc = lambda * fp.c0;
  const double denom = 1.0 - lambda * sech2(lc);
  if (!(denom > 0.0)) throw RegimeError("c_plus: lambda sech^2(lambda c0) >= 1, iterate not converged");
  return SaturatingArg(lc + std::atanh(1.0 / zeta) / denom);
}

double c_rho(double zeta, double lambda, double rho) {
  const double num = 2.0 * (1.0 + zeta * (lambda - 1.0)) / lambda;
  const double zl2 = rho * zeta * lambda * lambda;
  const double rad = (1.0 - zl2) * (1.0 - zl2) + 4.0 * rho * lambda * (zeta - 1.0);
  if (num < 0.0 || rad < 0.0) throw RegimeError("c_rho: negative radicand");
  const double c2 = num / ((1.0 + zl2) + std::sqrt(rad));
  return std::sqrt(c2);
}

TranscendentalBounds bound_c(double zeta, double lambda) {
  check_zeta_lambda(zeta, lambda);
  if (lambda < 1.5) {
    const double a = c_rho(zeta, lambda, 0.35);
    const double b = c_rho(zeta, lambda, 0.05);
    if (!(a < 1.0 && b < 1.0)) throw RegimeError("bound_c: bi-quadratic roots leave (0,1)");
    const SaturatingArg lower(std::atanh(a));
    const SaturatingArg upper(std::atanh(b));
    const SaturatingArg cm(lambda * a + std::atanh(a / zeta));
    const double lb = lambda * b;
    const double denom = 1.0 - lb * sech2(lb);
    const double num = std::atanh(b / zeta) + lambda * (std::sinh(2.0 * lb) - 2.0 * lb) * sech2(lb) / 2.0;
    const SaturatingArg cp(num / denom);
    return TranscendentalBounds{zeta, lambda, widen_down(lower), widen_up(upper), cm, cp, Regime::SmallLambda};
  }
  if (lambda < 5.0) {
    const SaturatingArg cm = c_minus_iterated(zeta, lambda);
    const SaturatingArg cp = c_plus_iterated(zeta, lambda);
    return TranscendentalBounds{zeta, lambda, widen_down(cm), widen_up(cp), cm, cp, Regime::LargeLambda};
  }
  if (std::log(zeta) > lambda) throw RegimeError("bound_c: zeta > e^lambda for lambda >= 5");
  const double th = std::tanh(lambda);
  const double s2 = sech2(lambda);
  const SaturatingArg cm(lambda * th + std::atanh(th / zeta));
  // sinh(2L)/(2 cosh^2 L) = tanh L, which keeps the numerator finite for huge L.
  const double num = std::atanh(1.0 / zeta) + lambda * (th - lambda * s2);
  const SaturatingArg cp(num / (1.0 - lambda * s2));
  return TranscendentalBounds{zeta, lambda, widen_down(cm), widen_up(cp), cm, cp, Regime::VeryLargeLambda};
}

void CEquationParams::validate() const {
  if (!(z0 > 0.0 && z1 > z0)) throw PreconditionError("C-equation: need z1 > z0 > 0");
  if (!(bigL > 0.0)) throw PreconditionError("C-equation: need L > 0");
  if (!(alpha > 0.0 && beta >= alpha)) throw PreconditionError("C-equation: need beta >= alpha > 0");
}

double CReduction::zeta(double C) const {
  const double shift = 0.5 * (p.beta - p.alpha) * C;
  return (p.z1 + shift) / (p.z0 + shift);
}

double CReduction::lambda(double C) const {
  const double zeta0 = p.z0 + 0.5 * (p.beta - p.alpha) * C;
  return 2.0 * zeta0 * p.bigL / (p.beta + p.alpha);
}

double CReduction::c_of_C(double C) const {
  const double zeta0 = p.z0 + 0.5 * (p.beta - p.alpha) * C;
  return (p.beta + p.alpha) * C / (2.0 * zeta0);
}

double CReduction::C_of_c(double c) const {
  return 2.0 * p.z0 * c / ((p.beta + p.alpha) - (p.beta - p.alpha) * c);
}

double CReduction::C_of_c(const SaturatingArg& c) const {
  const double k = c.complement();
  return 2.0 * p.z0 * (1.0 - k) / (2.0 * p.alpha + (p.beta - p.alpha) * k);
}

double CReduction::residual(double C) const {
  const double a = p.alpha * C;
  const double b = p.beta * C;
  return (p.z1 - a) / (p.z1 + b) - (p.z0 - a) / (p.z0 + b) * std::exp(2.0 * p.bigL * C);
}

CReduction reduce_C_equation(const CEquationParams& p) {
  p.validate();
  return CReduction{p};
}

ZetaPair zeta_plus_minus(const CEquationParams& p, int iters) {
  p.validate();
  const double c0 = fixed_point_c0(p.z0 * p.bigL / p.beta, iters).c0;
  const double sm = (p.beta - p.alpha) * p.z0 / (2.0 * p.beta) * c0;
  const double sp = (p.beta - p.alpha) * p.z0 / (2.0 * p.alpha);
  return ZetaPair{(p.z1 + sm) / (p.z0 + sm), (p.z1 + sp) / (p.z0 + sp)};
}

}  // namespace hcr
