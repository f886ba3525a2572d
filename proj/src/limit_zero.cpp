#include "hcr/limit_zero.hpp"

#include <algorithm>
#include <cmath>

#include "hcr/errors.hpp"
#include "hcr/numerics.hpp"

namespace hcr {

namespace {

double layer_rate(double b) { return 1.5 * std::sqrt(2.0) * b / std::sqrt(5.0); }

}  // namespace

double u0_upper(double b, double x) {
  if (!(b > 0.0)) throw PreconditionError("u0_upper: b must be positive");
  if (!(x >= 0.0 && x <= 1.0)) throw PreconditionError("u0_upper: x outside [0, 1]");
  return std::pow(1.0 + layer_rate(b) * x, -2.0 / 3.0);
}

double gamma_of_exponent(double b, double r) {
  if (!(b > 0.0)) throw PreconditionError("gamma: b must be positive");
  return std::exp(r * std::log1p(layer_rate(b)));
}

double gamma_of_b(double b) { return gamma_of_exponent(b, -10.0 / 3.0); }

double exponent_seed(double b, double rho) { return -10.0 / 3.0 + rho / std::log(b); }

WTrajectory w0_integrate_gamma(double b, double gamma, std::size_t steps) {
  if (!(b > 0.0)) throw PreconditionError("w0_integrate: b must be positive");
  if (!(gamma > 0.0)) throw PreconditionError("w0_integrate: gamma must be positive");
  const double k = layer_rate(b);
  const double c = std::sqrt(2.0) * b / std::sqrt(5.0) / k;
  // dw/ds = -c sqrt(w^5 + gamma) e^s with s = ln(1 + kx)
  const auto rhs = [c, gamma](double s, double w) {
    const double w5 = w * w * w * w * w;
    return -c * std::sqrt(std::max(w5 + gamma, 0.0)) * std::exp(s);
  };
  const Trajectory tr = rk4_integrate(rhs, 0.0, 1.0, std::log1p(k), steps);
  WTrajectory out;
  out.x.resize(tr.x.size());
  for (std::size_t i = 0; i < tr.x.size(); ++i) out.x[i] = std::expm1(tr.x[i]) / k;
  out.x.back() = 1.0;
  out.w = tr.y;
  out.terminal = tr.y.back();
  return out;
}

WTrajectory w0_integrate(double b, double exponent_r, std::size_t steps) {
  if (!(exponent_r < 0.0)) throw PreconditionError("w0_integrate: exponent must be negative");
  return w0_integrate_gamma(b, gamma_of_exponent(b, exponent_r), steps);
}

LimitZeroResult bracket_r(double b, double tol_r, std::size_t steps) {
  if (!(b > 1.0)) throw PreconditionError("bracket_r: b must exceed 1");
  if (!(tol_r > 0.0)) throw PreconditionError("bracket_r: tol_r must be positive");
  const auto w1 = [&](double r) { return w0_integrate(b, r, steps).terminal; };

  double r_neg = exponent_seed(b, 2.84);
  double r_pos = exponent_seed(b, 2.75);
  double w_neg = w1(r_neg);
  double w_pos = w1(r_pos);
  if (!(w_neg < 0.0 && w_pos > 0.0)) {
    const double center = exponent_seed(b, 2.8);
    double off = std::abs(r_neg - r_pos);
    bool found = false;
    for (int k = 0; k < 10 && !found; ++k) {
      off *= 2.0;
      r_neg = std::min(center + off, -1e-12);
      r_pos = center - off;
      w_neg = w1(r_neg);
      w_pos = w1(r_pos);
      found = w_neg < 0.0 && w_pos > 0.0;
    }
    if (!found) throw NoBracketError("bracket_r: seeds do not bracket w(1) = 0");
  }
  while (r_neg - r_pos > tol_r) {
    const double mid = 0.5 * (r_neg + r_pos);
    if (mid <= r_pos || mid >= r_neg) break;
    const double wm = w1(mid);
    if (wm > w_pos || wm < w_neg) throw DegenerateError("bracket_r: w(1) not monotone in r");
    if (wm < 0.0) {
      r_neg = mid;
      w_neg = wm;
    } else {
      r_pos = mid;
      w_pos = wm;
    }
  }
  LimitZeroResult res{};
  res.b = b;
  res.gamma = gamma_of_b(b);
  res.r_lower = r_neg;
  res.r_upper = r_pos;
  res.w_terminal_lower = w_neg;
  res.w_terminal_upper = w_pos;
  res.u0p_terminal = u0_upper(b, 1.0);
  res.below_validated_range = b < 16.0;
  return res;
}

U0Oracle u0_oracle(double b, double tol, std::size_t steps) {
  // u(1) decreases in gamma; bisect log(gamma) between a tiny value and 1.
  double lo = -700.0;
  double hi = 0.0;
  if (!(w0_integrate_gamma(b, std::exp(lo), steps).terminal > 0.0))
    throw NoBracketError("u0_oracle: u(1) <= 0 even for vanishing gamma");
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    WTrajectory tr = w0_integrate_gamma(b, std::exp(mid), steps);
    if (std::abs(tr.terminal) <= tol) return U0Oracle{std::exp(mid), std::move(tr)};
    (tr.terminal > 0.0 ? lo : hi) = mid;
  }
  const double g = std::exp(0.5 * (lo + hi));
  return U0Oracle{g, w0_integrate_gamma(b, g, steps)};
}

}  // namespace hcr
