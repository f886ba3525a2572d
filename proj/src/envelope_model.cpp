#include "hcr/envelope_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hcr/errors.hpp"

namespace hcr {

ProblemParams::ProblemParams(double b, double t) : b_(b), t_(t) {
  if (!(b > 0.0) || !std::isfinite(b)) throw PreconditionError("b must be positive and finite");
  if (!(t > 0.0 && t < 1.0)) throw PreconditionError("t must lie in (0, 1)");
  B_ = b * std::pow(t, 1.5) / std::sqrt(5.0);
  T_ = 1.0 / t;
  L_ = 1.5 * std::sqrt(2.0) * B_;
  T15_ = std::pow(T_, 1.5);
}

double ProblemParams::layer_value() const { return b_ * std::pow(t_, 0.25); }

EnvelopeSpec EnvelopeSpec::make(double q, double eps, double C, const ProblemParams& p) {
  if (!(q > 0.0) || !(C > 0.0) || !(eps > 0.0) || !std::isfinite(q * eps * C))
    throw PreconditionError("EnvelopeSpec: q, eps, C must be positive and finite");
  return EnvelopeSpec{q, eps, C, p.B() / q};
}

double closed_form_y_from_end(const EnvelopeSpec& spec, const ProblemParams& p, double s) {
  if (!(s >= -1e-15 && s <= 1.0 + 1e-15)) throw PreconditionError("closed_form_y: x outside [0, 1]");
  s = std::clamp(s, 0.0, 1.0);
  const double C = spec.C;
  const double eps = spec.eps;
  const double T15 = p.T15();
  // Divide numerator and denominator by e^{a}; only e^{-a} and 1 - e^{-a} appear.
  const double a = 3.0 * std::sqrt(2.0) * spec.Btilde * C * s;
  const double e = std::exp(-a);
  const double ome = -std::expm1(-a);
  const double num = C * (T15 * (e + eps) + eps * C * ome);
  const double den = T15 * ome + C * (1.0 + eps * e);
  if (!(den > std::numeric_limits<double>::min()) || !std::isfinite(num))
    throw DegenerateError("closed_form_y: vanishing denominator");
  return std::pow(num / den, 2.0 / 3.0);
}

double closed_form_y(const EnvelopeSpec& spec, const ProblemParams& p, double x) {
  return closed_form_y_from_end(spec, p, 1.0 - x);
}

double envelope_slope(const EnvelopeSpec& spec, double y) {
  const double eps = spec.eps;
  const double C = spec.C;
  return 2.0 * spec.Btilde / (1.0 + eps) *
         (std::pow(y, 2.5) + (1.0 - eps) * C * y - eps * C * C / std::sqrt(y));
}

double envelope_curvature(const EnvelopeSpec& spec, double y) {
  const double eps = spec.eps;
  const double C = spec.C;
  const double f = 4.0 * spec.Btilde * spec.Btilde / ((1.0 + eps) * (1.0 + eps));
  return f * (5.0 * std::pow(y, 4) + 7.0 * (1.0 - eps) * C * std::pow(y, 2.5) -
              2.0 * (4.0 * eps - 1.0 - eps * eps) * C * C * y -
              eps * (1.0 - eps) * C * C * C / std::sqrt(y) - eps * eps * std::pow(C, 4) / (y * y));
}

double residue_polynomial(double y, double q, double C, double eps) {
  // 1 - w with w = m^2, m = q (1 + eps) / 2; 1 - m is formed from the exact differences 1 - q
  // and eps - 1 so the leading 5 y^4 (1 - w) term keeps its digits when q and eps are near 1.
  const double m = q * (1.0 + eps) / 2.0;
  const double one_minus_m = (1.0 - q) - q * (eps - 1.0) / 2.0;
  const double one_minus_w = one_minus_m * (1.0 + m);
  const double two_minus_eps = 2.0 - eps;
  return one_minus_w * 5.0 * std::pow(y, 4) + 7.0 * (1.0 - eps) * C * std::pow(y, 2.5) -
         2.0 * (3.0 - two_minus_eps * two_minus_eps) * C * C * y -
         eps * (1.0 - eps) * C * C * C / std::sqrt(y) - eps * eps * std::pow(C, 4) / (y * y) +
         (5.0 - 5.0 * one_minus_w);
}

double residue(double y_val, const EnvelopeSpec& spec, const ProblemParams& p) {
  (void)p;
  const double f = 4.0 * spec.Btilde * spec.Btilde / ((1.0 + spec.eps) * (1.0 + spec.eps));
  return f * residue_polynomial(y_val, spec.q, spec.C, spec.eps);
}

double eps_root(double y, double q, double C, double r) {
  const double k = 1.25 * q * q * (1.0 - std::pow(y, 4));
  const double y25 = std::pow(y, 2.5);
  const double C2 = C * C;
  const double C3 = C2 * C;
  const double a = k + 2.0 * C2 * y + C3 / std::sqrt(y) - C2 * C2 / (y * y);
  const double b = 2.0 * k - 7.0 * C * y25 - 8.0 * C2 * y - C3 / std::sqrt(y);
  const double c = 5.0 * std::pow(y, 4) + k + 7.0 * C * y25 + 2.0 * C2 * y - r;
  if (a == 0.0) {
    if (b == 0.0) throw NoRootError("eps_root: degenerate polynomial");
    return -c / b;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) throw NoRootError("eps_root: negative discriminant");
  const double h = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  const double r1 = h / a;
  const double r2 = h != 0.0 ? c / h : r1;
  const double d1 = std::abs(r1 - 1.0);
  const double d2 = std::abs(r2 - 1.0);
  if (d1 < d2) return r1;
  if (d2 < d1) return r2;
  return std::min(r1, r2);
}

EpsBounds eps_tilde_bounds(double s) {
  if (!(s >= 0.0 && s <= 1.0)) throw PreconditionError("eps_tilde_bounds: s outside [0, 1]");
  const double s3 = s * s * s;
  const double s4 = s3 * s;
  return EpsBounds{1.0 - 0.8 * s3 + 0.6 * s4, 1.0 - 0.8 * s3 + (8.0 - 3.0 * s) / 5.0 * s4};
}

double slope_q(double y, double eps, double C, double delta) {
  const double s = 1.0 / y;
  const double s3 = s * s * s;
  // 1 - 5 s^4 + 4 s^5 = (1 - s)^2 (1 + 2s + 3s^2 + 4s^3)
  const double u = 1.0 - s;
  const double M = std::sqrt(u * u * (1.0 + s * (2.0 + s * (3.0 + 4.0 * s))) + delta * s3 * s * s);
  return 2.0 * (1.0 + (1.0 - eps) * C * std::pow(s, 1.5) - eps * C * C * s3) / ((1.0 + eps) * M);
}

double first_integral_slope(double y, double B, double delta) {
  const double v = y - 1.0;
  // y^5 - 5y + 4 = v^2 (v^3 + 5 v^2 + 10 v + 10)
  const double P = v * v * (((v + 5.0) * v + 10.0) * v + 10.0);
  return B * std::sqrt(P + delta);
}

const char* to_string(SignClass s) {
  switch (s) {
    case SignClass::AllNonNeg: return "AllNonNeg";
    case SignClass::AllNonPos: return "AllNonPos";
    case SignClass::Mixed: return "Mixed";
  }
  return "?";
}

SignClass classify_signs(const std::vector<double>& values, double margin) {
  double scale = 0.0;
  for (double v : values) {
    if (!std::isfinite(v)) return SignClass::Mixed;
    scale = std::max(scale, std::abs(v));
  }
  const double zero = margin * scale;
  bool neg = false;
  bool pos = false;
  for (double v : values) {
    if (v > zero) pos = true;
    if (v < -zero) neg = true;
  }
  if (pos && neg) return SignClass::Mixed;
  return pos ? SignClass::AllNonNeg : SignClass::AllNonPos;
}

ResidueProfile residue_profile(const EnvelopeSpec& spec, double y_lo, double y_hi,
                               std::size_t points) {
  if (points < 2 || !(y_hi > y_lo)) throw PreconditionError("residue_profile: bad y-range");
  ResidueProfile prof;
  prof.ys.resize(points);
  prof.values.resize(points);
  for (std::size_t i = 0; i < points; ++i) {
    const double y = i + 1 == points
                         ? y_hi
                         : y_lo + (y_hi - y_lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    prof.ys[i] = y;
    prof.values[i] = residue_polynomial(y, spec.q, spec.C, spec.eps);
  }
  prof.sign_certified = classify_signs(prof.values);
  return prof;
}

}  // namespace hcr
