#include "hcr/envelope_builders.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "hcr/errors.hpp"
#include "hcr/transcendental.hpp"
#include "hcr/verification.hpp"

namespace hcr {

namespace {

// C = 2c / ((1 + eps) - (1 - eps) c), written with kappa = 1 - c.
double C_from_c(const SaturatingArg& c, double eps) {
  const double k = c.complement();
  return 2.0 * (1.0 - k) / (2.0 * eps + (1.0 - eps) * k);
}

// zeta = (T^1.5 + (1 - eps) C / 2) / (1 + (1 - eps) C / 2)
double zeta_shifted(double T15, double eps, double C) {
  const double h = 0.5 * (1.0 - eps) * C;
  return (T15 + h) / (1.0 + h);
}

double zeta_minus_text(const ProblemParams& p, double eps, double Lt, int iters) {
  const CEquationParams cp{1.0, p.T15(), Lt, eps, 1.0};
  if (eps > 1.0) return zeta_shifted(p.T15(), eps, fixed_point_c0(Lt, iters).c0);
  return zeta_plus_minus(cp, iters).zeta_minus;
}

// C for the upper envelope: zeta from the C -> 1/eps edge, c from the c_plus estimate.
double C_plus_route(const ProblemParams& p, double q, double eps, int iters) {
  const double zeta = zeta_shifted(p.T15(), eps, 1.0 / eps);
  const double lambda = p.bigL() / q / eps;
  return C_from_c(c_plus_iterated(zeta, lambda, iters), eps);
}

double admissible_q(double q, const char* who) {
  if (!(q > 0.0) || !std::isfinite(q))
    throw CertificationError(std::string(who) + ": slope condition admits no positive q");
  return q;
}

// C vanishes when the fixed point it is built from collapses to 0 (small B)
EnvelopeSpec make_spec(double q, double eps, double C, const ProblemParams& p, const char* who) {
  if (!(C > 0.0) || !std::isfinite(C))
    throw CertificationError(std::string(who) + ": the C estimate is not positive");
  return EnvelopeSpec::make(q, eps, C, p);
}

}  // namespace

const char* to_string(IterationRule r) { return r == IterationRule::Text ? "text" : "listing"; }

IterationRule parse_iteration_rule(const std::string& s) {
  if (s == "text") return IterationRule::Text;
  if (s == "listing") return IterationRule::Listing;
  throw ConfigError("unknown iteration rule '" + s + "' (expected text|listing)");
}

double q_tilde_plus(double t) {
  const double t3 = t * t * t;
  // (1 - t^4) = (1 - t)(1 + t + t^2 + t^3) and (1 - t^3) = (1 - t)(1 + t + t^2) share the root at t = 1.
  return std::sqrt((1.0 + t + t * t) * (5.0 + t3) / (5.0 * (1.0 + t + t * t + t3)));
}

double global_upper_minus_one(const ProblemParams& p, double s) {
  const double Bt = p.B() / q_tilde_plus(p.t());
  const double Y = std::atanh(std::pow(p.t(), 1.5)) + 1.5 * std::sqrt(2.0) * Bt * s;
  // tanh(Y)^(-2/3) - 1 = expm1(-(2/3) log1p(-(1 - tanh Y)))
  return std::expm1(-(2.0 / 3.0) * std::log1p(-tanh_complement(Y)));
}

EnvelopeSpec build_global_upper(const ProblemParams& p) {
  // The residue is decreasing in q and vanishes at y = T for the exact factor, so round q up.
  const double q = q_tilde_plus(p.t()) * (1.0 + 4.0 * std::numeric_limits<double>::epsilon());
  return EnvelopeSpec::make(q, 1.0, 1.0, p);
}

EnvelopeSpec build_global_lower(const ProblemParams& p, const BuildOptions& opt) {
  const bool listing = opt.rule == IterationRule::Listing;
  const double eps = listing ? kGlobalLowerEpsListing : kGlobalLowerEpsText;
  const double Delta = derivative_bounds(p).Delta;
  const double q =
      admissible_q(std::min(kGlobalLowerQCap, slope_q(p.T(), eps, 1.0 / eps, Delta)), "GlobalLower");
  const double Lt = p.bigL() / q;
  double zeta;
  if (listing) {
    const SaturatingArg cmin(fixed_point_c0(0.99 * p.bigL(), opt.c0_iterations).rapidity);
    zeta = zeta_shifted(p.T15(), eps, C_from_c(cmin, eps));
  } else {
    zeta = zeta_minus_text(p, eps, Lt, opt.c0_iterations);
  }
  const double C = C_from_c(c_minus_iterated(zeta, Lt, opt.c0_iterations), eps);
  return make_spec(q, eps, C, p, "GlobalLower");
}

EnvelopeSpec build_partial_upper(const ProblemParams& p, const BuildOptions& opt) {
  const bool listing = opt.rule == IterationRule::Listing;
  const double t = p.t();
  const double t3 = t * t * t;
  const double q0 = 1.0 - 0.6 * t3;
  const double C0 = fixed_point_c0(0.99 * p.bigL(), opt.c0_iterations).c0;
  const double eps = eps_root(p.T(), q0, C0, 0.0);
  const double eps0 = listing ? eps_tilde_bounds(t).lower : 1.0 - 0.8 * t3;
  double q = admissible_q(slope_q(p.T(), eps0, C0, 0.0), "PartialUpper");
  double C = C_plus_route(p, q, eps, opt.c0_iterations);
  const double t4 = t3 * t;
  for (int k = 0; k < opt.gradient_iterations; ++k) {
    const double R = residue_polynomial(p.T(), q, C, eps);
    q += listing ? R * t4 / 15.0 : R * t4 / (20.0 * p.B() * p.B());
    admissible_q(q, "PartialUpper");
    C = C_plus_route(p, q, eps, opt.c0_iterations);
  }
  return make_spec(q, eps, C, p, "PartialUpper");
}

EnvelopeSpec build_partial_lower(const ProblemParams& p, const BuildOptions& opt) {
  const bool listing = opt.rule == IterationRule::Listing;
  const double t = p.t();
  const EpsBounds eb = eps_tilde_bounds(t);
  const double eps = eb.upper;
  const double C0 = 1.0 / eb.lower;
  const double Delta = derivative_bounds(p).Delta;
  const double ys = std::sqrt(p.T());
  double q = admissible_q(slope_q(ys, eps, C0, Delta), "PartialLower");

  if (!listing) {
    const double Lt = p.bigL() / q;
    const double zeta = zeta_minus_text(p, eps, Lt, opt.c0_iterations);
    const double C = C_from_c(c_minus_iterated(zeta, Lt, opt.c0_iterations), eps);
    return make_spec(q, eps, C, p, "PartialLower");
  }
  const SaturatingArg ccmin(fixed_point_c0(p.bigL() / 1.25, opt.c0_iterations).rapidity);
  const double zeta = zeta_shifted(p.T15(), eps, C_from_c(ccmin, eps));
  double C = C_from_c(c_minus_iterated(zeta, p.bigL() / q, opt.c0_iterations), eps);
  // one refinement of the slope condition with the computed C
  q = admissible_q(slope_q(ys, eps, C, Delta), "PartialLower");
  C = C_from_c(c_minus_iterated(zeta, p.bigL() / q, opt.c0_iterations), eps);
  return make_spec(q, eps, C, p, "PartialLower");
}

EnvelopeBand build_global_band(const ProblemParams& p, const BuildOptions& opt) {
  const EnvelopeSpec up = build_global_upper(p);
  const EnvelopeSpec lo = build_global_lower(p, opt);
  certify(up, p, CertificateKind::GlobalUpper);
  certify(lo, p, CertificateKind::GlobalLower);
  return EnvelopeBand{lo, up, Validity::Global, p};
}

EnvelopeBand build_partial_band(const ProblemParams& p, const BuildOptions& opt) {
  const EnvelopeSpec up = build_partial_upper(p, opt);
  const EnvelopeSpec lo = build_partial_lower(p, opt);
  certify(up, p, CertificateKind::PartialUpper);
  certify(lo, p, CertificateKind::PartialLower);
  return EnvelopeBand{lo, up, Validity::BoundaryLayer, p};
}

DerivativeBounds derivative_bounds(const ProblemParams& p) {
  const double B = p.B();
  const double h = 0.25 * std::sqrt(2.0) * B;
  const double g25 = global_upper_minus_one(p, 0.75);
  const double g0 = global_upper_minus_one(p, 1.0);
  DerivativeBounds db{};
  db.Delta = (g25 / h) * (g25 / h);
  db.d = ((g25 - g0) / h) * ((g25 - g0) / h);
  const double inv = 1.0 / std::expm1(3.0 * B);
  db.Delta_cap = 15.0 / (B * B) * inv * inv * (1.0 + inv) * (1.0 + inv);
  const double T = p.T();
  const double root = std::sqrt(T * T * T * T * T - 5.0 * T + 4.0);
  db.y1_lower = std::sqrt(2.0) * B * root;
  db.y1_gap = std::sqrt(2.0) * B * db.Delta / (2.0 * root);
  db.y1_gap_cap = 11.0 * (1.0 + inv) * (1.0 + inv) * inv * inv / (B * root);
  return db;
}

BoundaryLayerReport boundary_layer(const ProblemParams& p) {
  BoundaryLayerReport r{};
  r.value = p.layer_value();
  r.has_layer = p.B() * std::pow(p.T(), 1.25) >= 50.0;
  r.xi = std::sqrt(5.0) / p.b();
  const double T = p.T();
  if (r.xi >= 1.0) {
    r.variation_ratio = 1.0;  // the interval covers all of [0, 1]
  } else {
    const double yp = 1.0 + global_upper_minus_one(p, r.xi);
    r.variation_ratio = (T - yp) / (T - 1.0);
  }
  return r;
}

double variation_ratio_bound(double t) {
  const double y = std::pow(std::tanh(std::atanh(std::pow(t, 1.5)) + 1.5 * std::sqrt(2.0) * std::pow(t, 1.5)),
                            -2.0 / 3.0);
  return (1.0 - t * y) / (1.0 - t);
}

const char* to_string(Validity v) { return v == Validity::Global ? "global" : "boundary-layer"; }

const char* to_string(CertificateKind k) {
  switch (k) {
    case CertificateKind::GlobalUpper: return "GlobalUpper";
    case CertificateKind::GlobalLower: return "GlobalLower";
    case CertificateKind::PartialUpper: return "PartialUpper";
    case CertificateKind::PartialLower: return "PartialLower";
  }
  return "?";
}

double EnvelopeBand::y_min() const {
  return validity == Validity::Global ? 1.0 : std::sqrt(params.T());
}

double EnvelopeBand::x_threshold() const {
  if (validity == Validity::Global) return 0.0;
  const double target = y_min();
  if (lower_at(0.0) >= target) return 0.0;
  return bisect([&](double x) { return lower_at(x) - target; }, 0.0, 1.0, 1e-15);
}

}  // namespace hcr
