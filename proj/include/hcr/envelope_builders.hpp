#pragma once

#include <string>

#include "hcr/band.hpp"
#include "hcr/envelope_model.hpp"

namespace hcr {

/// How the partial envelopes are tuned.
///
/// Listing: gradient step R t^4 / 15, q1 from the lower eps bound, global lower at eps = 0.73,
/// one slope refinement of the partial lower envelope. Reproduces the published tables.
/// Text: gradient step R t^4 / (20 B^2), q1 from eps = 1 - 0.8 t^3, global lower at eps = 0.75,
/// no refinement, zeta from the c0(Lt) shift.
enum class IterationRule { Text, Listing };
const char* to_string(IterationRule r);
IterationRule parse_iteration_rule(const std::string& s);

struct BuildOptions {
  IterationRule rule = IterationRule::Listing;
  int gradient_iterations = 2;
  int c0_iterations = 30;
};

inline constexpr double kGlobalLowerEpsText = 0.75;
inline constexpr double kGlobalLowerEpsListing = 0.73;
inline constexpr double kGlobalLowerQCap = 1.1;

/// [(1 - t^3)(5 + t^3) / (5 (1 - t^4))]^(1/2).
double q_tilde_plus(double t);

/// y~+ - 1 at distance s from x = 1, without cancellation when y~+ is close to 1.
double global_upper_minus_one(const ProblemParams& p, double s);

EnvelopeSpec build_global_upper(const ProblemParams& p);
EnvelopeSpec build_global_lower(const ProblemParams& p, const BuildOptions& opt = {});
EnvelopeSpec build_partial_upper(const ProblemParams& p, const BuildOptions& opt = {});
EnvelopeSpec build_partial_lower(const ProblemParams& p, const BuildOptions& opt = {});

/// Certified global and partial bands. Throws CertificationError if a certificate is refused.
EnvelopeBand build_global_band(const ProblemParams& p, const BuildOptions& opt = {});
EnvelopeBand build_partial_band(const ProblemParams& p, const BuildOptions& opt = {});

struct DerivativeBounds {
  double Delta;      ///< bound on the energy constant delta = y'(0)^2 / (2 B^2)
  double d;          ///< sharper estimate from the secant of y~+ on [0, 0.25]
  double Delta_cap;  ///< closed-form exponential bound on Delta
  double y1_lower;   ///< sqrt(2) B sqrt(T^5 - 5T + 4) <= y'(1)
  double y1_gap;     ///< y'(1) - y1_lower <= sqrt(2) B Delta / (2 sqrt(T^5 - 5T + 4))
  double y1_gap_cap;
};

DerivativeBounds derivative_bounds(const ProblemParams& p);

struct BoundaryLayerReport {
  double value;  ///< b t^0.25
  bool has_layer;
  double variation_ratio;  ///< (T - y~+(1 - xi)) / (T - 1), a lower bound for the exact ratio
  double xi;               ///< sqrt(5) / b
};

BoundaryLayerReport boundary_layer(const ProblemParams& p);

/// Scalar lower bound of the variation ratio that depends on t only.
double variation_ratio_bound(double t);

}  // namespace hcr
