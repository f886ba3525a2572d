#pragma once

#include "hcr/envelope_model.hpp"

namespace hcr {

/// Global bands hold on all of [0, 1]; boundary-layer bands only where y lies in [sqrt(T), T].
enum class Validity { Global, BoundaryLayer };
const char* to_string(Validity v);

enum class CertificateKind { GlobalUpper, GlobalLower, PartialUpper, PartialLower };
const char* to_string(CertificateKind k);

/// Paired lower/upper envelopes with their validity range.
struct EnvelopeBand {
  EnvelopeSpec lower;
  EnvelopeSpec upper;
  Validity validity;
  ProblemParams params;

  double lower_at(double x) const { return closed_form_y(lower, params, x); }
  double upper_at(double x) const { return closed_form_y(upper, params, x); }
  /// Smallest y covered by the validity range: 1 or sqrt(T).
  double y_min() const;
  /// x where the lower envelope reaches y_min; the band is certified for x at or beyond this
  /// wherever the exact solution has also reached y_min. Zero for global bands.
  double x_threshold() const;
};

}  // namespace hcr
