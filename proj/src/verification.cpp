#include "hcr/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hcr/envelope_builders.hpp"
#include "hcr/errors.hpp"

namespace hcr {

namespace {

bool is_upper(CertificateKind k) {
  return k == CertificateKind::GlobalUpper || k == CertificateKind::PartialUpper;
}

bool is_partial(CertificateKind k) {
  return k == CertificateKind::PartialUpper || k == CertificateKind::PartialLower;
}

constexpr double kBoundaryTol = 1e-12;

}  // namespace

CertificateOutcome evaluate_certificate(const EnvelopeSpec& spec, const ProblemParams& p,
                                        CertificateKind kind) {
  const double T = p.T();
  const bool upper = is_upper(kind);
  const bool partial = is_partial(kind);
  CertificateOutcome out{};
  Certificate& c = out.certificate;
  c.kind = kind;
  c.y_lo = partial ? std::sqrt(T) : 1.0;
  c.y_hi = T;
  std::ostringstream det;
  det.precision(17);

  // (a) boundary conditions
  const double y1 = closed_form_y(spec, p, 1.0);
  bool bc = std::abs(y1 - T) <= kBoundaryTol * T;
  det << "y(1)=" << y1;
  if (!partial) {
    const double y0 = closed_form_y(spec, p, 0.0);
    det << " y(0)=" << y0;
    bc = bc && (upper ? y0 >= 1.0 - kBoundaryTol : y0 <= 1.0 + kBoundaryTol);
  }
  c.boundary_ok = bc;

  // (b) residue sign on the validity range
  c.residue_profile = residue_profile(spec, c.y_lo, c.y_hi);
  double scale = 0.0;
  for (double v : c.residue_profile.values) scale = std::max(scale, std::abs(v));
  const double zero = kSignMargin * scale;
  bool residue_ok = true;
  for (double v : c.residue_profile.values) {
    if (!std::isfinite(v) || (upper ? v > zero : v < -zero)) {
      residue_ok = false;
      break;
    }
  }
  det << " residue=" << to_string(c.residue_profile.sign_certified);

  // (c) slope ordering at y = sqrt(T) against the exact first integral
  c.ordering_ok = true;
  if (partial) {
    const double ys = std::sqrt(T);
    const double G = envelope_slope(spec, ys);
    if (upper) {
      const double F = first_integral_slope(ys, p.B(), 0.0);
      c.ordering_ok = G <= F * (1.0 + kBoundaryTol);
      det << " G-F0=" << (G - F);
    } else {
      const double F = first_integral_slope(ys, p.B(), derivative_bounds(p).Delta);
      c.ordering_ok = G >= F * (1.0 - kBoundaryTol);
      det << " G-FDelta=" << (G - F);
    }
  }
  c.details = det.str();

  if (!c.boundary_ok) out.failed_check = "boundary";
  else if (!residue_ok) out.failed_check = "residue-sign";
  else if (!c.ordering_ok) out.failed_check = "slope-ordering";
  out.issued = out.failed_check.empty();
  return out;
}

Certificate certify(const EnvelopeSpec& spec, const ProblemParams& p, CertificateKind kind) {
  CertificateOutcome o = evaluate_certificate(spec, p, kind);
  if (!o.issued)
    throw CertificationError(std::string(to_string(kind)) + " refused: " + o.failed_check + " (" +
                             o.certificate.details + ")");
  return std::move(o.certificate);
}

OracleReport compare_to_oracle(const EnvelopeBand& band, const ShootResult& oracle, const Grid& grid) {
  const double t = band.params.t();
  const double ymin = band.y_min();
  const std::vector<double>& gp = grid.points();
  OracleReport r{};
  r.min_lower_margin = INFINITY;
  r.min_upper_margin = INFINITY;
  for (std::size_t i = 0; i < oracle.size(); ++i) {
    const double x = oracle.x[i];
    if (!std::binary_search(gp.begin(), gp.end(), x)) continue;
    const double y = oracle.y(i);
    if (y < ymin) continue;
    const double lo = band.lower_at(x);
    const double up = band.upper_at(x);
    const double ml = (y - lo) / y;
    const double mu = (up - y) / y;
    if (ml < -kSandwichSlack || mu < -kSandwichSlack) {
      std::ostringstream os;
      os.precision(17);
      os << "sandwich violated at x=" << x << ": lower=" << lo << " oracle=" << y << " upper=" << up;
      throw OrderingError(os.str());
    }
    r.min_lower_margin = std::min(r.min_lower_margin, ml);
    r.min_upper_margin = std::min(r.min_upper_margin, mu);
    r.max_width_y = std::max(r.max_width_y, up - lo);
    r.max_oracle_minus_lower_y = std::max(r.max_oracle_minus_lower_y, y - lo);
    r.max_upper_minus_oracle_y = std::max(r.max_upper_minus_oracle_y, up - y);
    ++r.points_checked;
  }
  if (r.points_checked == 0) throw PreconditionError("compare_to_oracle: no grid point in validity range");
  r.max_width_u = t * r.max_width_y;
  r.max_oracle_minus_lower_u = t * r.max_oracle_minus_lower_y;
  r.max_upper_minus_oracle_u = t * r.max_upper_minus_oracle_y;
  return r;
}

}  // namespace hcr
