#pragma once

#include <string>

#include "hcr/band.hpp"
#include "hcr/envelope_model.hpp"
#include "hcr/numerics.hpp"
#include "hcr/shooting.hpp"

namespace hcr {

struct Certificate {
  CertificateKind kind;
  ResidueProfile residue_profile;
  bool boundary_ok;
  /// Slope ordering against the exact first integral at y = sqrt(T) (partial kinds); true for global kinds.
  bool ordering_ok;
  double y_lo;  ///< validity range in y
  double y_hi;
  std::string details;
};

struct CertificateOutcome {
  Certificate certificate;
  bool issued;
  std::string failed_check;  ///< empty when issued
};

/// Runs every check and reports instead of throwing.
CertificateOutcome evaluate_certificate(const EnvelopeSpec& spec, const ProblemParams& p,
                                        CertificateKind kind);

/// Issues a certificate or throws CertificationError naming the first failing check.
Certificate certify(const EnvelopeSpec& spec, const ProblemParams& p, CertificateKind kind);

/// Relative slack for lower <= oracle <= upper; covers rounding and the oracle's own RK4 error.
inline constexpr double kSandwichSlack = 1e-11;

struct OracleReport {
  double max_width_y;
  double max_oracle_minus_lower_y;
  double max_upper_minus_oracle_y;
  double max_width_u;
  double max_oracle_minus_lower_u;
  double max_upper_minus_oracle_u;
  double min_lower_margin;  ///< min of (oracle - lower) / oracle; negative beyond slack throws
  double min_upper_margin;
  std::size_t points_checked;
};

/// Sandwich check at every node of the oracle trajectory that lies in `grid` and in the
/// validity range of the band. Throws OrderingError on a violation.
OracleReport compare_to_oracle(const EnvelopeBand& band, const ShootResult& oracle, const Grid& grid);

}  // namespace hcr
