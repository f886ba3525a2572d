#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace hcr {

/// Physical inputs (b, t) and the scales derived from them.
class ProblemParams {
 public:
  /// Throws PreconditionError unless b > 0 and 0 < t < 1.
  ProblemParams(double b, double t);

  double b() const { return b_; }
  double t() const { return t_; }
  double B() const { return B_; }        ///< b t^1.5 / sqrt(5)
  double T() const { return T_; }        ///< 1 / t
  double bigL() const { return L_; }     ///< 1.5 sqrt(2) B
  double T15() const { return T15_; }    ///< T^1.5
  /// b t^0.25, the boundary-layer indicator.
  double layer_value() const;

 private:
  double b_, t_, B_, T_, L_, T15_;
};

/// One member (q, eps, C) of the closed-form family; Btilde = B / q.
///
/// eps may slightly exceed 1: the partial upper construction lands there for thin layers.
struct EnvelopeSpec {
  double q;
  double eps;
  double C;
  double Btilde;

  static EnvelopeSpec make(double q, double eps, double C, const ProblemParams& p);
};

/// Closed-form y at distance s = 1 - x from the hot end; exact rounding behaviour near x = 1.
double closed_form_y_from_end(const EnvelopeSpec& spec, const ProblemParams& p, double s);
double closed_form_y(const EnvelopeSpec& spec, const ProblemParams& p, double x);

/// y'/sqrt(2) as a function of y along the family: 2 Bt/(1+eps) (y^2.5 + (1-eps) C y - eps C^2 y^-0.5).
double envelope_slope(const EnvelopeSpec& spec, double y);
/// y'' as a function of y.
double envelope_curvature(const EnvelopeSpec& spec, double y);

/// The quadratic-in-eps polynomial whose sign equals the sign of the residue.
double residue_polynomial(double y, double q, double C, double eps);

/// resd(y) = y'' - B^2 (5 y^4 - 5) evaluated along the envelope; equals 4 Bt^2/(1+eps)^2 R.
double residue(double y_val, const EnvelopeSpec& spec, const ProblemParams& p);

/// Root eps of R(y, q, C, eps) = r nearest to 1. Throws NoRootError on a negative discriminant.
double eps_root(double y_val, double q, double C, double r);

struct EpsBounds {
  double lower;
  double upper;
};
/// 1 - 0.8 s^3 + 0.6 s^4 and 1 - 0.8 s^3 + (8 - 3s)/5 s^4.
EpsBounds eps_tilde_bounds(double s);

/// Slope factor q(y, eps, C) = 2 (1 + (1-eps) C s^1.5 - eps C^2 s^3) / ((1+eps) sqrt(1 - 5 s^4 + (4+delta) s^5)), s = 1/y.
double slope_q(double y, double eps, double C, double delta);

/// B sqrt(y^5 - 5y + 4 + delta), the first integral of the exact problem.
double first_integral_slope(double y, double B, double delta);

enum class SignClass { AllNonNeg, AllNonPos, Mixed };
const char* to_string(SignClass s);

struct ResidueProfile {
  std::vector<double> ys;
  std::vector<double> values;
  SignClass sign_certified;
};

inline constexpr std::size_t kResidueGridPoints = 2001;
inline constexpr double kSignMargin = 1e-12;

/// Samples R on a uniform y-grid over [y_lo, y_hi]; samples within kSignMargin * max|R| count as zero.
ResidueProfile residue_profile(const EnvelopeSpec& spec, double y_lo, double y_hi,
                               std::size_t points = kResidueGridPoints);

SignClass classify_signs(const std::vector<double>& values, double margin = kSignMargin);

}  // namespace hcr
