#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hcr/errors.hpp"

namespace hcr {

/// Above this argument 1 - tanh(x) sits at the binary64 noise floor when formed by subtraction.
inline constexpr double kSaturation = 15.0;

/// The quantity 1 - c for some c in (-1, 1). Lets callers hand over c when c itself rounds to 1.
struct Complement {
  double value;
};

/// 1 - tanh(x) without cancellation for positive x.
double tanh_complement(double x);

/// Argument of tanh, kept so that the value and its complement 1 - tanh are both accurate.
class SaturatingArg {
 public:
  explicit SaturatingArg(double x);

  double value() const { return x_; }
  double tanh() const { return std::tanh(x_); }
  double complement() const { return tanh_complement(x_); }

 private:
  double x_;
};

/// tanh(a + b) from the summed argument; the addition formula would round through 1.
double tanh_sum(double a, double b);
double tanh_sum_complement(double a, double b);

/// Inverse tanh; throws DomainError for |c| >= 1.
double atanh_safe(double c);
/// Inverse tanh of 1 - d, i.e. 0.5 ln(2/d - 1).
double atanh_safe(Complement d);

/// Ordered nodes on [0, 1] including both ends.
class Grid {
 public:
  static Grid uniform(std::size_t intervals);
  /// Nodes 1 - (e^s - 1)/k with s uniform, crowding toward x = 1 as k grows.
  static Grid graded_toward_one(std::size_t intervals, double k);
  static Grid from_points(std::vector<double> points);
  /// Union of two grids, exact duplicates dropped.
  static Grid merge(const Grid& a, const Grid& b);

  const std::vector<double>& points() const { return points_; }
  std::size_t count() const { return points_.size(); }

 private:
  explicit Grid(std::vector<double> pts) : points_(std::move(pts)) {}
  std::vector<double> points_;
};

/// Sampled solution of a scalar IVP, in integration order.
struct Trajectory {
  std::vector<double> x;
  std::vector<double> y;
  double terminal() const { return y.back(); }
};

inline constexpr double kBlowupCap = 1e300;

/// Classical RK4 through the given nodes, in the order given (nodes may decrease).
template <class F>
Trajectory rk4_along(F&& f, std::span<const double> nodes, double y0, double cap = kBlowupCap) {
  if (nodes.empty()) throw PreconditionError("rk4: empty node list");
  Trajectory tr;
  tr.x.reserve(nodes.size());
  tr.y.reserve(nodes.size());
  double y = y0;
  tr.x.push_back(nodes[0]);
  tr.y.push_back(y);
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    const double x = nodes[i - 1];
    const double h = nodes[i] - x;
    const double k1 = f(x, y);
    const double k2 = f(x + 0.5 * h, y + 0.5 * h * k1);
    const double k3 = f(x + 0.5 * h, y + 0.5 * h * k2);
    const double k4 = f(nodes[i], y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(y) || std::abs(y) > cap)
      throw BlowupError("rk4: |y| exceeded cap near x = " + std::to_string(nodes[i]));
    tr.x.push_back(nodes[i]);
    tr.y.push_back(y);
  }
  return tr;
}

/// Fixed-step RK4 from x0 to x1.
template <class F>
Trajectory rk4_integrate(F&& f, double x0, double y0, double x1, std::size_t steps,
                         double cap = kBlowupCap) {
  if (steps < 1) throw PreconditionError("rk4: steps must be >= 1");
  std::vector<double> nodes(steps + 1);
  const double h = (x1 - x0) / static_cast<double>(steps);
  for (std::size_t i = 0; i < steps; ++i) nodes[i] = x0 + static_cast<double>(i) * h;
  nodes[steps] = x1;
  return rk4_along(std::forward<F>(f), nodes, y0, cap);
}

/// Bisection on a sign change. Returns the midpoint of the final interval (width <= tol).
double bisect(const std::function<double(double)>& g, double lo, double hi, double tol);

}  // namespace hcr
