#include "hcr/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace hcr {

double tanh_complement(double x) {
  if (x <= 0.0) return 1.0 + std::tanh(-x);
  // 2 e^{-2x} / (1 + e^{-2x}); exact enough for every positive x, underflows gracefully.
  const double e = std::exp(-2.0 * x);
  return 2.0 * e / (1.0 + e);
}

SaturatingArg::SaturatingArg(double x) : x_(x) {
  if (!std::isfinite(x)) throw DomainError("SaturatingArg: non-finite argument");
}

double tanh_sum(double a, double b) { return std::tanh(a + b); }

double tanh_sum_complement(double a, double b) { return tanh_complement(a + b); }

double atanh_safe(double c) {
  if (!(std::abs(c) < 1.0)) throw DomainError("atanh_safe: |c| >= 1");
  return std::atanh(c);
}

double atanh_safe(Complement d) {
  const double v = d.value;
  if (!(v > 0.0 && v < 2.0)) throw DomainError("atanh_safe: complement outside (0, 2)");
  if (v >= 0.5) return std::atanh(1.0 - v);  // subtraction is exact here
  return 0.5 * std::log((2.0 - v) / v);
}

Grid Grid::uniform(std::size_t intervals) {
  if (intervals < 1) throw PreconditionError("Grid: need at least one interval");
  std::vector<double> p(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i)
    p[i] = static_cast<double>(i) / static_cast<double>(intervals);
  p.back() = 1.0;
  return Grid(std::move(p));
}

Grid Grid::graded_toward_one(std::size_t intervals, double k) {
  if (intervals < 1) throw PreconditionError("Grid: need at least one interval");
  if (!(k > 0.0)) throw PreconditionError("Grid: grading constant must be positive");
  const double smax = std::log1p(k);
  std::vector<double> p(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    const double s = smax * static_cast<double>(intervals - i) / static_cast<double>(intervals);
    p[i] = 1.0 - std::expm1(s) / k;
  }
  p.front() = 0.0;
  p.back() = 1.0;
  return from_points(std::move(p));
}

Grid Grid::from_points(std::vector<double> points) {
  if (points.size() < 2) throw PreconditionError("Grid: need at least two points");
  if (points.front() != 0.0 || points.back() != 1.0)
    throw PreconditionError("Grid: endpoints must be 0 and 1");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (!(points[i] > points[i - 1])) throw PreconditionError("Grid: points not strictly increasing");
  return Grid(std::move(points));
}

Grid Grid::merge(const Grid& a, const Grid& b) {
  std::vector<double> p;
  p.reserve(a.count() + b.count());
  std::merge(a.points_.begin(), a.points_.end(), b.points_.begin(), b.points_.end(),
             std::back_inserter(p));
  p.erase(std::unique(p.begin(), p.end()), p.end());
  return Grid(std::move(p));
}

double bisect(const std::function<double(double)>& g, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("bisect: tol must be positive");
  if (lo > hi) std::swap(lo, hi);
  double glo = g(lo);
  const double ghi = g(hi);
  if (glo == 0.0) return lo;
  if (ghi == 0.0) return hi;
  if (std::signbit(glo) == std::signbit(ghi)) throw NoBracketError("bisect: no sign change");
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if (std::signbit(gm) == std::signbit(glo)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return lo + 0.5 * (hi - lo);
}

}  // namespace hcr
