#include "hcr/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>

#include "hcr/envelope_builders.hpp"
#include "hcr/errors.hpp"

namespace hcr {

std::size_t default_steps(std::size_t fallback) {
  const char* env = std::getenv("HCR_DEFAULT_STEPS");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const long long v = std::strtoll(env, &end, 10);
  if (end == env || *end != '\0' || v <= 0)
    throw ConfigError(std::string("HCR_DEFAULT_STEPS must be a positive integer, got '") + env + "'");
  return static_cast<std::size_t>(v);
}

Grid shooting_grid(const ProblemParams& p, std::size_t steps) {
  const Grid uniform = Grid::uniform(steps);
  const double k = 1.5 * std::sqrt(2.0) * p.B() * p.T15();
  if (k <= 1.0) return uniform;
  return Grid::merge(uniform, Grid::graded_toward_one(steps, k));
}

ShootResult shoot(const ProblemParams& p, double delta, const Grid& grid) {
  if (!(delta >= 0.0)) throw PreconditionError("shoot: delta must be >= 0");
  const std::vector<double>& pts = grid.points();
  std::vector<double> nodes(pts.rbegin(), pts.rend());
  const double c = std::sqrt(2.0) * p.B();
  // v = y - 1; y^5 - 5y + 4 = v^2 (v^3 + 5 v^2 + 10 v + 10)
  const auto rhs = [c, delta](double, double v) {
    const double P = v * v * (((v + 5.0) * v + 10.0) * v + 10.0);
    return c * std::sqrt(std::max(P + delta, 0.0));
  };
  ShootResult r{};
  r.delta = delta;
  try {
    Trajectory tr = rk4_along(rhs, nodes, p.T() - 1.0);
    r.x = std::move(tr.x);
    r.y_minus_one = std::move(tr.y);
    r.blewup = false;
  } catch (const BlowupError&) {
    r.blewup = true;
    throw;
  }
  r.terminal_y0 = 1.0 + r.y_minus_one.back();
  return r;
}

ShootResult shoot(const ProblemParams& p, double delta, std::size_t steps) {
  return shoot(p, delta, shooting_grid(p, steps));
}

BracketError bracket_error(const ProblemParams& p, std::size_t steps) {
  const Grid grid = shooting_grid(p, steps);
  const double Delta = derivative_bounds(p).Delta;
  BracketError be{};
  be.upper = shoot(p, 0.0, grid);
  be.lower = shoot(p, Delta, grid);
  be.max_err = -1.0;
  for (std::size_t i = 0; i < be.upper.size(); ++i) {
    const double gap = be.upper.y_minus_one[i] - be.lower.y_minus_one[i];
    if (gap > be.max_err) {
      be.max_err = gap;
      be.x_at_max = be.upper.x[i];
    }
  }
  be.log_ratio = std::log(be.max_err) / p.B();
  return be;
}

OracleSolution oracle_solve(const ProblemParams& p, double tol, std::size_t steps) {
  if (!(tol > 0.0)) throw PreconditionError("oracle_solve: tol must be positive");
  const Grid grid = shooting_grid(p, steps);
  const double Delta = derivative_bounds(p).Delta;
  ShootResult top = shoot(p, 0.0, grid);
  const double v_top = top.y_minus_one.back();
  if (v_top < -tol) throw NoBracketError("oracle_solve: y(0) < 1 already at delta = 0");
  if (v_top <= tol || Delta < 1e-300) return OracleSolution{0.0, std::move(top), 0};

  double lo = 0.0;
  double hi = Delta;
  ShootResult best = std::move(top);
  int halvings = 0;
  for (; halvings < 100; ++halvings) {
    const double mid = 0.5 * (lo + hi);
    ShootResult s = shoot(p, mid, grid);
    const double v0 = s.y_minus_one.back();
    const bool done = std::abs(v0) <= tol;
    if (v0 > 0.0) lo = mid; else hi = mid;
    best = std::move(s);
    if (done) return OracleSolution{mid, std::move(best), halvings + 1};
  }
  ShootResult fin = shoot(p, lo, grid);
  if (std::abs(fin.y_minus_one.back()) > tol) {
    // bisection exhausted; report the closest endpoint of the final interval
    ShootResult alt = shoot(p, hi, grid);
    if (std::abs(alt.y_minus_one.back()) < std::abs(fin.y_minus_one.back()))
      return OracleSolution{hi, std::move(alt), halvings};
  }
  return OracleSolution{lo, std::move(fin), halvings};
}

}  // namespace hcr
