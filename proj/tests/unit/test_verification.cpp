#include <doctest.h>

#include <cmath>
#include <vector>

#include "hcr/envelope_builders.hpp"
#include "hcr/errors.hpp"
#include "hcr/shooting.hpp"
#include "hcr/verification.hpp"

using namespace hcr;

TEST_CASE("global upper certificates over the width table") {
  for (auto [b, t] : {std::pair{500.0, 0.1}, {700.0, 0.2}, {5000.0, 0.01}, {1e4, 0.005}, {1e6, 2e-4}}) {
    const ProblemParams p(b, t);
    const Certificate c = certify(build_global_upper(p), p, CertificateKind::GlobalUpper);
    CHECK(c.boundary_ok);
    CHECK(c.ordering_ok);
    CHECK(c.y_lo == 1.0);
    CHECK(c.y_hi == p.T());
    CHECK(c.residue_profile.sign_certified != SignClass::Mixed);
  }
}

TEST_CASE("a perturbed upper envelope is refused") {
  const ProblemParams p(500, 0.1);
  EnvelopeSpec s = build_global_upper(p);
  s = EnvelopeSpec::make(0.5 * s.q, s.eps, s.C, p);
  const CertificateOutcome o = evaluate_certificate(s, p, CertificateKind::GlobalUpper);
  CHECK_FALSE(o.issued);
  CHECK(o.failed_check == "residue-sign");
  CHECK(o.certificate.residue_profile.sign_certified != SignClass::AllNonPos);
  CHECK_THROWS_AS(certify(s, p, CertificateKind::GlobalUpper), CertificationError);
  // a denser grid cannot rescue it
  CHECK(residue_profile(s, 1.0, p.T(), 8001).sign_certified != SignClass::AllNonPos);
}

TEST_CASE("boundary check catches a lower envelope used as an upper one") {
  const ProblemParams p(70, 0.1);
  const CertificateOutcome o = evaluate_certificate(build_global_lower(p), p, CertificateKind::GlobalUpper);
  CHECK_FALSE(o.issued);
  CHECK(o.failed_check == "boundary");
}

TEST_CASE("partial certificates live on [sqrt(T), T]") {
  const ProblemParams p(500, 0.1);
  const Certificate c = certify(build_partial_lower(p), p, CertificateKind::PartialLower);
  CHECK(c.y_lo == doctest::Approx(std::sqrt(10.0)));
  CHECK(c.y_hi == 10.0);
  CHECK(c.ordering_ok);
  CHECK(c.residue_profile.ys.front() == doctest::Approx(std::sqrt(10.0)));
  const Certificate u = certify(build_partial_upper(p), p, CertificateKind::PartialUpper);
  CHECK(u.ordering_ok);
}

TEST_CASE("oracle sandwich and widths") {
  const ProblemParams p(500, 0.1);
  const OracleSolution o = oracle_solve(p, 1e-12, kOracleSteps);
  const Grid grid = shooting_grid(p, kOracleSteps);
  const OracleReport g = compare_to_oracle(build_global_band(p), o.trajectory, grid);
  CHECK(g.max_width_y == doctest::Approx(0.16).epsilon(0.15));
  CHECK(g.max_width_u == doctest::Approx(0.016).epsilon(0.15));
  CHECK(g.max_width_u == p.t() * g.max_width_y);
  CHECK(g.min_lower_margin >= -kSandwichSlack);
  CHECK(g.min_upper_margin >= -kSandwichSlack);
  CHECK(g.points_checked == grid.count());
  const OracleReport q = compare_to_oracle(build_partial_band(p), o.trajectory, grid);
  CHECK(q.points_checked < grid.count());
  CHECK(q.max_width_y == doctest::Approx(0.027).epsilon(0.15));
}

TEST_CASE("oracle widths for b = 5000, t = 0.01") {
  const ProblemParams p(5000, 0.01);
  const OracleSolution o = oracle_solve(p, 1e-12, kOracleSteps);
  const Grid grid = shooting_grid(p, kOracleSteps);
  const OracleReport g = compare_to_oracle(build_global_band(p), o.trajectory, grid);
  const OracleReport q = compare_to_oracle(build_partial_band(p), o.trajectory, grid);
  CHECK(g.max_width_y == doctest::Approx(1.1).epsilon(0.25));
  CHECK(g.max_width_u == doctest::Approx(0.011).epsilon(0.25));
  CHECK(q.max_width_y == doctest::Approx(0.017).epsilon(0.25));
  CHECK(q.max_width_u == doctest::Approx(1.7e-4).epsilon(0.25));
}

TEST_CASE("a swapped band violates the sandwich") {
  const ProblemParams p(500, 0.1);
  const EnvelopeBand good = build_global_band(p);
  const EnvelopeBand bad{good.upper, good.lower, Validity::Global, p};
  const OracleSolution o = oracle_solve(p, 1e-12, 20000);
  CHECK_THROWS_AS(compare_to_oracle(bad, o.trajectory, shooting_grid(p, 20000)), OrderingError);
}

TEST_CASE("L2 norm of the global upper residue, B = 13, T = 3") {
  const double t = 1.0 / 3.0;
  const ProblemParams p(13 * std::sqrt(5.0) / std::pow(t, 1.5), t);
  const EnvelopeSpec s = build_global_upper(p);
  const int n = 4000;  // Simpson on 4001 nodes
  double acc = 0;
  for (int i = 0; i <= n; ++i) {
    const double x = static_cast<double>(i) / n;
    const double r = residue(closed_form_y(s, p, x), s, p);
    const double w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
    acc += w * r * r;
  }
  const double norm = std::sqrt(acc / (3.0 * n));
  CHECK(norm == doctest::Approx(36.7).epsilon(0.05));
}
