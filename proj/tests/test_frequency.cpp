#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "specq/frequency.hpp"
#include "specq/minimize.hpp"

using namespace specq;

namespace {

SpecPoint two_sheets(double s1, double s2, int sign) {
  return SpecPoint(QPoint(std::vector<Vec>{{s1}, {s2}}), sign);
}

// sheets {0, 3(x^2 - y^2)} with sign(x - y); 2-homogeneous about the origin
SpecPoint example1(const Vec& x) {
  const double g0 = 3.0 * (x[0] * x[0] - x[1] * x[1]);
  return two_sheets(0.0, g0, x[0] > x[1] ? +1 : -1);
}

GridField sampled(double h, const std::function<SpecPoint(const Vec&)>& f) {
  return GridField::sample(GridDomain::disk(h, 1.0), f);
}

// largest |I(r) - degree| over the default radii with r >= r_min
double homogeneity_error(const GridField& u, double degree, double r_min) {
  const Vec c{0.0, 0.0};
  const FrequencyProfile p =
      frequency_profile(u, c, default_radii(u.domain, c));
  double worst = 0.0;
  for (std::size_t k = 0; k < p.radii.size(); ++k) {
    if (p.radii[k] < r_min) continue;
    REQUIRE(p.defined[k]);
    worst = std::max(worst, std::abs(p.I[k] - degree));
  }
  return worst;
}

}  // namespace

TEST_CASE("linear collapsed field has frequency one") {
  const Vec a{0.6, 0.8};
  const GridField u = sampled(1.0 / 128, [&](const Vec& x) {
    return SpecPoint::collapsed(2, Vec{a[0] * x[0] + a[1] * x[1]});
  });
  const Vec c{0.0, 0.0};
  const FrequencyProfile p =
      frequency_profile(u, c, default_radii(u.domain, c));
  CHECK(!p.degenerate);
  for (std::size_t k = 0; k < p.radii.size(); ++k) {
    REQUIRE(p.defined[k]);
    CHECK(p.I[k] == doctest::Approx(1.0).epsilon(0.02));
    // closed forms: D = pi r^2 |a|^2 per sheet, H = pi r^3 |a|^2 per sheet
    CHECK(p.D[k] == doctest::Approx(2.0 * M_PI * p.radii[k] * p.radii[k])
                        .epsilon(0.02));
    CHECK(p.H[k] ==
          doctest::Approx(2.0 * M_PI * std::pow(p.radii[k], 3)).epsilon(0.02));
    if (k > 0) CHECK(p.D[k] >= p.D[k - 1]);
  }
}

TEST_CASE("example-1 field has frequency two") {
  const GridField u = sampled(1.0 / 128, example1);
  CHECK(homogeneity_error(u, 2.0, 0.1) < 0.02 * 2.0);
}

TEST_CASE("homogeneity error decays with the mesh") {
  std::vector<double> errs;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128})
    errs.push_back(homogeneity_error(sampled(h, example1), 2.0, 0.1));
  CHECK(errs[1] < errs[0]);
  CHECK(errs[2] < errs[1]);
  CHECK(errs[0] / errs[2] > 2.5);  // consistent with an O(h) envelope
}

TEST_CASE("smooth field with nonzero collapsed center has vanishing frequency") {
  const GridField u = sampled(1.0 / 64, [](const Vec& x) {
    return SpecPoint::collapsed(2, Vec{1.0 + x[0] * x[1]});
  });
  const Vec c{0.0, 0.0};
  const FrequencyProfile p =
      frequency_profile(u, c, default_radii(u.domain, c));
  REQUIRE(p.defined.front());
  REQUIRE(p.defined.back());
  CHECK(p.I.front() < 0.05);
  CHECK(p.I.front() < p.I.back());
}

TEST_CASE("radius validation and the degenerate flag") {
  const GridField u = sampled(1.0 / 16, [](const Vec& x) {
    const double t = std::max(0.0, std::hypot(x[0], x[1]) - 0.5);
    return SpecPoint::collapsed(2, Vec{t * t});
  });
  const Vec c{0.0, 0.0};
  CHECK_THROWS(frequency_profile(u, c, {0.5, 0.25}));       // not increasing
  CHECK_THROWS(frequency_profile(u, c, {0.5, 1.5}));        // outside
  CHECK_THROWS(frequency_profile(u, Vec{0.9, 0.0}, {0.5})); // past the rim

  // H vanishes on small circles although u is nonzero near the rim
  const FrequencyProfile p = frequency_profile(u, c, {0.25, 0.9});
  CHECK(p.degenerate);
  CHECK(!p.defined[0]);
  CHECK(p.defined[1]);
}

TEST_CASE("frequency is monotone on solver output") {
  const double h = 1.0 / 32;
  const GridField u = solve_dirichlet(sampled(h, example1));
  const Vec c{0.0, 0.0};
  const FrequencyProfile p =
      frequency_profile(u, c, default_radii(u.domain, c));
  const MonotoneReport rep = check_monotone(p, 1e-3 + 2.0 * h);
  CHECK(rep.ok);
  CHECK(rep.violations.empty());
}

TEST_CASE("identity residuals vanish on a constant field") {
  const GridField u = sampled(1.0 / 16, [](const Vec&) {
    return SpecPoint::collapsed(2, Vec{0.7});
  });
  const IdentityResiduals res =
      key_identity_residuals(u, Vec{0.0, 0.0}, 0.5);
  CHECK(res.dD < 1e-10);
  CHECK(res.dH < 1e-10);
  CHECK(res.outer < 1e-10);
}

TEST_CASE("identity residuals on the linear field at fine resolution") {
  const Vec a{0.6, 0.8};
  const GridField u = sampled(1.0 / 128, [&](const Vec& x) {
    return SpecPoint::collapsed(2, Vec{a[0] * x[0] + a[1] * x[1]});
  });
  const IdentityResiduals res =
      key_identity_residuals(u, Vec{0.0, 0.0}, 0.5);
  CHECK(res.dD < 1e-3);
  CHECK(res.dH < 1e-3);
  CHECK(res.outer < 1e-3);
}

TEST_CASE("identity residuals shrink under refinement on the example-1 field") {
  std::vector<IdentityResiduals> res;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128})
    res.push_back(key_identity_residuals(sampled(h, example1), Vec{0.0, 0.0}, 0.5));
  CHECK(res[2].dD < res[0].dD);
  CHECK(res[2].dH < res[0].dH);
  CHECK(res[2].outer < res[0].outer);
}

TEST_CASE("identity residuals reject radii near the center or the rim") {
  const GridField u = sampled(1.0 / 16, example1);
  CHECK_THROWS(key_identity_residuals(u, Vec{0.0, 0.0}, 2.0 / 16));
  CHECK_THROWS(key_identity_residuals(u, Vec{0.0, 0.0}, 0.99));
}

TEST_CASE("energy decay exponent") {
  const Vec c{0.0, 0.0};
  SUBCASE("linear field reaches alpha = 1") {
    const GridField u = sampled(1.0 / 64, [](const Vec& x) {
      return SpecPoint::collapsed(2, Vec{x[0]});
    });
    CHECK(energy_decay_check(u, c, 1.0).ok);
    CHECK(largest_decay_alpha(u, c) == doctest::Approx(1.0));
  }
  SUBCASE("example-1 field reaches alpha = 1") {
    const GridField u = sampled(1.0 / 64, example1);
    CHECK(energy_decay_check(u, c, 1.0).ok);
    CHECK(largest_decay_alpha(u, c) == doctest::Approx(1.0));
  }
  SUBCASE("constant field passes vacuously") {
    const GridField u = sampled(1.0 / 16, [](const Vec&) {
      return SpecPoint::collapsed(2, Vec{0.3});
    });
    const DecayReport rep = energy_decay_check(u, c, 1.0);
    CHECK(rep.ok);
    CHECK(rep.worst_rel_drop == 0.0);
  }
}

TEST_CASE("height is controlled by r times the energy at collapsed centers") {
  // fitted C0 in H(r) <= C0 r D(r); for degree-d homogeneous fields the exact
  // ratio is 1/d, so the fit should stay of order one across the suite
  const Vec c{0.0, 0.0};
  std::vector<GridField> suite;
  suite.push_back(sampled(1.0 / 64, [](const Vec& x) {
    return SpecPoint::collapsed(2, Vec{x[0] + 0.5 * x[1]});
  }));
  suite.push_back(sampled(1.0 / 64, example1));
  suite.push_back(sampled(1.0 / 64, [](const Vec& x) {
    const double th = std::atan2(x[1], x[0]);
    const double r3 = std::pow(std::hypot(x[0], x[1]), 3);
    const double s = r3 * std::sin(3.0 * th);
    return two_sheets(-s, s, s > 0 ? +1 : -1);
  }));
  for (const GridField& u : suite) {
    const FrequencyProfile p =
        frequency_profile(u, c, default_radii(u.domain, c));
    double c0 = 0.0;
    for (std::size_t k = 0; k < p.radii.size(); ++k) {
      REQUIRE(p.D[k] > 0.0);
      c0 = std::max(c0, p.H[k] / (p.radii[k] * p.D[k]));
    }
    CHECK(c0 > 0.0);
    CHECK(c0 < 2.0);
  }
}
