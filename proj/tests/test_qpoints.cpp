#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "specq/assignment.hpp"
#include "specq/qpoint.hpp"

using namespace specq;

namespace {

QPoint random_qpoint(std::mt19937& rng, int q, int n, double spread = 2.0) {
  std::uniform_real_distribution<double> u(-spread, spread);
  std::vector<Vec> atoms(q, Vec(n));
  for (auto& a : atoms)
    for (double& v : a) v = u(rng);
  return QPoint(std::move(atoms));
}

QPoint qp1(std::initializer_list<double> vals) {
  std::vector<Vec> atoms;
  for (double v : vals) atoms.push_back(Vec{v});
  return QPoint(std::move(atoms));
}

}  // namespace

TEST_CASE("metric_G worked examples") {
  CHECK(metric_G(qp1({1, 3}), qp1({2, 2})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(metric_G(qp1({0, 4}), qp1({1, 2})) == doctest::Approx(std::sqrt(5.0)));
  const QPoint s = qp1({-1, 0.5, 2});
  CHECK(metric_G(s, s) == 0.0);
}

TEST_CASE("metric_G dimension mismatch") {
  CHECK_THROWS_AS(metric_G(qp1({0, 1}), qp1({0, 1, 2})), DimensionMismatch);
  CHECK_THROWS_AS(
      metric_G(qp1({0, 1}), QPoint(std::vector<Vec>{{0, 0}, {1, 1}})),
      DimensionMismatch);
}

TEST_CASE("sep examples") {
  CHECK(sep(qp1({1, 1})) == 0.0);
  CHECK(sep(qp1({0, 2})) == 2.0);
  CHECK(sep(qp1({0, 0, 5})) == 5.0);
}

TEST_CASE("canonical equality is multiset equality") {
  CHECK(qp1({3, 1, 2}) == qp1({1, 2, 3}));
  CHECK(qp1({1, 1, 2}) != qp1({1, 2, 2}));
}

TEST_CASE("metric axioms on random triples") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> qd(1, 4), nd(1, 3);
  for (int it = 0; it < 10000; ++it) {
    const int q = qd(rng), n = nd(rng);
    const QPoint a = random_qpoint(rng, q, n);
    const QPoint b = random_qpoint(rng, q, n);
    const QPoint c = random_qpoint(rng, q, n);
    const double ab = metric_G(a, b), ba = metric_G(b, a);
    CHECK(ab == ba);  // symmetry exact: same cost matrix transposed
    CHECK(metric_G(a, b) <= metric_G(a, c) + metric_G(c, b) + 1e-12);
    CHECK(metric_G(a, a) == 0.0);
  }
}

TEST_CASE("identity of indiscernibles under canonical equality") {
  std::mt19937 rng(99);
  for (int it = 0; it < 500; ++it) {
    const QPoint a = random_qpoint(rng, 3, 2);
    QPoint b = a;
    CHECK(metric_G(a, b) == 0.0);
    const QPoint c = random_qpoint(rng, 3, 2);
    if (a != c) CHECK(metric_G(a, c) > 0.0);
  }
}

TEST_CASE("Hungarian equals brute force exactly for Q <= 5") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> qd(1, 5), nd(1, 3);
  for (int it = 0; it < 1000; ++it) {
    const int q = qd(rng), n = nd(rng);
    const QPoint a = random_qpoint(rng, q, n);
    const QPoint b = random_qpoint(rng, q, n);
    const auto cost = matching_cost(a, b);
    const auto pb = assign_brute_force(cost, q);
    const auto ph = assign_hungarian(cost, q);
    CHECK(assignment_cost(cost, q, pb) == assignment_cost(cost, q, ph));
  }
}

TEST_CASE("Hungarian handles larger Q and degenerate ties") {
  std::mt19937 rng(31);
  for (int it = 0; it < 50; ++it) {
    const QPoint a = random_qpoint(rng, 9, 2);
    const QPoint b = random_qpoint(rng, 9, 2);
    CHECK(metric_G(a, b) == metric_G_hungarian(a, b));
    CHECK(metric_G(a, a) == 0.0);
  }
  // all-equal cost matrix: any permutation optimal
  std::vector<double> cost(49, 3.25);
  const auto p = assign_hungarian(cost, 7);
  CHECK(assignment_cost(cost, 7, p) == doctest::Approx(7 * 3.25));
}

TEST_CASE("splitting identity |S|^2 = |S - eta|^2 + Q|eta|^2") {
  std::mt19937 rng(5150);
  for (int it = 0; it < 2000; ++it) {
    const QPoint s = random_qpoint(rng, 4, 2);
    const Vec m = eta(s);
    const double lhs = qnorm2(s);
    const double rhs = qnorm2(translate(s, m, -1)) + s.q() * norm2(m);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("G splits into centered part plus barycenter part") {
  std::mt19937 rng(4242);
  for (int it = 0; it < 2000; ++it) {
    const QPoint a = random_qpoint(rng, 3, 3);
    const QPoint b = random_qpoint(rng, 3, 3);
    const QPoint a0 = translate(a, eta(a), -1);
    const QPoint b0 = translate(b, eta(b), -1);
    const double lhs = metric_G(a, b) * metric_G(a, b);
    const double rhs =
        metric_G(a0, b0) * metric_G(a0, b0) + a.q() * dist2(eta(a), eta(b));
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
  }
}

TEST_CASE("qnorm is distance to Q[[0]]") {
  std::mt19937 rng(808);
  for (int it = 0; it < 200; ++it) {
    const QPoint s = random_qpoint(rng, 4, 2);
    CHECK(qnorm(s) ==
          doctest::Approx(metric_G(s, QPoint(4, 2))).epsilon(1e-13));
  }
}

TEST_CASE("translate round trip and eta shift") {
  std::mt19937 rng(6);
  const QPoint s = random_qpoint(rng, 3, 2);
  const Vec v{0.3, -1.1};
  CHECK(metric_G(translate(translate(s, v, +1), v, -1), s) < 1e-14);
  const Vec m = eta(translate(s, v, +1));
  const Vec m0 = eta(s);
  CHECK(m[0] == doctest::Approx(m0[0] + v[0]).epsilon(1e-14));
  CHECK(m[1] == doctest::Approx(m0[1] + v[1]).epsilon(1e-14));
}
