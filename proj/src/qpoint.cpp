#include "specq/qpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "specq/assignment.hpp"

namespace specq {

QPoint::QPoint(std::vector<Vec> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("QPoint needs Q >= 1 atoms");
  n_ = static_cast<int>(atoms_[0].size());
  for (const Vec& a : atoms_) {
    if (static_cast<int>(a.size()) != n_)
      throw std::invalid_argument("QPoint atoms of mixed dimension");
  }
  canonicalize();
}

QPoint QPoint::collapsed(int q, const Vec& p) {
  return QPoint(std::vector<Vec>(q, p));
}

void QPoint::canonicalize() { std::sort(atoms_.begin(), atoms_.end()); }

Vec eta(const QPoint& s) {
  Vec m(s.n(), 0.0);
  for (const Vec& a : s.atoms()) axpy(1.0, a, m);
  return scale(std::move(m), 1.0 / s.q());
}

QPoint translate(const QPoint& s, const Vec& v, int sign) {
  std::vector<Vec> out;
  out.reserve(s.q());
  for (const Vec& a : s.atoms()) {
    Vec b = a;
    axpy(sign > 0 ? 1.0 : -1.0, v, b);
    out.push_back(std::move(b));
  }
  return QPoint(std::move(out));
}

double qnorm2(const QPoint& s) {
  double t = 0.0;
  for (const Vec& a : s.atoms()) t += norm2(a);
  return t;
}

double qnorm(const QPoint& s) { return std::sqrt(qnorm2(s)); }

std::vector<double> matching_cost(const QPoint& s, const QPoint& t) {
  const int q = s.q();
  std::vector<double> cost(static_cast<std::size_t>(q) * q);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) cost[i * q + j] = dist2(s.atom(i), t.atom(j));
  return cost;
}

namespace {

void check_dims(const QPoint& s, const QPoint& t) {
  if (s.q() != t.q() || s.n() != t.n())
    throw DimensionMismatch("metric_G: Q or n mismatch");
}

// Fix an argument order so that G(s,t) and G(t,s) sum the very same floats
// and symmetry holds bit for bit.
bool arg_swapped(const QPoint& s, const QPoint& t) {
  return t.atoms() < s.atoms();
}

}  // namespace

double metric_G(const QPoint& s, const QPoint& t) {
  check_dims(s, t);
  if (arg_swapped(s, t)) return metric_G(t, s);
  const int q = s.q();
  const auto cost = matching_cost(s, t);
  const auto perm =
      q <= 5 ? assign_brute_force(cost, q) : assign_hungarian(cost, q);
  return std::sqrt(assignment_cost(cost, q, perm));
}

double metric_G_hungarian(const QPoint& s, const QPoint& t) {
  check_dims(s, t);
  if (arg_swapped(s, t)) return metric_G_hungarian(t, s);
  const int q = s.q();
  const auto cost = matching_cost(s, t);
  return std::sqrt(assignment_cost(cost, q, assign_hungarian(cost, q)));
}

double sep(const QPoint& s) {
  double best = std::numeric_limits<double>::infinity();
  bool found = false;
  for (int i = 0; i < s.q(); ++i) {
    for (int j = i + 1; j < s.q(); ++j) {
      if (s.atom(i) == s.atom(j)) continue;
      best = std::min(best, dist(s.atom(i), s.atom(j)));
      found = true;
    }
  }
  return found ? best : 0.0;
}

}  // namespace specq
