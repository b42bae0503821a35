#include "specq/specpoint.hpp"

#include <algorithm>
#include <cmath>

namespace specq {

namespace {
constexpr double kCompatTol = 1e-9;
}

SpecPoint::SpecPoint(QPoint base, int sign)
    : base_(std::move(base)), sign_(sign >= 0 ? +1 : -1) {
  collapsed_ = sep(base_) == 0.0;
  if (collapsed_) sign_ = +1;
}

double metric_Gs(const SpecPoint& p, const SpecPoint& r) {
  if (p.q() != r.q() || p.n() != r.n())
    throw DimensionMismatch("metric_Gs: Q or n mismatch");
  // Canonical argument order for bit-exact symmetry.
  if (r.base().atoms() < p.base().atoms()) return metric_Gs(r, p);
  const bool same_sign =
      p.is_collapsed() || r.is_collapsed() || p.sign() == r.sign();
  if (same_sign) return metric_G(p.base(), r.base());
  const Vec ep = eta(p.base()), er = eta(r.base());
  const double a = qnorm2(translate(p.base(), ep, -1));
  const double b = qnorm2(translate(r.base(), er, -1));
  const double c = p.q() * dist2(ep, er);
  return std::sqrt(a + b + c);
}

TripleForm iota(const SpecPoint& p) {
  const Vec z = eta(p.base());
  QPoint centered = translate(p.base(), z, -1);
  QPoint zero(p.q(), p.n());
  if (p.sign() > 0) return TripleForm{std::move(centered), std::move(zero), z};
  return TripleForm{std::move(zero), std::move(centered), z};
}

SpecPoint iota_inv(const TripleForm& t) {
  const double nv = qnorm(t.v), nw = qnorm(t.w);
  if (std::min(nv, nw) > kCompatTol)
    throw std::invalid_argument("iota_inv: neither component vanishes");
  if (norm(eta(t.v)) > kCompatTol || norm(eta(t.w)) > kCompatTol)
    throw std::invalid_argument("iota_inv: components not barycenter-free");
  if (nw <= kCompatTol && nw <= nv)
    return SpecPoint(translate(t.v, t.z, +1), +1);
  return SpecPoint(translate(t.w, t.z, +1), -1);
}

RegionLabel classify(const SpecPoint& p) {
  if (p.is_collapsed()) return RegionLabel::Collapsed;
  return p.sign() > 0 ? RegionLabel::Positive : RegionLabel::Negative;
}

QPoint positive_part(const SpecPoint& p) {
  if (p.sign() > 0) return p.base();
  return QPoint::collapsed(p.q(), eta(p.base()));
}

QPoint negative_part(const SpecPoint& p) {
  if (p.sign() < 0 || p.is_collapsed()) return p.base();
  return QPoint::collapsed(p.q(), eta(p.base()));
}

SpecPoint join_triple(const QPoint& gplus, const QPoint& gminus, const Vec& g) {
  const double sp = sep(gplus), sm = sep(gminus);
  if (sp != 0.0 && sm != 0.0)
    throw CompatibilityViolation("join_triple: both separations positive");
  // Any genuine triple (f+, f-, eta o f) has both barycenters equal to g.
  if (dist(eta(gplus), g) > kCompatTol)
    throw CompatibilityViolation("join_triple: barycenter mismatch on g+");
  if (dist(eta(gminus), g) > kCompatTol)
    throw CompatibilityViolation("join_triple: barycenter mismatch on g-");
  if (sm == 0.0) return SpecPoint(gplus, +1);
  return SpecPoint(gminus, -1);
}

SpecPoint cone_scale(const SpecPoint& p, double lambda) {
  std::vector<Vec> atoms;
  atoms.reserve(p.q());
  for (const Vec& a : p.base().atoms()) atoms.push_back(scale(a, lambda));
  return SpecPoint(QPoint(std::move(atoms)), p.sign());
}

SpecPoint cone_project(const SpecPoint& p, double m_bound) {
  const double np = spec_norm(p);
  if (np <= m_bound) return p;
  return cone_scale(p, m_bound / np);
}

SpecPoint translate(const SpecPoint& p, const Vec& v, int dir) {
  return SpecPoint(translate(p.base(), v, dir), p.sign());
}

}  // namespace specq
