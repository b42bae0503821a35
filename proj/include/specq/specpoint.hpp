#ifndef SPECQ_SPECPOINT_HPP
#define SPECQ_SPECPOINT_HPP

#include <stdexcept>

#include "specq/qpoint.hpp"

namespace specq {

// A special Q-point: a classical Q-point together with a sign. Collapsed
// values (all atoms equal) are identified across signs; the stored sign of a
// collapsed point is normalized to +1 at construction so that equality and
// hashing need no quotient logic.
class SpecPoint {
 public:
  SpecPoint() = default;
  SpecPoint(QPoint base, int sign);

  // Q[[p]], sign-free.
  static SpecPoint collapsed(int q, const Vec& p) {
    return SpecPoint(QPoint::collapsed(q, p), +1);
  }

  const QPoint& base() const { return base_; }
  int sign() const { return sign_; }
  int q() const { return base_.q(); }
  int n() const { return base_.n(); }
  bool is_collapsed() const { return collapsed_; }

  bool operator==(const SpecPoint& o) const {
    return sign_ == o.sign_ && base_ == o.base_;
  }
  bool operator!=(const SpecPoint& o) const { return !(*this == o); }

 private:
  QPoint base_;
  int sign_ = +1;
  bool collapsed_ = true;
};

// The product representation (v, w, z): two barycenter-free classical
// Q-points, at least one of them zero, plus the barycenter.
struct TripleForm {
  QPoint v;
  QPoint w;
  Vec z;
};

enum class RegionLabel { Positive, Negative, Collapsed };

struct CompatibilityViolation : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Metric on special Q-points: G on matching signs, the recentred sum of
// squares across signs. Collapsed points match either sign.
double metric_Gs(const SpecPoint& p, const SpecPoint& r);

TripleForm iota(const SpecPoint& p);
// Requires eta(v) = eta(w) = 0 and min(|v|,|w|) = 0 within tolerance 1e-9.
SpecPoint iota_inv(const TripleForm& t);

RegionLabel classify(const SpecPoint& p);

// Positive part: atoms of the base for non-negative points, Q[[eta]] for
// negative ones; symmetrically for the negative part.
QPoint positive_part(const SpecPoint& p);
QPoint negative_part(const SpecPoint& p);

// Pointwise gluing of a compatible triple (g+, g-, g). Requires
// sep(gplus) = 0 or sep(gminus) = 0 and the matching barycenter condition
// within tolerance 1e-9.
SpecPoint join_triple(const QPoint& gplus, const QPoint& gminus, const Vec& g);

SpecPoint cone_scale(const SpecPoint& p, double lambda);
// Radial projection onto {|P| <= M}; 1-Lipschitz.
SpecPoint cone_project(const SpecPoint& p, double m_bound);

inline double spec_norm(const SpecPoint& p) { return qnorm(p.base()); }

SpecPoint translate(const SpecPoint& p, const Vec& v, int dir = +1);

}  // namespace specq

#endif
