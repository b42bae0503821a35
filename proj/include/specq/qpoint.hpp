#ifndef SPECQ_QPOINT_HPP
#define SPECQ_QPOINT_HPP

#include <stdexcept>
#include <vector>

#include "specq/vec.hpp"

namespace specq {

// Unordered Q-tuple of points in R^n with the optimal-matching metric.
// Atoms are kept in lexicographic order so that equality is multiset
// equality and the representation is deterministic.
class QPoint {
 public:
  QPoint() = default;
  QPoint(int q, int n) : n_(n), atoms_(q, Vec(n, 0.0)) {}
  explicit QPoint(std::vector<Vec> atoms);

  // Q copies of a single point.
  static QPoint collapsed(int q, const Vec& p);

  int q() const { return static_cast<int>(atoms_.size()); }
  int n() const { return n_; }
  const std::vector<Vec>& atoms() const { return atoms_; }
  const Vec& atom(int i) const { return atoms_[i]; }

  bool operator==(const QPoint& o) const {
    return n_ == o.n_ && atoms_ == o.atoms_;
  }
  bool operator!=(const QPoint& o) const { return !(*this == o); }

 private:
  void canonicalize();

  int n_ = 0;
  std::vector<Vec> atoms_;
};

// Barycenter (1/Q) sum of atoms.
Vec eta(const QPoint& s);

// Every atom shifted by sign*v (sign in {+1,-1}).
QPoint translate(const QPoint& s, const Vec& v, int sign = +1);

// |S| = G(S, Q[[0]]) = sqrt(sum |S_i|^2).
double qnorm(const QPoint& s);
double qnorm2(const QPoint& s);

// Optimal-matching distance. Exact brute force for Q <= 5, Hungarian above.
double metric_G(const QPoint& s, const QPoint& t);

// Same, forcing the Hungarian solver regardless of Q (used by tests).
double metric_G_hungarian(const QPoint& s, const QPoint& t);

// Least distance between distinct atom values; 0 when all atoms coincide.
double sep(const QPoint& s);

// Squared-distance cost matrix between the atoms of s and t, row-major.
std::vector<double> matching_cost(const QPoint& s, const QPoint& t);

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace specq

#endif
