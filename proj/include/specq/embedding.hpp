#ifndef SPECQ_EMBEDDING_HPP
#define SPECQ_EMBEDDING_HPP

#include <memory>
#include <utility>

#include "specq/qpoint.hpp"
#include "specq/specpoint.hpp"

namespace specq {

// Pluggable biLipschitz embedding of the classical Q-point space into R^N,
// with a Lipschitz retraction of R^N onto the image. Required properties:
// |xi(P)| = |P|, xi(lambda P) = lambda xi(P), rho is the identity on the
// image.
class Embedding {
 public:
  virtual ~Embedding() = default;
  virtual int dim() const = 0;  // N
  virtual Vec forward(const QPoint& p) const = 0;
  virtual QPoint inverse(const Vec& x) const = 0;  // defined on the image
  virtual Vec retract(const Vec& x) const = 0;     // rho : R^N -> image
};

// n = 1 instantiation: sorting is an isometry of (A_Q(R), G) onto the
// monotone cone {x_1 <= ... <= x_Q}; the nearest-point projection onto that
// cone is isotonic regression (pool-adjacent-violators), which is
// 1-Lipschitz.
class SortedEmbedding final : public Embedding {
 public:
  explicit SortedEmbedding(int q) : q_(q) {}
  int dim() const override { return q_; }
  Vec forward(const QPoint& p) const override;
  QPoint inverse(const Vec& x) const override;
  Vec retract(const Vec& x) const override;

 private:
  int q_;
};

// Euclidean projection onto the nondecreasing cone (unit weights).
Vec isotonic_regression(const Vec& y);

struct UnsupportedEmbedding : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Registry keyed by (Q, n); read-only after initialization. Returns null
// when no embedding is known for the pair.
const Embedding* find_embedding(int q, int n);
// Throwing variant.
const Embedding& require_embedding(int q, int n);

}  // namespace specq

#endif
