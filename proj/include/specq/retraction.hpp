#ifndef SPECQ_RETRACTION_HPP
#define SPECQ_RETRACTION_HPP

#include <utility>

#include "specq/embedding.hpp"
#include "specq/specpoint.hpp"

namespace specq {

// Image of a special Q-point under zeta: a = xi(v), b = xi(w) for the
// centered components (at least one of them zero), z the barycenter. The
// stored z is unscaled; flat() weights it by sqrt(Q) so that the plain
// Euclidean norm of the flat vector equals |P| and coordinatewise Dirichlet
// energies agree with the intrinsic one.
struct EmbeddedPoint {
  Vec a;
  Vec b;
  Vec z;
};

EmbeddedPoint zeta(const SpecPoint& p, const Embedding& emb);
SpecPoint zeta_inv(const EmbeddedPoint& e, const Embedding& emb);

Vec flat(const EmbeddedPoint& e, int q);
EmbeddedPoint unflat(const Vec& x, int big_n, int n, int q);

double embedded_norm(const EmbeddedPoint& e, int q);
double embedded_dist(const EmbeddedPoint& e, const EmbeddedPoint& f, int q);

// rho' = xi o recentre o xi^{-1} o rho: retraction of R^N onto the embedded
// image of the centered classical Q-points.
Vec rho_prime(const Vec& x, const Embedding& emb);

// Sqrt(2)-Lipschitz retraction of R^N x R^N onto the union of the two axes.
std::pair<Vec, Vec> R_pair(const Vec& x, const Vec& y);

// Cutoff: 0 on [0, delta], affine on [delta, 1], 1 beyond.
double chi_delta(double s, double delta);

// Almost-retraction onto the axes: each component is rescaled radially to
// norm chi_delta(|.|) and the result passed through R_pair. On the region
// min(|x|,|y|) <= delta^2 this reproduces the explicit two-branch formula;
// outside it is one deterministic Lipschitz completion of that formula.
std::pair<Vec, Vec> R_delta(const Vec& x, const Vec& y, double delta);

// True when (a, b) lies on the embedded image up to roundoff: one component
// exactly zero, the other fixed by the raw retraction and centered.
bool embedded_on_image(const EmbeddedPoint& p, const Embedding& emb);

// varrho = (R_pair o (rho' x rho')) x id. Exact identity on the embedded
// image (membership is detected and the input returned untouched).
EmbeddedPoint varrho(const EmbeddedPoint& p, const Embedding& emb);

// varrho_star = (R_delta o (rho' x rho')) x id.
EmbeddedPoint varrho_star(const EmbeddedPoint& p, double delta,
                          const Embedding& emb);

// Convenience bundle for working in flat coordinates R^{2N+n}.
struct EmbedSpace {
  int q = 0;
  int n = 0;
  const Embedding* emb = nullptr;

  static EmbedSpace make(int q, int n) {
    return EmbedSpace{q, n, &require_embedding(q, n)};
  }
  int big_n() const { return emb->dim(); }
  int flat_dim() const { return 2 * emb->dim() + n; }

  Vec to_flat(const SpecPoint& p) const { return flat(zeta(p, *emb), q); }
  SpecPoint from_flat(const Vec& x) const {
    return zeta_inv(unflat(x, big_n(), n, q), *emb);
  }
  Vec project(const Vec& x) const {
    EmbeddedPoint e = unflat(x, big_n(), n, q);
    if (embedded_on_image(e, *emb)) return x;  // exact identity on Q
    return flat(varrho(std::move(e), *emb), q);
  }
  Vec project_star(const Vec& x, double delta) const {
    return flat(varrho_star(unflat(x, big_n(), n, q), delta, *emb), q);
  }
};

}  // namespace specq

#endif
