#include "specq/retraction.hpp"

#include <algorithm>
#include <cmath>

namespace specq {

namespace {

bool all_zero(const Vec& x) {
  return std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; });
}

// True when x lies on the embedded centered image up to roundoff: fixed by
// the raw retraction and with negligible barycenter.
bool on_centered_image(const Vec& x, const Embedding& emb) {
  if (emb.retract(x) != x) return false;
  double amax = 0.0;
  for (double v : x) amax = std::max(amax, std::abs(v));
  return norm(eta(emb.inverse(x))) <= 1e-12 * (1.0 + amax);
}

}  // namespace

EmbeddedPoint zeta(const SpecPoint& p, const Embedding& emb) {
  TripleForm t = iota(p);
  return EmbeddedPoint{emb.forward(t.v), emb.forward(t.w), t.z};
}

SpecPoint zeta_inv(const EmbeddedPoint& e, const Embedding& emb) {
  return iota_inv(TripleForm{emb.inverse(e.a), emb.inverse(e.b), e.z});
}

Vec flat(const EmbeddedPoint& e, int q) {
  const double s = std::sqrt(static_cast<double>(q));
  Vec x;
  x.reserve(e.a.size() + e.b.size() + e.z.size());
  x.insert(x.end(), e.a.begin(), e.a.end());
  x.insert(x.end(), e.b.begin(), e.b.end());
  for (double v : e.z) x.push_back(s * v);
  return x;
}

EmbeddedPoint unflat(const Vec& x, int big_n, int n, int q) {
  if (static_cast<int>(x.size()) != 2 * big_n + n)
    throw DimensionMismatch("unflat: wrong flat dimension");
  const double s = 1.0 / std::sqrt(static_cast<double>(q));
  EmbeddedPoint e;
  e.a.assign(x.begin(), x.begin() + big_n);
  e.b.assign(x.begin() + big_n, x.begin() + 2 * big_n);
  e.z.reserve(n);
  for (int i = 0; i < n; ++i) e.z.push_back(s * x[2 * big_n + i]);
  return e;
}

double embedded_norm(const EmbeddedPoint& e, int q) {
  return std::sqrt(norm2(e.a) + norm2(e.b) + q * norm2(e.z));
}

double embedded_dist(const EmbeddedPoint& e, const EmbeddedPoint& f, int q) {
  return std::sqrt(dist2(e.a, f.a) + dist2(e.b, f.b) + q * dist2(e.z, f.z));
}

Vec rho_prime(const Vec& x, const Embedding& emb) {
  Vec r = emb.retract(x);
  QPoint p = emb.inverse(r);
  return emb.forward(translate(p, eta(p), -1));
}

std::pair<Vec, Vec> R_pair(const Vec& x, const Vec& y) {
  const double nx = norm(x), ny = norm(y);
  Vec zero(x.size(), 0.0);
  if (nx > ny) return {scale(x, 1.0 - ny / nx), std::move(zero)};
  if (ny > nx) return {std::move(zero), scale(y, 1.0 - nx / ny)};
  return {zero, Vec(y.size(), 0.0)};
}

double chi_delta(double s, double delta) {
  if (s <= delta) return 0.0;
  if (s >= 1.0) return 1.0;
  return (s - delta) / (1.0 - delta);
}

std::pair<Vec, Vec> R_delta(const Vec& x, const Vec& y, double delta) {
  auto clamp = [delta](const Vec& v) -> Vec {
    const double nv = norm(v);
    if (nv == 0.0) return Vec(v.size(), 0.0);
    return scale(v, chi_delta(nv, delta) / nv);
  };
  return R_pair(clamp(x), clamp(y));
}

bool embedded_on_image(const EmbeddedPoint& p, const Embedding& emb) {
  const bool az = all_zero(p.a), bz = all_zero(p.b);
  return (az && bz) || (bz && on_centered_image(p.a, emb)) ||
         (az && on_centered_image(p.b, emb));
}

EmbeddedPoint varrho(const EmbeddedPoint& p, const Embedding& emb) {
  if (embedded_on_image(p, emb)) return p;
  auto [a, b] = R_pair(rho_prime(p.a, emb), rho_prime(p.b, emb));
  return EmbeddedPoint{std::move(a), std::move(b), p.z};
}

EmbeddedPoint varrho_star(const EmbeddedPoint& p, double delta,
                          const Embedding& emb) {
  auto [a, b] = R_delta(rho_prime(p.a, emb), rho_prime(p.b, emb), delta);
  return EmbeddedPoint{std::move(a), std::move(b), p.z};
}

}  // namespace specq
