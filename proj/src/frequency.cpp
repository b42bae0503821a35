#include "specq/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "specq/retraction.hpp"

namespace specq {

namespace {

double boundary_dist(const GridDomain& d, const Vec& x0) {
  if (static_cast<int>(x0.size()) != d.m())
    throw std::invalid_argument("frequency: center dimension mismatch");
  if (d.shape() == DomainShape::Disk) {
    double rr = 0.0;
    for (double c : x0) rr += c * c;
    return d.extent() - std::sqrt(rr);
  }
  double dist = d.extent();
  for (double c : x0) dist = std::min(dist, d.extent() - std::abs(c));
  return dist;
}

// Fraction of the edge's dual cell lying inside B_r(x0); the cell is the
// h x h/2-per-side rectangle around the edge, translated so the ball sits at
// the origin.
double ball_fraction(const GridDomain& d, int e, const Vec& x0, double r) {
  const auto [na, nb] = d.edges()[e];
  const int ax = d.edge_axes()[e];
  const Vec ca = d.coord(na);
  const double h = d.h();
  Vec lo = ca, hi = ca;
  hi[ax] += h;
  lo[1 - ax] -= 0.5 * h;
  hi[1 - ax] += 0.5 * h;
  (void)nb;
  // cheap accept/reject before the quadrature
  double near = 0.0, far = 0.0;
  for (int a = 0; a < 2; ++a) {
    const double lo_a = lo[a] - x0[a], hi_a = hi[a] - x0[a];
    const double n = std::max({lo_a, -hi_a, 0.0});
    const double f = std::max(std::abs(lo_a), std::abs(hi_a));
    near += n * n;
    far += f * f;
  }
  if (far <= r * r) return 1.0;
  if (near >= r * r) return 0.0;
  return rect_disk_area(lo[0] - x0[0], hi[0] - x0[0], lo[1] - x0[1],
                        hi[1] - x0[1], r) /
         (h * h);
}

double ball_energy(const GridField& u, const Vec& x0, double r) {
  const GridDomain& d = u.domain;
  const auto& edges = d.edges();
  const auto& w = d.edge_weights();
  double acc = 0.0;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const double frac = std::min(w[e], ball_fraction(d, e, x0, r));
    if (frac <= 0.0) continue;
    const double g = metric_Gs(u.values[edges[e].first], u.values[edges[e].second]);
    acc += frac * g * g;
  }
  return acc;  // m = 2, so the h^{m-2} prefactor is 1
}

int circle_samples(const GridDomain& d, double r) {
  return std::max(64, static_cast<int>(std::ceil(2.0 * M_PI * r / d.h())));
}

double boundary_height(const GridField& u, const Vec& x0, double r) {
  const int k = circle_samples(u.domain, r);
  double acc = 0.0;
  for (int i = 0; i < k; ++i) {
    const double th = 2.0 * M_PI * i / k;
    const SpecPoint p = interpolate(
        u, Vec{x0[0] + r * std::cos(th), x0[1] + r * std::sin(th)});
    const double nn = spec_norm(p);
    acc += nn * nn;
  }
  return acc * 2.0 * M_PI * r / k;
}

bool decay_ok(const FrequencyProfile& p, double alpha, double rel_tol,
              double* worst) {
  const int m = 2;
  double w = 0.0;
  bool ok = true;
  for (std::size_t k = 0; k + 1 < p.radii.size(); ++k) {
    const double ga = std::pow(p.radii[k], 2 - m - 2 * alpha) * p.D[k];
    const double gb = std::pow(p.radii[k + 1], 2 - m - 2 * alpha) * p.D[k + 1];
    if (ga <= 1e-14) continue;  // vacuous on (numerically) energy-free balls
    const double drop = (ga - gb) / ga;
    w = std::max(w, drop);
    if (drop > rel_tol) ok = false;
  }
  if (worst) *worst = w;
  return ok;
}

}  // namespace

std::vector<double> default_radii(const GridDomain& d, const Vec& x0,
                                  int count) {
  const double h = d.h();
  const double lo = 4.0 * h;
  const double hi = boundary_dist(d, x0) - 4.0 * h;
  if (count < 2 || hi <= lo)
    throw std::invalid_argument("default_radii: no admissible radius range");
  std::vector<double> r(count);
  for (int i = 0; i < count; ++i)
    r[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
  return r;
}

FrequencyProfile frequency_profile(const GridField& u, const Vec& x0,
                                   const std::vector<double>& radii) {
  const GridDomain& d = u.domain;
  if (d.m() != 2) throw std::invalid_argument("frequency_profile: m = 2 only");
  const double dist = boundary_dist(d, x0);
  for (std::size_t k = 0; k < radii.size(); ++k) {
    if (radii[k] <= 0.0 || radii[k] >= dist)
      throw std::invalid_argument("frequency_profile: radius out of range");
    if (k > 0 && radii[k] <= radii[k - 1])
      throw std::invalid_argument("frequency_profile: radii must increase");
  }

  FrequencyProfile p;
  p.center = x0;
  p.radii = radii;
  p.D.reserve(radii.size());
  p.H.reserve(radii.size());
  p.I.assign(radii.size(), 0.0);
  p.defined.assign(radii.size(), 0);

  bool nonzero = false;
  for (int node = 0; node < d.size(); ++node)
    if (d.active(node) && spec_norm(u.values[node]) > 1e-12) nonzero = true;

  for (std::size_t k = 0; k < radii.size(); ++k) {
    p.D.push_back(ball_energy(u, x0, radii[k]));
    p.H.push_back(boundary_height(u, x0, radii[k]));
    if (p.H[k] >= 1e-14) {
      p.I[k] = radii[k] * p.D[k] / p.H[k];
      p.defined[k] = 1;
    } else if (nonzero) {
      p.degenerate = true;
    }
  }
  return p;
}

MonotoneReport check_monotone(const FrequencyProfile& p, double tol) {
  MonotoneReport rep;
  int prev = -1;
  for (std::size_t k = 0; k < p.radii.size(); ++k) {
    if (!p.defined[k]) continue;
    if (prev >= 0) {
      const double drop = p.I[prev] - p.I[k];
      rep.worst_drop = std::max(rep.worst_drop, drop);
      if (drop > tol) {
        rep.ok = false;
        rep.violations.push_back(static_cast<int>(k));
      }
    }
    prev = static_cast<int>(k);
  }
  return rep;
}

IdentityResiduals key_identity_residuals(const GridField& u, const Vec& x0,
                                         double r) {
  const GridDomain& d = u.domain;
  if (d.m() != 2)
    throw std::invalid_argument("key_identity_residuals: m = 2 only");
  const double h = d.h();
  const double dist = boundary_dist(d, x0);
  if (r < 4.0 * h || r + 4.0 * h > dist)
    throw std::invalid_argument("key_identity_residuals: radius too close to "
                                "the center or the boundary");

  const int m = 2;
  const double D0 = ball_energy(u, x0, r);
  const double Dp = ball_energy(u, x0, r + h);
  const double Dm = ball_energy(u, x0, r - h);
  const double H0 = boundary_height(u, x0, r);
  const double Hp = boundary_height(u, x0, r + h);
  const double Hm = boundary_height(u, x0, r - h);
  const double dD = (Dp - Dm) / (2.0 * h);
  const double dH = (Hp - Hm) / (2.0 * h);

  // radial derivative of the flat coordinates across r +- h/2
  const EmbedSpace sp = EmbedSpace::make(u.q, u.n);
  const int k = circle_samples(d, r);
  double flux = 0.0, pairing = 0.0;
  for (int i = 0; i < k; ++i) {
    const double th = 2.0 * M_PI * i / k;
    const Vec e{std::cos(th), std::sin(th)};
    auto flat_at = [&](double rho) {
      return sp.to_flat(
          interpolate(u, Vec{x0[0] + rho * e[0], x0[1] + rho * e[1]}));
    };
    const Vec fin = flat_at(r - 0.5 * h);
    const Vec fout = flat_at(r + 0.5 * h);
    const Vec fmid = flat_at(r);
    double nn = 0.0, pr = 0.0;
    for (std::size_t c = 0; c < fmid.size(); ++c) {
      const double dn = (fout[c] - fin[c]) / h;
      nn += dn * dn;
      pr += dn * fmid[c];
    }
    flux += nn;
    pairing += pr;
  }
  const double circ = 2.0 * M_PI * r / k;
  flux *= circ;
  pairing *= circ;

  IdentityResiduals res;
  res.dD = std::abs(dD - ((m - 2) / r) * D0 - 2.0 * flux);
  res.dH = std::abs(dH - ((m - 1) / r) * H0 - 2.0 * D0);
  res.outer = std::abs(D0 - pairing);
  return res;
}

DecayReport energy_decay_check(const GridField& u, const Vec& x0, double alpha,
                               double rel_tol) {
  const FrequencyProfile p =
      frequency_profile(u, x0, default_radii(u.domain, x0));
  DecayReport rep;
  rep.alpha = alpha;
  rep.ok = decay_ok(p, alpha, rel_tol, &rep.worst_rel_drop);
  return rep;
}

double largest_decay_alpha(const GridField& u, const Vec& x0, double rel_tol) {
  const FrequencyProfile p =
      frequency_profile(u, x0, default_radii(u.domain, x0));
  if (decay_ok(p, 1.0, rel_tol, nullptr)) return 1.0;
  double lo = 0.0, hi = 1.0;  // decay_ok is monotone in alpha
  for (int it = 0; it < 40; ++it) {
    const double mid = 0.5 * (lo + hi);
    (decay_ok(p, mid, rel_tol, nullptr) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace specq
