#include "specq/luckhaus.hpp"

#include <cmath>
#include <stdexcept>

#include "specq/retraction.hpp"

namespace specq {

namespace {

void check_pair(const std::vector<SpecPoint>& f,
                const std::vector<SpecPoint>& g) {
  if (f.size() < 3 || f.size() != g.size())
    throw std::invalid_argument("luckhaus: need matching angular grids");
  for (std::size_t j = 0; j < f.size(); ++j)
    if (f[j].q() != f[0].q() || g[j].q() != f[0].q() ||
        f[j].n() != f[0].n() || g[j].n() != f[0].n())
      throw std::invalid_argument("luckhaus: inhomogeneous samples");
}

}  // namespace

AnnulusField luckhaus_interpolate(const std::vector<SpecPoint>& f,
                                  const std::vector<SpecPoint>& g,
                                  double lambda, int rings) {
  if (!(lambda > 0.0 && lambda < 0.5))
    throw std::invalid_argument("luckhaus: lambda must be in (0, 1/2)");
  check_pair(f, g);
  const int k = static_cast<int>(f.size());
  if (rings <= 1)
    rings = std::max(2, static_cast<int>(std::lround(lambda * k /
                                                     (2.0 * M_PI))) +
                            2);

  const EmbedSpace sp = EmbedSpace::make(f[0].q(), f[0].n());
  AnnulusField u;
  u.q = f[0].q();
  u.n = f[0].n();
  u.lambda = lambda;
  u.rings = rings;
  u.k = k;
  u.values.reserve(static_cast<std::size_t>(rings) * k);
  for (int r = 0; r < rings; ++r) {
    const double s = static_cast<double>(r) / (rings - 1);
    for (int j = 0; j < k; ++j) {
      const Vec ff = sp.to_flat(f[j]);
      const Vec gg = sp.to_flat(g[j]);
      Vec mix(ff.size());
      for (std::size_t c = 0; c < mix.size(); ++c)
        mix[c] = s * ff[c] + (1.0 - s) * gg[c];
      u.values.push_back(sp.from_flat(sp.project(mix)));
    }
  }
  return u;
}

double annulus_energy(const AnnulusField& u) {
  const double dth = 2.0 * M_PI / u.k;
  const double dr = u.lambda / (u.rings - 1);
  double acc = 0.0;
  for (int r = 0; r < u.rings; ++r) {
    const double rho = u.radius(r);
    const double band = (r == 0 || r == u.rings - 1) ? 0.5 * dr : dr;
    for (int j = 0; j < u.k; ++j) {
      const double ga = metric_Gs(u.at(r, j), u.at(r, (j + 1) % u.k));
      acc += ga * ga / (rho * dth) * band;  // angular edge, cell rho band dth
      if (r + 1 < u.rings) {
        const double gr = metric_Gs(u.at(r, j), u.at(r + 1, j));
        acc += gr * gr / dr * (rho + 0.5 * dr) * dth;
      }
    }
  }
  return acc;
}

double circle_energy(const std::vector<SpecPoint>& f) {
  const int k = static_cast<int>(f.size());
  const double dth = 2.0 * M_PI / k;
  double acc = 0.0;
  for (int j = 0; j < k; ++j) {
    const double g = metric_Gs(f[j], f[(j + 1) % k]);
    acc += g * g / dth;
  }
  return acc;
}

double circle_gs2(const std::vector<SpecPoint>& f,
                  const std::vector<SpecPoint>& g) {
  check_pair(f, g);
  const double dth = 2.0 * M_PI / f.size();
  double acc = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double d = metric_Gs(f[j], g[j]);
    acc += d * d * dth;
  }
  return acc;
}

}  // namespace specq
