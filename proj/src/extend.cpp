#include "specq/extend.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "specq/retraction.hpp"

namespace specq {

GridField lipschitz_extend(const std::vector<std::pair<Vec, SpecPoint>>& data,
                           const GridDomain& dom) {
  if (data.empty()) throw std::invalid_argument("lipschitz_extend: no data");
  const int q = data[0].second.q(), n = data[0].second.n();
  const int m = dom.m();
  const EmbedSpace sp = EmbedSpace::make(q, n);

  std::vector<Vec> flats;
  double sup = 0.0;
  for (const auto& [site, p] : data) {
    if (static_cast<int>(site.size()) != m)
      throw std::invalid_argument("lipschitz_extend: site dimension mismatch");
    if (p.q() != q || p.n() != n)
      throw std::invalid_argument("lipschitz_extend: inhomogeneous data");
    flats.push_back(sp.to_flat(p));
    sup = std::max(sup, spec_norm(p));
  }

  // per-coordinate Lipschitz constants of the embedded data
  const int dim = sp.flat_dim();
  Vec lip(dim, 0.0);
  for (std::size_t i = 0; i < data.size(); ++i)
    for (std::size_t j = i + 1; j < data.size(); ++j) {
      Vec d = data[i].first;
      axpy(-1.0, data[j].first, d);
      const double dist = std::sqrt(dot(d, d));
      if (dist < 1e-14) continue;
      for (int c = 0; c < dim; ++c)
        lip[c] = std::max(lip[c], std::abs(flats[i][c] - flats[j][c]) / dist);
    }

  GridField out;
  out.domain = dom;
  out.q = q;
  out.n = n;
  out.values.assign(dom.size(), SpecPoint::collapsed(q, Vec(n, 0.0)));
  out.fixed.assign(dom.size(), 0);
  for (int node = 0; node < dom.size(); ++node) {
    if (!dom.active(node)) continue;
    const Vec x = dom.coord(node);
    Vec v(dim);
    for (int c = 0; c < dim; ++c) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < data.size(); ++i) {
        Vec d = x;
        axpy(-1.0, data[i].first, d);
        best = std::min(best, flats[i][c] + lip[c] * std::sqrt(dot(d, d)));
      }
      v[c] = best;
    }
    out.values[node] = cone_project(sp.from_flat(sp.project(v)), sup);
  }
  return out;
}

}  // namespace specq
