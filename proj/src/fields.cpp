#include "specq/fields.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specq {

namespace {

int checked_round(double x) { return static_cast<int>(std::lround(x)); }

}  // namespace

GridDomain GridDomain::square(int m, double h, double half_width) {
  if (m < 1 || h <= 0.0 || half_width <= 0.0)
    throw std::invalid_argument("GridDomain::square: bad parameters");
  GridDomain d;
  d.m_ = m;
  d.h_ = h;
  d.shape_ = DomainShape::Square;
  d.extent_ = half_width;
  const int steps = checked_round(2.0 * half_width / h);
  if (steps < 2) throw std::invalid_argument("GridDomain::square: h too big");
  d.dims_.assign(m, steps + 1);
  d.origin_.assign(m, -half_width);
  d.finalize([](const Vec&) { return true; });
  d.compute_weights([m, half_width](const Vec& lo, const Vec& hi) {
    double vol = 1.0, full = 1.0;
    for (int a = 0; a < m; ++a) {
      vol *= std::max(0.0, std::min(hi[a], half_width) -
                               std::max(lo[a], -half_width));
      full *= hi[a] - lo[a];
    }
    return vol / full;
  });
  return d;
}

double rect_disk_area(double x0, double x1, double y0, double y1, double r) {
  if (x0 >= r || x1 <= -r) return 0.0;
  x0 = std::max(x0, -r);
  x1 = std::min(x1, r);
  auto section = [&](double x) {
    const double s = std::sqrt(std::max(0.0, r * r - x * x));
    return std::max(0.0, std::min(y1, s) - std::max(y0, -s));
  };
  const int panels = 64;
  const double w = (x1 - x0) / panels;
  double acc = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double a = x0 + i * w;
    acc += (section(a) + 4.0 * section(a + 0.5 * w) + section(a + w)) / 6.0;
  }
  return acc * w;
}

GridDomain GridDomain::disk(double h, double radius) {
  if (h <= 0.0 || radius <= 0.0)
    throw std::invalid_argument("GridDomain::disk: bad parameters");
  GridDomain d;
  d.m_ = 2;
  d.h_ = h;
  d.shape_ = DomainShape::Disk;
  d.extent_ = radius;
  // One layer of nodes beyond the circle carries the boundary data, so the
  // dual cells of the active edges tile all of the disk and the clamped
  // weights integrate over the exact shape.
  const int imax = static_cast<int>(std::floor(radius / h + 1e-12)) + 1;
  d.dims_.assign(2, 2 * imax + 1);
  d.origin_.assign(2, -imax * h);
  const double rout2 = (radius + h) * (radius + h) * (1.0 + 1e-12);
  d.finalize([rout2](const Vec& x) { return norm2(x) <= rout2; });
  // every node on or outside the circle is boundary, not interior
  const double r2 = radius * radius * (1.0 - 1e-12);
  for (int node = 0; node < d.size_; ++node)
    if (d.mask_[node] == NodeKind::Interior && norm2(d.coord(node)) >= r2)
      d.mask_[node] = NodeKind::Boundary;
  d.compute_weights([radius](const Vec& lo, const Vec& hi) {
    const double full = (hi[0] - lo[0]) * (hi[1] - lo[1]);
    // fast path: rectangle entirely inside the disk
    double far2 = 0.0;
    for (int a = 0; a < 2; ++a) {
      const double c = std::max(std::abs(lo[a]), std::abs(hi[a]));
      far2 += c * c;
    }
    if (far2 <= radius * radius) return 1.0;
    return rect_disk_area(lo[0], hi[0], lo[1], hi[1], radius) / full;
  });
  return d;
}

void GridDomain::finalize(const std::function<bool(const Vec&)>& inside) {
  strides_.assign(m_, 1);
  for (int a = m_ - 2; a >= 0; --a) strides_[a] = strides_[a + 1] * dims_[a + 1];
  size_ = strides_[0] * dims_[0];
  mask_.assign(size_, NodeKind::Exterior);

  std::vector<int> idx(m_, 0);
  for (int node = 0; node < size_; ++node) {
    Vec x(m_);
    for (int a = 0; a < m_; ++a) x[a] = origin_[a] + idx[a] * h_;
    if (inside(x)) mask_[node] = NodeKind::Interior;
    for (int a = m_ - 1; a >= 0; --a) {
      if (++idx[a] < dims_[a]) break;
      idx[a] = 0;
    }
  }

  // boundary = active nodes touching the exterior (or lattice edge) along an
  // axis
  for (int node = 0; node < size_; ++node) {
    if (mask_[node] == NodeKind::Exterior) continue;
    bool edge = false;
    for (int a = 0; a < m_ && !edge; ++a)
      for (int dir : {-1, +1}) {
        const int nb = neighbor(node, a, dir);
        if (nb < 0 || mask_[nb] == NodeKind::Exterior) {
          edge = true;
          break;
        }
      }
    if (edge) mask_[node] = NodeKind::Boundary;
  }

  active_count_ = 0;
  for (int node = 0; node < size_; ++node)
    if (mask_[node] != NodeKind::Exterior) ++active_count_;

  edges_.clear();
  edge_axis_.clear();
  for (int node = 0; node < size_; ++node) {
    if (mask_[node] == NodeKind::Exterior) continue;
    for (int a = 0; a < m_; ++a) {
      const int nb = neighbor(node, a, +1);
      if (nb >= 0 && mask_[nb] != NodeKind::Exterior) {
        edges_.emplace_back(node, nb);
        edge_axis_.push_back(a);
      }
    }
  }
}

void GridDomain::compute_weights(
    const std::function<double(const Vec&, const Vec&)>& cell_fraction) {
  edge_weights_.resize(edges_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const int axis = edge_axis_[e];
    const Vec x = coord(edges_[e].first);
    Vec lo = x, hi = x;
    for (int a = 0; a < m_; ++a) {
      if (a == axis) {
        hi[a] += h_;
      } else {
        lo[a] -= 0.5 * h_;
        hi[a] += 0.5 * h_;
      }
    }
    edge_weights_[e] = cell_fraction(lo, hi);
  }
}

Vec GridDomain::coord(int node) const {
  Vec x(m_);
  for (int a = 0; a < m_; ++a)
    x[a] = origin_[a] + ((node / strides_[a]) % dims_[a]) * h_;
  return x;
}

int GridDomain::nearest(const Vec& x) const {
  int node = 0;
  for (int a = 0; a < m_; ++a) {
    const int i = checked_round((x[a] - origin_[a]) / h_);
    if (i < 0 || i >= dims_[a]) return -1;
    node += i * strides_[a];
  }
  return node;
}

int GridDomain::neighbor(int node, int axis, int dir) const {
  const int i = (node / strides_[axis]) % dims_[axis] + dir;
  if (i < 0 || i >= dims_[axis]) return -1;
  return node + dir * strides_[axis];
}

GridField GridField::constant(GridDomain d, const SpecPoint& value) {
  GridField f;
  f.q = value.q();
  f.n = value.n();
  f.values.assign(d.size(), value);
  f.fixed.assign(d.size(), 0);
  for (int node = 0; node < d.size(); ++node)
    if (d.kind(node) == NodeKind::Boundary) f.fixed[node] = 1;
  f.domain = std::move(d);
  return f;
}

GridField GridField::sample(GridDomain d,
                            const std::function<SpecPoint(const Vec&)>& f,
                            bool fix_boundary) {
  GridField out;
  out.values.resize(d.size());
  out.fixed.assign(d.size(), 0);
  bool first = true;
  for (int node = 0; node < d.size(); ++node) {
    if (!d.active(node)) continue;
    out.values[node] = f(d.coord(node));
    if (first) {
      out.q = out.values[node].q();
      out.n = out.values[node].n();
      first = false;
    }
    if (fix_boundary && d.kind(node) == NodeKind::Boundary)
      out.fixed[node] = 1;
  }
  // placeholders so inactive slots have consistent (Q, n)
  const SpecPoint zero = SpecPoint::collapsed(out.q, Vec(out.n, 0.0));
  for (int node = 0; node < d.size(); ++node)
    if (!d.active(node)) out.values[node] = zero;
  out.domain = std::move(d);
  return out;
}

double dirichlet_energy(const GridField& u) {
  const double hpow = std::pow(u.domain.h(), u.domain.m() - 2);
  const auto& edges = u.domain.edges();
  const auto& wts = u.domain.edge_weights();
  double e = 0.0;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double g = metric_Gs(u.values[edges[i].first], u.values[edges[i].second]);
    e += wts[i] * g * g;
  }
  return hpow * e;
}

EnergyBreakdown dirichlet_energy_density(const GridField& u) {
  const double w = std::pow(u.domain.h(), u.domain.m() - 2);
  EnergyBreakdown out;
  out.density.assign(u.domain.size(), 0.0);
  const auto& edges = u.domain.edges();
  const auto& wts = u.domain.edge_weights();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [a, b] = edges[i];
    const double g = metric_Gs(u.values[a], u.values[b]);
    const double e = w * wts[i] * g * g;
    out.total += e;
    out.density[a] += 0.5 * e;
    out.density[b] += 0.5 * e;
  }
  return out;
}

SplitEnergy split_energy_check(const GridField& u) {
  const double w = std::pow(u.domain.h(), u.domain.m() - 2);
  SplitEnergy s;
  const auto& edges = u.domain.edges();
  const auto& wts = u.domain.edge_weights();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [a, b] = edges[i];
    const SpecPoint &pa = u.values[a], &pb = u.values[b];
    const double g = metric_Gs(pa, pb);
    s.total += w * wts[i] * g * g;
    const Vec ea = eta(pa.base()), eb = eta(pb.base());
    const SpecPoint ca(translate(pa.base(), ea, -1), pa.sign());
    const SpecPoint cb(translate(pb.base(), eb, -1), pb.sign());
    const double gc = metric_Gs(ca, cb);
    s.centered += w * wts[i] * gc * gc;
    s.barycenter += w * wts[i] * dist2(ea, eb);
  }
  return s;
}

RegionReport regions(const GridField& u) {
  RegionReport r;
  r.labels.assign(u.domain.size(), RegionLabel::Collapsed);
  for (int node = 0; node < u.domain.size(); ++node)
    if (u.domain.active(node)) r.labels[node] = classify(u.values[node]);
  for (int node = 0; node < u.domain.size(); ++node) {
    if (!u.domain.active(node) || r.labels[node] != RegionLabel::Collapsed)
      continue;
    bool iface = false;
    for (int a = 0; a < u.domain.m() && !iface; ++a)
      for (int dir : {-1, +1}) {
        const int nb = u.domain.neighbor(node, a, dir);
        if (nb >= 0 && u.domain.active(nb) &&
            r.labels[nb] != RegionLabel::Collapsed) {
          iface = true;
          break;
        }
      }
    if (iface) r.interface_nodes.push_back(node);
  }
  return r;
}

SpecPoint interpolate(const GridField& u, const Vec& x) {
  const GridDomain& d = u.domain;
  if (d.m() != 2) throw std::invalid_argument("interpolate: m = 2 only");
  const EmbedSpace sp = EmbedSpace::make(u.q, u.n);
  const int near = d.nearest(x);
  if (near < 0) throw std::invalid_argument("interpolate: point off lattice");
  Vec cn = d.coord(near);
  int base = near;
  double fx = (x[0] - cn[0]) / d.h(), fy = (x[1] - cn[1]) / d.h();
  if (fx < 0) {
    base = d.neighbor(base, 0, -1);
    fx += 1.0;
  }
  if (fy < 0) {
    base = d.neighbor(base, 1, -1);
    fy += 1.0;
  }
  if (base < 0) throw std::invalid_argument("interpolate: point off lattice");
  const int bx = d.neighbor(base, 0, +1);
  const int by = d.neighbor(base, 1, +1);
  const int bxy = bx >= 0 ? d.neighbor(bx, 1, +1) : -1;
  for (int c : {base, bx, by, bxy})
    if (c < 0 || !d.active(c))
      throw std::invalid_argument("interpolate: cell not fully inside domain");
  const Vec f00 = sp.to_flat(u.values[base]);
  const Vec f10 = sp.to_flat(u.values[bx]);
  const Vec f01 = sp.to_flat(u.values[by]);
  const Vec f11 = sp.to_flat(u.values[bxy]);
  Vec w(f00.size(), 0.0);
  for (std::size_t i = 0; i < w.size(); ++i)
    w[i] = (1 - fx) * (1 - fy) * f00[i] + fx * (1 - fy) * f10[i] +
           (1 - fx) * fy * f01[i] + fx * fy * f11[i];
  return sp.from_flat(sp.project(w));
}

CircleTrace trace_circle(const GridField& u, double r, int k_samples) {
  const GridDomain& d = u.domain;
  if (d.shape() != DomainShape::Disk)
    throw std::invalid_argument("trace_circle: disk domains only");
  if (r <= 0.0 || r >= d.extent())
    throw std::invalid_argument("trace_circle: radius out of range");
  const int k =
      k_samples > 0
          ? k_samples
          : std::max(8, static_cast<int>(std::ceil(2.0 * M_PI * r / d.h())));
  CircleTrace t;
  t.r = r;
  t.angles.reserve(k);
  t.values.reserve(k);
  for (int i = 0; i < k; ++i) {
    const double th = 2.0 * M_PI * i / k;
    t.angles.push_back(th);
    t.values.push_back(
        interpolate(u, Vec{r * std::cos(th), r * std::sin(th)}));
  }
  return t;
}

}  // namespace specq
