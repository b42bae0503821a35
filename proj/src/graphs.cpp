#include "specq/graphs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "specq/specpoint.hpp"

namespace specq {

namespace {

// ---------------------------------------------------------------- quadrature

struct GaussRule {
  std::vector<double> node, weight;  // on [-1, 1]
};

GaussRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order < 1");
  GaussRule r;
  r.node.resize(order);
  r.weight.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      if (order == 1) p1 = x, p0 = 1.0;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      const double pn = order == 1 ? x : p1;
      const double pm = order == 1 ? 1.0 : p0;
      dp = order * (x * pn - pm) / (x * x - 1.0);
      const double dx = pn / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    r.node[i] = x;
    r.weight[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

// Chart from quadrature coordinates (u, v) to the plane, with Jacobian.
struct Chart {
  double u0, u1, v0, v1;
  bool polar = false;  // (u, v) = (r, theta)
  Vec map(double u, double v) const {
    if (polar) return Vec{u * std::cos(v), u * std::sin(v)};
    return Vec{u, v};
  }
  double jac(double u, double) const { return polar ? u : 1.0; }
};

Chart chart_of(const GraphDomain& om) {
  Chart ch;
  if (om.shape == DomainShape::Disk) {
    ch.polar = true;
    ch.u0 = 0.0;
    ch.u1 = om.extent;
    ch.v0 = 0.0;
    ch.v1 = 2.0 * M_PI;
  } else {
    ch.u0 = ch.v0 = -om.extent;
    ch.u1 = ch.v1 = om.extent;
  }
  return ch;
}

using Integrand = std::function<double(const Vec&)>;
using Predicate = std::function<double(const Vec&)>;

bool cell_mixed(const Chart& ch, double u0, double u1, double v0, double v1,
                const std::vector<Predicate>& preds) {
  for (const Predicate& p : preds) {
    int pos = 0, neg = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double s = p(ch.map(u0 + 0.5 * i * (u1 - u0),
                                  v0 + 0.5 * j * (v1 - v0)));
        (s >= 0.0 ? pos : neg)++;
      }
    if (pos && neg) return true;
  }
  return false;
}

double cell_quad(const Chart& ch, double u0, double u1, double v0, double v1,
                 const GaussRule& g, const Integrand& f) {
  const double su = 0.5 * (u1 - u0), sv = 0.5 * (v1 - v0);
  double acc = 0.0;
  for (std::size_t i = 0; i < g.node.size(); ++i)
    for (std::size_t j = 0; j < g.node.size(); ++j) {
      const double u = 0.5 * (u0 + u1) + su * g.node[i];
      const double v = 0.5 * (v0 + v1) + sv * g.node[j];
      acc += g.weight[i] * g.weight[j] * f(ch.map(u, v)) * ch.jac(u, v);
    }
  return acc * su * sv;
}

double adapt_cell(const Chart& ch, double u0, double u1, double v0, double v1,
                  int depth, const GaussRule& g, const Integrand& f,
                  const std::vector<Predicate>& preds) {
  if (depth > 0 && cell_mixed(ch, u0, u1, v0, v1, preds)) {
    const double um = 0.5 * (u0 + u1), vm = 0.5 * (v0 + v1);
    return adapt_cell(ch, u0, um, v0, vm, depth - 1, g, f, preds) +
           adapt_cell(ch, um, u1, v0, vm, depth - 1, g, f, preds) +
           adapt_cell(ch, u0, um, vm, v1, depth - 1, g, f, preds) +
           adapt_cell(ch, um, u1, vm, v1, depth - 1, g, f, preds);
  }
  return cell_quad(ch, u0, u1, v0, v1, g, f);
}

double integrate(const GraphDomain& om, int order, const Integrand& f,
                 const std::vector<Predicate>& preds) {
  const Chart ch = chart_of(om);
  const GaussRule g = gauss_legendre(order);
  const int base = 8, depth = 10;
  double acc = 0.0;
  for (int i = 0; i < base; ++i)
    for (int j = 0; j < base; ++j) {
      const double u0 = ch.u0 + (ch.u1 - ch.u0) * i / base;
      const double u1 = ch.u0 + (ch.u1 - ch.u0) * (i + 1) / base;
      const double v0 = ch.v0 + (ch.v1 - ch.v0) * j / base;
      const double v1 = ch.v0 + (ch.v1 - ch.v0) * (j + 1) / base;
      acc += adapt_cell(ch, u0, u1, v0, v1, depth, g, f, preds);
    }
  return acc;
}

// ------------------------------------------------------------ sheet algebra

double frob2(const Mat& a) {
  double s = 0.0;
  for (const Vec& row : a)
    for (double v : row) s += v * v;
  return s;
}

Mat scaled(const Mat& a, double t) {
  Mat r = a;
  for (Vec& row : r)
    for (double& v : row) v *= t;
  return r;
}

SheetSpec scaled_spec(const SheetSpec& f, double eps) {
  SheetSpec g = f;
  g.lip = f.lip * std::abs(eps);
  g.sheets = [sheets = f.sheets, eps](const Vec& x, int reg) {
    std::vector<Vec> v = sheets(x, reg);
    for (Vec& s : v)
      for (double& c : s) c *= eps;
    return v;
  };
  g.grads = [grads = f.grads, eps](const Vec& x, int reg) {
    std::vector<Mat> d = grads(x, reg);
    for (Mat& m : d) m = scaled(m, eps);
    return d;
  };
  return g;
}

// ------------------------------------------------------------ polynomial DSL

struct Poly {
  struct Term {
    double c;
    int i, j;
  };
  std::vector<Term> terms;

  double eval(const Vec& x) const {
    double acc = 0.0;
    for (const Term& t : terms)
      acc += t.c * std::pow(x[0], t.i) * std::pow(x[1], t.j);
    return acc;
  }
  Poly dx() const {
    Poly p;
    for (const Term& t : terms)
      if (t.i > 0) p.terms.push_back({t.c * t.i, t.i - 1, t.j});
    return p;
  }
  Poly dy() const {
    Poly p;
    for (const Term& t : terms)
      if (t.j > 0) p.terms.push_back({t.c * t.j, t.i, t.j - 1});
    return p;
  }
};

Poly poly_from_json(const nlohmann::json& j) {
  Poly p;
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 4)
      throw std::invalid_argument("sheet_spec_from_json: monomial must be "
                                  "[num, den, deg_x, deg_y]");
    const double den = term[1].get<double>();
    if (den == 0.0)
      throw std::invalid_argument("sheet_spec_from_json: zero denominator");
    p.terms.push_back({term[0].get<double>() / den, term[2].get<int>(),
                       term[3].get<int>()});
  }
  return p;
}

}  // namespace

SheetSpec make_sheet_spec(int q, int n,
                          std::function<double(const Vec&)> sign,
                          std::function<std::vector<Vec>(const Vec&)> sheets,
                          std::function<std::vector<Mat>(const Vec&)> grads) {
  if (q < 1 || n < 1) throw std::invalid_argument("make_sheet_spec: bad q, n");
  SheetSpec f;
  f.q = q;
  f.n = n;
  f.sign = std::move(sign);
  f.sheets = [s = std::move(sheets)](const Vec& x, int) { return s(x); };
  f.grads = [g = std::move(grads)](const Vec& x, int) { return g(x); };
  return f;
}

SheetSpec sheet_spec_from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  const int q = j.at("q").get<int>();
  const int n = j.value("n", 1);
  if (q < 1 || n != 1)
    throw std::invalid_argument("sheet_spec_from_json: q >= 1, n = 1 only");

  auto parse_family = [&](const nlohmann::json& arr) {
    if (static_cast<int>(arr.size()) != q)
      throw std::invalid_argument("sheet_spec_from_json: need q sheets");
    struct Entry {
      Poly f, fx, fy;
    };
    std::vector<Entry> fam;
    for (const auto& sj : arr) {
      Entry e;
      e.f = poly_from_json(sj);
      e.fx = e.f.dx();
      e.fy = e.f.dy();
      fam.push_back(std::move(e));
    }
    return fam;
  };

  auto pos = parse_family(j.at("sheets"));
  auto neg = j.contains("sheets_neg") ? parse_family(j.at("sheets_neg")) : pos;
  const Poly sgn = poly_from_json(j.at("sign"));

  SheetSpec f;
  f.q = q;
  f.n = 1;
  f.sign = [sgn](const Vec& x) { return sgn.eval(x); };
  f.sheets = [pos, neg](const Vec& x, int reg) {
    const auto& fam = reg < 0 ? neg : pos;
    std::vector<Vec> v;
    v.reserve(fam.size());
    for (const auto& e : fam) v.push_back(Vec{e.f.eval(x)});
    return v;
  };
  f.grads = [pos, neg](const Vec& x, int reg) {
    const auto& fam = reg < 0 ? neg : pos;
    std::vector<Mat> d;
    d.reserve(fam.size());
    for (const auto& e : fam)
      d.push_back(Mat{Vec{e.fx.eval(x), e.fy.eval(x)}});
    return d;
  };

  // sampled Lipschitz estimate over [-1.2, 1.2]^2
  double lip = 0.0;
  const int k = 97;
  for (int i = 0; i < k; ++i)
    for (int jj = 0; jj < k; ++jj) {
      const Vec x{-1.2 + 2.4 * i / (k - 1), -1.2 + 2.4 * jj / (k - 1)};
      for (const Mat& m : f.grads(x, f.region(x)))
        lip = std::max(lip, std::sqrt(frob2(m)));
    }
  f.lip = lip;
  return f;
}

GraphDomain GraphDomain::square(double half_width) {
  if (half_width <= 0.0)
    throw std::invalid_argument("GraphDomain::square: bad half width");
  return {DomainShape::Square, half_width};
}

GraphDomain GraphDomain::disk(double radius) {
  if (radius <= 0.0)
    throw std::invalid_argument("GraphDomain::disk: bad radius");
  return {DomainShape::Disk, radius};
}

double GraphDomain::area() const {
  return shape == DomainShape::Disk ? M_PI * extent * extent
                                    : 4.0 * extent * extent;
}

MVector graph_mvector(const Mat& df) {
  const int rows = 2 + static_cast<int>(df.size());
  auto entry = [&](int r, int c) -> double {
    if (r < 2) return r == c ? 1.0 : 0.0;
    return df[r - 2][c];
  };
  MVector v;
  v.p.reserve(rows * (rows - 1) / 2);
  double norm2 = 0.0;
  for (int r = 0; r < rows; ++r)
    for (int s = r + 1; s < rows; ++s) {
      const double minor = entry(r, 0) * entry(s, 1) - entry(r, 1) * entry(s, 0);
      v.p.push_back(minor);
      norm2 += minor * minor;
    }
  const double norm = std::sqrt(norm2);
  for (double& c : v.p) c /= norm;
  return v;
}

double area_factor(const Mat& df) {
  // Cauchy-Binet: the squared area factor is the sum of squared 2x2 minors
  double g11 = 1.0, g22 = 1.0, g12 = 0.0;
  for (const Vec& row : df) {
    g11 += row[0] * row[0];
    g22 += row[1] * row[1];
    g12 += row[0] * row[1];
  }
  return std::sqrt(g11 * g22 - g12 * g12);
}

double nonoriented_dist2(const MVector& a, const MVector& b) {
  double dm = 0.0, dp = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i) {
    dm += (a.p[i] - b.p[i]) * (a.p[i] - b.p[i]);
    dp += (a.p[i] + b.p[i]) * (a.p[i] + b.p[i]);
  }
  return std::min(dm, dp);
}

double graph_mass(const SheetSpec& f, const GraphDomain& om, int order) {
  if (order < 1) throw std::invalid_argument("graph_mass: order < 1");
  return integrate(
      om, order,
      [&](const Vec& x) {
        double acc = 0.0;
        for (const Mat& m : f.grads(x, f.region(x))) acc += area_factor(m);
        return acc;
      },
      {f.sign});
}

double graph_dirichlet(const SheetSpec& f, const GraphDomain& om, int order) {
  return integrate(
      om, order,
      [&](const Vec& x) {
        double acc = 0.0;
        for (const Mat& m : f.grads(x, f.region(x))) acc += frob2(m);
        return acc;
      },
      {f.sign});
}

TaylorFit taylor_mass_check(const SheetSpec& g, const GraphDomain& om,
                            const std::vector<double>& eps, int order) {
  if (eps.size() < 3)
    throw std::invalid_argument("taylor_mass_check: need at least 3 epsilons");
  const double dir = graph_dirichlet(g, om, order);
  const double area = om.area();
  TaylorFit fit;
  fit.eps = eps;
  double scale = 0.0;
  for (double e : eps) {
    const double m = graph_mass(scaled_spec(g, e), om, order);
    fit.rem.push_back(std::abs(m - g.q * area - 0.5 * e * e * dir));
    scale = std::max(scale, m);
  }
  fit.flat = true;
  for (double r : fit.rem)
    if (r > 1e-12 * std::max(1.0, scale)) fit.flat = false;
  if (!fit.flat) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int k = static_cast<int>(eps.size());
    for (int i = 0; i < k; ++i) {
      const double lx = std::log(eps[i]), ly = std::log(fit.rem[i]);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  }
  return fit;
}

ExcessReport cylindrical_excess(const SheetSpec& f, double s, const Mat* L,
                                int order) {
  const GraphDomain om = GraphDomain::disk(s);
  ExcessReport rep;
  if (L) {
    rep.L = *L;
  } else {
    // mean gradient of the barycenter sheet over B_s
    rep.L.assign(f.n, Vec(2, 0.0));
    for (int r = 0; r < f.n; ++r)
      for (int c = 0; c < 2; ++c)
        rep.L[r][c] = integrate(
                          om, order,
                          [&](const Vec& x) {
                            double acc = 0.0;
                            const auto d = f.grads(x, f.region(x));
                            for (const Mat& m : d) acc += m[r][c];
                            return acc / f.q;
                          },
                          {f.sign}) /
                      om.area();
  }
  const MVector tau = graph_mvector(rep.L);
  rep.lhs = integrate(
      om, order,
      [&](const Vec& x) {
        double acc = 0.0;
        for (const Mat& m : f.grads(x, f.region(x)))
          acc += nonoriented_dist2(graph_mvector(m), tau) * area_factor(m);
        return acc;
      },
      {f.sign});
  rep.rhs = integrate(
      om, order,
      [&](const Vec& x) {
        double acc = 0.0;
        for (const Mat& m : f.grads(x, f.region(x))) {
          for (int r = 0; r < f.n; ++r)
            for (int c = 0; c < 2; ++c) {
              const double d = m[r][c] - rep.L[r][c];
              acc += d * d;
            }
        }
        return acc;
      },
      {f.sign});
  rep.remainder = std::abs(rep.lhs - rep.rhs);
  return rep;
}

VariationReport first_variation_graph(const SheetSpec& f,
                                      const GraphDomain& om,
                                      const GraphVariation& zeta,
                                      int order) {
  // compact support: zeta must vanish over the graph above the boundary
  for (int i = 0; i < 64; ++i) {
    Vec x;
    if (om.shape == DomainShape::Disk) {
      const double th = 2.0 * M_PI * i / 64;
      x = Vec{om.extent * std::cos(th), om.extent * std::sin(th)};
    } else {
      const double t = -om.extent + 2.0 * om.extent * (i % 16) / 15.0;
      const int side = i / 16;
      const double e = om.extent;
      x = side == 0 ? Vec{t, -e}
          : side == 1 ? Vec{t, e}
          : side == 2 ? Vec{-e, t}
                      : Vec{e, t};
    }
    for (const Vec& y : f.sheets(x, f.region(x)))
      if (qnorm(QPoint(std::vector<Vec>{zeta.zeta(x, y)})) > 1e-12)
        throw std::invalid_argument(
            "first_variation_graph: zeta does not vanish near the boundary");
  }

  auto deformed = [&](double t) {
    SheetSpec g = f;
    g.sheets = [&f, &zeta, t](const Vec& x, int reg) {
      std::vector<Vec> v = f.sheets(x, reg);
      for (Vec& s : v) {
        const Vec z = zeta.zeta(x, s);
        for (int c = 0; c < static_cast<int>(s.size()); ++c)
          s[c] += t * z[c];
      }
      return v;
    };
    g.grads = [&f, &zeta, t](const Vec& x, int reg) {
      const std::vector<Vec> v = f.sheets(x, reg);
      std::vector<Mat> d = f.grads(x, reg);
      for (std::size_t i = 0; i < d.size(); ++i) {
        const Mat dx = zeta.dx_zeta(x, v[i]);
        const Mat dy = zeta.dy_zeta(x, v[i]);
        for (int r = 0; r < f.n; ++r)
          for (int c = 0; c < 2; ++c) {
            double chain = dx[r][c];
            for (int k = 0; k < f.n; ++k) chain += dy[r][k] * d[i][k][c];
            d[i][r][c] += t * chain;
          }
      }
      return d;
    };
    return g;
  };

  auto central = [&](double t) {
    return (graph_mass(deformed(t), om, order) -
            graph_mass(deformed(-t), om, order)) /
           (2.0 * t);
  };
  VariationReport rep;
  const double d1 = central(1e-3), d2 = central(5e-4);
  rep.numeric = (4.0 * d2 - d1) / 3.0;

  rep.formula = integrate(
      om, order,
      [&](const Vec& x) {
        const int reg = f.region(x);
        const std::vector<Vec> v = f.sheets(x, reg);
        const std::vector<Mat> d = f.grads(x, reg);
        double acc = 0.0;
        for (int i = 0; i < f.q; ++i) {
          const Mat dx = zeta.dx_zeta(x, v[i]);
          const Mat dy = zeta.dy_zeta(x, v[i]);
          for (int r = 0; r < f.n; ++r)
            for (int c = 0; c < 2; ++c) {
              double chain = dx[r][c];
              for (int k = 0; k < f.n; ++k) chain += dy[r][k] * d[i][k][c];
              acc += chain * d[i][r][c];
            }
        }
        return acc;
      },
      {f.sign});
  rep.error = std::abs(rep.numeric - rep.formula);

  rep.cubic = integrate(
      om, order,
      [&](const Vec& x) {
        const int reg = f.region(x);
        const std::vector<Vec> v = f.sheets(x, reg);
        const std::vector<Mat> d = f.grads(x, reg);
        double acc = 0.0;
        for (int i = 0; i < f.q; ++i) {
          const double dz = std::sqrt(frob2(zeta.dx_zeta(x, v[i])) +
                                      frob2(zeta.dy_zeta(x, v[i])));
          acc += dz * std::pow(std::sqrt(frob2(d[i])), 3);
        }
        return acc;
      },
      {f.sign});
  return rep;
}

namespace {

struct PlaneFrame {
  Vec b1, b2, nu;  // orthonormal basis of pi and its unit normal, in R^3
};

PlaneFrame frame_of(const Vec& tilt) {
  PlaneFrame fr;
  Vec v1{1.0, 0.0, tilt[0]}, v2{0.0, 1.0, tilt[1]};
  double n1 = std::sqrt(dot(v1, v1));
  fr.b1 = v1;
  for (double& c : fr.b1) c /= n1;
  const double pr = dot(v2, fr.b1);
  fr.b2 = v2;
  axpy(-pr, fr.b1, fr.b2);
  const double n2 = std::sqrt(dot(fr.b2, fr.b2));
  for (double& c : fr.b2) c /= n2;
  const double nn = std::sqrt(1.0 + tilt[0] * tilt[0] + tilt[1] * tilt[1]);
  fr.nu = Vec{-tilt[0] / nn, -tilt[1] / nn, 1.0 / nn};
  return fr;
}

}  // namespace

TiltedReparam reparametrize_tilted(const SheetSpec& f, const Vec& tilt,
                                   double s, double h) {
  if (f.n != 1)
    throw std::invalid_argument("reparametrize_tilted: n = 1 only");
  const PlaneFrame fr = frame_of(tilt);
  const double tilt_norm = std::hypot(tilt[0], tilt[1]);

  // sampled sup norm of f over the widest footprint the shooting can reach
  double fc0 = 0.0;
  const double reach = s * (1.0 + tilt_norm) + 1.0;
  for (int i = 0; i <= 64; ++i)
    for (int j = 0; j <= 64; ++j) {
      const Vec x{-reach + 2.0 * reach * i / 64, -reach + 2.0 * reach * j / 64};
      for (const Vec& v : f.sheets(x, f.region(x)))
        fc0 = std::max(fc0, std::abs(v[0]));
    }
  const double bracket = 2.0 * (fc0 + s * tilt_norm) + 1e-9;

  auto shoot = [&](const Vec& p3, auto&& height, int node) {
    // crossing of the line p3 + t nu with the graph of `height`
    auto val = [&](double t) {
      const Vec x{p3[0] + t * fr.nu[0], p3[1] + t * fr.nu[1]};
      return height(x) - (p3[2] + t * fr.nu[2]);
    };
    double lo = -bracket, hi = bracket;
    double flo = val(lo), fhi = val(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
      throw std::runtime_error(
          "reparametrize_tilted: no bracketed crossing at node " +
          std::to_string(node) + " (tilt too large)");
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double fm = val(mid);
      if ((fm > 0) == (flo > 0)) {
        lo = mid;
        flo = fm;
      } else {
        hi = mid;
      }
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 3; ++it) {
      const double eps = 1e-7;
      const double dv = (val(t + eps) - val(t - eps)) / (2.0 * eps);
      if (std::abs(dv) < 1e-14) break;
      t -= val(t) / dv;
    }
    return t;
  };

  const GridDomain dom = GridDomain::disk(h, s);
  TiltedReparam out;
  out.g.domain = dom;
  out.g.q = f.q;
  out.g.n = 1;
  out.g.values.assign(dom.size(), SpecPoint::collapsed(f.q, Vec{0.0}));
  out.g.fixed.assign(dom.size(), 0);

  for (int node = 0; node < dom.size(); ++node) {
    if (!dom.active(node)) continue;
    const Vec uv = dom.coord(node);
    Vec p3(3, 0.0);
    axpy(uv[0], fr.b1, p3);
    axpy(uv[1], fr.b2, p3);

    // barycenter crossing fixes the region of the footpoint
    auto eta_height = [&](const Vec& x) {
      const auto v = f.sheets(x, f.region(x));
      double acc = 0.0;
      for (const Vec& sheet : v) acc += sheet[0];
      return acc / f.q;
    };
    const double t_eta = shoot(p3, eta_height, node);
    const Vec foot{p3[0] + t_eta * fr.nu[0], p3[1] + t_eta * fr.nu[1]};
    const int reg = f.region(foot);

    std::vector<Vec> atoms;
    for (int i = 0; i < f.q; ++i) {
      auto sheet_height = [&](const Vec& x) { return f.sheets(x, reg)[i][0]; };
      atoms.push_back(Vec{shoot(p3, sheet_height, node)});
    }
    out.g.values[node] = SpecPoint(QPoint(atoms), reg < 0 ? -1 : +1);
    out.c0 = std::max(out.c0, spec_norm(out.g.values[node]) /
                                  std::sqrt(static_cast<double>(f.q)));
  }

  const auto& edges = dom.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [a, b] = edges[e];
    out.lip = std::max(
        out.lip, metric_Gs(out.g.values[a], out.g.values[b]) / dom.h());
  }
  return out;
}

double discrete_graph_mass(const GridField& g) {
  const GridDomain& d = g.domain;
  if (g.n != 1)
    throw std::invalid_argument("discrete_graph_mass: n = 1 only");
  const double h = d.h();
  double acc = 0.0;
  for (int node = 0; node < d.size(); ++node) {
    const int bx = d.neighbor(node, 0, +1);
    const int by = d.neighbor(node, 1, +1);
    const int bxy = bx >= 0 ? d.neighbor(bx, 1, +1) : -1;
    if (bx < 0 || by < 0 || bxy < 0) continue;
    bool ok = true;
    for (int c : {node, bx, by, bxy})
      if (!d.active(c)) ok = false;
    if (!ok) continue;
    auto sorted = [&](int c) {
      Vec v;
      for (const Vec& a : g.values[c].base().atoms()) v.push_back(a[0]);
      std::sort(v.begin(), v.end());
      return v;
    };
    const Vec f00 = sorted(node), f10 = sorted(bx), f01 = sorted(by),
              f11 = sorted(bxy);
    double cell_w = 1.0;
    if (d.shape() == DomainShape::Disk) {
      const Vec c0 = d.coord(node);
      cell_w = rect_disk_area(c0[0], c0[0] + h, c0[1], c0[1] + h, d.extent()) /
               (h * h);
      if (cell_w <= 0.0) continue;
    }
    for (int i = 0; i < g.q; ++i) {
      const double px = (f10[i] - f00[i] + f11[i] - f01[i]) / (2.0 * h);
      const double py = (f01[i] - f00[i] + f11[i] - f10[i]) / (2.0 * h);
      acc += cell_w * h * h * std::sqrt(1.0 + px * px + py * py);
    }
  }
  return acc;
}

double graph_mass_in_cylinder(const SheetSpec& f, const Vec& tilt, double s,
                              const GraphDomain& om, int order) {
  if (f.n != 1)
    throw std::invalid_argument("graph_mass_in_cylinder: n = 1 only");
  const PlaneFrame fr = frame_of(tilt);
  auto inside = [&](const Vec& x, double y) {
    const Vec q3{x[0], x[1], y};
    const double u = dot(q3, fr.b1), v = dot(q3, fr.b2);
    return s * s - u * u - v * v;
  };
  std::vector<Predicate> preds{f.sign};
  for (int i = 0; i < f.q; ++i)
    preds.push_back([&, i](const Vec& x) {
      return inside(x, f.sheets(x, f.region(x))[i][0]);
    });
  return integrate(
      om, order,
      [&](const Vec& x) {
        const int reg = f.region(x);
        const auto v = f.sheets(x, reg);
        const auto d = f.grads(x, reg);
        double acc = 0.0;
        for (int i = 0; i < f.q; ++i)
          if (inside(x, v[i][0]) > 0.0) acc += area_factor(d[i]);
        return acc;
      },
      preds);
}

}  // namespace specq
