#include "specq/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace specq {

namespace {

// incident edges per node, as (edge index, other node)
std::vector<std::vector<std::pair<int, int>>> incidence(const GridDomain& d) {
  std::vector<std::vector<std::pair<int, int>>> inc(d.size());
  const auto& edges = d.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    inc[edges[e].first].emplace_back(static_cast<int>(e), edges[e].second);
    inc[edges[e].second].emplace_back(static_cast<int>(e), edges[e].first);
  }
  return inc;
}

int lattice_parity(const GridDomain& d, int node) {
  const Vec x = d.coord(node);
  long s = 0;
  for (int a = 0; a < d.m(); ++a)
    s += std::lround((x[a] + 2.0 * d.extent()) / d.h());
  return static_cast<int>(s & 1);
}

}  // namespace

void solve_laplace_scalar(const GridDomain& d, std::vector<double>& v,
                          const std::vector<std::uint8_t>& fixed,
                          double tol, int max_iters) {
  if (static_cast<int>(v.size()) != d.size() || fixed.size() != v.size())
    throw std::invalid_argument("solve_laplace_scalar: size mismatch");
  const auto inc = incidence(d);
  const auto& w = d.edge_weights();
  const double omega = 2.0 / (1.0 + M_PI * d.h());
  for (int it = 0; it < max_iters; ++it) {
    double worst = 0.0;
    for (int node = 0; node < d.size(); ++node) {
      if (!d.active(node) || fixed[node]) continue;
      double num = 0.0, den = 0.0;
      for (const auto& [e, nb] : inc[node]) {
        num += w[e] * v[nb];
        den += w[e];
      }
      if (den == 0.0) continue;
      const double upd = omega * (num / den - v[node]);
      v[node] += upd;
      worst = std::max(worst, std::abs(upd));
    }
    if (worst < tol) return;
  }
}

GridField solve_dirichlet(const GridField& u0, const SolveOptions& opts,
                          SolveReport* report) {
  const GridDomain& d = u0.domain;
  const EmbedSpace sp = EmbedSpace::make(u0.q, u0.n);
  const int dim = sp.flat_dim();
  const auto inc = incidence(d);
  const auto& edges = d.edges();
  const auto& w = d.edge_weights();
  const double hpow = std::pow(d.h(), d.m() - 2);

  int free_count = 0;
  for (int node = 0; node < d.size(); ++node)
    if (d.active(node) && !u0.fixed[node]) ++free_count;
  if (free_count == 0)
    throw std::invalid_argument("solve_dirichlet: no free nodes");

  // flat coordinates; free nodes start from the per-coordinate harmonic
  // extension of the fixed data, then get projected onto the image
  std::vector<Vec> x(d.size(), Vec(dim, 0.0));
  for (int node = 0; node < d.size(); ++node)
    if (d.active(node)) x[node] = sp.to_flat(u0.values[node]);
  {
    std::vector<double> coord(d.size(), 0.0);
    std::vector<std::uint8_t> fixed(u0.fixed.begin(), u0.fixed.end());
    for (int c = 0; c < dim; ++c) {
      for (int node = 0; node < d.size(); ++node)
        coord[node] = u0.fixed[node] ? x[node][c] : 0.0;
      solve_laplace_scalar(d, coord, fixed, 1e-12, 20000);
      for (int node = 0; node < d.size(); ++node)
        if (d.active(node) && !u0.fixed[node]) x[node][c] = coord[node];
    }
    for (int node = 0; node < d.size(); ++node)
      if (d.active(node) && !u0.fixed[node]) x[node] = sp.project(x[node]);
  }

  auto total_energy = [&]() {
    double e = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i)
      e += w[i] * dist2(x[edges[i].first], x[edges[i].second]);
    return hpow * e;
  };
  auto local_energy = [&](int node, const Vec& y) {
    double e = 0.0;
    for (const auto& [ei, nb] : inc[node]) e += w[ei] * dist2(y, x[nb]);
    return e;
  };

  std::vector<int> parity(d.size(), 0);
  for (int node = 0; node < d.size(); ++node)
    parity[node] = lattice_parity(d, node);

  double energy = total_energy();
  if (report) {
    report->energy_trace.clear();
    report->energy_trace.push_back(energy);
    report->converged = false;
  }

  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    for (int color = 0; color < 2; ++color) {
      for (int node = 0; node < d.size(); ++node) {
        if (!d.active(node) || u0.fixed[node] || parity[node] != color)
          continue;
        double den = 0.0;
        Vec avg(dim, 0.0);
        for (const auto& [ei, nb] : inc[node]) {
          axpy(w[ei], x[nb], avg);
          den += w[ei];
        }
        if (den == 0.0) continue;
        for (double& c : avg) c /= den;
        const double before = local_energy(node, x[node]);

        // the image is a union of three branches (positive, negative,
        // collapsed), each a product of a monotone centered cone and the
        // barycenter line; the exact local minimizer over a branch is the
        // orthogonal projection of the weighted neighbor average, computed
        // by isotonic regression plus recentering
        const int N = sp.big_n();
        Vec cand_col(dim, 0.0);
        for (int c = 2 * N; c < dim; ++c) cand_col[c] = avg[c];
        auto branch = [&](int off) {
          Vec cand = cand_col;
          Vec block(avg.begin() + off, avg.begin() + off + N);
          block = isotonic_regression(block);
          double mean = 0.0;
          for (double v : block) mean += v;
          mean /= N;
          for (int c = 0; c < N; ++c) cand[off + c] = block[c] - mean;
          return cand;
        };
        Vec cand_pos = branch(0);
        Vec cand_neg = branch(N);

        double best = before;
        const Vec* pick = nullptr;
        for (const Vec* cand : {&cand_pos, &cand_neg, &cand_col}) {
          const double e = local_energy(node, *cand);
          // ties prefer the collapsed candidate (listed last)
          if (e < best - 1e-15 || (cand == &cand_col && e <= best)) {
            best = e;
            pick = cand;
          }
        }
        if (pick) x[node] = *pick;
      }
    }
    const double next = total_energy();
    if (report) report->energy_trace.push_back(next);
    const bool done = energy - next < opts.tol * std::max(energy, 1e-300);
    energy = next;
    if (done) {
      if (report) report->converged = true;
      ++sweep;
      break;
    }
  }

  GridField out = u0;
  for (int node = 0; node < d.size(); ++node)
    if (d.active(node) && !u0.fixed[node])
      out.values[node] = sp.from_flat(x[node]);
  if (report) {
    report->sweeps = sweep;
    report->final_energy = energy;
  }
  return out;
}

namespace {

struct TwoSheetState {
  std::vector<double> s1, s2;  // s1 <= s2
  std::vector<int> lab;        // +1, -1, 0 = collapsed
};

// Gs^2 between two-node states for Q = 2, n = 1.
double edge_e2(const TwoSheetState& st, int a, int b) {
  const bool cross = st.lab[a] * st.lab[b] == -1;
  if (!cross) {
    const double d1 = st.s1[a] - st.s1[b], d2 = st.s2[a] - st.s2[b];
    return d1 * d1 + d2 * d2;
  }
  const double ca = st.s1[a] - st.s2[a], cb = st.s1[b] - st.s2[b];
  const double dm = 0.5 * (st.s1[a] + st.s2[a] - st.s1[b] - st.s2[b]);
  return 0.5 * ca * ca + 0.5 * cb * cb + 2.0 * dm * dm;
}

}  // namespace

GridField solve_two_sheet(const GridField& u0, const SolveOptions& opts,
                          SolveReport* report) {
  if (u0.q != 2 || u0.n != 1)
    throw std::invalid_argument("solve_two_sheet: requires Q=2, n=1");
  const GridDomain& d = u0.domain;
  const auto inc = incidence(d);
  const auto& edges = d.edges();
  const auto& w = d.edge_weights();
  const double hpow = std::pow(d.h(), d.m() - 2);

  // same initialization as the embedded strategy: per-coordinate harmonic
  // extension of the boundary data in embedded coordinates, projected
  // nodewise — keeps both strategies in the same basin on shared problems
  GridField init = u0;
  {
    const EmbedSpace sp = EmbedSpace::make(u0.q, u0.n);
    std::vector<Vec> xf(d.size(), Vec(sp.flat_dim(), 0.0));
    for (int node = 0; node < d.size(); ++node)
      if (d.active(node)) xf[node] = sp.to_flat(u0.values[node]);
    std::vector<double> coord(d.size(), 0.0);
    std::vector<std::uint8_t> fixed(u0.fixed.begin(), u0.fixed.end());
    for (int c = 0; c < sp.flat_dim(); ++c) {
      for (int node = 0; node < d.size(); ++node)
        coord[node] = u0.fixed[node] ? xf[node][c] : 0.0;
      solve_laplace_scalar(d, coord, fixed, 1e-12, 20000);
      for (int node = 0; node < d.size(); ++node)
        if (d.active(node) && !u0.fixed[node]) xf[node][c] = coord[node];
    }
    for (int node = 0; node < d.size(); ++node)
      if (d.active(node) && !u0.fixed[node])
        init.values[node] = sp.from_flat(sp.project(xf[node]));
  }

  TwoSheetState st;
  st.s1.assign(d.size(), 0.0);
  st.s2.assign(d.size(), 0.0);
  st.lab.assign(d.size(), 0);
  for (int node = 0; node < d.size(); ++node) {
    if (!d.active(node)) continue;
    const SpecPoint& p = init.values[node];
    st.s1[node] = p.base().atom(0)[0];
    st.s2[node] = p.base().atom(1)[0];
    st.lab[node] = p.is_collapsed() ? 0 : p.sign();
  }

  auto local_energy = [&](int node) {
    double e = 0.0;
    for (const auto& [ei, nb] : inc[node]) e += w[ei] * edge_e2(st, node, nb);
    return e;
  };
  auto total_energy = [&]() {
    double e = 0.0;
    for (std::size_t i = 0; i < edges.size(); ++i)
      e += w[i] * edge_e2(st, edges[i].first, edges[i].second);
    return hpow * e;
  };

  double energy = total_energy();
  if (report) {
    report->energy_trace.assign(1, energy);
    report->converged = false;
  }

  std::vector<int> parity(d.size(), 0);
  for (int node = 0; node < d.size(); ++node)
    parity[node] = lattice_parity(d, node);

  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    bool labels_changed = false;
    for (int color = 0; color < 2; ++color)
    for (int node = 0; node < d.size(); ++node) {
      if (!d.active(node) || u0.fixed[node] || parity[node] != color) continue;
      const double olds1 = st.s1[node], olds2 = st.s2[node];
      const int oldlab = st.lab[node];
      const double before = local_energy(node);
      double best = before;
      double bs1 = olds1, bs2 = olds2;
      int blab = oldlab;
      for (int lab : {0, +1, -1}) {
        st.lab[node] = lab;
        // assemble and solve the local quadratic for this label
        double a = 0.0, b1 = 0.0, b2 = 0.0;
        for (const auto& [ei, nb] : inc[node]) {
          const double we = w[ei];
          const bool cross = lab != 0 && lab * st.lab[nb] == -1;
          a += we;
          if (!cross) {
            b1 += we * st.s1[nb];
            b2 += we * st.s2[nb];
          } else {
            const double mb = 0.5 * (st.s1[nb] + st.s2[nb]);
            b1 += we * mb;
            b2 += we * mb;
          }
        }
        if (a == 0.0) continue;
        double s1 = b1 / a, s2 = b2 / a;
        if (lab == 0 || s1 > s2) s1 = s2 = 0.5 * (b1 + b2) / a;
        st.s1[node] = s1;
        st.s2[node] = s2;
        const double e = local_energy(node);
        // strict improvement required to switch away; ties prefer Collapsed
        if (e < best - 1e-15 || (lab == 0 && e <= best)) {
          best = e;
          bs1 = s1;
          bs2 = s2;
          blab = lab;
        }
        st.s1[node] = olds1;
        st.s2[node] = olds2;
        st.lab[node] = oldlab;
      }
      if (best <= before) {
        st.s1[node] = bs1;
        st.s2[node] = bs2;
        if (blab != oldlab) labels_changed = true;
        st.lab[node] = blab;
      }
    }
    const double next = total_energy();
    if (report) report->energy_trace.push_back(next);
    const bool done = !labels_changed &&
                      energy - next < opts.tol * std::max(energy, 1e-300);
    energy = next;
    if (done) {
      if (report) report->converged = true;
      ++sweep;
      break;
    }
  }

  GridField out = u0;
  for (int node = 0; node < d.size(); ++node) {
    if (!d.active(node) || u0.fixed[node]) continue;
    double s1 = st.s1[node], s2 = st.s2[node];
    if (st.lab[node] == 0) s1 = s2 = 0.5 * (s1 + s2);
    out.values[node] = SpecPoint(QPoint(std::vector<Vec>{{s1}, {s2}}),
                                 st.lab[node] < 0 ? -1 : +1);
  }
  if (report) {
    report->sweeps = sweep;
    report->final_energy = energy;
  }
  return out;
}

VariationResiduals variation_residuals(const GridField& u,
                                       const VariationTest& t) {
  const GridDomain& d = u.domain;
  if (d.m() != 2)
    throw std::invalid_argument("variation_residuals: m = 2 only");
  const double h = d.h();

  // the test data must vanish near the fixed boundary
  for (int node = 0; node < d.size(); ++node) {
    if (!d.active(node) || d.kind(node) != NodeKind::Boundary) continue;
    const Vec xb = d.coord(node);
    if (norm(t.phi(xb)) > 1e-12 || std::abs(t.chi(xb)) > 1e-12)
      throw std::invalid_argument(
          "variation_residuals: test fields touch the boundary");
  }

  VariationResiduals r;
  for (int node = 0; node < d.size(); ++node) {
    const int bx = d.neighbor(node, 0, +1);
    const int by = d.neighbor(node, 1, +1);
    const int bxy = bx >= 0 ? d.neighbor(bx, 1, +1) : -1;
    if (bx < 0 || by < 0 || bxy < 0) continue;
    const int cs[4] = {node, bx, by, bxy};
    bool ok = true;
    int sign = 0;
    for (int c : cs) {
      if (!d.active(c)) {
        ok = false;
        break;
      }
      const SpecPoint& p = u.values[c];
      if (!p.is_collapsed()) {
        if (sign != 0 && sign != p.sign()) ok = false;  // interface cell
        sign = p.sign();
      }
    }
    if (!ok) continue;

    const Vec xc = add(d.coord(node), Vec{0.5 * h, 0.5 * h});
    const Vec phi = t.phi(xc);
    if (norm(phi) == 0.0 && t.chi(xc) == 0.0) continue;
    const auto dphi = t.dphi(xc);
    const double chi = t.chi(xc);
    const Vec gchi = t.grad_chi(xc);
    const double divphi = dphi[0][0] + dphi[1][1];

    for (int i = 0; i < u.q; ++i) {
      const double v00 = u.values[cs[0]].base().atom(i)[0];
      const double v10 = u.values[cs[1]].base().atom(i)[0];
      const double v01 = u.values[cs[2]].base().atom(i)[0];
      const double v11 = u.values[cs[3]].base().atom(i)[0];
      const double gx = (v10 - v00 + v11 - v01) / (2.0 * h);
      const double gy = (v01 - v00 + v11 - v10) / (2.0 * h);
      const double val = 0.25 * (v00 + v10 + v01 + v11);
      const double g2 = gx * gx + gy * gy;
      // inner: 2 <Du Dphi : Du> - |Du|^2 div phi
      double quad = 0.0;
      const double g[2] = {gx, gy};
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) quad += g[k] * dphi[k][j] * g[j];
      r.inner += (2.0 * quad - g2 * divphi) * h * h;
      // outer with psi(x, y) = chi(x) y:
      // <Du : D_x psi> + <Du : D_u psi Du> = <g, y gchi> + chi |g|^2
      r.outer += (val * (gx * gchi[0] + gy * gchi[1]) + chi * g2) * h * h;
    }
  }
  return r;
}

}  // namespace specq
