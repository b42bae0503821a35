#include <cmath>
#include <cstdlib>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "specq/assignment.hpp"
#include "specq/extend.hpp"
#include "specq/frequency.hpp"
#include "specq/graphs.hpp"
#include "specq/luckhaus.hpp"
#include "specq/minimize.hpp"
#include "specq/serialize.hpp"

using namespace specq;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "1.0.0";

double parse_fraction(const std::string& s) {
  const auto slash = s.find('/');
  if (slash == std::string::npos) return std::stod(s);
  return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
}

Vec parse_vec(const std::string& s) {
  Vec v;
  std::string cur;
  for (char c : s + ",") {
    if (c == ',') {
      if (!cur.empty()) v.push_back(std::stod(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  return v;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void write_manifest(const std::string& out_path, const std::string& config,
                    unsigned seed) {
  json m = {{"version", kVersion},
            {"config_hash", fnv1a(config)},
            {"config", config},
            {"seed", seed}};
  save_json(out_path + ".manifest.json", m);
}

int env_threads() {
  const char* t = std::getenv("SPECQ_THREADS");
  return t ? std::atoi(t) : 0;
}

SpecPoint two_sheets(double s1, double s2, int sign) {
  return SpecPoint(QPoint(std::vector<Vec>{{s1}, {s2}}), sign);
}

SpecPoint enneper_sample(const Vec& x) {
  const double g0 = 3.0 * (x[0] * x[0] - x[1] * x[1]);
  return two_sheets(0.0, g0, x[0] > x[1] ? +1 : -1);
}

GridField enneper_boundary(double h) {
  return GridField::sample(GridDomain::disk(h, 1.0), enneper_sample);
}

double scalar_edge_energy(const GridDomain& d, const std::vector<double>& v) {
  double e = 0.0;
  const auto& edges = d.edges();
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double dv = v[edges[i].first] - v[edges[i].second];
    e += d.edge_weights()[i] * dv * dv;
  }
  return e;
}

// harmonic pair fbar/gbar with the split boundary data {0, 3(x^2-y^2)}
double classical_pair_energy(const GridDomain& d) {
  double total = 0.0;
  for (bool top : {true, false}) {
    std::vector<double> v(d.size(), 0.0);
    std::vector<std::uint8_t> fixed(d.size(), 0);
    for (int i = 0; i < d.size(); ++i) {
      if (d.kind(i) != NodeKind::Boundary) continue;
      fixed[i] = 1;
      const Vec x = d.coord(i);
      if ((std::abs(x[0]) >= std::abs(x[1])) == top)
        v[i] = 3.0 * (x[0] * x[0] - x[1] * x[1]);
    }
    solve_laplace_scalar(d, v, fixed, 1e-13);
    total += scalar_edge_energy(d, v);
  }
  return total;
}

// explicit admissible competitor: sheets (sg -+ gap)/2 with gap harmonic,
// zero on the sign-change chord and |3(x^2-y^2)| on the rim
GridField enneper_competitor(const GridDomain& d) {
  std::vector<double> gap(d.size(), 0.0);
  std::vector<std::uint8_t> fx(d.size(), 0);
  for (int i = 0; i < d.size(); ++i) {
    if (!d.active(i)) continue;
    const Vec x = d.coord(i);
    if (d.kind(i) == NodeKind::Boundary) {
      fx[i] = 1;
      gap[i] = 3.0 * std::abs(x[0] * x[0] - x[1] * x[1]);
    } else if (std::abs(x[0] - x[1]) < 1e-12) {
      fx[i] = 1;
    }
  }
  solve_laplace_scalar(d, gap, fx, 1e-13);
  GridField u = GridField::constant(d, two_sheets(0.0, 0.0, +1));
  for (int i = 0; i < d.size(); ++i) {
    if (!d.active(i)) continue;
    const Vec x = d.coord(i);
    const double sg = 3.0 * (x[0] * x[0] - x[1] * x[1]);
    u.values[i] = two_sheets(0.5 * (sg - gap[i]), 0.5 * (sg + gap[i]),
                             x[0] > x[1] ? +1 : -1);
    u.fixed[i] = d.kind(i) == NodeKind::Boundary;
  }
  return u;
}

json region_stats(const GridField& u) {
  const RegionReport rep = regions(u);
  int pos = 0, neg = 0, col = 0;
  for (int i = 0; i < u.domain.size(); ++i) {
    if (!u.domain.active(i)) continue;
    switch (rep.labels[i]) {
      case RegionLabel::Positive: ++pos; break;
      case RegionLabel::Negative: ++neg; break;
      default: ++col; break;
    }
  }
  return {{"positive", pos},
          {"negative", neg},
          {"collapsed", col},
          {"interface_nodes", rep.interface_nodes.size()}};
}

json profile_json(const FrequencyProfile& p) {
  json rows = json::array();
  for (std::size_t k = 0; k < p.radii.size(); ++k)
    rows.push_back({{"r", p.radii[k]},
                    {"D", p.D[k]},
                    {"H", p.H[k]},
                    {"I", p.defined[k] ? json(p.I[k]) : json()}});
  return rows;
}

int run_verify(const std::string& suite) {
  struct Row {
    std::string name;
    bool ok;
  };
  std::vector<Row> rows;
  std::mt19937 rng(12345);
  auto rand_spec = [&](int q, int n) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    std::bernoulli_distribution s(0.5);
    std::vector<Vec> atoms(q, Vec(n));
    for (Vec& a : atoms)
      for (double& c : a) c = u(rng);
    return SpecPoint(QPoint(std::move(atoms)), s(rng) ? +1 : -1);
  };

  if (suite == "metric" || suite == "all") {
    bool ok = true;
    for (int it = 0; it < 2000 && ok; ++it) {
      const int q = 2 + it % 3, n = 1 + it % 3;
      const SpecPoint a = rand_spec(q, n), b = rand_spec(q, n),
                      c = rand_spec(q, n);
      if (std::abs(metric_Gs(a, b) - metric_Gs(b, a)) > 1e-12) ok = false;
      if (metric_Gs(a, b) > metric_Gs(a, c) + metric_Gs(c, b) + 1e-9)
        ok = false;
      if (metric_Gs(a, a) > 1e-12) ok = false;
    }
    rows.push_back({"metric axioms (symmetry, triangle, identity)", ok});

    bool match = true;
    std::uniform_real_distribution<double> u(0.0, 5.0);
    for (int it = 0; it < 300 && match; ++it) {
      const int q = 2 + it % 4;
      std::vector<double> cost(q * q);
      for (double& c : cost) c = u(rng);
      const auto bf = assign_brute_force(cost, q);
      const auto hg = assign_hungarian(cost, q);
      if (assignment_cost(cost, q, bf) != assignment_cost(cost, q, hg))
        match = false;
    }
    rows.push_back({"assignment: brute force vs hungarian", match});
  }
  if (suite == "embedding" || suite == "all") {
    const EmbedSpace sp = EmbedSpace::make(2, 1);
    bool norm_ok = true, retr_ok = true;
    for (int it = 0; it < 2000; ++it) {
      const SpecPoint p = rand_spec(2, 1);
      const Vec f = sp.to_flat(p);
      double n2 = 0.0;
      for (double c : f) n2 += c * c;
      if (std::abs(std::sqrt(n2) - spec_norm(p)) > 1e-12) norm_ok = false;
      Vec g = sp.project(f);
      for (std::size_t i = 0; i < f.size(); ++i)
        if (g[i] != f[i]) retr_ok = false;
    }
    rows.push_back({"embedding norm |zeta(P)| = |P|", norm_ok});
    rows.push_back({"varrho identity on the image", retr_ok});
  }
  if (rows.empty()) {
    std::cerr << "unknown suite: " << suite << "\n";
    return 2;
  }
  bool all = true;
  for (const Row& r : rows) {
    std::cout << (r.ok ? "PASS  " : "FAIL  ") << r.name << "\n";
    all = all && r.ok;
  }
  return all ? 0 : 1;
}

GraphDomain parse_domain(const std::string& s) {
  const auto colon = s.find(':');
  const std::string kind = s.substr(0, colon);
  const double ext = colon == std::string::npos
                         ? 1.0
                         : std::stod(s.substr(colon + 1));
  if (kind == "disk") return GraphDomain::disk(ext);
  if (kind == "square") return GraphDomain::square(ext);
  throw CLI::ValidationError("--domain", "expected disk:R or square:A");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus of special Q-valued functions"};
  app.set_version_flag("--version", kVersion);
  int threads = env_threads();
  unsigned seed = 0;
  app.add_option("--threads", threads, "worker cap (0 = serial)");
  app.add_option("--seed", seed, "seed recorded in manifests");

  std::string config;
  for (int i = 1; i < argc; ++i) config += std::string(argv[i]) + " ";

  // ------------------------------------------------------------------ metric
  auto* metric = app.add_subcommand("metric", "distance between two Q-points");
  std::string a_text, b_text;
  int sign_a = 0, sign_b = 0;
  metric->add_option("--a", a_text, "atoms of the first point (JSON)")
      ->required();
  metric->add_option("--b", b_text, "atoms of the second point (JSON)")
      ->required();
  metric->add_option("--sign-a", sign_a, "sign (+-1) for the special metric");
  metric->add_option("--sign-b", sign_b, "sign (+-1) for the special metric");
  metric->callback([&] {
    const QPoint a = qpoint_from_json(json::parse(a_text));
    const QPoint b = qpoint_from_json(json::parse(b_text));
    std::cout.precision(10);
    if (sign_a && sign_b) {
      std::cout << "Gs = "
                << metric_Gs(SpecPoint(a, sign_a), SpecPoint(b, sign_b))
                << "\n";
    } else {
      std::cout << "G = " << metric_G(a, b) << "\n";
    }
  });

  // ---------------------------------------------------------------- minimize
  auto* minimize = app.add_subcommand("minimize", "Dirichlet minimization");
  minimize->set_help_flag("--help");
  std::string boundary_path, h_text = "1/64", strategy = "embedded";
  std::string out_path, report_path;
  minimize->add_option("--boundary", boundary_path, "field JSON or builtin")
      ->required();
  minimize->add_option("--h", h_text, "mesh size for builtin boundaries");
  minimize->add_option("--strategy", strategy, "embedded | two-sheet")
      ->check(CLI::IsMember({"embedded", "two-sheet"}));
  minimize->add_option("--out", out_path, "solution field JSON");
  minimize->add_option("--report", report_path, "solver report JSON");
  minimize->callback([&] {
    const json bj = load_json(boundary_path);
    GridField u0 = bj.contains("builtin")
                       ? (bj["builtin"] == "enneper"
                              ? enneper_boundary(parse_fraction(h_text))
                              : throw std::invalid_argument(
                                    "unknown builtin boundary"))
                       : field_from_json(bj);
    SolveOptions opts;
    opts.threads = threads;
    opts.seed = seed;
    SolveReport rep;
    const GridField u = strategy == "embedded"
                            ? solve_dirichlet(u0, opts, &rep)
                            : solve_two_sheet(u0, opts, &rep);
    std::cout.precision(10);
    std::cout << "energy = " << rep.final_energy << " (" << rep.sweeps
              << " sweeps)\n";
    if (!out_path.empty()) {
      save_json(out_path, to_json(u));
      write_manifest(out_path, config, seed);
    }
    if (!report_path.empty()) {
      save_json(report_path, json{{"final_energy", rep.final_energy},
                                  {"sweeps", rep.sweeps},
                                  {"converged", rep.converged},
                                  {"energy_trace", rep.energy_trace},
                                  {"regions", region_stats(u)}});
      write_manifest(report_path, config, seed);
    }
  });

  // --------------------------------------------------------------- frequency
  auto* frequency = app.add_subcommand("frequency", "frequency profile");
  std::string field_path, center_text = "0,0", fout;
  frequency->add_option("--field", field_path, "field JSON")->required();
  frequency->add_option("--center", center_text, "profile center x,y");
  frequency->add_option("--out", fout, "CSV with columns r,D,H,I");
  frequency->callback([&] {
    const GridField u = field_from_json(load_json(field_path));
    const Vec c = parse_vec(center_text);
    const FrequencyProfile p =
        frequency_profile(u, c, default_radii(u.domain, c));
    std::vector<Vec> rows;
    for (std::size_t k = 0; k < p.radii.size(); ++k)
      rows.push_back(Vec{p.radii[k], p.D[k], p.H[k],
                         p.defined[k] ? p.I[k] : std::nan("")});
    if (!fout.empty()) {
      save_csv(fout, "r,D,H,I", rows);
      write_manifest(fout, config, seed);
    } else {
      std::cout << profile_json(p).dump(2) << "\n";
    }
  });

  // ------------------------------------------------------------------ graphs
  auto* graphs = app.add_subcommand("graphs", "graph-current functionals");
  std::string spec_path, domain_text = "disk:1.0", eps_text = "0.1,0.05,0.025";
  std::string tilt_text = "0.05,0", gout;
  double s_radius = 0.8, reparam_h = 1.0 / 64;
  graphs->add_option("--spec", spec_path, "sheet DSL JSON")->required();
  graphs->add_option("--domain", domain_text, "disk:R or square:A");
  graphs->add_option("--eps", eps_text, "scaling list for taylor");
  graphs->add_option("--s", s_radius, "ball radius for excess/reparam");
  graphs->add_option("--tilt", tilt_text, "plane slope for reparam");
  graphs->add_option("--grid", reparam_h, "lattice step for reparam");
  graphs->add_option("--out", gout, "output JSON");
  for (const std::string op :
       {"mass", "taylor", "excess", "variation", "reparam"}) {
    auto* sub = graphs->add_subcommand(op);
    sub->fallthrough();
    sub->callback([&, op] {
      const SheetSpec f = sheet_spec_from_json(load_json(spec_path).dump());
      json out;
      if (op == "mass") {
        out["mass"] = graph_mass(f, parse_domain(domain_text));
      } else if (op == "taylor") {
        std::vector<double> eps;
        for (double e : parse_vec(eps_text)) eps.push_back(e);
        const TaylorFit fit =
            taylor_mass_check(f, parse_domain(domain_text), eps);
        out = {{"eps", fit.eps}, {"rem", fit.rem}, {"slope", fit.slope},
               {"flat", fit.flat}};
      } else if (op == "excess") {
        const ExcessReport rep = cylindrical_excess(f, s_radius);
        out = {{"lhs", rep.lhs},
               {"rhs", rep.rhs},
               {"remainder", rep.remainder}};
      } else if (op == "variation") {
        GraphVariation z;
        z.zeta = [](const Vec& x, const Vec&) {
          const double t = std::max(0.0, 0.64 - x[0] * x[0] - x[1] * x[1]);
          return Vec{t * t * t};
        };
        z.dx_zeta = [](const Vec& x, const Vec&) {
          const double t = std::max(0.0, 0.64 - x[0] * x[0] - x[1] * x[1]);
          return Mat{Vec{-6.0 * t * t * x[0], -6.0 * t * t * x[1]}};
        };
        z.dy_zeta = [](const Vec&, const Vec&) { return Mat{Vec{0.0}}; };
        const VariationReport rep =
            first_variation_graph(f, parse_domain(domain_text), z);
        out = {{"numeric", rep.numeric},
               {"formula", rep.formula},
               {"error", rep.error},
               {"cubic", rep.cubic}};
      } else {
        const Vec tilt = parse_vec(tilt_text);
        const TiltedReparam rep =
            reparametrize_tilted(f, tilt, s_radius, reparam_h);
        out = {{"c0", rep.c0},
               {"lip", rep.lip},
               {"mass", discrete_graph_mass(rep.g)},
               {"cylinder_mass",
                graph_mass_in_cylinder(f, tilt, s_radius,
                                       parse_domain(domain_text))}};
      }
      if (!gout.empty()) {
        save_json(gout, out);
        write_manifest(gout, config, seed);
      }
      std::cout << out.dump(2) << "\n";
    });
  }
  graphs->require_subcommand(1);

  // ---------------------------------------------------------------- luckhaus
  auto* luckhaus = app.add_subcommand("luckhaus", "annulus interpolation");
  double lambda = 0.25;
  int k_samples = 128;
  std::string f_path, g_path;
  luckhaus->add_option("--lambda", lambda, "annulus width in (0, 1/2)");
  luckhaus->add_option("--k", k_samples, "angular samples");
  luckhaus->add_option("--f", f_path, "outer trace (JSON array of points)");
  luckhaus->add_option("--g", g_path, "inner trace (JSON array of points)");
  luckhaus->callback([&] {
    std::vector<SpecPoint> f, g;
    if (f_path.empty() || g_path.empty()) {
      // builtin: pure sign flip with identical atoms
      for (int j = 0; j < k_samples; ++j) {
        f.push_back(SpecPoint(QPoint(std::vector<Vec>{{-1.0}, {1.0}}), +1));
        g.push_back(SpecPoint(QPoint(std::vector<Vec>{{-1.0}, {1.0}}), -1));
      }
    } else {
      for (const auto& v : load_json(f_path)) f.push_back(specpoint_from_json(v));
      for (const auto& v : load_json(g_path)) g.push_back(specpoint_from_json(v));
    }
    const AnnulusField u = luckhaus_interpolate(f, g, lambda);
    const double e = annulus_energy(u);
    const double bound =
        lambda * (circle_energy(f) + circle_energy(g)) +
        circle_gs2(f, g) / lambda;
    std::cout.precision(10);
    std::cout << "energy = " << e << "\nbound_without_C = " << bound
              << "\nfitted_C = " << e / bound << "\n";
  });

  // ------------------------------------------------------------------ extend
  auto* extend = app.add_subcommand("extend", "Lipschitz extension");
  std::string data_path, ext_out, shape = "square";
  double ext_h = 1.0 / 32, ext_half = 1.0;
  int ext_m = 2;
  extend->add_option("--data", data_path, "[{site, value}] JSON")->required();
  extend->add_option("--out", ext_out, "extended field JSON");
  extend->add_option("--shape", shape, "square | disk")
      ->check(CLI::IsMember({"square", "disk"}));
  extend->add_option("--m", ext_m, "domain dimension (square only)");
  extend->add_option("--grid", ext_h, "lattice step");
  extend->add_option("--extent", ext_half, "half-width or radius");
  extend->callback([&] {
    std::vector<std::pair<Vec, SpecPoint>> data;
    for (const auto& row : load_json(data_path))
      data.emplace_back(row.at("site").get<Vec>(),
                        specpoint_from_json(row.at("value")));
    const GridDomain dom = shape == "disk"
                               ? GridDomain::disk(ext_h, ext_half)
                               : GridDomain::square(ext_m, ext_h, ext_half);
    const GridField u = lipschitz_extend(data, dom);
    double worst = 0.0;
    for (std::size_t e = 0; e < dom.edges().size(); ++e) {
      const auto [x, y] = dom.edges()[e];
      worst = std::max(worst, metric_Gs(u.values[x], u.values[y]) / dom.h());
    }
    std::cout.precision(10);
    std::cout << "sampled_lip = " << worst << "\n";
    if (!ext_out.empty()) {
      save_json(ext_out, to_json(u));
      write_manifest(ext_out, config, seed);
    }
  });

  // ------------------------------------------------------------------ verify
  auto* verify = app.add_subcommand("verify", "property suites");
  std::string suite = "all";
  verify->add_option("--suite", suite, "metric | embedding | all");
  int verify_rc = 0;
  verify->callback([&] { verify_rc = run_verify(suite); });

  // ----------------------------------------------------------------- enneper
  auto* enneper = app.add_subcommand("enneper", "two-sheet benchmark pipeline");
  enneper->set_help_flag("--help");
  std::string enneper_h = "1/64", enneper_out = "report.json";
  enneper->add_option("--h", enneper_h, "mesh size");
  enneper->add_option("--out", enneper_out, "report JSON");
  enneper->callback([&] {
    const double h = parse_fraction(enneper_h);
    const GridField u0 = enneper_boundary(h);
    SolveOptions opts;
    opts.threads = threads;
    opts.seed = seed;
    SolveReport ra, rb;
    const GridField ua = solve_dirichlet(u0, opts, &ra);
    solve_two_sheet(u0, opts, &rb);
    const double e_competitor =
        dirichlet_energy(enneper_competitor(u0.domain));
    const double e_pair = classical_pair_energy(u0.domain);
    const Vec c{0.0, 0.0};
    const FrequencyProfile prof =
        frequency_profile(ua, c, default_radii(ua.domain, c));
    json rep = {{"h", h},
                {"E_special", std::min(ra.final_energy, rb.final_energy)},
                {"E_embedded", ra.final_energy},
                {"E_two_sheet", rb.final_energy},
                {"E_classical_pair", e_pair},
                {"E_competitor", e_competitor},
                {"E_collapsed_reference", 18.0 * M_PI},
                {"I_profile", profile_json(prof)},
                {"regions", region_stats(ua)}};
    save_json(enneper_out, rep);
    write_manifest(enneper_out, config, seed);
    std::cout.precision(10);
    std::cout << "E_special = " << rep["E_special"].get<double>()
              << "\nE_classical_pair = " << e_pair
              << "\nE_competitor = " << e_competitor << "\n";
  });

  app.require_subcommand(1);
  CLI11_PARSE(app, argc, argv);
  return verify_rc;
}
