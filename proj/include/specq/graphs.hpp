#ifndef SPECQ_GRAPHS_HPP
#define SPECQ_GRAPHS_HPP

#include <functional>
#include <string>
#include <vector>

#include "specq/fields.hpp"

namespace specq {

using Mat = std::vector<Vec>;  // n rows of length 2 (gradient of one sheet)

// Closed-form description of a special Q-valued map over a planar domain:
// a sign predicate splitting the domain into the +/- regions and, per
// region, q sheet functions with their gradients. Sheets of the two regions
// must agree where the predicate vanishes so the induced map is continuous.
struct SheetSpec {
  int q = 0;
  int n = 1;
  std::function<double(const Vec&)> sign;
  std::function<std::vector<Vec>(const Vec&, int)> sheets;  // (x, region +-1)
  std::function<std::vector<Mat>(const Vec&, int)> grads;
  double lip = 0.0;

  int region(const Vec& x) const {
    const double s = sign(x);
    return s < 0.0 ? -1 : +1;
  }
};

// Uniform sheets on both regions (collapsed-interface maps with globally
// defined sheet formulas, the common case in the tests).
SheetSpec make_sheet_spec(int q, int n,
                          std::function<double(const Vec&)> sign,
                          std::function<std::vector<Vec>(const Vec&)> sheets,
                          std::function<std::vector<Mat>(const Vec&)> grads);

// Polynomial DSL: q sheets in two variables with rational coefficients and a
// polynomial sign predicate, e.g.
//   {"q": 2, "n": 1,
//    "sign":   [[1,1,1,0], [-1,1,0,1]],            // x - y
//    "sheets": [[], [[3,1,2,0], [-3,1,0,2]]]}      // {0, 3x^2 - 3y^2}
// Each monomial is [num, den, deg_x, deg_y]; gradients are exact symbolic
// derivatives and lip is estimated by sampling.
SheetSpec sheet_spec_from_json(const std::string& text);

// Integration region for graph functionals: a centered square or disk.
struct GraphDomain {
  DomainShape shape = DomainShape::Square;
  double extent = 1.0;  // half-width or radius
  static GraphDomain square(double half_width);
  static GraphDomain disk(double radius);
  double area() const;
};

// Plucker coordinates of the unit simple 2-vector orienting the graph of a
// sheet with gradient df (rows of [I_2; df] wedged pairwise); the Euclidean
// norm of the raw coordinate vector is the area factor sqrt(det(I + df^T df)).
struct MVector {
  Vec p;  // size (2 + n choose 2), unit norm
};

MVector graph_mvector(const Mat& df);
double area_factor(const Mat& df);
double nonoriented_dist2(const MVector& a, const MVector& b);

// Mass of the graph current: integral of the summed sheet area factors,
// tensor Gauss-Legendre of the given order per cell with recursive cell
// splitting along the region interface (disks are integrated in polar
// coordinates, so the rim is exact).
double graph_mass(const SheetSpec& f, const GraphDomain& om, int order = 6);

// Dirichlet energy of the sheets by the same quadrature.
double graph_dirichlet(const SheetSpec& f, const GraphDomain& om,
                       int order = 6);

struct TaylorFit {
  std::vector<double> eps;
  std::vector<double> rem;  // |mass - Q|Omega| - Dir/2| per epsilon
  double slope = 0.0;       // least-squares slope of log rem vs log eps
  bool flat = false;        // all remainders at rounding level; slope unset
};

// Quartic-remainder check of the mass expansion for f_eps = eps * g.
TaylorFit taylor_mass_check(const SheetSpec& g, const GraphDomain& om,
                            const std::vector<double>& eps, int order = 6);

struct ExcessReport {
  double lhs = 0.0;   // integral of the non-oriented tangent distance
  double rhs = 0.0;   // integral of the matched gradient distance to Q[[L]]
  double remainder = 0.0;
  Mat L;              // reference slope actually used
};

// Cylindrical excess over B_s against the plane of slope L (default: mean
// gradient of the barycenter sheet over B_s).
ExcessReport cylindrical_excess(const SheetSpec& f, double s,
                                const Mat* L = nullptr, int order = 6);

struct VariationReport {
  double numeric = 0.0;   // Richardson central difference of the mass
  double formula = 0.0;   // main term of the expansion
  double error = 0.0;     // |numeric - formula|
  double cubic = 0.0;     // integral of |D zeta| |Df|^3 (for fitted bounds)
};

// Test deformation zeta(x, y) with its x- and y-derivatives.
struct GraphVariation {
  std::function<Vec(const Vec&, const Vec&)> zeta;     // (x, y) -> R^n
  std::function<Mat(const Vec&, const Vec&)> dx_zeta;  // n x 2
  std::function<Mat(const Vec&, const Vec&)> dy_zeta;  // n x n
};

VariationReport first_variation_graph(const SheetSpec& f,
                                      const GraphDomain& om,
                                      const GraphVariation& zeta,
                                      int order = 6);

// Reparametrization of the graph over the tilted plane pi = {(x, tilt . x)}
// (n = 1): nodewise line shooting along the normal of pi, region
// classification through the barycenter crossing, then one crossing per
// sheet; bisection bracketing followed by three Newton steps.
struct TiltedReparam {
  GridField g;        // over the disk lattice B_s in plane coordinates
  double c0 = 0.0;    // sampled sup norm of g
  double lip = 0.0;   // sampled Lipschitz constant over lattice edges
};

TiltedReparam reparametrize_tilted(const SheetSpec& f, const Vec& tilt,
                                   double s, double h);

// Mass of a lattice-sampled graph (per-cell finite differences with sorted
// sheet matching) and of the restriction of G_f to the cylinder over
// B_s(pi); the two agree within quadrature tolerance for a valid
// reparametrization.
double discrete_graph_mass(const GridField& g);
double graph_mass_in_cylinder(const SheetSpec& f, const Vec& tilt, double s,
                              const GraphDomain& om, int order = 6);

}  // namespace specq

#endif
