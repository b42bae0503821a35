#ifndef SPECQ_FREQUENCY_HPP
#define SPECQ_FREQUENCY_HPP

#include <vector>

#include "specq/fields.hpp"

namespace specq {

// Frequency function data of a field around a center: D(r) the Dirichlet
// energy of the ball B_r, H(r) the boundary integral of |u|^2, and
// I(r) = r D(r) / H(r) wherever H is nonzero.
struct FrequencyProfile {
  Vec center;
  std::vector<double> radii;   // strictly increasing
  std::vector<double> D;
  std::vector<double> H;
  std::vector<double> I;       // meaningful only where defined[k]
  std::vector<std::uint8_t> defined;
  bool degenerate = false;     // H ~ 0 at some radius though u is not trivial
};

// 24 geometrically spaced radii in [4h, dist(x0, boundary) - 4h].
std::vector<double> default_radii(const GridDomain& d, const Vec& x0,
                                  int count = 24);

// Energy of B_r by dual-cell/ball fractional edge weighting, boundary
// integral by uniform angular quadrature of the interpolated field.
FrequencyProfile frequency_profile(const GridField& u, const Vec& x0,
                                   const std::vector<double>& radii);

struct MonotoneReport {
  bool ok = true;
  double worst_drop = 0.0;               // max of I(r_k) - I(r_{k+1}), >= 0
  std::vector<int> violations;           // indices k where the drop > tol
};

// Checks I(r_{k+1}) >= I(r_k) - tol across consecutive defined entries.
MonotoneReport check_monotone(const FrequencyProfile& p, double tol);

struct IdentityResiduals {
  double dD = 0.0;     // D' - ((m-2)/r) D - 2 \oint |d_nu u|^2
  double dH = 0.0;     // H' - ((m-1)/r) H - 2 D
  double outer = 0.0;  // D(r) - \oint <d_nu f, f>   (flat coordinates)
};

IdentityResiduals key_identity_residuals(const GridField& u, const Vec& x0,
                                         double r);

struct DecayReport {
  double alpha = 0.0;
  bool ok = true;
  double worst_rel_drop = 0.0;  // largest relative decrease of r^{2-m-2a} D
};

// Checks rho -> rho^{2-m-2 alpha} D(rho) nondecreasing up to rel_tol.
DecayReport energy_decay_check(const GridField& u, const Vec& x0, double alpha,
                               double rel_tol = 1e-2);

// Largest alpha in (0, 1] passing energy_decay_check at the tolerance.
double largest_decay_alpha(const GridField& u, const Vec& x0,
                           double rel_tol = 1e-2);

}  // namespace specq

#endif
