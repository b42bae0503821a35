#ifndef SPECQ_MINIMIZE_HPP
#define SPECQ_MINIMIZE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "specq/fields.hpp"

namespace specq {

struct SolveOptions {
  double tol = 1e-10;       // relative energy decrease per sweep
  int max_sweeps = 100000;
  double damping = 0.9;     // fraction of the local exact step taken
  int threads = 0;          // 0 = serial; >0 caps the worker count
  unsigned seed = 0;        // recorded in manifests; solvers are deterministic
};

struct SolveReport {
  std::vector<double> energy_trace;  // energy after each sweep
  int sweeps = 0;
  bool converged = false;
  double final_energy = 0.0;
};

// Scalar 5-point Laplace solve by SOR; fixed nodes are Dirichlet data.
// Stops when the largest nodal update is below tol.
void solve_laplace_scalar(const GridDomain& d, std::vector<double>& v,
                          const std::vector<std::uint8_t>& fixed,
                          double tol = 1e-12, int max_iters = 200000);

// Strategy A: free nodes live in embedded coordinates; damped nodewise
// relaxation of the quadratic edge energy with varrho projection and a
// per-node energy-acceptance check, so the energy never increases.
// Initialization: per-coordinate harmonic extension of the boundary data,
// projected nodewise.
GridField solve_dirichlet(const GridField& u0, const SolveOptions& opts = {},
                          SolveReport* report = nullptr);

// Strategy B (Q=2, n=1): alternate exact local quadratic solves for the two
// sheets with nodewise region-label updates by local energy comparison;
// ties prefer Collapsed.
GridField solve_two_sheet(const GridField& u0, const SolveOptions& opts = {},
                          SolveReport* report = nullptr);

// Test data for the two first-variation identities: a compactly supported
// vector field phi (inner variations) and a target-space deformation of the
// admissible form psi(x, u) = chi(x) * u (outer variations).
struct VariationTest {
  std::function<Vec(const Vec&)> phi;                // R^m -> R^m
  std::function<std::vector<Vec>(const Vec&)> dphi;  // [k][j] = d phi_k/d x_j
  std::function<double(const Vec&)> chi;
  std::function<Vec(const Vec&)> grad_chi;
};

// Midpoint-quadrature residuals of the stationarity integrals
//   inner: sum_i ( 2 <Du_i Dphi : Du_i> - |Du_i|^2 div phi )
//   outer: sum_i ( <Du_i : D_x psi> + <Du_i : D_u psi . Du_i> )
// using per-region sheet gradients (n = 1). Cells straddling the interface
// are skipped (measure zero in the limit). Both vanish for minimizers as
// h -> 0.
struct VariationResiduals {
  double inner = 0.0;
  double outer = 0.0;
};

VariationResiduals variation_residuals(const GridField& u,
                                       const VariationTest& t);

}  // namespace specq

#endif
