#ifndef SPECQ_LUCKHAUS_HPP
#define SPECQ_LUCKHAUS_HPP

#include <vector>

#include "specq/specpoint.hpp"

namespace specq {

// Interpolant on the annulus B_1 \ B_{1-lambda} between two maps sampled on
// uniform angles of the circle: the segment between the embedded boundary
// values is retracted back onto the image pointwise.
struct AnnulusField {
  int q = 0, n = 0;
  double lambda = 0.0;
  int rings = 0;  // radial samples, ring 0 at radius 1 - lambda
  int k = 0;      // angular samples
  std::vector<SpecPoint> values;  // ring-major

  double radius(int ring) const {
    return 1.0 - lambda + lambda * ring / (rings - 1);
  }
  const SpecPoint& at(int ring, int j) const { return values[ring * k + j]; }
};

// rings = 0 picks a radial step comparable to the angular arc length.
AnnulusField luckhaus_interpolate(const std::vector<SpecPoint>& f,
                                  const std::vector<SpecPoint>& g,
                                  double lambda, int rings = 0);

// Polar-lattice Dirichlet energy of the interpolant.
double annulus_energy(const AnnulusField& u);

// Dirichlet energy of a circle map and the squared distance between two.
double circle_energy(const std::vector<SpecPoint>& f);
double circle_gs2(const std::vector<SpecPoint>& f,
                  const std::vector<SpecPoint>& g);

}  // namespace specq

#endif
