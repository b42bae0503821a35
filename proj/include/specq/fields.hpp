#ifndef SPECQ_FIELDS_HPP
#define SPECQ_FIELDS_HPP

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "specq/retraction.hpp"
#include "specq/specpoint.hpp"

namespace specq {

enum class NodeKind : std::uint8_t { Exterior = 0, Interior = 1, Boundary = 2 };

enum class DomainShape { Square, Disk };

// Axis-aligned lattice over a square [-a, a]^m or a disk of given radius
// (m = 2). Boundary nodes are the active nodes touching the exterior along
// a coordinate axis (for the square, the outermost active layer).
class GridDomain {
 public:
  static GridDomain square(int m, double h, double half_width = 1.0);
  static GridDomain disk(double h, double radius = 1.0);

  int m() const { return m_; }
  double h() const { return h_; }
  DomainShape shape() const { return shape_; }
  double extent() const { return extent_; }  // half-width or radius

  int size() const { return size_; }
  const std::vector<NodeKind>& mask() const { return mask_; }
  NodeKind kind(int node) const { return mask_[node]; }
  bool active(int node) const { return mask_[node] != NodeKind::Exterior; }

  Vec coord(int node) const;
  // Flat index of the lattice node nearest to x; -1 when outside the lattice.
  int nearest(const Vec& x) const;
  // Neighbor along axis (dir in {-1,+1}); -1 when off the lattice.
  int neighbor(int node, int axis, int dir) const;

  // Active axis-adjacent node pairs, each listed once.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  // Per-edge quadrature weight: the fraction of the edge's dual cell
  // (h along the edge, h/2 to each transverse side) inside the continuum
  // domain, so that edge sums integrate the gradient over the true shape.
  const std::vector<double>& edge_weights() const { return edge_weights_; }
  // Axis of each edge, parallel to edges().
  const std::vector<int>& edge_axes() const { return edge_axis_; }

  // Number of active nodes.
  int active_count() const { return active_count_; }

 private:
  void finalize(const std::function<bool(const Vec&)>& inside);
  void compute_weights(
      const std::function<double(const Vec&, const Vec&)>& cell_fraction);

  int m_ = 2;
  double h_ = 0.0;
  DomainShape shape_ = DomainShape::Square;
  double extent_ = 1.0;
  std::vector<int> dims_;
  std::vector<int> strides_;
  Vec origin_;
  int size_ = 0;
  int active_count_ = 0;
  std::vector<NodeKind> mask_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> edge_axis_;
  std::vector<double> edge_weights_;
};

// Area of [x0,x1] x [y0,y1] intersected with the disk of radius r about the
// origin (composite-Simpson on the exact section length).
double rect_disk_area(double x0, double x1, double y0, double y1, double r);

// A special-Q-valued map sampled on the active nodes of a domain.
// Inactive nodes carry a default-collapsed placeholder value.
struct GridField {
  GridDomain domain;
  int q = 0;
  int n = 0;
  std::vector<SpecPoint> values;      // size domain.size()
  std::vector<std::uint8_t> fixed;    // nonzero = held by solvers

  static GridField constant(GridDomain d, const SpecPoint& value);
  // Sample an analytic map at node coordinates; boundary nodes fixed.
  static GridField sample(GridDomain d,
                          const std::function<SpecPoint(const Vec&)>& f,
                          bool fix_boundary = true);

  const SpecPoint& at(int node) const { return values[node]; }
};

struct EnergyBreakdown {
  double total = 0.0;
  std::vector<double> density;  // per-node share of the edge sum
};

// E_h(u) = h^{m-2} sum over active edges of Gs(u(a), u(b))^2.
double dirichlet_energy(const GridField& u);
EnergyBreakdown dirichlet_energy_density(const GridField& u);

struct SplitEnergy {
  double total = 0.0;
  double centered = 0.0;
  double barycenter = 0.0;  // scalar energy of eta o u (no Q factor)
};

// Discrete version of Dir(u) = Dir(u - eta) + Q Dir(eta o u).
SplitEnergy split_energy_check(const GridField& u);

struct RegionReport {
  std::vector<RegionLabel> labels;  // per node (exterior nodes Collapsed)
  std::vector<int> interface_nodes;
};

RegionReport regions(const GridField& u);

struct CircleTrace {
  double r = 0.0;
  std::vector<double> angles;
  std::vector<SpecPoint> values;
};

// K uniformly spaced angular samples of u on the circle of radius r around
// the origin (disk domains); bilinear interpolation in zeta coordinates
// followed by the retraction. K = 0 picks ceil(2 pi r / h).
CircleTrace trace_circle(const GridField& u, double r, int k_samples = 0);

// Interpolated field value at an arbitrary interior point, same scheme as
// trace_circle.
SpecPoint interpolate(const GridField& u, const Vec& x);

}  // namespace specq

#endif
