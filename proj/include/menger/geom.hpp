#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "menger/errors.hpp"

namespace menger {

/// Coordinates of a point in R^n, n >= 2.
using Coords = std::vector<double>;

/// Relative collinearity threshold for the curvature kernel: a triple is
/// treated as degenerate when area <= kCollinearityTol * (max pairwise dist)^2.
inline constexpr double kCollinearityTol = 1e-14;

/// Absolute degeneracy floor: heights below kHeightFloor * (max |coordinate|)
/// are treated as zero. Computed heights carry roundoff proportional to the
/// coordinate magnitude, so smaller values are indistinguishable from exact
/// collinearity (and would otherwise explode 2h/|z-x|^2 for nearby points).
inline constexpr double kHeightFloor = 1e-13;

/// Euclidean distance from z to the infinite line through x and y.
/// Throws if x == y.
double dist_point_line(std::span<const double> z, std::span<const double> x,
                       std::span<const double> y);

/// Radius of the circle through three points; +infinity for collinear or
/// coincident triples.
double circumradius(std::span<const double> x, std::span<const double> y,
                    std::span<const double> z);

/// Menger curvature: reciprocal circumradius, 0 for degenerate triples.
/// Symmetric in its three arguments and invariant under isometries;
/// kappa(lambda x, lambda y, lambda z) = kappa(x, y, z) / lambda.
double kappa(std::span<const double> x, std::span<const double> y,
             std::span<const double> z);

/// Limit of kappa(x, y, z) as y -> x along direction dir:
/// 2 dist(z, line(x, dir)) / |z - x|^2. Used on quadrature diagonals.
double kappa_tangent(std::span<const double> x, std::span<const double> dir,
                     std::span<const double> z);

/// An ordered polygonal curve, open or closed. Construction enforces the
/// cheap invariants (>= 2 vertices, consistent dimension >= 2, finite
/// coordinates, no zero-length edge); validate() additionally checks
/// simplicity.
class Polygon {
 public:
  Polygon(std::vector<Coords> vertices, bool closed);

  std::size_t vertex_count() const { return n_; }
  std::size_t dimension() const { return dim_; }
  bool closed() const { return closed_; }
  bool validated() const { return validated_; }

  /// Number of edges: N for closed polygons, N-1 for open polylines.
  std::size_t edge_count() const { return closed_ ? n_ : n_ - 1; }

  std::span<const double> vertex(std::size_t i) const {
    return {flat_.data() + i * dim_, dim_};
  }

  double edge_length(std::size_t e) const { return edge_len_[e]; }
  double total_length() const { return total_len_; }
  double shortest_edge() const { return shortest_edge_; }
  /// Max pairwise vertex distance (equals the diameter of the curve).
  double diameter() const { return diameter_; }

  std::span<const double> edge_start(std::size_t e) const { return vertex(e); }
  std::span<const double> edge_end(std::size_t e) const {
    return vertex((e + 1) % n_);
  }
  /// Unit direction of edge e.
  std::span<const double> edge_dir(std::size_t e) const {
    return {edge_dir_.data() + e * dim_, dim_};
  }

  /// Point at arc distance t in [0, edge_length(e)] along edge e,
  /// written into out (out.size() == dimension()).
  void edge_point(std::size_t e, double t, std::span<double> out) const;
  Coords edge_point(std::size_t e, double t) const;

  /// Point at global arc length s. Closed polygons wrap (s mod total
  /// length); open polygons throw outside [0, total length].
  Coords arc_point(double s) const;

  /// Corner angle at vertex i, radians in (0, 2*pi).
  /// In the plane this is the counterclockwise angle from the reversed
  /// incoming edge to the outgoing edge, so the middle vertex of
  /// make_e_phi(phi) reports exactly phi; in higher dimensions the
  /// unsigned angle in (0, pi] is returned. Straight vertices give pi.
  /// Throws for endpoints of open polygons.
  double vertex_angle(std::size_t i) const;

  /// True if vertex i has a well-defined angle different from pi.
  bool vertex_is_corner(std::size_t i, double tol = 1e-9) const;
  bool has_corner(double tol = 1e-9) const;

  /// Euclidean distance from p to the curve.
  double distance_to(std::span<const double> p) const;

  /// Simplicity check: non-adjacent edges must not come within
  /// 1e-12 * diameter of each other and adjacent edges must meet only at
  /// the shared vertex. Marks the polygon validated or throws.
  Polygon& validate();

 private:
  std::size_t n_ = 0;
  std::size_t dim_ = 0;
  bool closed_ = false;
  bool validated_ = false;
  std::vector<double> flat_;
  std::vector<double> edge_dir_;
  std::vector<double> edge_len_;
  std::vector<double> cum_len_;
  double total_len_ = 0.0;
  double signed_area_ = 0.0;  // shoelace area; orientation of closed 2D curves
  double shortest_edge_ = 0.0;
  double diameter_ = 0.0;
};

/// The model corner: open polyline (1,0) -- (0,0) -- (cos phi, sin phi),
/// two unit edges with opening angle phi in (0, 2*pi).
Polygon make_e_phi(double phi);

/// Shortest distance between two segments [a0,a1] and [b0,b1] in R^n.
double segment_distance(std::span<const double> a0, std::span<const double> a1,
                        std::span<const double> b0, std::span<const double> b1);

}  // namespace menger
