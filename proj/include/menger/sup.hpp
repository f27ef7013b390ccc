#pragma once

#include "menger/geom.hpp"

namespace menger {

/// Result of a supremum search over the polygon. The supremum need not be
/// attained (it can be a limit toward a corner); converged means two
/// successive refinements agreed within the tolerance.
struct SupResult {
  double value = 0.0;
  Coords argmax;
  bool converged = true;
  double tolerance = 0.0;
};

/// kappa_i(x, y) = sup_z kappa(x, y, z) over the polygon, edge by edge:
/// 64-interval coarse grid followed by golden-section refinement of each
/// local maximum bracket. x and y must lie on P (within 1e-9 * diameter).
SupResult kappa_i(const Polygon& p, std::span<const double> x,
                  std::span<const double> y, double tol = 1e-9);

/// kappa_G(x) = sup_{y,z} kappa(x, y, z): nested maximization, outer over
/// y (coarse grid + golden refinement per edge), inner via the kappa_i
/// machinery over the full polygon.
SupResult kappa_g(const Polygon& p, std::span<const double> x, double tol = 1e-9);

/// Closed-form kappa_i on the right-angle corner E_{pi/2} for
/// x = (xi, 0), y = (eta, 0): 2 / (xi + eta). Valid for xi, eta in (0, 1].
double kappa_i_corner_closed_form(double xi, double eta);

/// Closed-form kappa_G on E_{pi/2} at distance t from the corner: 2 / t.
double kappa_g_corner_closed_form(double t);

namespace detail {

/// Same searches without the membership check, for quadrature internals.
double sup_kappa_z(const Polygon& p, std::span<const double> x,
                   std::span<const double> y, double tol = 1e-9);
double sup_kappa_yz(const Polygon& p, std::span<const double> x, double tol = 1e-9);

/// sup_z of the diagonal limit kernel kappa_tangent(x, dir, z); used where
/// quadrature nodes coincide.
double sup_kappa_tangent_z(const Polygon& p, std::span<const double> x,
                           std::span<const double> dir, double tol = 1e-9);

}  // namespace detail

}  // namespace menger
