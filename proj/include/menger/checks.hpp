#pragma once

#include <cstdint>
#include <string>

#include "menger/geom.hpp"

namespace menger {

/// Outcome of a sampled inequality check. max_violation is the most
/// positive observed lhs - rhs; the check passes when every sample
/// satisfies lhs - rhs <= 1e-10 * scale with scale the magnitude of the
/// two sides at that sample.
struct CheckReport {
  std::string check;
  std::uint64_t samples = 0;
  double max_violation = 0.0;
  double scale = 1.0;
  Coords witness;
  bool pass = true;
};

/// The corner constant: sin(phi) for phi in [pi/2, pi),
/// sin(phi)/(1 - cos(phi)) for phi in (0, pi/2), and by reflection
/// c(2*pi - phi) for phi in (pi, 2*pi). Undefined at phi = pi.
double c_phi(double phi);

/// kappa(x, y, z) <= c(phi) * 2*zeta / (sqrt(xi^2+zeta^2) * sqrt(eta^2+zeta^2))
/// for x=(xi,0), y=(eta,0), z=zeta*(cos phi, sin phi), sampled over (0,1]^3.
/// The bound is an identity at phi = pi/2.
CheckReport lemma1_bound_check(double phi, std::uint64_t samples, std::uint64_t seed);

/// The straightening map E_phi -> E_{pi/2}: identity on the horizontal
/// edge, slanted-edge point at distance t from the origin maps to (0, t).
Coords straightening_map(double phi, std::span<const double> x);

/// Distortion constants of the straightening map (it is an arc-length
/// isometry on each edge; only cross-edge distances stretch).
double lipschitz_straightening(double phi);
double lipschitz_straightening_inv(double phi);

/// kappa(x,y,z) <= c(phi) * kappa(f(x), f(y), f(z)) for random triples on
/// E_phi with at least one point on each edge; same-edge triples have
/// kappa exactly zero on both sides.
CheckReport lemma2_pointwise_check(double phi, std::uint64_t samples, std::uint64_t seed);

enum class PushforwardIntegrand { One, Product };

/// Change-of-variables estimate with X = [0, c], Y = [0, 1], g(x) = x/c:
/// int_{X^n} f(g(x)) dx <= c^n int_{Y^n} f(y) dy, with equality for this
/// affine map. Both sides are quadratures checked against closed forms.
CheckReport pushforward_check(double stretch, int tuple_arity, std::uint64_t samples,
                              PushforwardIntegrand f = PushforwardIntegrand::Product);

}  // namespace menger
