#pragma once

#include "menger/quadrature.hpp"

namespace menger {

/// Truncated energies along the nested truncations delta0 * 2^-k.
struct DyadicSeries {
  EnergyKind kind = EnergyKind::M;
  double p = 0.0;
  double delta0 = 0.0;
  int halvings = 0;                 // K
  std::vector<double> deltas;       // K+1 values delta0 * 2^-k
  std::vector<double> values;       // E(delta_k), nondecreasing in k
  std::vector<double> increments;   // values[k+1] - values[k], size K
  std::vector<double> ratios;       // increments[k+1] / increments[k], size K-1
};

struct DivergenceClass {
  enum class Type { Finite, LogDivergent, PowerDivergent };
  Type type = Type::Finite;
  /// Finite: geometric-tail extrapolation E_inf; LogDivergent: growth per
  /// halving; PowerDivergent: unused (see exponent).
  double value = 0.0;
  /// Fitted log2 slope of the increments per halving.
  double slope = 0.0;
  /// Divergence exponent gamma = slope for PowerDivergent, else 0.
  double exponent = 0.0;
  /// RMS residual of the log2-increment fit.
  double confidence = 0.0;
};

const char* to_string(DivergenceClass::Type t);

/// K+1 energy evaluations on one shared dyadic mesh.
DyadicSeries dyadic_series(const Polygon& poly, EnergyKind kind, double p,
                           double delta0, int halvings,
                           const QuadratureSpec& spec);

/// Least-squares fit of log2(increment) against k over the last half of
/// the series. Slope below -0.1 per halving: Finite with geometric-tail
/// extrapolation; |slope| <= 0.1: LogDivergent; above 0.1: PowerDivergent.
DivergenceClass classify_divergence(const DyadicSeries& s);

/// Fitted log2 slope alone (the bisection predicate of
/// estimate_critical_p uses its sign).
double fitted_increment_slope(const DyadicSeries& s);

/// Critical exponent by bisection of the finite/divergent boundary over
/// p in (0.1, 5), 12 iterations. Throws NoCorner for straight polylines.
double estimate_critical_p(const Polygon& poly, EnergyKind kind,
                           const QuadratureSpec& spec, double delta0 = 0.0,
                           int halvings = 8);

std::string series_to_csv(const DyadicSeries& s);

}  // namespace menger
