#include "menger/checks.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace menger {

namespace {

constexpr double kPassTol = 1e-10;

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

// Uniform on (0, 1].
double uniform_open0(std::mt19937_64& rng) { return 1.0 - uniform01(rng); }

void record(CheckReport& r, double lhs, double rhs, std::span<const double> witness) {
  const double s = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  const double v = lhs - rhs;
  if (v > kPassTol * s) r.pass = false;
  if (r.witness.empty() || v / s > r.max_violation / r.scale) {
    r.max_violation = v;
    r.scale = s;
    r.witness.assign(witness.begin(), witness.end());
  }
}

double normalize_angle(double phi) {
  if (!(phi > 0.0 && phi < 2.0 * M_PI))
    throw Error(ErrorCode::DomainError, "phi must lie in (0, 2*pi)");
  return phi > M_PI ? 2.0 * M_PI - phi : phi;
}

}  // namespace

double c_phi(double phi) {
  const double a = normalize_angle(phi);
  if (a == M_PI) throw Error(ErrorCode::DomainError, "c(phi) is undefined at phi = pi");
  if (a >= M_PI / 2.0) return std::sin(a);
  return std::sin(a) / (1.0 - std::cos(a));
}

double lipschitz_straightening(double phi) {
  const double a = normalize_angle(phi);
  if (a >= M_PI / 2.0) return 1.0;
  return 1.0 / std::sqrt(1.0 - std::cos(a));
}

double lipschitz_straightening_inv(double phi) {
  const double a = normalize_angle(phi);
  if (a >= M_PI / 2.0) return std::sqrt(1.0 - std::cos(a));
  return 1.0;
}

CheckReport lemma1_bound_check(double phi, std::uint64_t samples, std::uint64_t seed) {
  const double c = c_phi(phi);
  const double cs = std::cos(phi), sn = std::sin(phi);
  std::mt19937_64 rng(seed);

  CheckReport r;
  r.check = "lemma1_bound";
  r.samples = samples;
  for (std::uint64_t n = 0; n < samples; ++n) {
    const double xi = uniform_open0(rng);
    const double eta = uniform_open0(rng);
    const double zeta = uniform_open0(rng);
    const double x[2] = {xi, 0.0};
    const double y[2] = {eta, 0.0};
    const double z[2] = {zeta * cs, zeta * sn};
    const double lhs = kappa(x, y, z);
    const double rhs = c * 2.0 * zeta /
                       (std::sqrt(xi * xi + zeta * zeta) * std::sqrt(eta * eta + zeta * zeta));
    const double wit[3] = {xi, eta, zeta};
    record(r, lhs, rhs, wit);
  }
  return r;
}

Coords straightening_map(double phi, std::span<const double> x) {
  if (!(phi > 0.0 && phi < 2.0 * M_PI) || phi == M_PI)
    throw Error(ErrorCode::DomainError, "phi must lie in (0, 2*pi) \\ {pi}");
  if (x.size() != 2) throw Error(ErrorCode::InvalidArgument, "expected a planar point");
  const double tol = 1e-9;
  // Horizontal edge [0,1] x {0}.
  if (std::abs(x[1]) <= tol && x[0] >= -tol && x[0] <= 1.0 + tol)
    return {x[0], 0.0};
  // Slanted edge zeta * (cos phi, sin phi), zeta in [0, 1].
  const double zeta = std::sqrt(x[0] * x[0] + x[1] * x[1]);
  if (zeta <= 1.0 + tol &&
      std::abs(x[0] - zeta * std::cos(phi)) <= tol &&
      std::abs(x[1] - zeta * std::sin(phi)) <= tol)
    return {0.0, zeta};
  throw Error(ErrorCode::NotOnCurve, "point does not lie on E_phi");
}

CheckReport lemma2_pointwise_check(double phi, std::uint64_t samples, std::uint64_t seed) {
  const double c = c_phi(phi);
  const double cs = std::cos(phi), sn = std::sin(phi);
  std::mt19937_64 rng(seed);

  // Edge patterns with at least one point on each edge.
  static const int patterns[6][3] = {{0, 0, 1}, {0, 1, 0}, {1, 0, 0},
                                     {0, 1, 1}, {1, 0, 1}, {1, 1, 0}};

  CheckReport r;
  r.check = "lemma2_pointwise";
  r.samples = samples;
  for (std::uint64_t n = 0; n < samples; ++n) {
    const int* pat = patterns[rng() % 6];
    double pts[3][2];
    double mapped[3][2];
    double wit[6];
    for (int i = 0; i < 3; ++i) {
      const double t = uniform_open0(rng);
      if (pat[i] == 0) {
        pts[i][0] = t;
        pts[i][1] = 0.0;
        mapped[i][0] = t;
        mapped[i][1] = 0.0;
      } else {
        pts[i][0] = t * cs;
        pts[i][1] = t * sn;
        mapped[i][0] = 0.0;
        mapped[i][1] = t;
      }
      wit[2 * i] = pts[i][0];
      wit[2 * i + 1] = pts[i][1];
    }
    const double lhs = kappa(pts[0], pts[1], pts[2]);
    const double rhs = c * kappa(mapped[0], mapped[1], mapped[2]);
    record(r, lhs, rhs, wit);
  }
  return r;
}

namespace {

double test_integrand(PushforwardIntegrand f, std::span<const double> y) {
  if (f == PushforwardIntegrand::One) return 1.0;
  double v = 1.0;
  for (double c : y) v *= c;
  return v;
}

double closed_form_unit_integral(PushforwardIntegrand f, int n) {
  // int_{[0,1]^n} f
  if (f == PushforwardIntegrand::One) return 1.0;
  return std::pow(0.5, n);
}

}  // namespace

CheckReport pushforward_check(double stretch, int tuple_arity, std::uint64_t samples,
                              PushforwardIntegrand f) {
  if (!(stretch >= 1.0)) throw Error(ErrorCode::DomainError, "stretch must be >= 1");
  if (tuple_arity < 1 || tuple_arity > 3)
    throw Error(ErrorCode::DomainError, "tuple arity must be 1, 2 or 3");

  const int order = std::clamp<int>(
      static_cast<int>(std::pow(static_cast<double>(std::max<std::uint64_t>(samples, 8)),
                                1.0 / tuple_arity)),
      4, 64);
  std::vector<double> gx(order), gw(order);
  // Gauss-Legendre on [0, 1] via Newton on P_order.
  for (int i = 0; i < order; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < order; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    gx[i] = 0.5 * (1.0 - z);
    gw[i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }

  // lhs: int over [0, c]^n of f(g(x)) = f(x/c); rhs: c^n int over [0,1]^n of f.
  const int n = tuple_arity;
  double lhs = 0.0, rhs_int = 0.0;
  std::vector<int> idx(n, 0);
  std::vector<double> y(n), x(n);
  for (;;) {
    double wy = 1.0, wx = 1.0;
    for (int i = 0; i < n; ++i) {
      y[i] = gx[idx[i]];
      x[i] = stretch * gx[idx[i]];  // node of the [0, c]^n rule
      wy *= gw[idx[i]];
      wx *= stretch * gw[idx[i]];
    }
    rhs_int += wy * test_integrand(f, y);
    for (int i = 0; i < n; ++i) y[i] = x[i] / stretch;  // g(x)
    lhs += wx * test_integrand(f, y);
    int i = 0;
    for (; i < n; ++i) {
      if (++idx[i] < order) break;
      idx[i] = 0;
    }
    if (i == n) break;
  }
  const double rhs = std::pow(stretch, n) * rhs_int;

  CheckReport r;
  r.check = "pushforward";
  r.samples = static_cast<std::uint64_t>(std::pow(order, n));
  const double s = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  r.max_violation = lhs - rhs;
  r.scale = s;
  r.witness = {stretch, static_cast<double>(n)};
  const double expected = std::pow(stretch, n) * closed_form_unit_integral(f, n);
  r.pass = std::abs(lhs - rhs) <= kPassTol * s &&
           std::abs(rhs - expected) <= 1e-8 * std::max(std::abs(expected), 1.0) &&
           std::abs(lhs - expected) <= 1e-8 * std::max(std::abs(expected), 1.0);
  return r;
}

}  // namespace menger
