#include "menger/sup.hpp"

#include <cmath>

namespace menger {

namespace {

constexpr int kCoarseIntervals = 64;
constexpr int kGoldenIters = 60;

struct EdgeMax {
  double value = 0.0;
  double t = 0.0;
  bool converged = true;
};

// Maximize f over [0, len]: coarse grid, then golden-section refinement of
// every local-maximum bracket (the restriction of kappa to an edge can be
// bimodal). Stopping is scale-relative so the search commutes with
// rescaling the polygon.
template <class F>
EdgeMax maximize_on_edge(F&& f, double len, double tol) {
  double vals[kCoarseIntervals + 1];
  for (int j = 0; j <= kCoarseIntervals; ++j)
    vals[j] = f(len * j / kCoarseIntervals);

  EdgeMax best;
  for (int j = 0; j <= kCoarseIntervals; ++j) {
    if (vals[j] > best.value) {
      best.value = vals[j];
      best.t = len * j / kCoarseIntervals;
    }
  }

  const double inv_gr = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int j = 0; j <= kCoarseIntervals; ++j) {
    const bool left_ok = (j == 0) || (vals[j] >= vals[j - 1]);
    const bool right_ok = (j == kCoarseIntervals) || (vals[j] >= vals[j + 1]);
    if (!(left_ok && right_ok) || vals[j] == 0.0) continue;

    double a = len * (j > 0 ? j - 1 : 0) / kCoarseIntervals;
    double b = len * (j < kCoarseIntervals ? j + 1 : kCoarseIntervals) / kCoarseIntervals;
    double c = b - inv_gr * (b - a);
    double d = a + inv_gr * (b - a);
    double fc = f(c), fd = f(d);
    bool converged = false;
    for (int it = 0; it < kGoldenIters; ++it) {
      if (fc > fd) {
        b = d; d = c; fd = fc;
        c = b - inv_gr * (b - a);
        fc = f(c);
      } else {
        a = c; c = d; fc = fd;
        d = a + inv_gr * (b - a);
        fd = f(d);
      }
      const double hi = std::max(fc, fd);
      if (hi > best.value) {
        best.value = hi;
        best.t = (fc > fd) ? c : d;
      }
      if ((b - a) <= tol * len * 1e-3) {
        converged = true;
        break;
      }
    }
    // A 60-step golden bracket is ~3e-13 of the initial width; treat the
    // exhausted-iterations case as converged as well.
    if (!converged && (b - a) > tol * len) best.converged = false;
  }
  return best;
}

void check_on_curve(const Polygon& p, std::span<const double> pt, const char* name) {
  if (pt.size() != p.dimension())
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  if (p.distance_to(pt) > 1e-9 * std::max(p.diameter(), 1e-300))
    throw Error(ErrorCode::NotOnCurve, std::string(name) + " does not lie on the polygon");
}

}  // namespace

namespace detail {

double sup_kappa_z(const Polygon& p, std::span<const double> x,
                   std::span<const double> y, double tol) {
  double best = 0.0;
  Coords z(p.dimension());
  for (std::size_t e = 0; e < p.edge_count(); ++e) {
    auto f = [&](double t) {
      p.edge_point(e, t, z);
      return kappa(x, y, z);
    };
    const EdgeMax m = maximize_on_edge(f, p.edge_length(e), tol);
    best = std::max(best, m.value);
  }
  return best;
}

double sup_kappa_tangent_z(const Polygon& p, std::span<const double> x,
                           std::span<const double> dir, double tol) {
  double best = 0.0;
  Coords z(p.dimension());
  for (std::size_t e = 0; e < p.edge_count(); ++e) {
    auto f = [&](double t) {
      p.edge_point(e, t, z);
      return kappa_tangent(x, dir, z);
    };
    const EdgeMax m = maximize_on_edge(f, p.edge_length(e), tol);
    best = std::max(best, m.value);
  }
  return best;
}

double sup_kappa_yz(const Polygon& p, std::span<const double> x, double tol) {
  double best = 0.0;
  Coords y(p.dimension());
  Coords z(p.dimension());
  for (std::size_t ey = 0; ey < p.edge_count(); ++ey) {
    auto outer = [&](double ty) {
      p.edge_point(ey, ty, y);
      double b = 0.0;
      for (std::size_t ez = 0; ez < p.edge_count(); ++ez) {
        auto inner = [&](double tz) {
          p.edge_point(ez, tz, z);
          return kappa(x, y, z);
        };
        b = std::max(b, maximize_on_edge(inner, p.edge_length(ez), tol).value);
      }
      return b;
    };
    best = std::max(best, maximize_on_edge(outer, p.edge_length(ey), tol).value);
  }
  return best;
}

}  // namespace detail

SupResult kappa_i(const Polygon& p, std::span<const double> x,
                  std::span<const double> y, double tol) {
  if (tol <= 0.0) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  check_on_curve(p, x, "x");
  check_on_curve(p, y, "y");

  SupResult r;
  r.tolerance = tol;
  Coords z(p.dimension());
  for (std::size_t e = 0; e < p.edge_count(); ++e) {
    auto f = [&](double t) {
      p.edge_point(e, t, z);
      return kappa(x, y, z);
    };
    const EdgeMax m = maximize_on_edge(f, p.edge_length(e), tol);
    if (m.value > r.value) {
      r.value = m.value;
      r.argmax = p.edge_point(e, m.t);
    }
    r.converged = r.converged && m.converged;
  }
  if (r.argmax.empty()) r.argmax = Coords(p.dimension(), 0.0);
  return r;
}

SupResult kappa_g(const Polygon& p, std::span<const double> x, double tol) {
  if (tol <= 0.0) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
  check_on_curve(p, x, "x");

  SupResult r;
  r.tolerance = tol;
  Coords y(p.dimension());
  Coords z(p.dimension());
  for (std::size_t ey = 0; ey < p.edge_count(); ++ey) {
    auto outer = [&](double ty) {
      p.edge_point(ey, ty, y);
      double b = 0.0;
      for (std::size_t ez = 0; ez < p.edge_count(); ++ez) {
        auto inner = [&](double tz) {
          p.edge_point(ez, tz, z);
          return kappa(x, y, z);
        };
        b = std::max(b, maximize_on_edge(inner, p.edge_length(ez), tol).value);
      }
      return b;
    };
    const EdgeMax m = maximize_on_edge(outer, p.edge_length(ey), tol);
    if (m.value > r.value) {
      r.value = m.value;
      r.argmax = p.edge_point(ey, m.t);
    }
    r.converged = r.converged && m.converged;
  }
  if (r.argmax.empty()) r.argmax = Coords(p.dimension(), 0.0);
  return r;
}

double kappa_i_corner_closed_form(double xi, double eta) {
  if (!(xi > 0.0) || !(eta > 0.0) || xi > 1.0 || eta > 1.0)
    throw Error(ErrorCode::DomainError, "xi, eta must lie in (0, 1]");
  return 2.0 / (xi + eta);
}

double kappa_g_corner_closed_form(double t) {
  if (!(t > 0.0) || t > 1.0)
    throw Error(ErrorCode::DomainError, "t must lie in (0, 1]");
  return 2.0 / t;
}

}  // namespace menger
