#include "menger/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace menger {

namespace {

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

double coord_scale(std::span<const double> a, std::span<const double> b,
                   std::span<const double> c) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  for (double v : b) s = std::max(s, std::abs(v));
  for (double v : c) s = std::max(s, std::abs(v));
  return s;
}

double dot_diff(std::span<const double> a, std::span<const double> a0,
                std::span<const double> b, std::span<const double> b0) {
  // (a - a0) . (b - b0)
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - a0[i]) * (b[i] - b0[i]);
  return s;
}

// Squared distance from z to the line through x with direction (y - x),
// via the projection residual. Assumes |y - x| > 0.
double line_dist2(std::span<const double> z, std::span<const double> x,
                  std::span<const double> y) {
  const double ee = dist2(x, y);
  const double we = dot_diff(z, x, y, x);
  const double t = we / ee;
  double s = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double r = (z[i] - x[i]) - t * (y[i] - x[i]);
    s += r * r;
  }
  return s;
}

}  // namespace

double dist_point_line(std::span<const double> z, std::span<const double> x,
                       std::span<const double> y) {
  if (z.size() != x.size() || x.size() != y.size())
    throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  if (dist2(x, y) == 0.0)
    throw Error(ErrorCode::DomainError, "degenerate line: x == y");
  return std::sqrt(line_dist2(z, x, y));
}

namespace {

// Shared core: returns {2*dist(apex, base line), |apex-base0| * |apex-base1|}
// with the longest side chosen as base, or {0, 0} for a degenerate triple.
struct TripleGeom {
  double two_h = 0.0;   // 2 * height over the longest side
  double prod = 0.0;    // product of the two shorter sides
  bool degenerate = true;
};

TripleGeom triple_geom(std::span<const double> x, std::span<const double> y,
                       std::span<const double> z) {
  const double dxy = dist2(x, y);
  const double dyz = dist2(y, z);
  const double dzx = dist2(z, x);
  if (dxy == 0.0 || dyz == 0.0 || dzx == 0.0) return {};

  // Base = pair with largest distance; apex = remaining point.
  std::span<const double> b0 = x, b1 = y, apex = z;
  double base2 = dxy, s0 = dzx, s1 = dyz;
  if (dyz > base2) {
    base2 = dyz; b0 = y; b1 = z; apex = x; s0 = dxy; s1 = dzx;
  }
  if (dzx > base2) {
    base2 = dzx; b0 = z; b1 = x; apex = y; s0 = dyz; s1 = dxy;
  }

  const double h2 = line_dist2(apex, b0, b1);
  // area = h * base / 2 ; degenerate when area <= tol * base2.
  const double area2 = 0.25 * h2 * base2;
  const double thr = kCollinearityTol * base2;
  if (area2 <= thr * thr) return {};
  const double floor = kHeightFloor * coord_scale(x, y, z);
  if (h2 <= floor * floor) return {};

  TripleGeom g;
  g.two_h = 2.0 * std::sqrt(h2);
  g.prod = std::sqrt(s0) * std::sqrt(s1);
  g.degenerate = false;
  return g;
}

}  // namespace

double circumradius(std::span<const double> x, std::span<const double> y,
                    std::span<const double> z) {
  const TripleGeom g = triple_geom(x, y, z);
  if (g.degenerate) return std::numeric_limits<double>::infinity();
  return g.prod / g.two_h;
}

double kappa(std::span<const double> x, std::span<const double> y,
             std::span<const double> z) {
  const TripleGeom g = triple_geom(x, y, z);
  if (g.degenerate) return 0.0;
  return g.two_h / g.prod;
}

double kappa_tangent(std::span<const double> x, std::span<const double> dir,
                     std::span<const double> z) {
  const double r2 = dist2(z, x);
  if (r2 == 0.0) return 0.0;
  // Residual of (z - x) orthogonal to dir (dir need not be unit length).
  double dd = 0.0, wd = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    dd += dir[i] * dir[i];
    wd += (z[i] - x[i]) * dir[i];
  }
  const double t = wd / dd;
  double h2 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = (z[i] - x[i]) - t * dir[i];
    h2 += r * r;
  }
  const double h = std::sqrt(h2);
  if (h <= kCollinearityTol * std::sqrt(r2)) return 0.0;
  if (h <= kHeightFloor * coord_scale(x, dir, z)) return 0.0;
  return 2.0 * h / r2;
}

Polygon::Polygon(std::vector<Coords> vertices, bool closed) : closed_(closed) {
  n_ = vertices.size();
  if (n_ < 2) throw Error(ErrorCode::TooFewVertices, "need at least 2 vertices");
  if (closed_ && n_ < 3)
    throw Error(ErrorCode::TooFewVertices, "closed polygon needs at least 3 vertices");
  dim_ = vertices[0].size();
  if (dim_ < 2) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be >= 2");

  flat_.reserve(n_ * dim_);
  double max_abs = 0.0;
  for (const auto& v : vertices) {
    if (v.size() != dim_)
      throw Error(ErrorCode::InvalidArgument, "inconsistent vertex dimensions");
    for (double c : v) {
      if (!std::isfinite(c))
        throw Error(ErrorCode::InvalidArgument, "non-finite coordinate");
      max_abs = std::max(max_abs, std::abs(c));
      flat_.push_back(c);
    }
  }

  const std::size_t ne = edge_count();
  edge_len_.resize(ne);
  edge_dir_.assign(ne * dim_, 0.0);
  cum_len_.resize(ne + 1);
  cum_len_[0] = 0.0;
  shortest_edge_ = std::numeric_limits<double>::infinity();
  const double zero_tol = 1e-12 * std::max(max_abs, 1.0);
  for (std::size_t e = 0; e < ne; ++e) {
    const auto a = vertex(e);
    const auto b = vertex((e + 1) % n_);
    const double len = std::sqrt(dist2(a, b));
    if (len <= zero_tol)
      throw Error(ErrorCode::ZeroLengthEdge,
                  "edge " + std::to_string(e) + " has zero length");
    edge_len_[e] = len;
    for (std::size_t i = 0; i < dim_; ++i) edge_dir_[e * dim_ + i] = (b[i] - a[i]) / len;
    cum_len_[e + 1] = cum_len_[e] + len;
    shortest_edge_ = std::min(shortest_edge_, len);
  }
  total_len_ = cum_len_[ne];

  if (closed_ && dim_ == 2)
    for (std::size_t i = 0; i < n_; ++i) {
      const auto a = vertex(i);
      const auto b = vertex((i + 1) % n_);
      signed_area_ += 0.5 * (a[0] * b[1] - b[0] * a[1]);
    }

  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j)
      diameter_ = std::max(diameter_, dist2(vertex(i), vertex(j)));
  diameter_ = std::sqrt(diameter_);
}

void Polygon::edge_point(std::size_t e, double t, std::span<double> out) const {
  const auto a = edge_start(e);
  const auto b = edge_end(e);
  const double u = t / edge_len_[e];
  for (std::size_t i = 0; i < dim_; ++i) out[i] = a[i] + u * (b[i] - a[i]);
}

Coords Polygon::edge_point(std::size_t e, double t) const {
  Coords p(dim_);
  edge_point(e, t, p);
  return p;
}

Coords Polygon::arc_point(double s) const {
  if (closed_) {
    s = std::fmod(s, total_len_);
    if (s < 0.0) s += total_len_;
  } else {
    const double eps = 1e-12 * total_len_;
    if (s < -eps || s > total_len_ + eps)
      throw Error(ErrorCode::DomainError, "arc length out of range");
    s = std::clamp(s, 0.0, total_len_);
  }
  const auto it = std::upper_bound(cum_len_.begin(), cum_len_.end(), s);
  std::size_t e = (it == cum_len_.begin()) ? 0 : (it - cum_len_.begin() - 1);
  e = std::min(e, edge_count() - 1);
  return edge_point(e, s - cum_len_[e]);
}

double Polygon::vertex_angle(std::size_t i) const {
  if (!closed_ && (i == 0 || i == n_ - 1))
    throw Error(ErrorCode::DomainError, "endpoint of open polygon has no angle");
  const std::size_t prev = (i + n_ - 1) % n_;
  const std::size_t next = (i + 1) % n_;
  const auto v = vertex(i);
  const auto a = vertex(prev);
  const auto b = vertex(next);
  if (dim_ == 2) {
    const double ux = a[0] - v[0], uy = a[1] - v[1];
    const double wx = b[0] - v[0], wy = b[1] - v[1];
    double ang = std::atan2(wy, wx) - std::atan2(uy, ux);
    const double two_pi = 2.0 * M_PI;
    ang = std::fmod(ang, two_pi);
    if (ang < 0.0) ang += two_pi;
    if (ang == 0.0) ang = two_pi;  // folded-back edges
    // Closed curves report the interior angle, which lies clockwise from
    // the reversed incoming edge when the vertex order is counterclockwise.
    if (closed_ && signed_area_ > 0.0) ang = two_pi - ang;
    if (ang == 0.0) ang = two_pi;
    return ang;
  }
  const double c = dot_diff(a, v, b, v) / std::sqrt(dist2(a, v) * dist2(b, v));
  return std::acos(std::clamp(c, -1.0, 1.0));
}

bool Polygon::vertex_is_corner(std::size_t i, double tol) const {
  if (!closed_ && (i == 0 || i == n_ - 1)) return false;
  return std::abs(vertex_angle(i) - M_PI) > tol;
}

bool Polygon::has_corner(double tol) const {
  for (std::size_t i = 0; i < n_; ++i)
    if (vertex_is_corner(i, tol)) return true;
  return false;
}

double Polygon::distance_to(std::span<const double> p) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < edge_count(); ++e) {
    const auto a = edge_start(e);
    const auto b = edge_end(e);
    const double t =
        std::clamp(dot_diff(p, a, b, a) / (edge_len_[e] * edge_len_[e]), 0.0, 1.0);
    double s = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double r = p[i] - (a[i] + t * (b[i] - a[i]));
      s += r * r;
    }
    best = std::min(best, s);
  }
  return std::sqrt(best);
}

double segment_distance(std::span<const double> a0, std::span<const double> a1,
                        std::span<const double> b0, std::span<const double> b1) {
  // Closest points of two segments parametrized a0 + s*(a1-a0), b0 + t*(b1-b0).
  const double A = dist2(a0, a1);
  const double B = dot_diff(a1, a0, b1, b0);
  const double C = dist2(b0, b1);
  const double D = dot_diff(a1, a0, a0, b0);
  const double E = dot_diff(b1, b0, a0, b0);
  const double det = A * C - B * B;
  double s, t;
  if (det > 1e-14 * A * C) {
    s = std::clamp((B * E - C * D) / det, 0.0, 1.0);
  } else {
    s = 0.0;  // near-parallel
  }
  auto clamp_t = [&](double ss) {
    return C > 0.0 ? std::clamp((E + B * ss) / C, 0.0, 1.0) : 0.0;
  };
  t = clamp_t(s);
  // One re-projection pass fixes the clamped coordinate.
  if (A > 0.0) s = std::clamp((B * t - D) / A, 0.0, 1.0);
  t = clamp_t(s);

  double d = 0.0;
  for (std::size_t i = 0; i < a0.size(); ++i) {
    const double r = (a0[i] + s * (a1[i] - a0[i])) - (b0[i] + t * (b1[i] - b0[i]));
    d += r * r;
  }
  return std::sqrt(d);
}

Polygon& Polygon::validate() {
  const std::size_t ne = edge_count();
  const double tol = 1e-12 * std::max(diameter_, 1e-300);
  for (std::size_t i = 0; i < ne; ++i) {
    for (std::size_t j = i + 1; j < ne; ++j) {
      const bool adjacent =
          (j == i + 1) || (closed_ && i == 0 && j == ne - 1);
      if (adjacent) {
        // Shared vertex between edges i and j.
        const std::size_t shared = (j == i + 1) ? j : 0;
        const auto v = vertex(shared);
        // Overlap iff the two edge directions away from the shared vertex
        // are (anti-)parallel pointing the same way.
        double dp = 0.0;
        const std::size_t o1 = (shared + n_ - 1) % n_;  // other end of incoming edge
        const std::size_t o2 = (shared + 1) % n_;       // other end of outgoing edge
        dp = dot_diff(vertex(o1), v, vertex(o2), v) /
             (std::sqrt(dist2(vertex(o1), v)) * std::sqrt(dist2(vertex(o2), v)));
        const double h = std::sqrt(line_dist2(vertex(o2), v, vertex(o1)) );
        if (dp > 0.0 && h <= tol)
          throw Error(ErrorCode::SelfIntersection, "adjacent edges overlap", i, j);
        continue;
      }
      const double d = segment_distance(edge_start(i), edge_end(i),
                                        edge_start(j), edge_end(j));
      if (d <= tol)
        throw Error(ErrorCode::SelfIntersection, "edges intersect", i, j);
    }
  }
  validated_ = true;
  return *this;
}

Polygon make_e_phi(double phi) {
  if (!(phi > 0.0 && phi < 2.0 * M_PI))
    throw Error(ErrorCode::DomainError, "phi must lie in (0, 2*pi)");
  std::vector<Coords> v = {
      {1.0, 0.0}, {0.0, 0.0}, {std::cos(phi), std::sin(phi)}};
  Polygon p(std::move(v), /*closed=*/false);
  p.validate();
  return p;
}

}  // namespace menger
