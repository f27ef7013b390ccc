#include "menger/decomposition.hpp"

#include <cmath>
#include <limits>

#include "menger/checks.hpp"

namespace menger {

double SubSegment::length() const {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (b[i] - a[i]) * (b[i] - a[i]);
  return std::sqrt(s);
}

namespace {

Coords to_coords(std::span<const double> x) { return Coords(x.begin(), x.end()); }

Coords lerp(std::span<const double> a, std::span<const double> b, double t) {
  Coords out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + t * (b[i] - a[i]);
  return out;
}

double seg_seg(const SubSegment& s, const SubSegment& t) {
  return segment_distance(s.a, s.b, t.a, t.b);
}

}  // namespace

CornerDecomposition corner_decomposition(const Polygon& p, double epsilon) {
  if (!p.validated())
    throw Error(ErrorCode::InvalidArgument, "polygon must be validated");
  if (!(epsilon > 0.0))
    throw Error(ErrorCode::DomainError, "epsilon must be positive");

  // Merge runs of straight vertices: keep corners, plus the endpoints of an
  // open polyline.
  std::vector<std::size_t> chain;
  const std::size_t n = p.vertex_count();
  for (std::size_t i = 0; i < n; ++i) {
    const bool endpoint = !p.closed() && (i == 0 || i + 1 == n);
    if (endpoint || p.vertex_is_corner(i)) chain.push_back(i);
  }
  if (p.closed() && chain.size() < 3)
    throw Error(ErrorCode::NoCorner, "closed polygon without three corners");

  CornerDecomposition dec;
  dec.epsilon = epsilon;
  dec.vertex_count = chain.size();

  const std::size_t m = chain.size();
  const std::size_t edges = p.closed() ? m : m - 1;
  dec.shortest_edge = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < edges; ++e) {
    SubSegment s{to_coords(p.vertex(chain[e])),
                 to_coords(p.vertex(chain[(e + 1) % m]))};
    dec.shortest_edge = std::min(dec.shortest_edge, s.length());
    dec.edges.push_back(std::move(s));
  }
  if (!(epsilon < dec.shortest_edge / 4.0))
    throw Error(ErrorCode::DomainError, "epsilon must be below (shortest edge)/4");

  // A vertex of the merged chain is a corner unless it is an open endpoint.
  auto is_corner = [&](std::size_t k) {
    return p.closed() || (k > 0 && k + 1 < m);
  };

  for (std::size_t k = 0; k < m; ++k) {
    if (!is_corner(k)) continue;
    const SubSegment& in = dec.edges[p.closed() ? (k + m - 1) % m : k - 1];
    const SubSegment& out = dec.edges[k];
    const double tin = epsilon / in.length();
    const double tout = epsilon / out.length();
    CornerPiece c;
    c.vertex = chain[k];
    c.angle = p.vertex_angle(chain[k]);
    c.arm_in = {lerp(in.b, in.a, tin), in.b};
    c.arm_out = {out.a, lerp(out.a, out.b, tout)};
    dec.corners.push_back(std::move(c));
  }

  for (std::size_t e = 0; e < edges; ++e) {
    const SubSegment& s = dec.edges[e];
    const double len = s.length();
    const double t0 = is_corner(e) ? epsilon / len : 0.0;
    const double t1 = is_corner((e + 1) % m) ? 1.0 - epsilon / len : 1.0;
    dec.middles.push_back({lerp(s.a, s.b, t0), lerp(s.a, s.b, t1)});
    dec.middle_edge.push_back(e);
  }
  return dec;
}

SeparationConstants separation_constants(const Polygon& p,
                                         const CornerDecomposition& dec) {
  (void)p;
  if (dec.edges.size() < 2)
    throw Error(ErrorCode::DomainError,
                "separation constants need at least two edges");

  SeparationConstants sep;
  sep.d1 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dec.middles.size(); ++i)
    for (std::size_t j = 0; j < dec.edges.size(); ++j)
      if (j != dec.middle_edge[i])
        sep.d1 = std::min(sep.d1, seg_seg(dec.middles[i], dec.edges[j]));
  sep.d1 /= 4.0;

  sep.d2 = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < dec.corners.size(); ++i)
    for (std::size_t j = i + 1; j < dec.corners.size(); ++j) {
      const CornerPiece &a = dec.corners[i], &b = dec.corners[j];
      for (const SubSegment* s : {&a.arm_in, &a.arm_out})
        for (const SubSegment* t : {&b.arm_in, &b.arm_out})
          sep.d2 = std::min(sep.d2, seg_seg(*s, *t));
    }
  sep.d2 /= 4.0;
  return sep;
}

double assemble_upper_bound(const Polygon& p, EnergyKind kind, double pexp,
                            const CornerDecomposition& dec,
                            const SeparationConstants& sep, double ref_energy) {
  const int d = arity(kind);
  if (!(pexp > 0.0) || pexp >= critical_threshold(kind))
    throw Error(ErrorCode::DomainError,
                "exponent must lie below the finiteness threshold");
  if (!(sep.d1 > 0.0) || !(sep.d2 > 0.0))
    throw Error(ErrorCode::InvalidArgument, "separation constants must be positive");

  const double H = p.total_length();
  const double N = static_cast<double>(dec.vertex_count);
  const double d1p = std::pow(sep.d1, -pexp);
  const double d2p = std::pow(sep.d2, -pexp);  // 0 when d2 = +inf
  const double alpha = std::pow(dec.epsilon, d - pexp);

  double corner_sum = 0.0;  // sum of alpha_i c(phi_i)^p
  for (const CornerPiece& c : dec.corners)
    corner_sum += alpha * std::pow(c_phi(c.angle), pexp);

  switch (kind) {
    case EnergyKind::U: {
      double b = H * d1p;
      for (const CornerPiece& c : dec.corners)
        b += H * (d1p + d2p) + alpha * std::pow(c_phi(c.angle), pexp) * ref_energy;
      return b;
    }
    case EnergyKind::I: {
      double b = H * H * (2.0 * d1p + N * N * d2p);
      for (const CornerPiece& c : dec.corners)
        b += H * H * (d1p + d2p) +
             alpha * std::pow(c_phi(c.angle), pexp) * ref_energy;
      return b;
    }
    case EnergyKind::M:
      return H * H * H * (3.0 * d1p + N * N * N * d2p) + corner_sum * ref_energy;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown energy kind");
}

}  // namespace menger
