#pragma once

#include "menger/quadrature.hpp"

namespace menger {

/// A straight sub-segment of the polygon, stored by its endpoints.
struct SubSegment {
  Coords a, b;
  double length() const;
};

/// One corner neighborhood: the two arc pieces of length epsilon meeting
/// at the vertex (a scaled, rotated copy of E_{phi}).
struct CornerPiece {
  std::size_t vertex = 0;  // index into the original polygon
  double angle = 0.0;
  SubSegment arm_in, arm_out;
};

/// Corner neighborhoods and middle segments of a simple polygon. Runs of
/// straight vertices (angle pi) are merged into single edges first, so
/// every listed corner is genuine.
struct CornerDecomposition {
  double epsilon = 0.0;
  double shortest_edge = 0.0;    // of the merged edges
  std::size_t vertex_count = 0;  // merged vertex count N
  std::vector<SubSegment> edges; // merged edges X_i
  std::vector<CornerPiece> corners;
  std::vector<SubSegment> middles;      // Y_i
  std::vector<std::size_t> middle_edge; // index into edges, parallel to middles
};

struct SeparationConstants {
  double d1 = 0.0;  // min_i dist(Y_i, cl(P \ X_i)) / 4
  double d2 = 0.0;  // min_{i != j} dist(cl E_i, cl E_j) / 4; +inf without two corners
};

/// Requires epsilon < shortest merged edge / 4.
CornerDecomposition corner_decomposition(const Polygon& p, double epsilon);

SeparationConstants separation_constants(const Polygon& p,
                                         const CornerDecomposition& dec);

/// The explicit finite upper bound for the truncation-free energy of a
/// simple polygon, assembled from the decomposition: bulk terms in d1, d2
/// plus the corner contributions alpha_i c(phi_i)^p * ref_energy with
/// alpha_i = epsilon^(d - p) (d integration variables). ref_energy must be
/// a convergent estimate of the corresponding energy of E_{pi/2}.
/// Throws for p at or above the kind's finiteness threshold.
double assemble_upper_bound(const Polygon& p, EnergyKind kind, double pexp,
                            const CornerDecomposition& dec,
                            const SeparationConstants& sep, double ref_energy);

}  // namespace menger
