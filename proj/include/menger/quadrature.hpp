#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "menger/geom.hpp"

namespace menger {

/// Which energy: triple integral of kappa^p (M), double integral of
/// kappa_i^p (I), or single integral of kappa_G^p (U).
enum class EnergyKind { M, I, U };

const char* to_string(EnergyKind k);
EnergyKind energy_kind_from_string(const std::string& s);

/// Number of outer integration variables: 3, 2, 1.
int arity(EnergyKind k);
/// Critical exponent for polygons with a genuine corner: 3, 2, 1.
double critical_threshold(EnergyKind k);

/// Corner-exclusion radius for the outer integration variables. Inner
/// suprema (kappa_i, kappa_G) always range over the full polygon.
struct TruncationSpec {
  double delta = 0.0;
};

struct QuadratureSpec {
  int order = 16;        // Gauss-Legendre nodes per panel
  double ratio = 2.0;    // geometric grading ratio toward corners
  int depth = 24;        // graded panels per corner before the remainder panel
  double sup_tol = 1e-9; // relative tolerance of the inner sup searches
};

/// One arc-length sub-interval [a, b] of an edge. level is the dyadic
/// birth level: the panel belongs to the truncated domain of
/// delta_k = delta0 * 2^-k exactly for k >= level.
struct Panel {
  std::size_t edge = 0;
  double a = 0.0;
  double b = 0.0;
  int level = 0;
};

struct PanelMesh {
  std::vector<Panel> panels;
  double delta0 = 0.0;    // coarsest truncation radius
  int levels = 1;         // K + 1 nested truncations delta0 * 2^-k
};

/// Panels tiling each edge outside the delta-balls of its corner vertices,
/// geometrically graded toward the corners.
PanelMesh build_graded_mesh(const Polygon& p, const TruncationSpec& trunc,
                            const QuadratureSpec& spec);

/// Mesh graded down to delta0 * 2^-halvings whose panels nest across all
/// halvings (requires ratio 2), with birth levels assigned.
PanelMesh build_dyadic_mesh(const Polygon& p, double delta0, int halvings,
                            const QuadratureSpec& spec);

struct EnergyReport {
  EnergyKind kind = EnergyKind::M;
  double p = 0.0;
  double delta = 0.0;
  double value = 0.0;
  double error_est = 0.0;
  std::uint64_t nodes = 0;
  double seconds = 0.0;
};

/// Quadrature engine over a fixed mesh: node tuples are enumerated in a
/// fixed lexicographic order and reduced through a fixed pairwise tree, so
/// results are bit-identical regardless of worker count. Kernel tables
/// (kappa_i per node pair, kappa_G per node) are cached, making repeated
/// evaluation at different p cheap.
class EnergyEvaluator {
 public:
  EnergyEvaluator(const Polygon& p, const PanelMesh& mesh, int order,
                  double sup_tol = 1e-9);

  /// result[k] = truncated energy at delta_k = delta0 * 2^-k, k = 0..levels-1.
  std::vector<double> levels(EnergyKind kind, double p) const;

  std::size_t node_count() const { return nn_; }
  std::uint64_t tuple_evals() const { return evals_; }

 private:
  std::span<const double> node(std::size_t i) const {
    return {coords_.data() + i * dim_, dim_};
  }
  void ensure_kappa_i() const;
  void ensure_kappa_g() const;

  const Polygon& poly_;
  std::size_t dim_ = 0;
  std::size_t nn_ = 0;
  int nlev_ = 1;
  double sup_tol_;
  std::vector<double> coords_;
  std::vector<double> w_;
  std::vector<int> edge_;
  std::vector<int> lev_;
  mutable std::vector<double> ki_cache_;
  mutable std::vector<double> kg_cache_;
  mutable std::uint64_t evals_ = 0;
};

/// Truncated energy by corner-graded panel quadrature. The error estimate
/// is the difference against a half-order evaluation on the same mesh.
EnergyReport energy(const Polygon& p, EnergyKind kind, double pexp,
                    const TruncationSpec& trunc, const QuadratureSpec& spec);

/// Monte Carlo oracle: uniform arc-length sampling of the truncated
/// domain; unbiased for the same truncated energy; error_est is the
/// standard error. Identical (seed, samples) give identical output.
EnergyReport mc_energy(const Polygon& p, EnergyKind kind, double pexp,
                       const TruncationSpec& trunc, std::uint64_t samples,
                       std::uint64_t seed);

/// Closed form for the truncated U_p of the right-angle corner E_{pi/2}:
/// 2 * int_delta^1 (2/t)^p dt.
double u_energy_closed_form_right_angle(double p, double delta);

/// Worker count: MENGER_THREADS if set, else hardware concurrency.
int thread_count();

/// Deterministic pairwise-tree sum.
double pairwise_sum(std::span<const double> xs);

}  // namespace menger
