#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "doctest.h"
#include "menger/quadrature.hpp"

using namespace menger;

namespace {

Polygon unit_square() {
  return Polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, true).validate();
}

Polygon scaled_square(double lam) {
  return Polygon({{0.0, 0.0}, {lam, 0.0}, {lam, lam}, {0.0, lam}}, true).validate();
}

}  // namespace

TEST_CASE("energy kind names and thresholds") {
  CHECK(energy_kind_from_string("M") == EnergyKind::M);
  CHECK(energy_kind_from_string("I") == EnergyKind::I);
  CHECK(energy_kind_from_string("U") == EnergyKind::U);
  CHECK_THROWS_AS(energy_kind_from_string("X"), Error);
  CHECK(arity(EnergyKind::M) == 3);
  CHECK(arity(EnergyKind::I) == 2);
  CHECK(arity(EnergyKind::U) == 1);
  CHECK(critical_threshold(EnergyKind::M) == 3.0);
  CHECK(critical_threshold(EnergyKind::I) == 2.0);
  CHECK(critical_threshold(EnergyKind::U) == 1.0);
}

TEST_CASE("graded mesh tiles each edge outside the corner balls") {
  const Polygon sq = unit_square();
  const QuadratureSpec spec;
  for (double delta : {0.3, 0.1, 0.01}) {
    const PanelMesh mesh = build_graded_mesh(sq, TruncationSpec{delta}, spec);
    // Group panels per edge and check they tile [delta, 1 - delta].
    std::map<std::size_t, std::vector<std::pair<double, double>>> per_edge;
    for (const Panel& p : mesh.panels) {
      CHECK(p.b > p.a);
      per_edge[p.edge].push_back({p.a, p.b});
    }
    CHECK(per_edge.size() == 4);
    for (auto& [e, iv] : per_edge) {
      std::sort(iv.begin(), iv.end());
      CHECK(iv.front().first == doctest::Approx(delta).epsilon(1e-12));
      CHECK(iv.back().second == doctest::Approx(1.0 - delta).epsilon(1e-12));
      for (std::size_t i = 0; i + 1 < iv.size(); ++i)
        CHECK(iv[i].second == doctest::Approx(iv[i + 1].first).epsilon(1e-12));
    }
  }
}

TEST_CASE("truncation radius too large for an edge is rejected") {
  const Polygon sq = unit_square();
  CHECK_THROWS_AS(build_graded_mesh(sq, TruncationSpec{0.6}, QuadratureSpec{}), Error);
  CHECK_THROWS_AS(build_graded_mesh(sq, TruncationSpec{0.0}, QuadratureSpec{}), Error);
}

TEST_CASE("truncated U on the right-angle corner matches the closed form") {
  const Polygon e = make_e_phi(M_PI / 2.0);
  const QuadratureSpec spec;
  for (double p : {0.5, 1.0, 2.0})
    for (double delta : {0.5, 0.1, 0.01}) {
      const double want = u_energy_closed_form_right_angle(p, delta);
      const EnergyReport r = energy(e, EnergyKind::U, p, TruncationSpec{delta}, spec);
      CHECK(r.value == doctest::Approx(want).epsilon(1e-6));
      CHECK(r.error_est <= 1e-5 * want);
      CHECK(r.nodes > 0);
    }
  // Spot values of the closed form itself.
  CHECK(u_energy_closed_form_right_angle(1.0, std::exp(-1.0)) == doctest::Approx(4.0));
  CHECK(u_energy_closed_form_right_angle(2.0, 0.5) == doctest::Approx(8.0));
  CHECK_THROWS_AS(u_energy_closed_form_right_angle(0.5, 0.0), Error);
}

TEST_CASE("dyadic level values are nondecreasing and consistent with one-shot runs") {
  const Polygon e = make_e_phi(M_PI / 2.0);
  const QuadratureSpec spec;
  const double delta0 = 0.25;
  const int K = 4;
  const PanelMesh mesh = build_dyadic_mesh(e, delta0, K, spec);
  const EnergyEvaluator ev(e, mesh, spec.order, spec.sup_tol);
  for (EnergyKind kind : {EnergyKind::U, EnergyKind::I, EnergyKind::M}) {
    const std::vector<double> lv = ev.levels(kind, 1.0);
    REQUIRE(lv.size() == K + 1);
    for (int k = 0; k + 1 <= K; ++k) CHECK(lv[k] <= lv[k + 1]);
    // Each level agrees with an independent graded-mesh evaluation.
    for (int k : {0, K}) {
      const double delta = delta0 * std::pow(0.5, k);
      const EnergyReport r = energy(e, kind, 1.0, TruncationSpec{delta}, spec);
      CHECK(lv[k] == doctest::Approx(r.value).epsilon(1e-7));
    }
  }
}

TEST_CASE("power-of-two rescaling changes energies by exact factors") {
  const QuadratureSpec spec;
  const Polygon a = unit_square();
  const Polygon b = scaled_square(2.0);
  for (double p : {0.5, 1.0}) {
    for (EnergyKind kind : {EnergyKind::U, EnergyKind::I, EnergyKind::M}) {
      const double d = arity(kind);
      const EnergyReport ra = energy(a, kind, p, TruncationSpec{0.125}, spec);
      const EnergyReport rb = energy(b, kind, p, TruncationSpec{0.25}, spec);
      const double factor = std::pow(2.0, d - p);
      CHECK(rb.value == doctest::Approx(factor * ra.value).epsilon(1e-12));
    }
  }
}

TEST_CASE("pairwise_sum matches sequential summation") {
  std::mt19937_64 rng(3);
  std::vector<double> xs(1237);
  for (double& x : xs) x = (rng() >> 11) * 0x1.0p-53 - 0.3;
  const double want = std::accumulate(xs.begin(), xs.end(), 0.0);
  CHECK(pairwise_sum(xs) == doctest::Approx(want).epsilon(1e-12));
  CHECK(pairwise_sum(std::span<const double>{}) == 0.0);
  CHECK(pairwise_sum(std::span<const double>(xs.data(), 1)) == xs[0]);
}

TEST_CASE("Monte Carlo is seed-deterministic and agrees with quadrature") {
  const Polygon sq = unit_square();
  const TruncationSpec tr{0.05};

  const EnergyReport a = mc_energy(sq, EnergyKind::M, 1.0, tr, 40000, 7);
  const EnergyReport b = mc_energy(sq, EnergyKind::M, 1.0, tr, 40000, 7);
  CHECK(a.value == b.value);
  CHECK(a.error_est == b.error_est);
  const EnergyReport c = mc_energy(sq, EnergyKind::M, 1.0, tr, 40000, 8);
  CHECK(a.value != c.value);

  const EnergyReport q = energy(sq, EnergyKind::M, 1.0, tr, QuadratureSpec{});
  CHECK(std::abs(a.value - q.value) <= 3.0 * a.error_est);

  const EnergyReport u = mc_energy(sq, EnergyKind::U, 0.5, tr, 200, 7);
  const EnergyReport uq = energy(sq, EnergyKind::U, 0.5, tr, QuadratureSpec{});
  CHECK(std::abs(u.value - uq.value) <= 3.0 * u.error_est);
}

TEST_CASE("argument validation") {
  const Polygon sq = unit_square();
  CHECK_THROWS_AS(energy(sq, EnergyKind::M, 0.0, TruncationSpec{0.1}, QuadratureSpec{}),
                  Error);
  CHECK_THROWS_AS(mc_energy(sq, EnergyKind::M, 1.0, TruncationSpec{0.1}, 0, 0), Error);
  CHECK_THROWS_AS(build_dyadic_mesh(sq, 0.1, -1, QuadratureSpec{}), Error);
  QuadratureSpec bad;
  bad.ratio = 3.0;
  CHECK_THROWS_AS(build_dyadic_mesh(sq, 0.1, 2, bad), Error);
}

TEST_CASE("doubling the panel order improves the error estimate when smooth") {
  // Well-separated configuration: large truncation keeps all kernels smooth.
  const Polygon e = make_e_phi(M_PI / 2.0);
  QuadratureSpec lo, hi;
  lo.order = 8;
  hi.order = 16;
  const EnergyReport rl = energy(e, EnergyKind::U, 2.0, TruncationSpec{0.5}, lo);
  const EnergyReport rh = energy(e, EnergyKind::U, 2.0, TruncationSpec{0.5}, hi);
  CHECK(rh.error_est <= 0.5 * rl.error_est + 1e-15);
  CHECK(rh.value == doctest::Approx(rl.value).epsilon(1e-6));
}
