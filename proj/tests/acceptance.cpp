// Acceptance gate: one line per criterion, PASS or FAIL, nonzero exit if
// any criterion fails. Tolerances are pinned below next to each check.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "menger/asymptotics.hpp"
#include "menger/checks.hpp"
#include "menger/decomposition.hpp"
#include "menger/sup.hpp"

using namespace menger;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", criterion,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

Polygon unit_square() {
  return Polygon({{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}}, true).validate();
}

Polygon scaled_square(double lam) {
  return Polygon({{0.0, 0.0}, {lam, 0.0}, {lam, lam}, {0.0, lam}}, true).validate();
}

Polygon equilateral_triangle() {
  return Polygon({{0.0, 0.0}, {1.0, 0.0}, {0.5, std::sqrt(3.0) / 2.0}}, true).validate();
}

Polygon l_hexagon() {
  return Polygon(
             {{0.0, 0.0}, {2.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}, {1.0, 2.0}, {0.0, 2.0}},
             true)
      .validate();
}

double uniform01(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

// 1. Finiteness thresholds 3, 2, 1 recovered by bisection on three curves.
void criterion1() {
  const double tol = 0.05;
  const QuadratureSpec spec;
  struct Curve {
    const char* name;
    Polygon poly;
  };
  const std::vector<Curve> curves = {{"corner", make_e_phi(M_PI / 2.0)},
                                     {"square", unit_square()},
                                     {"triangle", equilateral_triangle()}};
  bool pass = true;
  std::string detail = "critical p within +-0.05:";
  for (const Curve& c : curves)
    for (EnergyKind kind : {EnergyKind::M, EnergyKind::I, EnergyKind::U}) {
      const double want = critical_threshold(kind);
      const double got = estimate_critical_p(c.poly, kind, spec);
      pass = pass && std::abs(got - want) <= tol;
      char buf[96];
      std::snprintf(buf, sizeof buf, " %s/%s=%.3f", c.name, to_string(kind), got);
      detail += buf;
    }
  report(1, pass, detail);
}

// 2. Dyadic increment ratios 2^(p-3) at p = 2.5, 3, 3.5 for the corner.
void criterion2() {
  const double tol = 0.05;
  const int halvings = 12;
  const Polygon e = make_e_phi(M_PI / 2.0);
  bool pass = true;
  std::string detail = "log2 increment ratios vs p-3:";
  for (double p : {2.5, 3.0, 3.5}) {
    const DyadicSeries s = dyadic_series(e, EnergyKind::M, p, 0.25, halvings,
                                         QuadratureSpec{});
    double worst = 0.0;
    for (std::size_t k = s.ratios.size() - 4; k < s.ratios.size(); ++k)
      worst = std::max(worst, std::abs(std::log2(s.ratios[k]) - (p - 3.0)));
    pass = pass && worst <= tol;
    char buf[64];
    std::snprintf(buf, sizeof buf, " p=%.1f dev=%.4f", p, worst);
    detail += buf;
  }
  report(2, pass, detail);
}

// 3. Truncated U on the corner vs the closed form, 1e-6 relative.
void criterion3() {
  const double tol = 1e-6;
  const Polygon e = make_e_phi(M_PI / 2.0);
  bool pass = true;
  double worst = 0.0;
  for (double p : {0.5, 1.0, 2.0})
    for (double delta : {0.5, 0.1, 0.01}) {
      const double want = u_energy_closed_form_right_angle(p, delta);
      const EnergyReport r =
          energy(e, EnergyKind::U, p, TruncationSpec{delta}, QuadratureSpec{});
      worst = std::max(worst, std::abs(r.value - want) / want);
    }
  pass = worst <= tol;
  char buf[64];
  std::snprintf(buf, sizeof buf, "closed-form U, worst rel err %.2e", worst);
  report(3, pass, buf);
}

// 4. Sup kernels vs closed forms: kappa_i to 1e-8, kappa_g to 1e-6.
void criterion4() {
  const Polygon e = make_e_phi(M_PI / 2.0);
  std::mt19937_64 rng(1234);
  double worst_i = 0.0;
  for (int it = 0; it < 1000; ++it) {
    const double xi = 1.0 - uniform01(rng), eta = 1.0 - uniform01(rng);
    const double want = kappa_i_corner_closed_form(xi, eta);
    const double got = kappa_i(e, Coords{xi, 0.0}, Coords{eta, 0.0}).value;
    worst_i = std::max(worst_i, std::abs(got - want) / want);
  }
  double worst_g = 0.0;
  for (int k = 1; k <= 8; ++k) {
    const double t = std::pow(2.0, -k);
    const double got = kappa_g(e, Coords{t, 0.0}).value;
    worst_g = std::max(worst_g, std::abs(got - 2.0 / t) * t / 2.0);
  }
  const bool pass = worst_i <= 1e-8 && worst_g <= 1e-6;
  char buf[96];
  std::snprintf(buf, sizeof buf, "kappa_i rel err %.2e (<=1e-8), kappa_g %.2e (<=1e-6)",
                worst_i, worst_g);
  report(4, pass, buf);
}

// 5. Doubling the square scales M/I/U by 2^(3-p), 2^(2-p), 2^(1-p), 1e-12 rel.
void criterion5() {
  const double tol = 1e-12;
  const Polygon a = unit_square();
  const Polygon b = scaled_square(2.0);
  double worst = 0.0;
  for (double p : {0.5, 1.0})
    for (EnergyKind kind : {EnergyKind::M, EnergyKind::I, EnergyKind::U}) {
      const EnergyReport ra =
          energy(a, kind, p, TruncationSpec{0.125}, QuadratureSpec{});
      const EnergyReport rb =
          energy(b, kind, p, TruncationSpec{0.25}, QuadratureSpec{});
      const double factor = std::pow(2.0, arity(kind) - p);
      worst = std::max(worst, std::abs(rb.value / (factor * ra.value) - 1.0));
    }
  char buf[64];
  std::snprintf(buf, sizeof buf, "scaling law, worst rel dev %.2e", worst);
  report(5, worst <= tol, buf);
}

// 6. Inequality suites on a 50-angle grid x 1e4 samples; pushforward equality.
void criterion6() {
  bool pass = true;
  double worst = -1e300;
  for (int i = 1; i <= 50; ++i) {
    const double phi = i * 2.0 * M_PI / 51.0;
    const CheckReport r1 = lemma1_bound_check(phi, 10000, 2026);
    const CheckReport r2 = lemma2_pointwise_check(phi, 10000, 2026);
    pass = pass && r1.pass && r2.pass;
    worst = std::max({worst, r1.max_violation / r1.scale, r2.max_violation / r2.scale});
  }
  for (int n = 1; n <= 3; ++n) {
    const CheckReport r = pushforward_check(2.0, n, 20000, PushforwardIntegrand::Product);
    pass = pass && r.pass;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf,
                "inequality suites, worst violation %.2e of scale (<=1e-10)", worst);
  report(6, pass, buf);
}

// 7. Extrapolated finite energies below the assembled decomposition bound.
void criterion7() {
  const QuadratureSpec spec;
  struct Case {
    EnergyKind kind;
    std::vector<double> ps;
  };
  const std::vector<Case> cases = {{EnergyKind::M, {0.5, 1.0, 2.5}},
                                   {EnergyKind::I, {0.5, 1.0, 1.5}},
                                   {EnergyKind::U, {0.25, 0.5, 0.75}}};
  const Polygon ref = make_e_phi(M_PI / 2.0);
  bool pass = true;
  std::string detail = "energy vs bound:";
  for (const Polygon& poly : {unit_square(), l_hexagon()}) {
    const CornerDecomposition dec =
        corner_decomposition(poly, poly.shortest_edge() / 8.0);
    const SeparationConstants sep = separation_constants(poly, dec);
    for (const Case& c : cases)
      for (double p : c.ps) {
        const DivergenceClass refc =
            classify_divergence(dyadic_series(ref, c.kind, p, 0.25, 8, spec));
        const DivergenceClass en = classify_divergence(
            dyadic_series(poly, c.kind, p, poly.shortest_edge() / 4.0, 8, spec));
        const bool ok = refc.type == DivergenceClass::Type::Finite &&
                        en.type == DivergenceClass::Type::Finite &&
                        en.value <= assemble_upper_bound(poly, c.kind, p, dec, sep,
                                                         refc.value);
        pass = pass && ok;
        if (!ok) {
          char buf[64];
          std::snprintf(buf, sizeof buf, " %s/p=%.2f violated", to_string(c.kind), p);
          detail += buf;
        }
      }
  }
  if (pass) detail += " all 18 cases hold";
  report(7, pass, detail);
}

// 8. Monte Carlo (1e6 samples) vs quadrature within 3 standard errors.
void criterion8() {
  const Polygon sq = unit_square();
  const TruncationSpec tr{0.05};
  const EnergyReport mc = mc_energy(sq, EnergyKind::M, 1.0, tr, 1000000, 2026);
  const EnergyReport q = energy(sq, EnergyKind::M, 1.0, tr, QuadratureSpec{});
  const double dev = std::abs(mc.value - q.value) / mc.error_est;
  char buf[96];
  std::snprintf(buf, sizeof buf, "MC %.6f vs quadrature %.6f, %.2f standard errors",
                mc.value, q.value, dev);
  report(8, dev <= 3.0, buf);
}

}  // namespace

int main() {
  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
