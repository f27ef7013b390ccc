// Command-line front end: polygon ingestion, energy runs, divergence
// classification, decomposition bounds, inequality checks, kernel queries.
//
// Exit codes: 0 success, 1 check failure, 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "menger/asymptotics.hpp"
#include "menger/checks.hpp"
#include "menger/decomposition.hpp"
#include "menger/polygon_io.hpp"
#include "menger/sup.hpp"

namespace {

using nlohmann::json;
using namespace menger;

std::uint64_t default_seed() {
  if (const char* s = std::getenv("MENGER_SEED")) return std::strtoull(s, nullptr, 10);
  return 0;
}

void emit(const std::string& text, const std::string& output) {
  if (!output.empty()) atomic_write_file(output, text);
  std::cout << text;
  if (text.empty() || text.back() != '\n') std::cout << '\n';
}

// Wall time is zeroed by default so identical runs produce byte-identical
// reports; --timing restores the measured value.
json report_json(const EnergyReport& r, bool timing) {
  return json{{"kind", to_string(r.kind)}, {"p", r.p},
              {"delta", r.delta},         {"value", r.value},
              {"error_est", r.error_est}, {"nodes", r.nodes},
              {"seconds", timing ? r.seconds : 0.0}};
}

json check_json(const CheckReport& r) {
  return json{{"check", r.check},
              {"samples", r.samples},
              {"max_violation", r.max_violation},
              {"scale", r.scale},
              {"witness", r.witness},
              {"pass", r.pass}};
}

json segment_json(const SubSegment& s) { return json{{"a", s.a}, {"b", s.b}}; }

std::vector<double> parse_point(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "bad coordinate '" + tok + "'");
    }
  }
  if (out.size() < 2)
    throw Error(ErrorCode::InvalidArgument, "a point needs at least two coordinates");
  return out;
}

/// Convergent reference energy of the right-angle corner at exponent p:
/// dyadic extrapolation, which must classify as finite.
double reference_energy(EnergyKind kind, double p, const QuadratureSpec& spec) {
  const Polygon ref = make_e_phi(M_PI / 2.0);
  const DyadicSeries s = dyadic_series(ref, kind, p, 0.25, 8, spec);
  const DivergenceClass c = classify_divergence(s);
  if (c.type != DivergenceClass::Type::Finite)
    throw Error(ErrorCode::DomainError,
                "reference energy does not converge at this exponent");
  return c.value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integral curvature energies of polygonal curves"};
  app.require_subcommand(1);

  std::string input, output, kind_name = "M", integrand_name = "product";
  double p = 1.0, delta = 0.1, delta0 = 0.0, phi = M_PI / 2.0;
  double epsilon = 0.0, ref_energy = -1.0, stretch = 2.0, tol = 1e-9;
  int halvings = 8, tuple_arity = 2;
  bool timing = false;
  std::uint64_t samples = 10000, seed = default_seed();
  std::string xs, ys, zs;
  QuadratureSpec spec;

  auto add_io = [&](CLI::App* c, bool needs_input = true) {
    if (needs_input)
      c->add_option("--input", input, "polygon JSON file")->required();
    c->add_option("--output", output, "write the report here (atomic)");
  };
  auto add_quad = [&](CLI::App* c) {
    c->add_option("--order", spec.order, "Gauss-Legendre nodes per panel");
    c->add_option("--ratio", spec.ratio, "grading ratio toward corners");
    c->add_option("--depth", spec.depth, "graded panels per corner");
    c->add_option("--sup-tol", spec.sup_tol, "inner sup search tolerance");
  };
  auto add_kind = [&](CLI::App* c) {
    c->add_option("--kind", kind_name, "energy kind: M, I or U");
  };

  CLI::App* mk = app.add_subcommand("make-ephi", "write the model corner E_phi");
  mk->add_option("--phi", phi, "opening angle in radians")->required();
  add_io(mk, false);

  CLI::App* en = app.add_subcommand("energy", "truncated energy by quadrature");
  add_io(en);
  add_kind(en);
  en->add_option("--p", p, "exponent")->required();
  en->add_option("--delta", delta, "corner truncation radius")->required();
  en->add_flag("--timing", timing, "report measured wall time");
  add_quad(en);

  CLI::App* mc = app.add_subcommand("mc-energy", "Monte Carlo truncated energy");
  add_io(mc);
  add_kind(mc);
  mc->add_option("--p", p, "exponent")->required();
  mc->add_option("--delta", delta, "corner truncation radius")->required();
  mc->add_option("--samples", samples, "sample tuples")->required();
  mc->add_option("--seed", seed, "RNG seed (default: MENGER_SEED or 0)");
  mc->add_flag("--timing", timing, "report measured wall time");

  CLI::App* se = app.add_subcommand("series", "dyadic truncation series (CSV)");
  add_io(se);
  add_kind(se);
  se->add_option("--p", p, "exponent")->required();
  se->add_option("--delta0", delta0, "coarsest truncation (default: shortest edge / 4)");
  se->add_option("--halvings", halvings, "number of dyadic halvings");
  add_quad(se);

  CLI::App* cl = app.add_subcommand("classify", "finite / log / power divergence");
  add_io(cl);
  add_kind(cl);
  cl->add_option("--p", p, "exponent")->required();
  cl->add_option("--delta0", delta0, "coarsest truncation (default: shortest edge / 4)");
  cl->add_option("--halvings", halvings, "number of dyadic halvings");
  add_quad(cl);

  CLI::App* cp = app.add_subcommand("critical-p", "finiteness threshold by bisection");
  add_io(cp);
  add_kind(cp);
  cp->add_option("--delta0", delta0, "coarsest truncation (default: shortest edge / 4)");
  cp->add_option("--halvings", halvings, "number of dyadic halvings");
  add_quad(cp);

  CLI::App* de = app.add_subcommand("decompose", "corner decomposition and d1, d2");
  add_io(de);
  de->add_option("--epsilon", epsilon, "arm length (default: shortest edge / 8)");

  CLI::App* bo = app.add_subcommand("bound", "explicit finite upper bound");
  add_io(bo);
  add_kind(bo);
  bo->add_option("--p", p, "exponent")->required();
  bo->add_option("--epsilon", epsilon, "arm length (default: shortest edge / 8)");
  bo->add_option("--ref-energy", ref_energy,
                 "energy of E_{pi/2} (default: computed by dyadic extrapolation)");
  add_quad(bo);

  CLI::App* ck = app.add_subcommand("check", "sampled inequality checks");
  ck->require_subcommand(1);
  CLI::App* ck1 = ck->add_subcommand("lemma1", "corner kernel bound");
  CLI::App* ck2 = ck->add_subcommand("lemma2", "straightening comparison");
  for (CLI::App* c : {ck1, ck2}) {
    c->add_option("--phi", phi, "opening angle in radians")->required();
    c->add_option("--samples", samples, "sample count");
    c->add_option("--seed", seed, "RNG seed (default: MENGER_SEED or 0)");
    c->add_option("--output", output, "write the report here (atomic)");
  }
  CLI::App* ck3 = ck->add_subcommand("pushforward", "change-of-variables identity");
  ck3->add_option("--stretch", stretch, "interval stretch factor c >= 1");
  ck3->add_option("--arity", tuple_arity, "number of integration variables (1-3)");
  ck3->add_option("--samples", samples, "target quadrature point count");
  ck3->add_option("--integrand", integrand_name, "one | product");
  ck3->add_option("--output", output, "write the report here (atomic)");

  CLI::App* ke = app.add_subcommand("kernel", "point evaluations of the kernels");
  ke->require_subcommand(1);
  CLI::App* kk = ke->add_subcommand("kappa", "curvature of a triple");
  kk->add_option("--x", xs, "comma-separated coordinates")->required();
  kk->add_option("--y", ys, "comma-separated coordinates")->required();
  kk->add_option("--z", zs, "comma-separated coordinates")->required();
  CLI::App* ki = ke->add_subcommand("kappa-i", "sup over the third point");
  add_io(ki);
  ki->add_option("--x", xs, "comma-separated coordinates")->required();
  ki->add_option("--y", ys, "comma-separated coordinates")->required();
  ki->add_option("--tol", tol, "search tolerance");
  CLI::App* kg = ke->add_subcommand("kappa-g", "sup over the second and third point");
  add_io(kg);
  kg->add_option("--x", xs, "comma-separated coordinates")->required();
  kg->add_option("--tol", tol, "search tolerance");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (mk->parsed()) {
      emit(polygon_to_json(make_e_phi(phi)), output);
      return 0;
    }

    if (en->parsed() || mc->parsed()) {
      const Polygon poly = load_polygon_file(input);
      const EnergyKind kind = energy_kind_from_string(kind_name);
      const EnergyReport r =
          en->parsed() ? energy(poly, kind, p, TruncationSpec{delta}, spec)
                       : mc_energy(poly, kind, p, TruncationSpec{delta}, samples, seed);
      emit(report_json(r, timing).dump(2), output);
      return 0;
    }

    if (se->parsed() || cl->parsed() || cp->parsed()) {
      const Polygon poly = load_polygon_file(input);
      const EnergyKind kind = energy_kind_from_string(kind_name);
      if (delta0 <= 0.0) delta0 = poly.shortest_edge() / 4.0;
      if (cp->parsed()) {
        const double pc = estimate_critical_p(poly, kind, spec, delta0, halvings);
        emit(json{{"kind", to_string(kind)}, {"critical_p", pc}}.dump(2), output);
        return 0;
      }
      const DyadicSeries s = dyadic_series(poly, kind, p, delta0, halvings, spec);
      if (se->parsed()) {
        emit(series_to_csv(s), output);
        return 0;
      }
      const DivergenceClass c = classify_divergence(s);
      emit(json{{"kind", to_string(kind)},
                {"p", p},
                {"delta0", delta0},
                {"halvings", halvings},
                {"type", to_string(c.type)},
                {"value", c.value},
                {"slope", c.slope},
                {"exponent", c.exponent},
                {"confidence", c.confidence}}
               .dump(2),
           output);
      return 0;
    }

    if (de->parsed() || bo->parsed()) {
      const Polygon poly = load_polygon_file(input);
      if (epsilon <= 0.0) epsilon = poly.shortest_edge() / 8.0;
      const CornerDecomposition dec = corner_decomposition(poly, epsilon);
      const SeparationConstants sep = separation_constants(poly, dec);
      if (de->parsed()) {
        json corners = json::array();
        for (const CornerPiece& c : dec.corners)
          corners.push_back(json{{"vertex", c.vertex},
                                 {"angle", c.angle},
                                 {"arm_in", segment_json(c.arm_in)},
                                 {"arm_out", segment_json(c.arm_out)}});
        json middles = json::array();
        for (const SubSegment& m : dec.middles) middles.push_back(segment_json(m));
        emit(json{{"epsilon", dec.epsilon},
                  {"shortest_edge", dec.shortest_edge},
                  {"vertex_count", dec.vertex_count},
                  {"corners", corners},
                  {"middles", middles},
                  {"d1", sep.d1},
                  {"d2", sep.d2}}
                 .dump(2),
             output);
        return 0;
      }
      const EnergyKind kind = energy_kind_from_string(kind_name);
      if (ref_energy < 0.0) ref_energy = reference_energy(kind, p, spec);
      const double b = assemble_upper_bound(poly, kind, p, dec, sep, ref_energy);
      emit(json{{"kind", to_string(kind)},
                {"p", p},
                {"epsilon", epsilon},
                {"d1", sep.d1},
                {"d2", sep.d2},
                {"ref_energy", ref_energy},
                {"bound", b}}
               .dump(2),
           output);
      return 0;
    }

    if (ck->parsed()) {
      CheckReport r;
      if (ck1->parsed())
        r = lemma1_bound_check(phi, samples, seed);
      else if (ck2->parsed())
        r = lemma2_pointwise_check(phi, samples, seed);
      else {
        PushforwardIntegrand f;
        if (integrand_name == "one")
          f = PushforwardIntegrand::One;
        else if (integrand_name == "product")
          f = PushforwardIntegrand::Product;
        else
          throw Error(ErrorCode::InvalidArgument,
                      "integrand must be 'one' or 'product'");
        r = pushforward_check(stretch, tuple_arity, samples, f);
      }
      emit(check_json(r).dump(2), output);
      return r.pass ? 0 : 1;
    }

    if (ke->parsed()) {
      if (kk->parsed()) {
        const auto x = parse_point(xs), y = parse_point(ys), z = parse_point(zs);
        if (x.size() != y.size() || x.size() != z.size())
          throw Error(ErrorCode::InvalidArgument, "points must share a dimension");
        emit(json{{"value", kappa(x, y, z)}}.dump(2), output);
        return 0;
      }
      const Polygon poly = load_polygon_file(input);
      const auto x = parse_point(xs);
      const SupResult r = ki->parsed() ? kappa_i(poly, x, parse_point(ys), tol)
                                       : kappa_g(poly, x, tol);
      emit(json{{"value", r.value},
                {"argmax", r.argmax},
                {"converged", r.converged},
                {"tolerance", r.tolerance}}
               .dump(2),
           output);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
