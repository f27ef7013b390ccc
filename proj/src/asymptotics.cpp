#include "menger/asymptotics.hpp"

#include <cmath>
#include <sstream>

namespace menger {

const char* to_string(DivergenceClass::Type t) {
  switch (t) {
    case DivergenceClass::Type::Finite: return "Finite";
    case DivergenceClass::Type::LogDivergent: return "LogDivergent";
    case DivergenceClass::Type::PowerDivergent: return "PowerDivergent";
  }
  return "?";
}

DyadicSeries dyadic_series(const Polygon& poly, EnergyKind kind, double p,
                           double delta0, int halvings,
                           const QuadratureSpec& spec) {
  const PanelMesh mesh = build_dyadic_mesh(poly, delta0, halvings, spec);
  const EnergyEvaluator eval(poly, mesh, spec.order, spec.sup_tol);

  DyadicSeries s;
  s.kind = kind;
  s.p = p;
  s.delta0 = delta0;
  s.halvings = halvings;
  s.values = eval.levels(kind, p);
  double d = delta0;
  for (int k = 0; k <= halvings; ++k, d *= 0.5) s.deltas.push_back(d);
  for (int k = 0; k < halvings; ++k)
    s.increments.push_back(s.values[k + 1] - s.values[k]);
  for (int k = 0; k + 1 < halvings; ++k)
    s.ratios.push_back(s.increments[k] > 0.0 ? s.increments[k + 1] / s.increments[k]
                                             : 0.0);
  return s;
}

namespace {

struct Fit {
  bool usable = false;  // false when the tail increments vanish
  double slope = 0.0;
  double residual = 0.0;
};

Fit fit_log_increments(const DyadicSeries& s) {
  const int K = static_cast<int>(s.increments.size());
  if (K < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 halvings");
  for (double inc : s.increments)
    if (inc < 0.0)
      throw Error(ErrorCode::DomainError, "non-monotone dyadic series");

  const int window = (K + 1) / 2;
  const int first = K - window;
  const double scale = std::max(s.values.back(), 1e-300);

  Fit f;
  std::vector<double> xs, ys;
  for (int k = first; k < K; ++k) {
    if (s.increments[k] <= 1e-14 * scale) return f;  // flat tail
    xs.push_back(k);
    ys.push_back(std::log2(s.increments[k]));
  }
  const std::size_t n = xs.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  f.usable = true;
  f.slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ys[i] - (my + f.slope * (xs[i] - mx));
    ss += r * r;
  }
  f.residual = std::sqrt(ss / n);
  return f;
}

}  // namespace

double fitted_increment_slope(const DyadicSeries& s) {
  const Fit f = fit_log_increments(s);
  return f.usable ? f.slope : -50.0;
}

DivergenceClass classify_divergence(const DyadicSeries& s) {
  const Fit f = fit_log_increments(s);

  DivergenceClass c;
  if (!f.usable) {
    c.type = DivergenceClass::Type::Finite;
    c.value = s.values.back();
    return c;
  }
  c.slope = f.slope;
  c.confidence = f.residual;
  if (f.slope < -0.1) {
    c.type = DivergenceClass::Type::Finite;
    const double r = std::exp2(f.slope);
    c.value = s.values.back() + s.increments.back() * r / (1.0 - r);
  } else if (f.slope <= 0.1) {
    c.type = DivergenceClass::Type::LogDivergent;
    c.value = s.increments.back();
  } else {
    c.type = DivergenceClass::Type::PowerDivergent;
    c.exponent = f.slope;
  }
  return c;
}

double estimate_critical_p(const Polygon& poly, EnergyKind kind,
                           const QuadratureSpec& spec, double delta0,
                           int halvings) {
  if (!poly.has_corner())
    throw Error(ErrorCode::NoCorner, "polygon has no corner; every energy is zero");
  if (delta0 <= 0.0) delta0 = poly.shortest_edge() / 4.0;

  const PanelMesh mesh = build_dyadic_mesh(poly, delta0, halvings, spec);
  const EnergyEvaluator eval(poly, mesh, spec.order, spec.sup_tol);

  auto slope_at = [&](double p) {
    DyadicSeries s;
    s.kind = kind;
    s.p = p;
    s.delta0 = delta0;
    s.halvings = halvings;
    s.values = eval.levels(kind, p);
    for (int k = 0; k < halvings; ++k)
      s.increments.push_back(s.values[k + 1] - s.values[k]);
    return fitted_increment_slope(s);
  };

  double lo = 0.1, hi = 5.0;
  for (int it = 0; it < 12; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (slope_at(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::string series_to_csv(const DyadicSeries& s) {
  std::ostringstream out;
  out.precision(17);
  out << "k,delta,value,increment,ratio\n";
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    out << k << ',' << s.deltas[k] << ',' << s.values[k] << ',';
    if (k >= 1) out << s.increments[k - 1];
    out << ',';
    if (k >= 2) out << s.ratios[k - 2];
    out << '\n';
  }
  return out.str();
}

}  // namespace menger
