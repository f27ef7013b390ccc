#include "menger/quadrature.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "menger/sup.hpp"

namespace menger {

const char* to_string(EnergyKind k) {
  switch (k) {
    case EnergyKind::M: return "M";
    case EnergyKind::I: return "I";
    case EnergyKind::U: return "U";
  }
  return "?";
}

EnergyKind energy_kind_from_string(const std::string& s) {
  if (s == "M" || s == "m") return EnergyKind::M;
  if (s == "I" || s == "i") return EnergyKind::I;
  if (s == "U" || s == "u") return EnergyKind::U;
  throw Error(ErrorCode::InvalidArgument, "unknown energy kind: " + s);
}

int arity(EnergyKind k) {
  switch (k) {
    case EnergyKind::M: return 3;
    case EnergyKind::I: return 2;
    case EnergyKind::U: return 1;
  }
  return 0;
}

double critical_threshold(EnergyKind k) { return static_cast<double>(arity(k)); }

int thread_count() {
  if (const char* env = std::getenv("MENGER_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

namespace {

/// Runs body(i) for i in [0, n) on worker threads with dynamic chunking.
/// Each index is processed exactly once; the caller must make per-index
/// results independent so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const int nt = std::min<std::size_t>(thread_count(), n);
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) break;
      body(i);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  static std::map<int, std::pair<std::vector<double>, std::vector<double>>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) {
    x = it->second.first;
    w = it->second.second;
    return;
  }
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it2 = 0; it2 < 100; ++it2) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
  cache[n] = {x, w};
}

bool truncated_end(const Polygon& p, std::size_t vtx) {
  if (!p.closed() && (vtx == 0 || vtx == p.vertex_count() - 1)) return false;
  return p.vertex_is_corner(vtx);
}

int birth_level(double dist, double delta0, int halvings) {
  // Smallest k in [0, halvings] with dist >= delta0 * 2^-k.
  double d = delta0;
  for (int k = 0; k <= halvings; ++k) {
    if (dist >= d * (1.0 - 1e-9)) return k;
    d *= 0.5;
  }
  return halvings;
}

PanelMesh build_mesh_impl(const Polygon& p, double delta0, int halvings,
                          const QuadratureSpec& spec, int depth_eff) {
  if (!(delta0 > 0.0)) throw Error(ErrorCode::DomainError, "delta must be positive");
  if (!(spec.ratio > 1.0)) throw Error(ErrorCode::InvalidArgument, "grading ratio must exceed 1");
  if (spec.order < 2) throw Error(ErrorCode::InvalidArgument, "panel order must be >= 2");
  if (halvings > 0 && spec.ratio != 2.0)
    throw Error(ErrorCode::InvalidArgument, "dyadic meshes require grading ratio 2");

  double delta_f = delta0;
  for (int k = 0; k < halvings; ++k) delta_f *= 0.5;

  PanelMesh mesh;
  mesh.delta0 = delta0;
  mesh.levels = halvings + 1;

  const std::size_t ne = p.edge_count();
  for (std::size_t e = 0; e < ne; ++e) {
    const double L = p.edge_length(e);
    const bool lc = truncated_end(p, e);
    const bool rc = truncated_end(p, (e + 1) % p.vertex_count());
    const double excluded = (lc ? delta0 : 0.0) + (rc ? delta0 : 0.0);
    if (excluded >= L * (1.0 - 1e-12))
      throw Error(ErrorCode::DomainError,
                  "truncation radius too large for edge " + std::to_string(e));

    std::vector<double> bounds;
    if (lc) {
      const double cap = rc ? 0.5 * L : L;
      double b = delta_f;
      for (int j = 0; j <= depth_eff && b < cap * (1.0 - 1e-12); ++j) {
        bounds.push_back(b);
        b *= spec.ratio;
      }
    } else {
      bounds.push_back(0.0);
    }
    std::vector<double> right;
    if (rc) {
      const double cap = lc ? 0.5 * L : L;
      double b = delta_f;
      for (int j = 0; j <= depth_eff && b < cap * (1.0 - 1e-12); ++j) {
        right.push_back(L - b);
        b *= spec.ratio;
      }
      std::reverse(right.begin(), right.end());
    } else {
      right.push_back(L);
    }
    bounds.insert(bounds.end(), right.begin(), right.end());

    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
      Panel panel;
      panel.edge = e;
      panel.a = bounds[i];
      panel.b = bounds[i + 1];
      int lev = 0;
      if (lc) lev = std::max(lev, birth_level(panel.a, delta0, halvings));
      if (rc) lev = std::max(lev, birth_level(L - panel.b, delta0, halvings));
      panel.level = lev;
      mesh.panels.push_back(panel);
    }
  }
  return mesh;
}

}  // namespace

PanelMesh build_graded_mesh(const Polygon& p, const TruncationSpec& trunc,
                            const QuadratureSpec& spec) {
  return build_mesh_impl(p, trunc.delta, 0, spec, spec.depth);
}

PanelMesh build_dyadic_mesh(const Polygon& p, double delta0, int halvings,
                            const QuadratureSpec& spec) {
  if (halvings < 0) throw Error(ErrorCode::InvalidArgument, "halvings must be >= 0");
  return build_mesh_impl(p, delta0, halvings, spec,
                         std::max(spec.depth, halvings + 64));
}

double pairwise_sum(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  if (xs.size() == 1) return xs[0];
  if (xs.size() == 2) return xs[0] + xs[1];
  const std::size_t half = xs.size() / 2;
  return pairwise_sum(xs.subspan(0, half)) + pairwise_sum(xs.subspan(half));
}

EnergyEvaluator::EnergyEvaluator(const Polygon& p, const PanelMesh& mesh,
                                 int order, double sup_tol)
    : poly_(p), dim_(p.dimension()), nlev_(mesh.levels), sup_tol_(sup_tol) {
  if (!p.validated())
    throw Error(ErrorCode::InvalidArgument, "polygon must be validated");
  std::vector<double> gx, gw;
  gauss_legendre(order, gx, gw);

  nn_ = mesh.panels.size() * order;
  coords_.resize(nn_ * dim_);
  w_.resize(nn_);
  edge_.resize(nn_);
  lev_.resize(nn_);
  std::size_t idx = 0;
  for (const Panel& panel : mesh.panels) {
    const double h = 0.5 * (panel.b - panel.a);
    const double c = panel.a + h;
    for (int q = 0; q < order; ++q, ++idx) {
      const double t = c + h * gx[q];
      poly_.edge_point(panel.edge, t,
                       {coords_.data() + idx * dim_, dim_});
      w_[idx] = h * gw[q];
      edge_[idx] = static_cast<int>(panel.edge);
      lev_[idx] = panel.level;
    }
  }
}

void EnergyEvaluator::ensure_kappa_g() const {
  if (!kg_cache_.empty()) return;
  kg_cache_.assign(nn_, 0.0);
  parallel_for(nn_, [&](std::size_t i) {
    kg_cache_[i] = detail::sup_kappa_yz(poly_, node(i), sup_tol_);
  });
}

void EnergyEvaluator::ensure_kappa_i() const {
  if (!ki_cache_.empty()) return;
  ki_cache_.assign(nn_ * nn_, 0.0);
  parallel_for(nn_, [&](std::size_t a) {
    for (std::size_t b = a; b < nn_; ++b) {
      double v;
      if (a == b) {
        v = detail::sup_kappa_tangent_z(poly_, node(a),
                                        poly_.edge_dir(edge_[a]), sup_tol_);
      } else {
        v = detail::sup_kappa_z(poly_, node(a), node(b), sup_tol_);
      }
      ki_cache_[a * nn_ + b] = v;
      ki_cache_[b * nn_ + a] = v;
    }
  });
}

std::vector<double> EnergyEvaluator::levels(EnergyKind kind, double pexp) const {
  if (!(pexp > 0.0)) throw Error(ErrorCode::DomainError, "p must be positive");
  const int K = nlev_;
  std::vector<double> buckets(K, 0.0);

  if (kind == EnergyKind::U) {
    ensure_kappa_g();
    std::vector<double> contrib(nn_, 0.0);
    for (std::size_t i = 0; i < nn_; ++i)
      if (kg_cache_[i] > 0.0) contrib[i] = w_[i] * std::pow(kg_cache_[i], pexp);
    // Nodes are bucket-sorted by level; pairwise-sum each bucket.
    for (int k = 0; k < K; ++k) {
      std::vector<double> part;
      for (std::size_t i = 0; i < nn_; ++i)
        if (lev_[i] == k) part.push_back(contrib[i]);
      buckets[k] = pairwise_sum(part);
    }
    evals_ += nn_;
  } else if (kind == EnergyKind::I) {
    ensure_kappa_i();
    std::vector<double> partial(nn_ * K, 0.0);
    parallel_for(nn_, [&](std::size_t a) {
      for (std::size_t b = a; b < nn_; ++b) {
        const double ki = ki_cache_[a * nn_ + b];
        if (ki <= 0.0) continue;
        const double mult = (a == b) ? 1.0 : 2.0;
        const int lev = std::max(lev_[a], lev_[b]);
        partial[a * K + lev] += mult * w_[a] * w_[b] * std::pow(ki, pexp);
      }
    });
    for (int k = 0; k < K; ++k) {
      std::vector<double> part(nn_);
      for (std::size_t a = 0; a < nn_; ++a) part[a] = partial[a * K + k];
      buckets[k] = pairwise_sum(part);
    }
    evals_ += static_cast<std::uint64_t>(nn_) * nn_;
  } else {
    std::vector<double> partial(nn_ * K, 0.0);
    parallel_for(nn_, [&](std::size_t a) {
      const auto xa = node(a);
      for (std::size_t b = a; b < nn_; ++b) {
        const auto xb = node(b);
        const bool ab_same_edge = edge_[a] == edge_[b];
        for (std::size_t c = b; c < nn_; ++c) {
          if (ab_same_edge && edge_[b] == edge_[c]) continue;
          double kv;
          if (a == b) {
            kv = kappa_tangent(xa, poly_.edge_dir(edge_[a]), node(c));
          } else if (b == c) {
            kv = kappa_tangent(xb, poly_.edge_dir(edge_[b]), xa);
          } else {
            kv = kappa(xa, xb, node(c));
          }
          if (kv <= 0.0) continue;
          const double mult = (a == b || b == c) ? 3.0 : 6.0;
          const int lev = std::max({lev_[a], lev_[b], lev_[c]});
          partial[a * K + lev] +=
              mult * w_[a] * w_[b] * w_[c] * std::pow(kv, pexp);
        }
      }
    });
    for (int k = 0; k < K; ++k) {
      std::vector<double> part(nn_);
      for (std::size_t a = 0; a < nn_; ++a) part[a] = partial[a * K + k];
      buckets[k] = pairwise_sum(part);
    }
    // Ordered tuples, minus the pruned same-edge ones.
    std::map<int, std::uint64_t> per_edge;
    for (std::size_t i = 0; i < nn_; ++i) ++per_edge[edge_[i]];
    std::uint64_t skipped = 0;
    for (const auto& [e, cnt] : per_edge) skipped += cnt * cnt * cnt;
    evals_ += static_cast<std::uint64_t>(nn_) * nn_ * nn_ - skipped;
  }

  std::vector<double> cumulative(K);
  double acc = 0.0;
  for (int k = 0; k < K; ++k) {
    acc += buckets[k];
    cumulative[k] = acc;
  }
  return cumulative;
}

EnergyReport energy(const Polygon& p, EnergyKind kind, double pexp,
                    const TruncationSpec& trunc, const QuadratureSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  const PanelMesh mesh = build_graded_mesh(p, trunc, spec);

  EnergyEvaluator full(p, mesh, spec.order, spec.sup_tol);
  const double v = full.levels(kind, pexp).back();
  EnergyEvaluator half(p, mesh, std::max(2, spec.order / 2), spec.sup_tol);
  const double v2 = half.levels(kind, pexp).back();

  EnergyReport r;
  r.kind = kind;
  r.p = pexp;
  r.delta = trunc.delta;
  r.value = v;
  r.error_est = std::abs(v - v2);
  r.nodes = full.tuple_evals() + half.tuple_evals();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

double u_energy_closed_form_right_angle(double p, double delta) {
  if (!(p > 0.0)) throw Error(ErrorCode::DomainError, "p must be positive");
  if (!(delta > 0.0 && delta < 1.0))
    throw Error(ErrorCode::DomainError, "delta must lie in (0, 1)");
  if (p == 1.0) return 4.0 * std::log(1.0 / delta);
  return 2.0 * std::pow(2.0, p) * (1.0 - std::pow(delta, 1.0 - p)) / (1.0 - p);
}

EnergyReport mc_energy(const Polygon& p, EnergyKind kind, double pexp,
                       const TruncationSpec& trunc, std::uint64_t samples,
                       std::uint64_t seed) {
  if (!p.validated())
    throw Error(ErrorCode::InvalidArgument, "polygon must be validated");
  if (samples < 1) throw Error(ErrorCode::InvalidArgument, "samples must be >= 1");
  if (!(pexp > 0.0)) throw Error(ErrorCode::DomainError, "p must be positive");
  const auto t0 = std::chrono::steady_clock::now();

  // Truncated arc intervals, one per edge.
  struct Interval {
    std::size_t edge;
    double a, len;
  };
  std::vector<Interval> ivs;
  std::vector<double> cum{0.0};
  for (std::size_t e = 0; e < p.edge_count(); ++e) {
    const double L = p.edge_length(e);
    const double a = truncated_end(p, e) ? trunc.delta : 0.0;
    const double b = L - (truncated_end(p, (e + 1) % p.vertex_count()) ? trunc.delta : 0.0);
    if (b - a <= 1e-12 * L)
      throw Error(ErrorCode::DomainError,
                  "truncation radius too large for edge " + std::to_string(e));
    ivs.push_back({e, a, b - a});
    cum.push_back(cum.back() + (b - a));
  }
  const double total = cum.back();

  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return (rng() >> 11) * 0x1.0p-53; };
  const std::size_t dim = p.dimension();
  const int d = arity(kind);
  std::vector<Coords> pts(3, Coords(dim));
  std::vector<int> pt_edge(3);

  double mean = 0.0, m2 = 0.0;
  for (std::uint64_t n = 0; n < samples; ++n) {
    for (int i = 0; i < d; ++i) {
      const double s = uniform() * total;
      const auto it = std::upper_bound(cum.begin(), cum.end(), s);
      std::size_t iv = (it == cum.begin()) ? 0 : (it - cum.begin() - 1);
      iv = std::min(iv, ivs.size() - 1);
      pt_edge[i] = static_cast<int>(ivs[iv].edge);
      p.edge_point(ivs[iv].edge, ivs[iv].a + (s - cum[iv]), pts[i]);
    }
    double kv = 0.0;
    switch (kind) {
      case EnergyKind::M:
        if (!(pt_edge[0] == pt_edge[1] && pt_edge[1] == pt_edge[2]))
          kv = kappa(pts[0], pts[1], pts[2]);
        break;
      case EnergyKind::I:
        kv = detail::sup_kappa_z(p, pts[0], pts[1]);
        break;
      case EnergyKind::U:
        kv = detail::sup_kappa_yz(p, pts[0]);
        break;
    }
    const double f = kv > 0.0 ? std::pow(kv, pexp) : 0.0;
    const double delta_f = f - mean;
    mean += delta_f / static_cast<double>(n + 1);
    m2 += delta_f * (f - mean);
  }

  double volume = 1.0;
  for (int i = 0; i < d; ++i) volume *= total;

  EnergyReport r;
  r.kind = kind;
  r.p = pexp;
  r.delta = trunc.delta;
  r.value = volume * mean;
  r.error_est =
      samples > 1
          ? volume * std::sqrt(m2 / (static_cast<double>(samples) *
                                     static_cast<double>(samples - 1)))
          : 0.0;
  r.nodes = samples;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace menger
