#include "octaflex/typeb.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <random>

#include "octaflex/classifier.hpp"

namespace octaflex {

namespace {

std::array<double, 8> b_terms(const TypeBParams& t, SignTriple eps) {
  double a = t.a, b = t.b, c = t.c, h = t.h, s = t.s, r = t.r;
  return {
      a * b * c * (h * h + s * s + r * r),
      -h * s * r * (a * a + b * b + c * c),
      eps.e1 * (c * s * b * (h * h + r * r - s * s)),
      eps.e1 * (-h * r * a * (b * b + c * c - a * a)),
      eps.e2 * (a * h * b * (s * s + r * r - h * h)),
      eps.e2 * (-s * r * c * (a * a + b * b - c * c)),
      eps.e3 * (c * r * a * (s * s + h * h - r * r)),
      eps.e3 * (-s * h * b * (a * a + c * c - b * b)),
  };
}

}  // namespace

double b_poly(const TypeBParams& t, SignTriple eps) {
  auto terms = b_terms(t, eps);
  double acc = 0;
  for (double v : terms) acc += v;
  return acc;
}

double b_poly_scale(const TypeBParams& t) {
  auto terms = b_terms(t, {1, 1, 1});
  double m = 0;
  for (double v : terms) m = std::max(m, std::abs(v));
  return m;
}

DerivedEdges parametrize(const TypeBParams& t, ZeroSumVariant variant) {
  double a = t.a, b = t.b, c = t.c, h = t.h, s = t.s, r = t.r;
  double den1 = b * h - c * r, den2 = r * a - s * b, den3 = a * h - c * s;
  if (den1 == 0) throw ZeroDenominator("bh-cr");
  if (den2 == 0) throw ZeroDenominator("ra-sb");
  if (den3 == 0) throw ZeroDenominator("ah-cs");
  DerivedEdges out;
  out.d = b * h * (a - s) / den1;
  out.q = c * r * (a - s) / den1;
  out.f = r * a * (c - h) / den2;
  out.g = s * b * (c - h) / den2;
  out.p = -c * s * (b - r) / den3;
  out.e = -a * h * (b - r) / den3;
  if (variant == ZeroSumVariant::PositiveCase) {
    out.p = -out.p;
    out.e = -out.e;
  }
  return out;
}

ValidationResult assemble(const TypeBParams& t, const DerivedEdges& d) {
  EdgeLengths l{d.p, d.q, t.r, t.s, t.a, t.b, d.d, d.e, t.c, d.f, t.h, d.g};
  return validate(l);
}

namespace {

void set_param(TypeBParams& t, int idx, double v) {
  switch (idx) {
    case 0: t.a = v; break;
    case 1: t.b = v; break;
    case 2: t.c = v; break;
    case 3: t.h = v; break;
    case 4: t.s = v; break;
    default: t.r = v; break;
  }
}

// Real roots of c3 t^3 + c2 t^2 + c1 t + c0, degree dropped when the leading
// coefficients are negligible at the given scale.
std::vector<double> poly_roots(double c3, double c2, double c1, double c0, double node_scale) {
  double mag = std::max({std::abs(c3) * node_scale * node_scale * node_scale,
                         std::abs(c2) * node_scale * node_scale, std::abs(c1) * node_scale,
                         std::abs(c0)});
  if (mag == 0) return {};
  std::vector<double> roots;
  if (std::abs(c3) * node_scale * node_scale * node_scale > 1e-12 * mag) {
    double a = c2 / c3, b = c1 / c3, c = c0 / c3;
    double p = b - a * a / 3.0;
    double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
    double disc = q * q / 4.0 + p * p * p / 27.0;
    if (disc > 0) {
      double sq = std::sqrt(disc);
      double u = std::cbrt(-q / 2.0 + sq), v = std::cbrt(-q / 2.0 - sq);
      roots.push_back(u + v - a / 3.0);
    } else if (!(p < 0)) {
      roots.push_back(-a / 3.0);  // disc <= 0 with p >= 0 forces p, q ~ 0: triple root
    } else {
      double m = 2.0 * std::sqrt(-p / 3.0);
      double theta = std::acos(std::clamp(3.0 * q / (p * m), -1.0, 1.0)) / 3.0;
      for (int k = 0; k < 3; ++k)
        roots.push_back(m * std::cos(theta - 2.0 * M_PI * k / 3.0) - a / 3.0);
    }
  } else if (std::abs(c2) * node_scale * node_scale > 1e-12 * mag) {
    double disc = c1 * c1 - 4.0 * c2 * c0;
    if (disc >= 0) {
      double sq = std::sqrt(disc);
      roots.push_back((-c1 + sq) / (2.0 * c2));
      roots.push_back((-c1 - sq) / (2.0 * c2));
    }
  } else if (std::abs(c1) * node_scale > 1e-12 * mag) {
    roots.push_back(-c0 / c1);
  }
  return roots;
}

}  // namespace

std::vector<double> solve_b_root(TypeBParams base, int free_index, SignTriple eps) {
  double ns = 1.0;
  // 4-node fit: exact for a polynomial of degree <= 3 in the free variable
  double t[4] = {1.0 * ns, 2.0 * ns, 3.0 * ns, 4.0 * ns};
  double v[4];
  for (int k = 0; k < 4; ++k) {
    set_param(base, free_index, t[k]);
    v[k] = b_poly(base, eps);
  }
  // Newton's divided differences, expanded to monomial coefficients
  double d01 = (v[1] - v[0]) / (t[1] - t[0]);
  double d12 = (v[2] - v[1]) / (t[2] - t[1]);
  double d23 = (v[3] - v[2]) / (t[3] - t[2]);
  double d012 = (d12 - d01) / (t[2] - t[0]);
  double d123 = (d23 - d12) / (t[3] - t[1]);
  double d0123 = (d123 - d012) / (t[3] - t[0]);
  double c3 = d0123;
  double c2 = d012 - d0123 * (t[0] + t[1] + t[2]);
  double c1 = d01 - d012 * (t[0] + t[1]) +
              d0123 * (t[0] * t[1] + t[0] * t[2] + t[1] * t[2]);
  double c0 = v[0] - d01 * t[0] + d012 * t[0] * t[1] - d0123 * t[0] * t[1] * t[2];

  std::vector<double> out;
  for (double root : poly_roots(c3, c2, c1, c0, ns)) {
    // polish on the exact expression
    for (int it = 0; it < 60; ++it) {
      set_param(base, free_index, root);
      double fv = b_poly(base, eps);
      set_param(base, free_index, root);
      double scale = b_poly_scale(base);
      if (std::abs(fv) < 1e-13 * scale) break;
      double deriv = (3 * c3 * root + 2 * c2) * root + c1;
      if (deriv == 0) break;
      root -= fv / deriv;
    }
    set_param(base, free_index, root);
    if (std::abs(b_poly(base, eps)) < 1e-12 * b_poly_scale(base)) out.push_back(root);
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw NoRealRoot();
  return out;
}

std::optional<EdgeLengths> generate_attempt(const GenerateConfig& cfg, int attempt,
                                            GenerateCertificate* cert) {
  std::seed_seq sq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                   static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(sq);
  std::uniform_real_distribution<double> uni(std::log(cfg.range_lo), std::log(cfg.range_hi));

  TypeBParams t{1, 1, 1, 1, 1, 1};
  for (int idx = 0; idx < 6; ++idx) {
    if (idx == cfg.free_var) continue;
    set_param(t, idx, std::exp(uni(rng)));
  }

  std::vector<double> roots;
  try {
    roots = solve_b_root(t, cfg.free_var, cfg.eps);
  } catch (const NoRealRoot&) {
    return std::nullopt;
  }

  for (double root : roots) {
    if (!(root > 1e-6)) continue;
    set_param(t, cfg.free_var, root);
    DerivedEdges der;
    try {
      der = parametrize(t, ZeroSumVariant::PositiveCase);
    } catch (const ZeroDenominator&) {
      continue;
    }
    if (!(der.d > 1e-6 && der.q > 1e-6 && der.f > 1e-6 && der.g > 1e-6 && der.p > 1e-6 &&
          der.e > 1e-6))
      continue;
    auto vr = assemble(t, der);
    if (!vr.ok()) continue;
    const EdgeLengths& l = *vr.value;
    OctType ot = octahedron_type(l, cfg.tol);
    if (ot.verdict != Verdict::TypeB) continue;
    bool all_iii = true;
    for (int k = 0; k < 3; ++k)
      all_iii = all_iii && ot.equators[k].cls.consistent &&
                ot.equators[k].cls.first.tag == ClassTag::III;
    if (!all_iii) continue;

    if (cert) {
      cert->attempt = attempt;
      cert->params = t;
      cert->derived = der;
      cert->b_values = ot.b_values;
      cert->b_scale = ot.b_scale;
      for (int k = 0; k < 3; ++k) cert->zero_sum_res[k] = ot.equators[k].zero_sum.residual;
      cert->product_res = ot.product_res;
    }
    return l;
  }
  return std::nullopt;
}

EdgeLengths generate_serial(const GenerateConfig& cfg, GenerateCertificate* cert) {
  for (int i = 0; i < cfg.attempts; ++i) {
    if (auto l = generate_attempt(cfg, i, cert)) return *l;
  }
  throw SearchExhausted(cfg.attempts);
}

EdgeLengths generate(const GenerateConfig& cfg, GenerateCertificate* cert) {
#ifdef _OPENMP
  std::atomic<int> best(std::numeric_limits<int>::max());
#pragma omp parallel for schedule(dynamic, 16)
  for (int i = 0; i < cfg.attempts; ++i) {
    if (i >= best.load(std::memory_order_relaxed)) continue;
    if (generate_attempt(cfg, i, nullptr)) {
      int cur = best.load();
      while (i < cur && !best.compare_exchange_weak(cur, i)) {
      }
    }
  }
  int found = best.load();
  if (found == std::numeric_limits<int>::max()) throw SearchExhausted(cfg.attempts);
  auto l = generate_attempt(cfg, found, cert);
  return *l;  // deterministic: same attempt re-run serially
#else
  return generate_serial(cfg, cert);
#endif
}

}  // namespace octaflex
