#include "octaflex/classifier.hpp"

#include <algorithm>
#include <cmath>

#include "octaflex/cayley_menger.hpp"
#include "octaflex/typeb.hpp"

namespace octaflex {

std::array<double, 4> apex_cosines(const QuadAngle& K) {
  std::array<double, 4> c;
  for (int k = 0; k < 4; ++k) {
    double u = K.lateral[k], v = K.lateral[(k + 1) % 4], b = K.base[k];
    c[k] = (u * u + v * v - b * b) / (2.0 * u * v);
  }
  return c;
}

AngleClass angle_class(const QuadAngle& K, double tol) {
  auto c = apex_cosines(K);
  auto eq = [&](double u, double v) { return std::abs(u - v) < tol; };
  auto compl_eq = [&](double u, double v) { return std::abs(u + v) < tol; };

  if (eq(c[0], c[2]) && eq(c[1], c[3])) return {ClassTag::III, +1};
  if (compl_eq(c[0], c[2]) && compl_eq(c[1], c[3])) return {ClassTag::III, -1};
  if (eq(c[0], c[3]) && eq(c[1], c[2]) && !eq(c[0], c[2])) return {ClassTag::IIx, +1};
  if (compl_eq(c[0], c[3]) && compl_eq(c[1], c[2]) && !compl_eq(c[0], c[2]))
    return {ClassTag::IIx, -1};
  if (eq(c[0], c[1]) && eq(c[2], c[3]) && !eq(c[0], c[2])) return {ClassTag::IIy, +1};
  if (compl_eq(c[0], c[1]) && compl_eq(c[2], c[3]) && !compl_eq(c[0], c[2]))
    return {ClassTag::IIy, -1};
  return {ClassTag::I, 0};
}

namespace {

double rel_diff(double u, double v) {
  double scale = std::max({std::abs(u), std::abs(v), 1e-300});
  return std::abs(u - v) / scale;
}

}  // namespace

Lemma1Residuals lemma1_products(const QuadAngle& K) {
  double p = K.lateral[0], q = K.lateral[1], r = K.lateral[2], s = K.lateral[3];
  double S[4];
  for (int k = 0; k < 4; ++k)
    S[k] = heron_area(K.lateral[k], K.lateral[(k + 1) % 4], K.base[k]);

  Lemma1Residuals out;
  out.iix[0] = rel_diff(p * s * S[0], p * q * S[3]);
  out.iix[1] = rel_diff(r * s * S[1], r * q * S[2]);
  out.iiy[0] = rel_diff(q * r * S[0], p * q * S[1]);
  out.iiy[1] = rel_diff(p * s * S[2], s * r * S[3]);
  out.iii[0] = rel_diff(s * r * S[0], p * q * S[2]);
  out.iii[1] = rel_diff(p * s * S[1], r * q * S[3]);
  return out;
}

SymmetryCheck is_metrically_symmetric(const Equator& E, double tol) {
  double a = E.edges[0], b = E.edges[1], c = E.edges[2], d = E.edges[3];
  double scale = a + b + c + d;
  auto near = [&](double u, double v) { return std::abs(u - v) < tol * scale; };
  if (near(a, c) && near(b, d)) return {true, 0};
  if (near(a, b) && near(c, d)) return {true, 1};
  if (near(a, d) && near(b, c)) return {true, 2};
  return {false, -1};
}

ZeroSumCheck has_zero_sum(const Equator& E, double tol) {
  double a = E.edges[0], b = E.edges[1], c = E.edges[2], d = E.edges[3];
  double scale = a + b + c + d;
  double fac[3] = {a + b - c - d, a - b + c - d, a - b - c + d};
  ZeroSumCheck out;
  double best = std::abs(fac[0]);
  out.factor = 0;
  for (int k = 1; k < 3; ++k)
    if (std::abs(fac[k]) < best) {
      best = std::abs(fac[k]);
      out.factor = k;
    }
  out.residual = best / scale;
  out.zero_sum = out.residual < tol;
  if (!out.zero_sum) out.factor = -1;
  return out;
}

EquatorClassResult equator_class(const EdgeLengths& l, int which, double tol) {
  const Equator& E = equators(l)[which];
  EquatorClassResult out;
  out.first = angle_class(quad_angle(l, E.apexes[0]), tol);
  out.second = angle_class(quad_angle(l, E.apexes[1]), tol);
  out.consistent = out.first.tag == out.second.tag;
  return out;
}

OctType octahedron_type(const EdgeLengths& l, double tol) {
  OctType out;
  auto eqs = equators(l);
  bool all_sym = true, all_zero = true, all_consistent_iii = true;
  for (int k = 0; k < 3; ++k) {
    out.equators[k].symmetry = is_metrically_symmetric(eqs[k], tol);
    out.equators[k].zero_sum = has_zero_sum(eqs[k], tol);
    out.equators[k].cls = equator_class(l, k, tol);
    all_sym = all_sym && out.equators[k].symmetry.symmetric;
    all_zero = all_zero && out.equators[k].zero_sum.zero_sum;
    all_consistent_iii = all_consistent_iii && out.equators[k].cls.consistent &&
                         out.equators[k].cls.first.tag == ClassTag::III;
  }

  out.product_res[0] = rel_diff(l.q * l.g * l.e, l.p * l.f * l.d);
  out.product_res[1] = rel_diff(l.b * l.h * l.q, l.c * l.d * l.r);
  out.product_res[2] = rel_diff(l.r * l.g * l.a, l.s * l.f * l.b);
  out.product_res[3] = rel_diff(l.a * l.h * l.p, l.c * l.e * l.s);

  TypeBParams t{l.a, l.b, l.c, l.h, l.s, l.r};
  out.b_scale = b_poly_scale(t);
  double min_b = std::abs(b_poly(t, sign_triples()[0]));
  for (int k = 0; k < 4; ++k) {
    out.b_values[k] = b_poly(t, sign_triples()[k]);
    min_b = std::min(min_b, std::abs(out.b_values[k]));
  }

  // Definition 2: the first three product identities suffice (the fourth is
  // a consequence); min_b tests the B-product condition.
  out.typea_conditions = all_sym;
  out.typeb_conditions = all_zero && out.product_res[0] < tol && out.product_res[1] < tol &&
                         out.product_res[2] < tol && min_b < tol * out.b_scale;
  (void)all_consistent_iii;

  if (out.typea_conditions)
    out.verdict = Verdict::TypeA;
  else if (out.typeb_conditions)
    out.verdict = Verdict::TypeB;
  else
    out.verdict = Verdict::Generic;
  return out;
}

}  // namespace octaflex
