#include "octaflex/cayley_menger.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace octaflex {

double BivariateQuad::eval(double u, double w) const {
  double pu[3] = {1.0, u, u * u};
  double pw[3] = {1.0, w, w * w};
  double acc = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) acc += co[i][j] * pu[i] * pw[j];
  return acc;
}

double BivariateQuad::norm() const {
  double m = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m = std::max(m, std::abs(co[i][j]));
  return m;
}

void BivariateQuad::second_var_quadratic(double u, double& A, double& B, double& C) const {
  double pu[3] = {1.0, u, u * u};
  A = B = C = 0;
  for (int i = 0; i < 3; ++i) {
    A += co[i][2] * pu[i];
    B += co[i][1] * pu[i];
    C += co[i][0] * pu[i];
  }
}

void BivariateQuad::first_var_quadratic(double w, double& A, double& B, double& C) const {
  transpose().second_var_quadratic(w, A, B, C);
}

BivariateQuad BivariateQuad::transpose() const {
  BivariateQuad t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.co[i][j] = co[j][i];
  return t;
}

double cm_det(const std::array<std::array<double, 5>, 5>& D) {
  double m[6][6];
  m[0][0] = 0;
  for (int i = 0; i < 5; ++i) {
    m[0][i + 1] = 1;
    m[i + 1][0] = 1;
    for (int j = 0; j < 5; ++j) m[i + 1][j + 1] = D[i][j];
  }
  // LU with partial pivoting
  double det = 1.0;
  for (int k = 0; k < 6; ++k) {
    int piv = k;
    for (int i = k + 1; i < 6; ++i)
      if (std::abs(m[i][k]) > std::abs(m[piv][k])) piv = i;
    if (piv != k) {
      std::swap(m[piv], m[k]);
      det = -det;
    }
    if (m[k][k] == 0.0) return 0.0;
    det *= m[k][k];
    for (int i = k + 1; i < 6; ++i) {
      double fac = m[i][k] / m[k][k];
      for (int j = k; j < 6; ++j) m[i][j] -= fac * m[k][j];
    }
  }
  return det;
}

namespace {

// Coefficients of the quadratic through (t[k], v[k]).
void quad_through(const double t[3], const double v[3], double out[3]) {
  // Lagrange, expanded
  double a2 = 0, a1 = 0, a0 = 0;
  for (int k = 0; k < 3; ++k) {
    double t1 = t[(k + 1) % 3], t2 = t[(k + 2) % 3];
    double den = (t[k] - t1) * (t[k] - t2);
    double w = v[k] / den;
    a2 += w;
    a1 -= w * (t1 + t2);
    a0 += w * t1 * t2;
  }
  out[0] = a0;
  out[1] = a1;
  out[2] = a2;
}

double neg_cm_at(const QuadAngle& K, double dx, double dy) {
  std::array<std::array<double, 5>, 5> D{};
  // points: 0 = apex, 1..4 = equator cycle
  for (int i = 0; i < 4; ++i) {
    D[0][i + 1] = D[i + 1][0] = K.lateral[i] * K.lateral[i];
  }
  for (int i = 0; i < 4; ++i) {
    int j = 1 + i, k = 1 + (i + 1) % 4;
    D[j][k] = D[k][j] = K.base[i] * K.base[i];
  }
  D[1][3] = D[3][1] = dx;  // first diagonal slot
  D[2][4] = D[4][2] = dy;  // second
  return -cm_det(D);
}

}  // namespace

BivariateQuad q_poly(const QuadAngle& K) {
  double scale = K.max_sq();
  double nodes[3] = {1.0 * scale, 2.0 * scale, 3.0 * scale};
  // interpolate in the first variable at each second-variable node, then
  // interpolate the resulting coefficients in the second variable
  double stage[3][3];  // stage[i][j] = coeff of u^i at node w_j
  for (int j = 0; j < 3; ++j) {
    double vals[3];
    for (int i = 0; i < 3; ++i) vals[i] = neg_cm_at(K, nodes[i], nodes[j]);
    double cf[3];
    quad_through(nodes, vals, cf);
    for (int i = 0; i < 3; ++i) stage[i][j] = cf[i];
  }
  BivariateQuad Q;
  for (int i = 0; i < 3; ++i) {
    double cf[3];
    quad_through(nodes, stage[i], cf);
    for (int j = 0; j < 3; ++j) Q.co[i][j] = cf[j];
  }
  double lead = Q.co[2][2];
  if (!(std::abs(lead) > 0)) throw std::runtime_error("InterpolationIllConditioned");
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) Q.co[i][j] /= lead;
  return Q;
}

double heron_area(double u, double v, double w) {
  double u2 = u * u, v2 = v * v, w2 = w * w;
  double s16 = 2 * u2 * v2 + 2 * v2 * w2 + 2 * w2 * u2 - u2 * u2 - v2 * v2 - w2 * w2;
  if (!(s16 > 0)) throw std::invalid_argument("DegenerateTriangle");
  return 0.25 * std::sqrt(s16);
}

DiscriminantFactors discriminant_factors(const QuadAngle& K) {
  // In K1's labels: laterals p,q,r,s; bases c,f,h,g.
  double p = K.lateral[0], q = K.lateral[1], r = K.lateral[2], s = K.lateral[3];
  double c = K.base[0], f = K.base[1], h = K.base[2], g = K.base[3];
  double p2 = p * p, q2 = q * q, r2 = r * r, s2 = s * s;
  double c2 = c * c, f2 = f * f, h2 = h * h, g2 = g * g;

  DiscriminantFactors out;
  out.P1.c2 = s2;
  out.P1.c1 = -g2 * r2 + s2 * s2 - s2 * h2 - p2 * s2 + p2 * r2 - p2 * h2 + g2 * h2 -
              g2 * s2 - s2 * r2;
  out.P1.c0 = p2 * p2 * h2 - p2 * h2 * g2 + r2 * h2 * s2 - p2 * h2 * s2 + r2 * r2 * g2 -
              p2 * r2 * h2 + p2 * g2 * s2 + p2 * h2 * h2 - p2 * g2 * r2 + r2 * g2 * g2 -
              r2 * g2 * h2 - r2 * g2 * s2;

  out.P2.c2 = q2;
  out.P2.c1 = -r2 * q2 - q2 * f2 - r2 * c2 - p2 * f2 + c2 * f2 + q2 * q2 - c2 * q2 -
              q2 * p2 + p2 * r2;
  out.P2.c0 = r2 * r2 * c2 - r2 * c2 * p2 - f2 * r2 * c2 - p2 * f2 * c2 - p2 * f2 * r2 -
              c2 * q2 * r2 - p2 * f2 * q2 + r2 * c2 * c2 + q2 * f2 * r2 + p2 * p2 * f2 +
              p2 * f2 * f2 + q2 * c2 * p2;
  return out;
}

bool FactorConditions::any() const {
  return iix[0] || iix[1] || iiy[0] || iiy[1] || iii[0] || iii[1];
}

FactorConditions factor_conditions(const QuadAngle& K, double tol) {
  double p = K.lateral[0], q = K.lateral[1], r = K.lateral[2], s = K.lateral[3];
  double c = K.base[0], f = K.base[1], h = K.base[2], g = K.base[3];
  double p2 = p * p, q2 = q * q, r2 = r * r, s2 = s * s;
  double c2 = c * c, f2 = f * f, h2 = h * h, g2 = g * g;
  double scale = K.max_sq();

  FactorConditions out;
  for (int k = 0; k < 2; ++k) {
    double sgn = k == 0 ? 1.0 : -1.0;
    double rc = c2 - q2 - p2 - sgn * (q / s) * (g2 - p2 - s2);
    double rf = f2 - q2 - r2 - sgn * (q / s) * (h2 - r2 - s2);
    out.iix_res[k] = std::max(std::abs(rc), std::abs(rf)) / scale;
    out.iix[k] = out.iix_res[k] < tol;

    rc = f2 - r2 - q2 - sgn * (r / p) * (c2 - q2 - p2);
    rf = h2 - r2 - s2 - sgn * (r / p) * (g2 - p2 - s2);
    out.iiy_res[k] = std::max(std::abs(rc), std::abs(rf)) / scale;
    out.iiy[k] = out.iiy_res[k] < tol;

    rc = c2 - q2 - p2 - sgn * (p * q / (s * r)) * (h2 - r2 - s2);
    rf = f2 - q2 - r2 - sgn * (q * r / (p * s)) * (g2 - p2 - s2);
    out.iii_res[k] = std::max(std::abs(rc), std::abs(rf)) / scale;
    out.iii[k] = out.iii_res[k] < tol;
  }
  return out;
}

namespace {

double grid_residual(const BivariateQuad& Q, const std::vector<BivariateQuad>& factors,
                     double scale) {
  double qn = 0, worst = 0;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      double u = i * scale, w = j * scale;
      qn = std::max(qn, std::abs(Q.eval(u, w)));
    }
  if (qn == 0) qn = 1;
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j) {
      double u = i * scale, w = j * scale;
      double prod = 1;
      for (const auto& F : factors) prod *= F.eval(u, w);
      worst = std::max(worst, std::abs(prod - Q.eval(u, w)) / qn);
    }
  return worst;
}

}  // namespace

FactorizationResult factorize(const QuadAngle& K, double tol) {
  FactorizationResult res;
  FactorConditions cond = factor_conditions(K, tol);
  BivariateQuad Q = q_poly(K);
  double L1 = K.lateral[0], L2 = K.lateral[1], L3 = K.lateral[2], L4 = K.lateral[3];
  double scale = K.max_sq();

  int fired = (cond.iix[0] || cond.iix[1]) + (cond.iiy[0] || cond.iiy[1]) +
              (cond.iii[0] || cond.iii[1]);
  // (3.6) together with (3.8) implies (3.10); any other coexistence of
  // inconsistent sign choices is reported.
  if ((cond.iix[0] && cond.iix[1]) || (cond.iiy[0] && cond.iiy[1]) ||
      (cond.iii[0] && cond.iii[1])) {
    res.ambiguous = true;
    res.note = "AmbiguousSplit: both signs of a condition family hold";
  }

  bool as_iii = cond.iii[0] || cond.iii[1] ||
                ((cond.iix[0] || cond.iix[1]) && (cond.iiy[0] || cond.iiy[1]));
  if (as_iii) {
    res.kind = FactorKind::SplitIII;
    int k = cond.iii_res[0] <= cond.iii_res[1] ? 0 : 1;
    res.sign = k == 0 ? 1 : -1;
    double sgn = res.sign;
    // [uw - (L4 + sgn L2)^2 u - (L1+L3)^2 w + d1][uw - (L4 - sgn L2)^2 u - (L1-L3)^2 w + d2]
    double b1 = -(L4 + sgn * L2) * (L4 + sgn * L2), g1 = -(L1 + L3) * (L1 + L3);
    double b2 = -(L4 - sgn * L2) * (L4 - sgn * L2), g2 = -(L1 - L3) * (L1 - L3);
    // coefficient matching at degree one: b1 d2 + b2 d1 = Q_u, g1 d2 + g2 d1 = Q_w
    double det = b2 * g1 - b1 * g2;
    double d1 = 0, d2 = 0;
    if (std::abs(det) > 1e-14 * scale * scale * scale * scale) {
      d1 = (Q.co[1][0] * g1 - Q.co[0][1] * b1) / det;
      d2 = (b2 * Q.co[0][1] - g2 * Q.co[1][0]) / det;
    }
    BivariateQuad F1, F2;
    F1.co[1][1] = 1;
    F1.co[1][0] = b1;
    F1.co[0][1] = g1;
    F1.co[0][0] = d1;
    F2.co[1][1] = 1;
    F2.co[1][0] = b2;
    F2.co[0][1] = g2;
    F2.co[0][0] = d2;
    res.factors = {F1, F2};
    res.residual = grid_residual(Q, res.factors, scale);
    return res;
  }

  if (cond.iix[0] || cond.iix[1]) {
    res.kind = FactorKind::SplitIIx;
    int k = cond.iix_res[0] <= cond.iix_res[1] ? 0 : 1;
    res.sign = k == 0 ? 1 : -1;
    // linear factor w - (L2 -+ L4)^2: '+' condition pairs with (L2 - L4)^2
    double w0 = (L2 - res.sign * L4) * (L2 - res.sign * L4);
    BivariateQuad lin, cub;
    lin.co[0][1] = 1;
    lin.co[0][0] = -w0;
    // divide Q (quadratic in w) by (w - w0): quotient A(u) w + B(u) + w0 A(u)
    for (int i = 0; i < 3; ++i) {
      cub.co[i][1] = Q.co[i][2];
      cub.co[i][0] = Q.co[i][1] + w0 * Q.co[i][2];
    }
    res.factors = {cub, lin};
    res.residual = grid_residual(Q, res.factors, scale);
    return res;
  }

  if (cond.iiy[0] || cond.iiy[1]) {
    res.kind = FactorKind::SplitIIy;
    int k = cond.iiy_res[0] <= cond.iiy_res[1] ? 0 : 1;
    res.sign = k == 0 ? 1 : -1;
    double u0 = (L1 - res.sign * L3) * (L1 - res.sign * L3);
    BivariateQuad lin, cub;
    lin.co[1][0] = 1;
    lin.co[0][0] = -u0;
    for (int j = 0; j < 3; ++j) {
      cub.co[1][j] = Q.co[2][j];
      cub.co[0][j] = Q.co[1][j] + u0 * Q.co[2][j];
    }
    res.factors = {cub, lin};
    res.residual = grid_residual(Q, res.factors, scale);
    return res;
  }

  (void)fired;
  res.kind = FactorKind::Irreducible;
  return res;
}

}  // namespace octaflex
