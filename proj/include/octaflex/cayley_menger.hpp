#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "octaflex/metric_complex.hpp"

// Cayley-Menger machinery for a 4-gonal angle: the bordered determinant,
// the bivariate polynomial Q in the two squared diagonals, the discriminant
// factors P1, P2, and the factorization branches.

namespace octaflex {

// Polynomial of degree <= 2 in each of two variables; co[i][j] multiplies
// u^i w^j where (u, w) are the angle's diagonal slots.
struct BivariateQuad {
  double co[3][3] = {};

  double eval(double u, double w) const;
  // max |coefficient|, a crude norm for relative residuals
  double norm() const;
  // A(u) w^2 + B(u) w + C(u): quadratic coefficients in the second variable
  void second_var_quadratic(double u, double& A, double& B, double& C) const;
  void first_var_quadratic(double w, double& A, double& B, double& C) const;
  BivariateQuad transpose() const;
};

struct UnivariateQuad {
  double c2 = 0, c1 = 0, c0 = 0;
  double eval(double t) const { return (c2 * t + c1) * t + c0; }
  double disc() const { return c1 * c1 - 4.0 * c2 * c0; }
};

// Bordered 6x6 determinant of the squared-distance matrix of five points.
// D is symmetric with zero diagonal. Vanishes iff the distances are
// realizable by five points in 3-space (necessity direction).
double cm_det(const std::array<std::array<double, 5>, 5>& D);

// -1 times the Cayley-Menger determinant of {apex, equator} as a polynomial
// in the squared diagonals, normalized to leading coefficient 1. Built by
// evaluation on a 3x3 grid and interpolation, never by transcription.
BivariateQuad q_poly(const QuadAngle& K);

// Positive triangle area from 16 S^2 = 2u^2v^2 + 2v^2w^2 + 2w^2u^2 - u^4 - v^4 - w^4.
// Throws std::invalid_argument on a degenerate triangle.
double heron_area(double u, double v, double w);

// Discriminant of Q with respect to the second diagonal factors as
// Delta(t) = 16 P1(t) P2(t). Coefficients are the closed forms, written in
// the angle's own labels (laterals L1..L4 = p,q,r,s; bases B1..B4 = c,f,h,g).
struct DiscriminantFactors {
  UnivariateQuad P1;  // leading coefficient L4^2
  UnivariateQuad P2;  // leading coefficient L2^2
};
DiscriminantFactors discriminant_factors(const QuadAngle& K);

// The three condition families that make Q reducible; sign index 0 = '+'.
struct FactorConditions {
  bool iix[2] = {false, false};   // c^2 = q^2+p^2 +- (q/s)(g^2-p^2-s^2), f^2 likewise
  bool iiy[2] = {false, false};   // f^2 = r^2+q^2 +- (r/p)(c^2-q^2-p^2), h^2 likewise
  bool iii[2] = {false, false};   // c^2 = q^2+p^2 +- (pq/sr)(h^2-r^2-s^2), f^2 likewise
  double iix_res[2] = {0, 0};     // scaled residuals (max of the pair)
  double iiy_res[2] = {0, 0};
  double iii_res[2] = {0, 0};
  bool any() const;
};
FactorConditions factor_conditions(const QuadAngle& K, double tol = 1e-9);

enum class FactorKind { Irreducible, SplitIIx, SplitIIy, SplitIII };

struct FactorizationResult {
  FactorKind kind = FactorKind::Irreducible;
  int sign = 0;  // +1 / -1, the sign choice of the fired condition
  // SplitIIx/IIy: factors[0] cubic, factors[1] linear.
  // SplitIII: two bilinear-quadratic factors.
  std::vector<BivariateQuad> factors;
  double residual = 0.0;  // product-vs-Q mismatch on a 4x4 grid, relative
  bool ambiguous = false;  // conditions fired for inconsistent sign choices
  std::string note;
};

FactorizationResult factorize(const QuadAngle& K, double tol = 1e-9);

}  // namespace octaflex
