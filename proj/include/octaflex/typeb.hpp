#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "octaflex/metric_complex.hpp"

// The B-polynomial, the rational parametrization of the Type-B variety, and
// the randomized generator searching the 6-parameter space on B_eps = 0.

namespace octaflex {

struct SignTriple {
  int e1 = 1, e2 = 1, e3 = 1;
};

inline const std::array<SignTriple, 4>& sign_triples() {
  static const std::array<SignTriple, 4> k = {{{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}}};
  return k;
}

struct TypeBParams {
  double a, b, c, h, s, r;
};

// The 8-term degree-5 expression; b_poly_scale is max |term|, the natural
// residual scale for "B = 0".
double b_poly(const TypeBParams& t, SignTriple eps);
double b_poly_scale(const TypeBParams& t);

struct DerivedEdges {
  double d, q, f, g, p, e;
};

// Which zero-sum system the derived edges solve. PaperCase is the printed
// one (s-q-a+d = 0, b-p-r+e = 0, c-f-h+g = 0); PositiveCase flips the sign
// of p and e, solving (s-q-a+d = 0, b+p-r-e = 0, c-f-h+g = 0) instead —
// PaperCase forces p < 0 or e < 0 whenever the other ten edges are positive,
// so generation uses PositiveCase. Product identities hold for both.
enum class ZeroSumVariant { PaperCase, PositiveCase };

struct ZeroDenominator : std::runtime_error {
  explicit ZeroDenominator(const char* which)
      : std::runtime_error(std::string("ZeroDenominator(") + which + ")") {}
};

DerivedEdges parametrize(const TypeBParams& t, ZeroSumVariant variant = ZeroSumVariant::PaperCase);

// Maps (params, derived) onto the 12 edge labels and validates.
ValidationResult assemble(const TypeBParams& t, const DerivedEdges& d);

// All real roots of B as a polynomial (degree <= 3) in one of a,b,c,h,s,r
// (free_index in that order), polished to |B| < 1e-12 * scale.
struct NoRealRoot : std::runtime_error {
  NoRealRoot() : std::runtime_error("NoRealRoot") {}
};
std::vector<double> solve_b_root(TypeBParams base, int free_index, SignTriple eps);

struct GenerateConfig {
  std::uint64_t seed = 1;
  int attempts = 200000;
  double range_lo = 0.5, range_hi = 2.0;  // log-uniform sampling range
  SignTriple eps{1, 1, 1};
  int free_var = 5;  // index of r
  double tol = 1e-9;
};

struct GenerateCertificate {
  int attempt = -1;
  TypeBParams params{};
  DerivedEdges derived{};
  std::array<double, 4> b_values{};
  double b_scale = 0;
  std::array<double, 3> zero_sum_res{};
  std::array<double, 4> product_res{};
};

struct SearchExhausted : std::runtime_error {
  explicit SearchExhausted(int attempts)
      : std::runtime_error("SearchExhausted(" + std::to_string(attempts) + ")") {}
};

// Deterministic per seed: every attempt is pure given its index, and the
// result is the lowest successful attempt index. generate() runs attempts in
// parallel when built with OpenMP; generate_serial is the reference loop.
EdgeLengths generate(const GenerateConfig& cfg, GenerateCertificate* cert = nullptr);
EdgeLengths generate_serial(const GenerateConfig& cfg, GenerateCertificate* cert = nullptr);

// One attempt of the search pipeline; exposed for the benchmark and tests.
std::optional<EdgeLengths> generate_attempt(const GenerateConfig& cfg, int attempt,
                                            GenerateCertificate* cert = nullptr);

}  // namespace octaflex
