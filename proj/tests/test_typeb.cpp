#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "octaflex/classifier.hpp"
#include "octaflex/typeb.hpp"

using namespace octaflex;
using namespace octaflex::testing;

namespace {

TypeBParams random_params(std::mt19937_64& rng) {
  return {uni(rng, 0.5, 2), uni(rng, 0.5, 2), uni(rng, 0.5, 2),
          uni(rng, 0.5, 2), uni(rng, 0.5, 2), uni(rng, 0.5, 2)};
}

double rel(double u, double v) {
  return std::abs(u - v) / std::max({std::abs(u), std::abs(v), 1e-300});
}

}  // namespace

TEST_CASE("b_poly vanishes at the fully symmetric point") {
  for (auto eps : sign_triples()) CHECK(b_poly({1, 1, 1, 1, 1, 1}, eps) == 0.0);
}

TEST_CASE("b_poly oracle value") {
  // term-by-term hand evaluation of the printed 8-term expression
  CHECK(b_poly({2, 3, 1, 2, 1, 1}, {1, 1, 1}) == doctest::Approx(-8.0).epsilon(1e-14));
}

TEST_CASE("b_poly is homogeneous of degree 5") {
  std::mt19937_64 rng(31);
  for (int it = 0; it < 50; ++it) {
    TypeBParams t = random_params(rng);
    double base = b_poly(t, {1, -1, -1});
    double k = 1.7;
    TypeBParams s{k * t.a, k * t.b, k * t.c, k * t.h, k * t.s, k * t.r};
    CHECK(b_poly(s, {1, -1, -1}) ==
          doctest::Approx(std::pow(k, 5) * base).epsilon(1e-12));
  }
}

TEST_CASE("parametrize: worked example") {
  auto d = parametrize({2, 3, 1, 2, 1, 1});
  CHECK(d.d == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(d.q == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(d.f == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(d.g == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(d.p == doctest::Approx(-2.0 / 3).epsilon(1e-14));
  CHECK(d.e == doctest::Approx(-8.0 / 3).epsilon(1e-14));
  // zero sums and two of the product identities
  CHECK(std::abs(1 - d.q - 2 + d.d) < 1e-14);            // s - q - a + d
  CHECK(std::abs(3 - d.p - 1 + d.e) < 1e-14);            // b - p - r + e
  CHECK(std::abs(1 - d.f - 2 + d.g) < 1e-14);            // c - f - h + g
  CHECK(d.q * d.g * d.e == doctest::Approx(-1.6));       // qge = pfd
  CHECK(d.p * d.f * d.d == doctest::Approx(-1.6));
  CHECK(2 * 2 * d.p == doctest::Approx(-8.0 / 3));       // ahp = ces
  CHECK(1 * d.e * 1 == doctest::Approx(-8.0 / 3));
}

TEST_CASE("parametrize: a = s degenerates") {
  auto d = parametrize({1.3, 0.9, 1.1, 0.8, 1.3, 1.2});
  CHECK(std::abs(d.d) < 1e-15);
  CHECK(std::abs(d.q) < 1e-15);
}

TEST_CASE("zero-sum identities hold for every parameter tuple") {
  std::mt19937_64 rng(32);
  for (int it = 0; it < 100; ++it) {
    TypeBParams t = random_params(rng);
    double scale = t.a + t.b + t.c + t.h + t.s + t.r;
    auto d = parametrize(t);
    CHECK(std::abs(t.s - d.q - t.a + d.d) < 1e-12 * scale);
    CHECK(std::abs(t.b - d.p - t.r + d.e) < 1e-12 * scale);
    CHECK(std::abs(t.c - d.f - t.h + d.g) < 1e-12 * scale);
    auto dp = parametrize(t, ZeroSumVariant::PositiveCase);
    CHECK(std::abs(t.s - dp.q - t.a + dp.d) < 1e-12 * scale);
    CHECK(std::abs(t.b + dp.p - t.r - dp.e) < 1e-12 * scale);
    CHECK(std::abs(t.c - dp.f - t.h + dp.g) < 1e-12 * scale);
  }
}

TEST_CASE("product identities and the fourth-from-three implication") {
  std::mt19937_64 rng(33);
  for (auto variant : {ZeroSumVariant::PaperCase, ZeroSumVariant::PositiveCase}) {
    for (int it = 0; it < 100; ++it) {
      TypeBParams t = random_params(rng);
      auto d = parametrize(t, variant);
      double q = d.q, g = d.g, e = d.e, p = d.p, f = d.f, dd = d.d;
      double a = t.a, b = t.b, c = t.c, h = t.h, s = t.s, r = t.r;
      CHECK(rel(q * g * e, p * f * dd) < 1e-10);
      CHECK(rel(b * h * q, c * dd * r) < 1e-10);
      CHECK(rel(r * g * a, s * f * b) < 1e-10);
      CHECK(rel(a * h * p, c * e * s) < 1e-10);  // the implied fourth
    }
  }
}

TEST_CASE("solve_b_root finds the symmetric root") {
  auto roots = solve_b_root({1, 1, 1, 1, 1, -1}, 5, {1, 1, 1});
  bool found = false;
  for (double r : roots) found = found || std::abs(r - 1.0) < 1e-9;
  CHECK(found);
}

TEST_CASE("solve_b_root reproduces sign changes of a dense sampling") {
  std::mt19937_64 rng(34);
  for (int it = 0; it < 20; ++it) {
    TypeBParams t = random_params(rng);
    std::vector<double> roots;
    try {
      roots = solve_b_root(t, 5, {1, 1, 1});
    } catch (const NoRealRoot&) {
      roots = {};
    }
    // bracketing oracle over (0, 6]
    auto at = [&](double r) {
      TypeBParams u = t;
      u.r = r;
      return b_poly(u, {1, 1, 1});
    };
    int changes = 0;
    double prev = at(1e-3);
    for (int k = 1; k <= 600; ++k) {
      double cur = at(k * 0.01);
      if (prev * cur < 0) {
        changes++;
        // a returned root must lie in this bracket
        bool hit = false;
        for (double r : roots) hit = hit || (r > (k - 1) * 0.01 && r < k * 0.01 + 1e-9);
        CHECK(hit);
      }
      prev = cur;
    }
    CHECK(static_cast<int>(roots.size()) >= changes);
  }
}

TEST_CASE("solve_b_root polishes to the pinned residual") {
  std::mt19937_64 rng(35);
  for (int it = 0; it < 20; ++it) {
    TypeBParams t = random_params(rng);
    try {
      for (double r : solve_b_root(t, 5, {1, 1, 1})) {
        TypeBParams u = t;
        u.r = r;
        CHECK(std::abs(b_poly(u, {1, 1, 1})) < 1e-12 * b_poly_scale(u));
      }
    } catch (const NoRealRoot&) {
    }
  }
}

TEST_CASE("generate: fixed seed gives a reproducible valid Type-B metric") {
  GenerateConfig cfg;
  cfg.seed = 1;
  GenerateCertificate cert;
  EdgeLengths l = generate(cfg, &cert);
  CHECK(validate(l).ok());

  OctType ot = octahedron_type(l);
  CHECK(ot.verdict == Verdict::TypeB);
  for (int k = 0; k < 3; ++k) {
    CHECK(ot.equators[k].cls.consistent);
    CHECK(ot.equators[k].cls.first.tag == ClassTag::III);
    CHECK(cert.zero_sum_res[k] < 1e-12);
  }
  double min_b = std::abs(cert.b_values[0]);
  for (double b : cert.b_values) min_b = std::min(min_b, std::abs(b));
  CHECK(min_b < 1e-9 * cert.b_scale);
  for (double r : cert.product_res) CHECK(r < 1e-9);

  // parallel kernel and serial reference agree bit-for-bit
  GenerateCertificate cert2;
  EdgeLengths l2 = generate_serial(cfg, &cert2);
  CHECK(l.as_array() == l2.as_array());
  CHECK(cert.attempt == cert2.attempt);

  // and a second parallel run is identical
  GenerateCertificate cert3;
  EdgeLengths l3 = generate(cfg, &cert3);
  CHECK(l.as_array() == l3.as_array());
}

TEST_CASE("generate: different seeds explore different instances") {
  GenerateConfig a, b;
  a.seed = 2;
  b.seed = 3;
  EdgeLengths la = generate(a), lb = generate(b);
  CHECK(la.as_array() != lb.as_array());
}

TEST_CASE("search exhaustion reported") {
  GenerateConfig cfg;
  cfg.attempts = 0;
  CHECK_THROWS_AS(generate_serial(cfg), SearchExhausted);
}
