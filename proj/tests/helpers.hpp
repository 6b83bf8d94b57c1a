#pragma once

#include <cmath>
#include <optional>
#include <random>

#include "octaflex/metric_complex.hpp"

// Shared samplers for tests: random valid quad angles and metrics, plus
// instances constructed to satisfy the factorization conditions.

namespace octaflex::testing {

inline bool angle_faces_ok(const QuadAngle& K) {
  for (int i = 0; i < 4; ++i) {
    double u = K.lateral[i], v = K.lateral[(i + 1) % 4], w = K.base[i];
    if (!(u > 0 && v > 0 && w > 0)) return false;
    if (u + v - w < 1e-9 || v + w - u < 1e-9 || w + u - v < 1e-9) return false;
  }
  return true;
}

inline double uni(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline QuadAngle random_angle(std::mt19937_64& rng) {
  for (;;) {
    QuadAngle K;
    K.apex = Vertex::V1;
    K.diag_first = Diagonal::X;
    K.diag_second = Diagonal::Y;
    for (int i = 0; i < 4; ++i) {
      K.lateral[i] = uni(rng, 0.5, 2.0);
      K.base[i] = uni(rng, 0.5, 2.0);
    }
    if (angle_faces_ok(K)) return K;
  }
}

// (3.6): c^2 = q^2 + p^2 + sgn (q/s)(g^2 - p^2 - s^2), f^2 likewise
inline QuadAngle make_iix(std::mt19937_64& rng, int sgn) {
  for (;;) {
    double p = uni(rng, 0.8, 1.5), q = uni(rng, 0.8, 1.5), r = uni(rng, 0.8, 1.5),
           s = uni(rng, 0.8, 1.5), g = uni(rng, 0.8, 1.5), h = uni(rng, 0.8, 1.5);
    double c2 = q * q + p * p + sgn * (q / s) * (g * g - p * p - s * s);
    double f2 = q * q + r * r + sgn * (q / s) * (h * h - r * r - s * s);
    if (!(c2 > 0 && f2 > 0)) continue;
    QuadAngle K{Vertex::V1, {p, q, r, s}, {std::sqrt(c2), std::sqrt(f2), h, g},
                Diagonal::X, Diagonal::Y};
    if (angle_faces_ok(K)) return K;
  }
}

// (3.8): f^2 = r^2 + q^2 + sgn (r/p)(c^2 - q^2 - p^2), h^2 likewise
inline QuadAngle make_iiy(std::mt19937_64& rng, int sgn) {
  for (;;) {
    double p = uni(rng, 0.8, 1.5), q = uni(rng, 0.8, 1.5), r = uni(rng, 0.8, 1.5),
           s = uni(rng, 0.8, 1.5), c = uni(rng, 0.8, 1.5), g = uni(rng, 0.8, 1.5);
    double f2 = r * r + q * q + sgn * (r / p) * (c * c - q * q - p * p);
    double h2 = r * r + s * s + sgn * (r / p) * (g * g - p * p - s * s);
    if (!(f2 > 0 && h2 > 0)) continue;
    QuadAngle K{Vertex::V1, {p, q, r, s}, {c, std::sqrt(f2), std::sqrt(h2), g},
                Diagonal::X, Diagonal::Y};
    if (angle_faces_ok(K)) return K;
  }
}

// (3.10): c^2 = q^2 + p^2 + sgn (pq/sr)(h^2 - r^2 - s^2), f^2 likewise
inline QuadAngle make_iii(std::mt19937_64& rng, int sgn) {
  for (;;) {
    double p = uni(rng, 0.8, 1.5), q = uni(rng, 0.8, 1.5), r = uni(rng, 0.8, 1.5),
           s = uni(rng, 0.8, 1.5), g = uni(rng, 0.8, 1.5), h = uni(rng, 0.8, 1.5);
    double c2 = q * q + p * p + sgn * (p * q / (s * r)) * (h * h - r * r - s * s);
    double f2 = q * q + r * r + sgn * (q * r / (p * s)) * (g * g - p * p - s * s);
    if (!(c2 > 0 && f2 > 0)) continue;
    QuadAngle K{Vertex::V1, {p, q, r, s}, {std::sqrt(c2), std::sqrt(f2), h, g},
                Diagonal::X, Diagonal::Y};
    if (angle_faces_ok(K)) return K;
  }
}

inline std::optional<EdgeLengths> random_metric_once(std::mt19937_64& rng) {
  EdgeLengths l{uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4),
                uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4),
                uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4), uni(rng, 0.7, 1.4)};
  auto vr = validate(l);
  if (!vr.ok()) return std::nullopt;
  return *vr.value;
}

inline EdgeLengths random_metric(std::mt19937_64& rng) {
  for (;;)
    if (auto l = random_metric_once(rng)) return *l;
}

// a realizable metric: edge lengths read off six points in space (apexes kept
// clear of the equator plane, equator kept convex-ish so faces are honest)
inline EdgeLengths realizable_metric(std::mt19937_64& rng) {
  for (;;) {
    auto jig = [&](double base) { return base + uni(rng, -0.25, 0.25); };
    double pts[6][3] = {
        {jig(0), jig(0), jig(1.2)},   // v1
        {jig(1), jig(0), jig(0)},     // v2
        {jig(0), jig(1), jig(0)},     // v3
        {jig(-1), jig(0), jig(0)},    // v4
        {jig(0), jig(-1), jig(0)},    // v5
        {jig(0), jig(0), jig(-1.2)},  // v6
    };
    auto d = [&](int i, int j) {
      double dx = pts[i][0] - pts[j][0], dy = pts[i][1] - pts[j][1], dz = pts[i][2] - pts[j][2];
      return std::sqrt(dx * dx + dy * dy + dz * dz);
    };
    EdgeLengths l{d(0, 1), d(0, 2), d(0, 3), d(0, 4), d(5, 2), d(5, 1),
                  d(5, 4), d(5, 3), d(1, 2), d(2, 3), d(3, 4), d(4, 1)};
    auto vr = validate(l);
    if (vr.ok()) return *vr.value;
  }
}

inline const EdgeLengths& typea_instance() {
  static const EdgeLengths l{2, 2, 2, 2, 2, 2, 2, 2, 3, 2, 3, 2};
  return l;
}

inline const EdgeLengths& all_ones() {
  static const EdgeLengths l{1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1};
  return l;
}

}  // namespace octaflex::testing
