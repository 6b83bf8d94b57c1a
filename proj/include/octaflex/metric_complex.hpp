#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

// Combinatorial model of the octahedral complex.
//
// Vertices v1..v6, edge labels fixed once and for all:
//   v1 -- v2:p  v3:q  v4:r  v5:s        (top apex)
//   v6 -- v2:b  v3:a  v4:e  v5:d        (bottom apex)
//   equator cycle v2 v3 v4 v5 = c f h g
// Squared diagonals: x = |v2v4|^2, y = |v3v5|^2, z = |v1v6|^2.

namespace octaflex {

enum class Vertex { V1, V2, V3, V4, V5, V6 };
enum class Diagonal { X, Y, Z };

inline const char* diagonal_name(Diagonal d) {
  switch (d) {
    case Diagonal::X: return "x";
    case Diagonal::Y: return "y";
    default: return "z";
  }
}

struct EdgeLengths {
  double p, q, r, s;  // lateral edges at v1
  double a, b, d, e;  // lateral edges at v6 (b a e d toward v2 v3 v4 v5)
  double c, f, h, g;  // equator v2 v3 v4 v5

  std::array<double, 12> as_array() const { return {p, q, r, s, a, b, d, e, c, f, h, g}; }
  double max_edge() const;
};

// Faces of the complex, as named edge triples. Order: the four v1-faces
// followed by the four v6-faces, walking the equator.
struct Face {
  const char* u;
  const char* v;
  const char* w;
  std::array<double, 3> lengths(const EdgeLengths& l) const;
};
const std::array<Face, 8>& faces();

struct ConstraintViolation {
  std::string what;  // "NonPositiveEdge(q)" or "TriangleViolation(pcq, slack=...)"
};

struct ValidationResult {
  std::optional<EdgeLengths> value;
  std::vector<ConstraintViolation> violations;
  bool ok() const { return value.has_value(); }
};

// Strict positivity + strict triangle inequality on each of the 8 faces,
// with an absolute slack floor that rejects numerically degenerate faces.
ValidationResult validate(const EdgeLengths& raw, double slack_floor = 1e-12);

// A 4-edge cycle no two edges of which share a face. Carries two of the
// three squared diagonals.
struct Equator {
  std::array<double, 4> edges;       // cyclic order
  std::array<const char*, 4> names;  // matching labels
  Diagonal diag_first, diag_second;
  std::array<Vertex, 2> apexes;  // the two quad angles spanning it
};

// The star of a vertex: four faces around an apex, bounded by an equator.
// base[i] is opposite the apex angle spanned by lateral[i], lateral[i+1];
// diag_first = |w1 w3|^2, diag_second = |w2 w4|^2 for the equator cycle
// w1..w4 the laterals point to.
struct QuadAngle {
  Vertex apex;
  std::array<double, 4> lateral;
  std::array<double, 4> base;
  Diagonal diag_first, diag_second;

  double max_sq() const;  // largest squared edge, used as tolerance scale
};

QuadAngle quad_angle(const EdgeLengths& l, Vertex apex);

// The three equators: (c,f,h,g) with (x,y); (b,p,r,e) with (x,z);
// (s,q,a,d) with (y,z).
std::array<Equator, 3> equators(const EdgeLengths& l);

}  // namespace octaflex
