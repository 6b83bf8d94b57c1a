#include "octaflex/metric_complex.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace octaflex {

double EdgeLengths::max_edge() const {
  auto v = as_array();
  return *std::max_element(v.begin(), v.end());
}

namespace {

double by_name(const EdgeLengths& l, const char* n) {
  switch (n[0]) {
    case 'p': return l.p;
    case 'q': return l.q;
    case 'r': return l.r;
    case 's': return l.s;
    case 'a': return l.a;
    case 'b': return l.b;
    case 'd': return l.d;
    case 'e': return l.e;
    case 'c': return l.c;
    case 'f': return l.f;
    case 'h': return l.h;
    default: return l.g;
  }
}

}  // namespace

std::array<double, 3> Face::lengths(const EdgeLengths& l) const {
  return {by_name(l, u), by_name(l, v), by_name(l, w)};
}

const std::array<Face, 8>& faces() {
  static const std::array<Face, 8> kFaces = {{
      {"p", "c", "q"},  // v1 v2 v3
      {"q", "f", "r"},  // v1 v3 v4
      {"r", "h", "s"},  // v1 v4 v5
      {"s", "g", "p"},  // v1 v5 v2
      {"b", "c", "a"},  // v6 v2 v3
      {"a", "f", "e"},  // v6 v3 v4
      {"e", "h", "d"},  // v6 v4 v5
      {"d", "g", "b"},  // v6 v5 v2
  }};
  return kFaces;
}

ValidationResult validate(const EdgeLengths& raw, double slack_floor) {
  ValidationResult res;
  static const char* kNames[12] = {"p", "q", "r", "s", "a", "b",
                                   "d", "e", "c", "f", "h", "g"};
  auto vals = raw.as_array();
  for (int i = 0; i < 12; ++i) {
    if (!(vals[i] > 0.0) || !std::isfinite(vals[i])) {
      res.violations.push_back({std::string("NonPositiveEdge(") + kNames[i] + ")"});
    }
  }
  if (!res.violations.empty()) return res;

  for (const Face& face : faces()) {
    auto [u, v, w] = face.lengths(raw);
    double slack = std::min({u + v - w, v + w - u, w + u - v});
    if (slack <= slack_floor) {
      std::ostringstream os;
      os << "TriangleViolation(" << face.u << face.v << face.w << ", slack=" << slack << ")";
      res.violations.push_back({os.str()});
    }
  }
  if (res.violations.empty()) res.value = raw;
  return res;
}

double QuadAngle::max_sq() const {
  double m = 0;
  for (double t : lateral) m = std::max(m, t * t);
  for (double t : base) m = std::max(m, t * t);
  return m;
}

QuadAngle quad_angle(const EdgeLengths& l, Vertex apex) {
  // Lateral order follows the equator cycle; the first and third equator
  // vertices carry diag_first.
  switch (apex) {
    case Vertex::V1:  // cycle v2 v3 v4 v5
      return {apex, {l.p, l.q, l.r, l.s}, {l.c, l.f, l.h, l.g}, Diagonal::X, Diagonal::Y};
    case Vertex::V6:
      return {apex, {l.b, l.a, l.e, l.d}, {l.c, l.f, l.h, l.g}, Diagonal::X, Diagonal::Y};
    case Vertex::V3:  // cycle v2 v1 v4 v6
      return {apex, {l.c, l.q, l.f, l.a}, {l.p, l.r, l.e, l.b}, Diagonal::X, Diagonal::Z};
    case Vertex::V5:
      return {apex, {l.g, l.s, l.h, l.d}, {l.p, l.r, l.e, l.b}, Diagonal::X, Diagonal::Z};
    case Vertex::V2:  // cycle v5 v1 v3 v6
      return {apex, {l.g, l.p, l.c, l.b}, {l.s, l.q, l.a, l.d}, Diagonal::Y, Diagonal::Z};
    default:  // V4
      return {apex, {l.h, l.r, l.f, l.e}, {l.s, l.q, l.a, l.d}, Diagonal::Y, Diagonal::Z};
  }
}

std::array<Equator, 3> equators(const EdgeLengths& l) {
  return {{
      {{l.c, l.f, l.h, l.g}, {"c", "f", "h", "g"}, Diagonal::X, Diagonal::Y,
       {Vertex::V1, Vertex::V6}},
      {{l.b, l.p, l.r, l.e}, {"b", "p", "r", "e"}, Diagonal::X, Diagonal::Z,
       {Vertex::V3, Vertex::V5}},
      {{l.s, l.q, l.a, l.d}, {"s", "q", "a", "d"}, Diagonal::Y, Diagonal::Z,
       {Vertex::V2, Vertex::V4}},
  }};
}

}  // namespace octaflex
