#include "octaflex/embed_flex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace octaflex {

Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Vec3 operator*(double t, Vec3 a) { return {t * a.x, t * a.y, t * a.z}; }
double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm2(Vec3 a) { return dot(a, a); }

Vec3 trilaterate(Vec3 p1, Vec3 p2, Vec3 p3, double d1, double d2, double d3, int sign) {
  Vec3 ex = p2 - p1;
  double d = std::sqrt(norm2(ex));
  double scale = std::max({d1, d2, d3, d * d});
  if (d * d < 1e-20 * scale) throw DegenerateBase();
  ex = (1.0 / d) * ex;
  Vec3 r3 = p3 - p1;
  double i = dot(ex, r3);
  Vec3 ey = r3 - i * ex;
  double j = std::sqrt(norm2(ey));
  if (j * j < 1e-20 * scale) throw DegenerateBase();
  ey = (1.0 / j) * ey;
  Vec3 ez = cross(ex, ey);

  double X = (d1 - d2 + d * d) / (2.0 * d);
  double Y = (d1 - d3 + i * i + j * j - 2.0 * i * X) / (2.0 * j);
  double h2 = d1 - X * X - Y * Y;
  if (h2 < 0) {
    if (h2 < -1e-9 * scale) throw NoIntersection();
    h2 = 0;
  }
  return p1 + X * ex + Y * ey + (sign * std::sqrt(h2)) * ez;
}

namespace {

double dist(Vec3 a, Vec3 b) { return std::sqrt(norm2(a - b)); }

// magnitude-scaled polynomial residual: |Q(u,w)| over the sum of term sizes
double rel_q(const BivariateQuad& Q, double u, double w) {
  double pu[3] = {1.0, u, u * u};
  double pw[3] = {1.0, w, w * w};
  double num = 0, den = 0;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      double t = Q.co[a][b] * pu[a] * pw[b];
      num += t;
      den += std::abs(t);
    }
  return den > 0 ? std::abs(num) / den : 0.0;
}

}  // namespace

std::optional<Embedding> embed_at(const EdgeLengths& l, double xval, std::array<int, 3> signs,
                                  double* closure_err) {
  if (closure_err) *closure_err = std::numeric_limits<double>::quiet_NaN();
  double me = l.max_edge();

  Embedding E;
  E.coords[0] = {0, 0, 0};
  E.coords[1] = {l.p, 0, 0};
  double X3 = (l.q * l.q - l.c * l.c + l.p * l.p) / (2.0 * l.p);
  double Y3sq = l.q * l.q - X3 * X3;
  if (Y3sq < 0) return std::nullopt;
  E.coords[2] = {X3, std::sqrt(Y3sq), 0};

  try {
    E.coords[3] = trilaterate(E.coords[0], E.coords[1], E.coords[2], l.r * l.r, xval,
                              l.f * l.f, signs[0]);
    E.coords[4] = trilaterate(E.coords[0], E.coords[1], E.coords[3], l.s * l.s, l.g * l.g,
                              l.h * l.h, signs[1]);
    E.coords[5] = trilaterate(E.coords[1], E.coords[2], E.coords[3], l.b * l.b, l.a * l.a,
                              l.e * l.e, signs[2]);
  } catch (const DegenerateBase&) {
    return std::nullopt;
  } catch (const NoIntersection&) {
    return std::nullopt;
  }

  double closure = dist(E.coords[4], E.coords[5]) - l.d;
  if (closure_err) *closure_err = closure;
  if (std::abs(closure) > 1e-8 * me) return std::nullopt;

  E.x = xval;
  E.y = norm2(E.coords[2] - E.coords[4]);
  E.z = norm2(E.coords[0] - E.coords[5]);

  // residual over the 12 prescribed edges
  auto d2 = [&](int i, int j) { return dist(E.coords[i], E.coords[j]); };
  double worst = 0;
  const double want[12] = {l.p, l.q, l.r, l.s, l.b, l.a, l.e, l.d, l.c, l.f, l.h, l.g};
  const int pairs[12][2] = {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {5, 1}, {5, 2},
                            {5, 3}, {5, 4}, {1, 2}, {2, 3}, {3, 4}, {4, 1}};
  for (int k = 0; k < 12; ++k)
    worst = std::max(worst, std::abs(d2(pairs[k][0], pairs[k][1]) - want[k]));
  E.residual = worst / me;
  return E;
}

double volume(const Embedding& E) {
  static const int faces[8][3] = {{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 1},
                                  {5, 2, 1}, {5, 3, 2}, {5, 4, 3}, {5, 1, 4}};
  double v = 0;
  for (auto& f : faces)
    v += dot(E.coords[f[0]], cross(E.coords[f[1]], E.coords[f[2]]));
  return v / 6.0;
}

void x_range(const EdgeLengths& l, double& lo, double& hi) {
  auto sq = [](double t) { return t * t; };
  lo = std::max({sq(l.c - l.f), sq(l.h - l.g), sq(l.p - l.r), sq(l.b - l.e)});
  hi = std::min({sq(l.c + l.f), sq(l.h + l.g), sq(l.p + l.r), sq(l.b + l.e)});
}

namespace {

bool degenerate_embedding(const Embedding& E, double max_edge) {
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      if (dist(E.coords[i], E.coords[j]) < 1e-6 * max_edge) return true;
  return false;
}

struct Closure {
  Embedding emb;
  std::array<int, 3> signs;
};

// scan the x-range on every sign combination, bisect closure sign changes
std::vector<Closure> closure_roots(const EdgeLengths& l, bool keep_degenerate) {
  double lo, hi;
  x_range(l, lo, hi);
  if (!(hi > lo)) return {};
  double me = l.max_edge();
  const int kGrid = 600;

  std::vector<Closure> out;
  for (int mask = 0; mask < 8; ++mask) {
    std::array<int, 3> signs = {mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1};
    double prev_x = 0, prev_c = std::numeric_limits<double>::quiet_NaN();
    for (int g = 0; g <= kGrid; ++g) {
      double xv = lo + (hi - lo) * (g + 0.5) / (kGrid + 1);
      double c;
      auto direct = embed_at(l, xv, signs, &c);
      bool added = false;
      if (direct) {
        out.push_back({*direct, signs});
        added = true;
      }
      if (!added && std::isfinite(c) && std::isfinite(prev_c) && c * prev_c < 0) {
        double a = prev_x, b = xv, ca = prev_c;
        for (int it = 0; it < 100; ++it) {
          double m = 0.5 * (a + b), cm;
          embed_at(l, m, signs, &cm);
          if (!std::isfinite(cm)) break;
          if (ca * cm <= 0)
            b = m;
          else {
            a = m;
            ca = cm;
          }
        }
        double cm;
        if (auto E = embed_at(l, 0.5 * (a + b), signs, &cm)) out.push_back({*E, signs});
      }
      prev_x = xv;
      prev_c = c;
    }
  }
  if (!keep_degenerate) {
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const Closure& c) { return degenerate_embedding(c.emb, me); }),
              out.end());
  }
  return out;
}

}  // namespace

VolumeSpectrum enumerate_embeddings(const EdgeLengths& l, std::vector<Embedding>* out,
                                    double tol) {
  auto roots = closure_roots(l, false);
  if (roots.empty()) throw NoRealization();

  std::vector<double> vs;
  for (auto& c : roots) vs.push_back(volume(c.emb) * volume(c.emb));
  double vmax = *std::max_element(vs.begin(), vs.end());
  double cluster = tol * (1.0 + vmax);

  std::sort(vs.begin(), vs.end());
  VolumeSpectrum spec;
  for (double v : vs) {
    if (!spec.v_squared.empty() && v - spec.v_squared.back() < cluster) {
      spec.multiplicity.back()++;
    } else {
      spec.v_squared.push_back(v);
      spec.multiplicity.push_back(1);
    }
  }
  if (out) {
    out->clear();
    for (auto& c : roots) out->push_back(c.emb);
  }
  return spec;
}

std::array<double, 2> diagonal_solve(const BivariateQuad& Q, double t, double tol) {
  double A, B, C;
  Q.second_var_quadratic(t, A, B, C);
  double scale = std::max({B * B, std::abs(4 * A * C), 1e-300});
  if (std::abs(A) * std::max(1.0, std::abs(t)) < 1e-14 * std::max(std::abs(B), std::abs(C))) {
    if (B == 0) throw ComplexRoots();
    double r = -C / B;
    return {r, r};
  }
  double disc = B * B - 4 * A * C;
  if (disc < -tol * scale) throw ComplexRoots();
  disc = std::max(disc, 0.0);
  double sq = std::sqrt(disc);
  double r1 = (-B - sq) / (2 * A), r2 = (-B + sq) / (2 * A);
  if (r1 > r2) std::swap(r1, r2);
  return {r1, r2};
}

namespace {

double disc_at(const BivariateQuad& Q, double t) {
  double A, B, C;
  Q.second_var_quadratic(t, A, B, C);
  double scale = std::max({B * B, std::abs(4 * A * C), 1e-300});
  return (B * B - 4 * A * C) / scale;
}

// interval around x0 where both discriminants stay nonnegative, endpoints
// bisected, clipped to the a priori x-range
void feasible_interval(const BivariateQuad& Q1, const BivariateQuad& Q3, double x0, double lo0,
                       double hi0, double& lo, double& hi) {
  auto g = [&](double t) { return std::min(disc_at(Q1, t), disc_at(Q3, t)); };
  double span = hi0 - lo0;
  double step = span / 512.0;

  auto push = [&](double dir) {
    double inside = x0, outside = x0;
    bool hit = false;
    for (double t = x0 + dir * step;; t += dir * step) {
      if (t < lo0 || t > hi0) break;
      if (g(t) < 0) {
        outside = t;
        hit = true;
        break;
      }
      inside = t;
    }
    if (!hit) return dir > 0 ? std::min(hi0, inside + step) : std::max(lo0, inside - step);
    for (int it = 0; it < 80; ++it) {
      double m = 0.5 * (inside + outside);
      (g(m) >= 0 ? inside : outside) = m;
    }
    return inside;
  };
  lo = push(-1.0);
  hi = push(+1.0);
}

double nearest(const std::array<double, 2>& roots, double prev) {
  return std::abs(roots[0] - prev) <= std::abs(roots[1] - prev) ? roots[0] : roots[1];
}

}  // namespace

FlexTrace flex_sweep(const EdgeLengths& l, const FlexOptions& opt) {
  BivariateQuad Q1 = q_poly(quad_angle(l, Vertex::V1));  // (x, y)
  BivariateQuad Q6 = q_poly(quad_angle(l, Vertex::V6));  // (x, y)
  BivariateQuad Q3 = q_poly(quad_angle(l, Vertex::V3));  // (x, z)
  BivariateQuad Q5 = q_poly(quad_angle(l, Vertex::V5));  // (x, z)
  double me = l.max_edge();

  double lo0, hi0;
  x_range(l, lo0, hi0);

  auto starts = closure_roots(l, false);
  FlexTrace best;
  if (starts.empty()) {
    best.failure = "NoStartingEmbedding";
    return best;
  }

  const size_t kMaxStarts = 40;
  for (size_t si = 0; si < starts.size() && si < kMaxStarts; ++si) {
    const Embedding& start = starts[si].emb;
    FlexTrace tr;
    feasible_interval(Q1, Q3, start.x, lo0, hi0, tr.x_lo, tr.x_hi);
    double span = tr.x_hi - tr.x_lo;
    if (!(span > 0)) continue;
    double margin = 1e-9 * span + 1e-6 * span;  // stay clear of double roots
    double a = tr.x_lo + margin, b = tr.x_hi - margin;
    int steps = std::max(opt.steps, 2);

    // sample outward from the start so branch continuity is anchored there
    int start_idx =
        std::clamp(static_cast<int>(std::round((start.x - a) / (b - a) * (steps - 1))), 0,
                   steps - 1);
    std::vector<int> order;
    for (int d = 0; d < steps; ++d) {
      if (start_idx + d < steps) order.push_back(start_idx + d);
      if (d > 0 && start_idx - d >= 0) order.push_back(start_idx - d);
    }

    tr.samples.assign(steps, {});
    double y_up = start.y, z_up = start.z, y_dn = start.y, z_dn = start.z;
    std::array<int, 3> last_signs = starts[si].signs;
    bool incompatible = false;

    for (int idx : order) {
      double xv = a + (b - a) * idx / (steps - 1.0);
      double& yc = idx >= start_idx ? y_up : y_dn;
      double& zc = idx >= start_idx ? z_up : z_dn;
      FlexSample smp;
      smp.step = idx;
      smp.driving = xv;
      smp.x = xv;
      try {
        yc = nearest(diagonal_solve(Q1, xv), yc);
        zc = nearest(diagonal_solve(Q3, xv), zc);
      } catch (const ComplexRoots&) {
        tr.samples[idx] = smp;
        continue;
      }
      smp.y = yc;
      smp.z = zc;

      double witness = std::max(rel_q(Q6, xv, yc), rel_q(Q5, xv, zc));
      tr.witness_residual = std::max(tr.witness_residual, witness);
      bool compatible = witness < opt.tol;
      if (!compatible && !incompatible) {
        incompatible = true;
        tr.incompatible_at = std::abs(idx - start_idx);
      }

      if (compatible) {
        // re-embed: some sign combination must close with matching diagonals
        auto try_signs = [&](std::array<int, 3> sg) -> bool {
          auto E = embed_at(l, xv, sg);
          if (!E || degenerate_embedding(*E, me)) return false;
          if (std::abs(E->y - yc) > opt.embed_tol * (1 + std::abs(yc))) return false;
          if (std::abs(E->z - zc) > opt.embed_tol * (1 + std::abs(zc))) return false;
          smp.volume = volume(*E);
          smp.ok = true;
          last_signs = sg;
          return true;
        };
        if (!try_signs(last_signs)) {
          for (int mask = 0; mask < 8 && !smp.ok; ++mask)
            try_signs({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1});
        }
      }
      tr.samples[idx] = smp;
    }

    // statistics over ok samples
    double vmin = 0, vmax = 0, vsum = 0;
    double dmin[3], dmax[3];
    bool first = true;
    for (auto& s : tr.samples) {
      if (!s.ok) continue;
      double d[3] = {s.x, s.y, s.z};
      if (first) {
        vmin = vmax = s.volume;
        for (int k = 0; k < 3; ++k) dmin[k] = dmax[k] = d[k];
        first = false;
      } else {
        vmin = std::min(vmin, s.volume);
        vmax = std::max(vmax, s.volume);
        for (int k = 0; k < 3; ++k) {
          dmin[k] = std::min(dmin[k], d[k]);
          dmax[k] = std::max(dmax[k], d[k]);
        }
      }
      vsum += s.volume;
      tr.ok_count++;
    }
    if (tr.ok_count > 0) {
      tr.v_mean = vsum / tr.ok_count;
      tr.v_max_dev = std::max(vmax - tr.v_mean, tr.v_mean - vmin);
      tr.diagonals_vary = true;
      for (int k = 0; k < 3; ++k) {
        double mean = 0;
        int n = 0;
        for (auto& s : tr.samples)
          if (s.ok) {
            mean += (k == 0 ? s.x : k == 1 ? s.y : s.z);
            n++;
          }
        mean /= n;
        if (dmax[k] - dmin[k] <= 1e-3 * std::abs(mean)) tr.diagonals_vary = false;
      }
      tr.flexible = tr.ok_count >= 50 && tr.diagonals_vary &&
                    tr.v_max_dev < 1e-6 * (1 + std::max(std::abs(vmin), std::abs(vmax)));
    }
    if (!tr.flexible && incompatible) tr.failure = "IncompatibleBranches";

    if (tr.flexible) return tr;
    if (best.samples.empty() || tr.ok_count > best.ok_count) best = tr;
  }
  if (best.samples.empty()) best.failure = "NoStartingEmbedding";
  return best;
}

std::string trace_csv(const FlexTrace& t) {
  std::ostringstream os;
  os << "step,driving,x,y,z,volume,ok\n";
  os.precision(17);
  for (auto& s : t.samples)
    os << s.step << ',' << s.driving << ',' << s.x << ',' << s.y << ',' << s.z << ','
       << s.volume << ',' << (s.ok ? 1 : 0) << '\n';
  return os.str();
}

}  // namespace octaflex
