#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "octaflex/cayley_menger.hpp"
#include "octaflex/metric_complex.hpp"

// Numeric realization: trilateration embedding, enumeration of realizations
// and their volume spectrum, diagonal solving from Q-polynomials, and flex
// sweeps with branch continuity and bellows checks.

namespace octaflex {

struct Vec3 {
  double x = 0, y = 0, z = 0;
};

Vec3 operator-(Vec3 a, Vec3 b);
Vec3 operator+(Vec3 a, Vec3 b);
Vec3 operator*(double t, Vec3 a);
double dot(Vec3 a, Vec3 b);
Vec3 cross(Vec3 a, Vec3 b);
double norm2(Vec3 a);

struct DegenerateBase : std::runtime_error {
  DegenerateBase() : std::runtime_error("DegenerateBase") {}
};
struct NoIntersection : std::runtime_error {
  NoIntersection() : std::runtime_error("NoIntersection") {}
};

// The point at squared distances d1,d2,d3 from p1,p2,p3, on the side of
// their plane selected by sign.
Vec3 trilaterate(Vec3 p1, Vec3 p2, Vec3 p3, double d1, double d2, double d3, int sign);

struct Embedding {
  std::array<Vec3, 6> coords;  // v1..v6
  double x = 0, y = 0, z = 0;  // squared diagonals
  double residual = 0;         // max edge-length error / max edge
};

// Realize the complex with the driving diagonal x fixed; signs choose the
// reflection branch for v4, v5, v6. Returns nothing when a trilateration
// step has no solution; closure_err (|v5 v6| - d) is reported either way so
// callers can root-solve it in x.
std::optional<Embedding> embed_at(const EdgeLengths& l, double xval, std::array<int, 3> signs,
                                  double* closure_err = nullptr);

// Generalized oriented volume: (1/6) sum of det over the 8 faces, oriented
// outward for the convex regular octahedron.
double volume(const Embedding& E);

// a priori x-range from the triangle inequalities in the two triangles
// (c,f), (h,g), (p,r), (b,e) share with the diagonal v2v4
void x_range(const EdgeLengths& l, double& lo, double& hi);

struct NoRealization : std::runtime_error {
  NoRealization() : std::runtime_error("NoRealization") {}
};

struct VolumeSpectrum {
  std::vector<double> v_squared;  // distinct, ascending
  std::vector<int> multiplicity;
};

// All closures over the 8 sign combinations and the x-range; embeddings with
// near-coincident vertices (trivial realizations) are dropped. V^2 values
// clustered within tol.
VolumeSpectrum enumerate_embeddings(const EdgeLengths& l, std::vector<Embedding>* out = nullptr,
                                    double tol = 1e-6);

struct ComplexRoots : std::runtime_error {
  ComplexRoots() : std::runtime_error("ComplexRoots") {}
};

// Both roots of Q in its second variable at first-variable value t
// (ascending); throws when the discriminant is below -tol*scale.
std::array<double, 2> diagonal_solve(const BivariateQuad& Q, double t, double tol = 1e-9);

struct FlexSample {
  int step = 0;
  double driving = 0, x = 0, y = 0, z = 0, volume = 0;
  bool ok = false;
};

struct FlexTrace {
  std::vector<FlexSample> samples;
  bool flexible = false;      // >= 50 ok samples, all diagonals vary, V constant
  bool diagonals_vary = false;
  int ok_count = 0;
  double v_mean = 0, v_max_dev = 0;
  double x_lo = 0, x_hi = 0;  // feasible interval used
  double witness_residual = 0;  // max Q6/Q5 residual over ok samples
  std::string failure;          // "IncompatibleBranches" / "NoStartingEmbedding" / ""
  int incompatible_at = -1;     // step index where the witness first blew up
};

struct FlexOptions {
  int steps = 120;
  double tol = 1e-7;        // Q6/Q5 compatibility threshold, relative
  double embed_tol = 1e-6;  // diagonal consistency between solver and embedding
};

// Sweep the driving diagonal x over the feasible interval (Delta >= 0 for
// both K1 and K3, endpoints bisected and excluded by a margin), solving y
// from Q1 and z from Q3 branch-continuously, with Q6/Q5 residuals as the
// flexibility witness and a re-embedding check per sample.
FlexTrace flex_sweep(const EdgeLengths& l, const FlexOptions& opt = {});

std::string trace_csv(const FlexTrace& t);

}  // namespace octaflex
