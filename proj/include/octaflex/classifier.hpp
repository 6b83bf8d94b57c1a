#pragma once

#include <array>

#include "octaflex/metric_complex.hpp"

// Definition 1 classes for quad angles, equator predicates (metric symmetry,
// zero sum), per-equator class consistency, and the Type A / Type B verdict.

namespace octaflex {

enum class ClassTag { I, IIx, IIy, III };

inline const char* class_name(ClassTag t) {
  switch (t) {
    case ClassTag::I: return "I";
    case ClassTag::IIx: return "IIx";
    case ClassTag::IIy: return "IIy";
    default: return "III";
  }
}

struct AngleClass {
  ClassTag tag = ClassTag::I;
  int sign_variant = 0;  // +1 direct equalities, -1 pi-complement, 0 for I
};

// cos(alpha_k) for the four apex angles, alpha_k spanned by lateral[k],
// lateral[k+1] against base[k]
std::array<double, 4> apex_cosines(const QuadAngle& K);

// III tested first (its conditions subsume II when all angles coincide);
// then IIx, IIy with their strict-inequality clauses; defaults to I.
AngleClass angle_class(const QuadAngle& K, double tol = 1e-9);

// Area-product identities, relative residuals (p,q,r,s = laterals,
// S1..S4 = face areas in cyclic order):
//   IIx: ps S1 = pq S4, rs S2 = rq S3
//   IIy: qr S1 = pq S2, ps S3 = sr S4
//   III: sr S1 = pq S3, ps S2 = rq S4
struct Lemma1Residuals {
  double iix[2], iiy[2], iii[2];
};
Lemma1Residuals lemma1_products(const QuadAngle& K);

struct SymmetryCheck {
  bool symmetric = false;
  int pattern = -1;  // 0: a=c,b=d; 1: a=b,c=d; 2: a=d,b=c
};
SymmetryCheck is_metrically_symmetric(const Equator& E, double tol = 1e-9);

struct ZeroSumCheck {
  bool zero_sum = false;
  int factor = -1;  // 0: a+b-c-d; 1: a-b+c-d; 2: a-b-c+d
  double residual = 0;  // |smallest factor| / (a+b+c+d)
};
ZeroSumCheck has_zero_sum(const Equator& E, double tol = 1e-9);

// Classes of the two quad angles spanning equator `which` (index into
// equators()); inconsistent tags mean the metric cannot flex nontrivially.
struct EquatorClassResult {
  bool consistent = false;
  AngleClass first, second;
};
EquatorClassResult equator_class(const EdgeLengths& l, int which, double tol = 1e-9);

enum class Verdict { TypeA, TypeB, Generic };

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::TypeA: return "TypeA";
    case Verdict::TypeB: return "TypeB";
    default: return "Generic";
  }
}

struct EquatorReport {
  SymmetryCheck symmetry;
  ZeroSumCheck zero_sum;
  EquatorClassResult cls;
};

struct OctType {
  Verdict verdict = Verdict::Generic;
  std::array<EquatorReport, 3> equators;
  // qge=pfd, bhq=cdr, rga=sfb, ahp=ces, relative
  std::array<double, 4> product_res{};
  std::array<double, 4> b_values{};  // sign triples (1,1,1),(1,-1,-1),(-1,1,-1),(-1,-1,1)
  double b_scale = 0;                // max |term| of the B expression
  bool typea_conditions = false;     // raw condition sets, for overlap reporting
  bool typeb_conditions = false;     // (TypeA takes precedence in the verdict)
};
OctType octahedron_type(const EdgeLengths& l, double tol = 1e-9);

}  // namespace octaflex
