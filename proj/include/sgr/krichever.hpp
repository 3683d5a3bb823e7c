#pragma once

#include <optional>
#include <variant>

#include "sgr/grasspoint.hpp"

namespace sgr {

// Bivariate polynomial over Q; key = (exponent of first var, exponent of second).
struct BiPoly {
  std::map<std::pair<int, int>, Rat> c;

  static BiPoly term(int a, int b, const Rat& x) {
    BiPoly p;
    if (x != 0) p.c[{a, b}] = x;
    return p;
  }
  BiPoly& operator+=(const BiPoly& o) {
    for (const auto& [k, v] : o.c) {
      c[k] += v;
      if (c[k] == 0) c.erase(k);
    }
    return *this;
  }
  // partial derivative in the second variable
  BiPoly dy() const {
    BiPoly p;
    for (const auto& [k, v] : c)
      if (k.second > 0) p.c[{k.first, k.second - 1}] += v * k.second;
    return p;
  }
  // substitute first var -> z^xstep (xstep may be negative), second -> w
  LSeries eval(int xstep, const LSeries& w, int prec) const;
};

// Unique power-series branch w(z) with F(z, w) = 0, w(0) = seed, computed by
// Newton lifting; requires dF/dw(0, seed) invertible.
LSeries expand_branch(const BiPoly& f, const Rat& seed, int prec);

// r disjoint rational components, each a line with inverse parameter pole.
struct DisjointRational {
  int r = 1;
};
// z1^n = z cyclic cover of the line, shape (n).
struct CyclicCover {
  int n = 1;
};
// Plane curve F(x, y) = 0 with x = z_i^{-e_i} at every branch of the marked
// fiber; each branch supplies y = z_i^{yord} * h(z_i) with h(0) = seed a
// simple root after clearing z-content.
struct PlaneCurve {
  BiPoly f;
  struct Branch {
    int e = 1;
    int yord = 0;
    Rat seed;
  };
  std::vector<Branch> branches;
};
struct ExplicitAlgebra {
  CoverShape shape;
  std::vector<PuiseuxElement> gens;
  int degree = 1;
};

using CoverData = std::variant<DisjointRational, CyclicCover, PlaneCurve, ExplicitAlgebra>;

CoverShape cover_shape(const CoverData& cover);

// Expansions of the affine generators at all marked points (for PlaneCurve:
// x and y; the parameter relation x = z_i^{-e_i} holds exactly).
std::vector<PuiseuxElement> cover_generators(const CoverData& cover, int prec_hint);

GrassPoint krichever_point(const CoverData& cover, int pole_bound, int prec);

struct ClassReport {
  CheckReport ring;
  CheckReport trace_stable;
  IndexReport index;
  std::optional<int> genus;  // 1 - index, only when certified
  std::optional<IndexReport> base_index;
  std::optional<int> base_genus;
  CheckReport p1_base;
  Decomposition decomposition;
};

ClassReport classify(const GrassPoint& pt);

}  // namespace sgr
