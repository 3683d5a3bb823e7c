#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sgr/laurent.hpp"

namespace sgr {

// Verdict of a characterization check. Pass may be conditional on the stated
// truncation window; Fail always carries a fully determined witness.
struct CheckReport {
  enum Verdict { Pass, Fail, Inconclusive } verdict = Inconclusive;
  std::string detail;
  std::vector<std::pair<std::string, std::string>> params;

  bool passed() const { return verdict == Pass; }
  static CheckReport pass(std::string d = "") { return {Pass, std::move(d), {}}; }
  static CheckReport fail(std::string d) { return {Fail, std::move(d), {}}; }
  static CheckReport inconclusive(std::string d) { return {Inconclusive, std::move(d), {}}; }
  const char* verdict_str() const {
    return verdict == Pass ? "pass" : verdict == Fail ? "fail" : "inconclusive";
  }
};

struct ClosureSpec {
  bool algebra = false;
  int degree = 1;  // max monomial degree in algebra mode
};

// Tail of monomials z_comp^k for top >= k >= window bottom.
struct TailSpec {
  int comp = 0;
  int top = -1;
};

// Column position: component and z_comp exponent.
struct Pos {
  int comp;
  int expo;
  bool operator==(const Pos&) const = default;
};

// Total order: by base order expo/e_comp (cross-multiplied), then component.
struct PosLess {
  const CoverShape* shape;
  bool operator()(const Pos& a, const Pos& b) const {
    long la = static_cast<long>(a.expo) * shape->e[b.comp];
    long lb = static_cast<long>(b.expo) * shape->e[a.comp];
    if (la != lb) return la < lb;
    return a.comp < b.comp;
  }
};

// Point U of the Grassmannian of V, held as a reduced echelon basis of its
// intersection with the exponent window [lo_i, hi_i) per component. Rows are
// sorted by pivot position; coefficients above hi are unknown, positions below
// lo are outside the representable pole range.
struct GrassPoint {
  CoverShape shape;
  std::vector<int> lo, hi;
  std::vector<PuiseuxElement> rows;
  std::vector<Pos> pivots;

  int r() const { return shape.r(); }
  // largest m with [-m e_i] inside the window for all components
  int max_filtration() const;
  // number of rows lying in z^{-m} V+ (pivot base order >= -m)
  int filtration_dim(int m) const;
  bool in_window(const Pos& p) const {
    return p.expo >= lo[p.comp] && p.expo < hi[p.comp];
  }
};

struct IndexReport {
  int dim_ker = 0;
  int dim_coker = 0;
  int index = 0;
  std::vector<std::pair<int, int>> increments;  // (m, dim U(m)/U(m-1))
  bool certified = false;
  std::vector<int> degenerate_components;
};

// Row reduction of generators (plus monomial tails; plus monomial products up
// to closure.degree in algebra mode) over the window [-M e_i, P e_i).
GrassPoint close_point(const CoverShape& shape, const std::vector<PuiseuxElement>& gens,
                       const std::vector<TailSpec>& tails, const ClosureSpec& closure,
                       int pole_bound, int prec);

// Echelon insertion used by close_point and the constructors; gen must have
// ord inside the window and known coefficients through hi.
void insert_row(GrassPoint& pt, PuiseuxElement v);

IndexReport index_report(const GrassPoint& pt);

// Residual of v after reduction against the basis. Unknown coefficients of v
// stay unknown; positions below the window raise.
PuiseuxElement reduce(const GrassPoint& pt, const PuiseuxElement& v);
bool contains(const GrassPoint& pt, const PuiseuxElement& v);

CheckReport is_ring(const GrassPoint& pt);
CheckReport is_trace_stable(const GrassPoint& pt);

struct TraceSubspace {
  GrassPoint base;             // span of traces, shape (1)
  CheckReport equals_intersection;  // tr(U) = U ∩ diagonal
  IndexReport base_index;
};
TraceSubspace trace_subspace(const GrassPoint& pt);

// Orthogonal complement w.r.t. T2 on the dual window
// [-hi_i - e_i + 1, -lo_i - e_i + 1).
GrassPoint dual(const GrassPoint& pt);

// g · U for g with invertible (monomial-leading) components.
GrassPoint twist(const GrassPoint& pt, const PuiseuxElement& g);

struct Decomposition {
  std::optional<std::vector<std::vector<int>>> blocks;  // finest partition found
  std::vector<std::vector<int>> separable_subsets;
  CheckReport report;
};
Decomposition decompose(const GrassPoint& pt);

// Component projection p_S: zero outside the subset.
PuiseuxElement project(const PuiseuxElement& v, const std::vector<int>& subset);

}  // namespace sgr
