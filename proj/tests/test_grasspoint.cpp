#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "sgr/grasspoint.hpp"

using namespace sgr;

namespace {

// point with all monomial directions of base order in [-M, 0) plus a random
// tail of strictly higher window positions: a full-plateau point of index 0
GrassPoint random_index0_point(std::mt19937& rng, const CoverShape& shape, int M, int P) {
  GrassPoint pt;
  pt.shape = shape;
  for (int i = 0; i < shape.r(); ++i) {
    pt.lo.push_back(-M * shape.e[i]);
    pt.hi.push_back(P * shape.e[i]);
  }
  std::uniform_int_distribution<int> num(-4, 4), den(1, 3), pct(0, 99);
  PosLess less{&shape};
  for (int i = 0; i < shape.r(); ++i)
    for (int k = -M * shape.e[i]; k < 0; ++k) {
      PuiseuxElement v = PuiseuxElement::monomial(shape, i, k);
      for (int j = 0; j < shape.r(); ++j) {
        v.comp[j].prec = pt.hi[j];
        for (int a = std::max(k + 1, 0); a < pt.hi[j]; ++a)
          if (less(Pos{i, k}, Pos{j, a}) && pct(rng) < 35) v.comp[j].c[a] = rat(num(rng), den(rng));
      }
      v.comp[i].c[k] = 1;
      insert_row(pt, v);
    }
  return pt;
}

GrassPoint lower_triangular(const CoverShape& shape, int M, int P) {
  // V_- within the window: tails z_i^k, k < 0
  std::vector<TailSpec> tails;
  for (int i = 0; i < shape.r(); ++i) tails.push_back({i, -1});
  return close_point(shape, {}, tails, {}, M, P);
}

}  // namespace

TEST_CASE("close: linear span of one pole") {
  GrassPoint pt = close_point(CoverShape({1}), {PuiseuxElement::monomial(CoverShape({1}), 0, -1)},
                              {}, {}, 3, 3);
  CHECK(pt.rows.size() == 1);
  CHECK(pt.filtration_dim(0) == 0);
  for (int m = 1; m <= 3; ++m) CHECK(pt.filtration_dim(m) == 1);
}

TEST_CASE("close: algebra span of z^-1") {
  GrassPoint pt = close_point(CoverShape({1}), {PuiseuxElement::monomial(CoverShape({1}), 0, -1)},
                              {}, {true, 4}, 5, 3);
  CHECK(pt.rows.size() == 5);
  for (int k = 0; k >= -4; --k)
    CHECK(contains(pt, PuiseuxElement::monomial(CoverShape({1}), 0, k)));
  CHECK_FALSE(contains(pt, PuiseuxElement::monomial(CoverShape({1}), 0, -5)));
}

TEST_CASE("close: algebra span over two components") {
  CoverShape s({1, 1});
  PuiseuxElement g(s, {LSeries::monomial(-1, Rat(1)), LSeries::monomial(1, Rat(1))});
  GrassPoint pt = close_point(s, {g}, {}, {true, 3}, 4, 4);
  CHECK(contains(pt, parse_series("z1^-3; z2^3", s)));
  CHECK(contains(pt, parse_series("z1^-2; z2^2", s)));
  CHECK(contains(pt, parse_series("1; 1", s)));
  CHECK_FALSE(contains(pt, parse_series("z1^-1; 0", s)));
}

TEST_CASE("close is generator-order independent") {
  CoverShape s({2});
  std::mt19937 rng(21);
  std::vector<PuiseuxElement> gens;
  for (int t = 0; t < 4; ++t) {
    PuiseuxElement v(s);
    v.comp[0].prec = 8;
    std::uniform_int_distribution<int> num(-4, 4);
    for (int k = -4; k < 8; ++k) v.comp[0].c[k] = num(rng);
    v.comp[0].normalize();
    gens.push_back(v);
  }
  GrassPoint a = close_point(s, gens, {}, {}, 2, 4);
  std::reverse(gens.begin(), gens.end());
  GrassPoint b = close_point(s, gens, {}, {}, 2, 4);
  CHECK(a.rows == b.rows);
  CHECK(a.pivots == b.pivots);
}

TEST_CASE("index: reference points") {
  CoverShape e1({1});
  GrassPoint vm = lower_triangular(e1, 4, 4);
  IndexReport r0 = index_report(vm);
  CHECK(r0.dim_ker == 0);
  CHECK(r0.dim_coker == 0);
  CHECK(r0.index == 0);
  CHECK(r0.certified);

  GrassPoint cz = close_point(e1, {PuiseuxElement::one(e1)}, {{0, -1}}, {}, 4, 4);
  IndexReport r1 = index_report(cz);
  CHECK(r1.dim_ker == 1);
  CHECK(r1.index == 1);
  CHECK(r1.certified);

  CoverShape e111({1, 1, 1});
  std::vector<TailSpec> tails;
  std::vector<PuiseuxElement> gens;
  for (int i = 0; i < 3; ++i) {
    tails.push_back({i, -1});
    gens.push_back(PuiseuxElement::monomial(e111, i, 0));
  }
  GrassPoint prod = close_point(e111, gens, tails, {}, 4, 4);
  IndexReport r3 = index_report(prod);
  CHECK(r3.index == 3);
  CHECK(r3.certified);
}

TEST_CASE("index: degenerate component flagged") {
  CoverShape s({1, 1});
  GrassPoint pt = close_point(s, {PuiseuxElement::monomial(s, 0, -1)}, {{0, -2}}, {}, 4, 3);
  IndexReport rep = index_report(pt);
  CHECK_FALSE(rep.certified);
  CHECK(rep.degenerate_components == std::vector<int>{1});
}

TEST_CASE("contains") {
  CoverShape e1({1});
  GrassPoint vm = lower_triangular(e1, 4, 4);
  CHECK(contains(vm, PuiseuxElement::monomial(e1, 0, -1)));
  CHECK_FALSE(contains(vm, PuiseuxElement::one(e1)));

  PuiseuxElement g(e1, {LSeries::monomial(-1, Rat(1)) + LSeries::monomial(0, rat(3))});
  GrassPoint pt = close_point(e1, {g}, {{0, -2}}, {}, 4, 3);
  CHECK_FALSE(contains(pt, PuiseuxElement::monomial(e1, 0, -1)));
  CHECK(contains(pt, g));
}

TEST_CASE("is_ring") {
  CoverShape e1({1});
  GrassPoint cz = close_point(e1, {PuiseuxElement::one(e1)}, {{0, -1}}, {}, 4, 4);
  CHECK(is_ring(cz).verdict == CheckReport::Pass);
  CHECK(is_ring(lower_triangular(e1, 4, 4)).verdict == CheckReport::Fail);

  CoverShape e2({2});
  GrassPoint sp = close_point(e2, {PuiseuxElement::one(e2)}, {{0, -2}}, {}, 3, 3);
  CHECK(is_ring(sp).verdict == CheckReport::Pass);

  // span{1, z1^-1 + z1} with nothing deeper: (z1^-1+z1)^2 leaves the span
  GrassPoint bad = close_point(
      e1, {PuiseuxElement::one(e1),
           PuiseuxElement(e1, {LSeries::monomial(-1, Rat(1)) + LSeries::monomial(1, Rat(1))})},
      {}, {}, 4, 4);
  CHECK(is_ring(bad).verdict == CheckReport::Fail);
}

TEST_CASE("is_trace_stable") {
  CoverShape e11({1, 1});
  std::vector<TailSpec> tails{{0, -1}, {1, -1}};
  GrassPoint prod = close_point(
      e11, {PuiseuxElement::monomial(e11, 0, 0), PuiseuxElement::monomial(e11, 1, 0)}, tails, {},
      4, 4);
  CHECK(is_trace_stable(prod).verdict == CheckReport::Pass);

  // span{(z^-1,0)} + V+
  std::vector<PuiseuxElement> gens{PuiseuxElement::monomial(e11, 0, -1)};
  for (int i = 0; i < 2; ++i)
    for (int k = 0; k < 4; ++k) gens.push_back(PuiseuxElement::monomial(e11, i, k));
  GrassPoint mixed = close_point(e11, gens, {}, {}, 4, 4);
  CHECK(is_trace_stable(mixed).verdict == CheckReport::Fail);

  CoverShape e2({2});
  GrassPoint cz1 = close_point(e2, {PuiseuxElement::one(e2)}, {{0, -1}}, {}, 3, 3);
  CHECK(is_trace_stable(cz1).verdict == CheckReport::Pass);
}

TEST_CASE("trace_subspace") {
  CoverShape e11({1, 1});
  GrassPoint prod = close_point(
      e11, {PuiseuxElement::monomial(e11, 0, 0), PuiseuxElement::monomial(e11, 1, 0)},
      {{0, -1}, {1, -1}}, {}, 4, 4);
  TraceSubspace ts = trace_subspace(prod);
  CHECK(ts.equals_intersection.verdict == CheckReport::Pass);
  CHECK(ts.base_index.index == 1);
  CHECK(contains(ts.base, PuiseuxElement::monomial(CoverShape({1}), 0, -3)));

  CoverShape e2({2});
  GrassPoint cz1 = close_point(e2, {PuiseuxElement::one(e2)}, {{0, -1}}, {}, 3, 3);
  TraceSubspace t2 = trace_subspace(cz1);
  CHECK(t2.equals_intersection.verdict == CheckReport::Pass);
  CHECK(t2.base_index.index == 1);

  GrassPoint sp = close_point(e2, {PuiseuxElement::one(e2)}, {{0, -2}}, {}, 4, 4);
  TraceSubspace t3 = trace_subspace(sp);
  CHECK(t3.equals_intersection.verdict == CheckReport::Pass);
  // traces of z1^{-2k} generate every z^-k
  for (int k = 1; k <= 3; ++k)
    CHECK(contains(t3.base, PuiseuxElement::monomial(CoverShape({1}), 0, -k)));
  // trace-stable ring point: the base is a ring point containing 1
  CHECK(is_ring(t3.base).verdict == CheckReport::Pass);
}

TEST_CASE("dual of V- is V-") {
  CoverShape e1({1});
  GrassPoint vm = lower_triangular(e1, 4, 4);
  GrassPoint d = dual(vm);
  // dual window is [-4, 4); V-^perp = V- there
  for (int k = -4; k < 0; ++k) CHECK(contains(d, PuiseuxElement::monomial(e1, 0, k)));
  CHECK_FALSE(contains(d, PuiseuxElement::one(e1)));
  CHECK(index_report(d).index == 0);
}

TEST_CASE("dual suite: involution and index antisymmetry") {
  std::mt19937 rng(31);
  int done = 0;
  for (const CoverShape& shape :
       {CoverShape({1}), CoverShape({2}), CoverShape({1, 1}), CoverShape({1, 2}),
        CoverShape({3}), CoverShape({2, 2})}) {
    for (int rep = 0; rep < 2; ++rep) {
      GrassPoint u = random_index0_point(rng, shape, 4, 4);
      int m0 = index_report(u).index;
      REQUIRE(m0 == 0);
      // optionally twist by a normalizing monomial to move off index 0
      GrassPoint pt = u;
      int m = m0;
      if (rep == 1) {
        int target = 1;
        if (is_omitted_index(target, shape)) target = 2;
        pt = twist(u, vm_element(target, shape));
        m = index_report(pt).index;
        REQUIRE(m == target);
      }
      GrassPoint d = dual(pt);
      IndexReport rd = index_report(d);
      REQUIRE(rd.index == shape.r() - shape.n() - m);
      // orthogonality and involution on the common window
      for (const PuiseuxElement& a : pt.rows)
        for (const PuiseuxElement& b : d.rows) REQUIRE(t2_pair(a, b) == 0);
      // the double dual window coincides with the original window
      GrassPoint dd = dual(d);
      REQUIRE(dd.lo == pt.lo);
      REQUIRE(dd.hi == pt.hi);
      REQUIRE(dd.rows.size() == pt.rows.size());
      for (const PuiseuxElement& a : dd.rows) REQUIRE(contains(pt, a));
      ++done;
    }
  }
  CHECK(done >= 10);
}

TEST_CASE("twist") {
  CoverShape e1({1});
  GrassPoint cz = close_point(e1, {PuiseuxElement::one(e1)}, {{0, -1}}, {}, 4, 4);
  GrassPoint t = twist(cz, PuiseuxElement::monomial(e1, 0, 1));
  CHECK(index_report(t).index == 2);
  GrassPoint id = twist(cz, PuiseuxElement::one(e1));
  CHECK(id.rows == cz.rows);
  GrassPoint back = twist(t, PuiseuxElement::monomial(e1, 0, -1));
  CHECK(back.rows == cz.rows);
}

TEST_CASE("decompose") {
  CoverShape e11({1, 1});
  GrassPoint prod = close_point(
      e11, {PuiseuxElement::monomial(e11, 0, 0), PuiseuxElement::monomial(e11, 1, 0)},
      {{0, -1}, {1, -1}}, {}, 4, 4);
  Decomposition d = decompose(prod);
  REQUIRE(d.blocks.has_value());
  CHECK(d.blocks->size() == 2);

  // Laurent ring on P^1 minus {0, inf}: span{(z1^k, z2^-k)}
  std::vector<PuiseuxElement> gens;
  for (int k = -4; k <= 3; ++k) {
    PuiseuxElement v(e11, {LSeries::monomial(k, Rat(1)), LSeries::monomial(-k, Rat(1))});
    gens.push_back(v);
  }
  GrassPoint laurent = close_point(e11, gens, {}, {}, 4, 4);
  Decomposition d2 = decompose(laurent);
  CHECK_FALSE(d2.blocks.has_value());
  CHECK(d2.report.verdict == CheckReport::Fail);

  GrassPoint single = close_point(CoverShape({1}), {PuiseuxElement::one(CoverShape({1}))},
                                  {{0, -1}}, {}, 3, 3);
  CHECK(decompose(single).report.verdict == CheckReport::Inconclusive);
}

TEST_CASE("filtration increments bounded by n") {
  std::mt19937 rng(32);
  for (const CoverShape& shape : {CoverShape({2, 1}), CoverShape({3})}) {
    GrassPoint pt = random_index0_point(rng, shape, 4, 4);
    for (auto [m, inc] : index_report(pt).increments) {
      CHECK(inc <= shape.n());
      CHECK(inc >= 0);
    }
  }
}
