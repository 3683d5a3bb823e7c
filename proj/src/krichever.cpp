#include "sgr/krichever.hpp"

#include <algorithm>

namespace sgr {

LSeries BiPoly::eval(int xstep, const LSeries& w, int prec) const {
  int ymax = 0;
  for (const auto& [k, v] : c) ymax = std::max(ymax, k.second);
  // Horner in the second variable
  LSeries acc = LSeries::zero(prec);
  for (int j = ymax; j >= 0; --j) {
    acc = (acc * w).truncated(prec);
    for (const auto& [k, v] : c)
      if (k.second == j) acc += LSeries::monomial(k.first * xstep, v, prec);
  }
  return acc.truncated(prec);
}

LSeries expand_branch(const BiPoly& f, const Rat& seed, int prec) {
  LSeries w0 = LSeries::monomial(0, seed, prec);
  if (seed == 0) w0 = LSeries::zero(prec);
  if (f.eval(1, w0, 1).coeff(0) != 0)
    throw std::invalid_argument("branch seed is not a root of F(0, .)");
  BiPoly fy = f.dy();
  if (fy.eval(1, w0, 1).coeff(0) == 0)
    throw std::invalid_argument("branch seed is not simple (dF/dw vanishes)");
  LSeries w = w0;
  int known = 1;  // F(z, w) = 0 mod z^known
  while (known < prec) {
    known = std::min(2 * known, prec);
    LSeries val = f.eval(1, w, known);
    LSeries der = fy.eval(1, w, known);
    w = (w - val * inverse(der.truncated(known))).truncated(known);
    w.prec = prec;  // coefficients above `known` are still being refined
    w = w.truncated(known);
    w.prec = prec;
  }
  w.prec = prec;
  return w;
}

CoverShape cover_shape(const CoverData& cover) {
  if (const auto* d = std::get_if<DisjointRational>(&cover))
    return CoverShape(std::vector<int>(d->r, 1));
  if (const auto* cy = std::get_if<CyclicCover>(&cover)) return CoverShape({cy->n});
  if (const auto* pc = std::get_if<PlaneCurve>(&cover)) {
    std::vector<int> e;
    for (const auto& b : pc->branches) e.push_back(b.e);
    return CoverShape(e);
  }
  return std::get<ExplicitAlgebra>(cover).shape;
}

std::vector<PuiseuxElement> cover_generators(const CoverData& cover, int prec_hint) {
  CoverShape shape = cover_shape(cover);
  std::vector<PuiseuxElement> gens;
  if (const auto* d = std::get_if<DisjointRational>(&cover)) {
    for (int i = 0; i < d->r; ++i) {
      gens.push_back(PuiseuxElement::monomial(shape, i, 0));   // idempotent
      gens.push_back(PuiseuxElement::monomial(shape, i, -1));  // inverse parameter
    }
  } else if (std::get_if<CyclicCover>(&cover)) {
    gens.push_back(PuiseuxElement::monomial(shape, 0, -1));
  } else if (const auto* pc = std::get_if<PlaneCurve>(&cover)) {
    PuiseuxElement x(shape), y(shape);
    for (int i = 0; i < shape.r(); ++i) {
      const auto& br = pc->branches[i];
      int hp = prec_hint * shape.e[i];
      x.comp[i] = LSeries::monomial(-br.e, Rat(1));
      // y = z^yord * h, F(z^-e, z^yord h) * z^s = G(z, h) with z-content cleared
      BiPoly g;
      int shift = kExactPrec;
      for (const auto& [k, v] : pc->f.c)
        shift = std::min(shift, -br.e * k.first + br.yord * k.second);
      for (const auto& [k, v] : pc->f.c)
        g.c[{-br.e * k.first + br.yord * k.second - shift, k.second}] = v;
      LSeries h = expand_branch(g, br.seed, hp);
      y.comp[i] = h.shifted(br.yord);
    }
    gens.push_back(x);
    gens.push_back(y);
  } else {
    gens = std::get<ExplicitAlgebra>(cover).gens;
  }
  return gens;
}

GrassPoint krichever_point(const CoverData& cover, int pole_bound, int prec) {
  CoverShape shape = cover_shape(cover);
  ClosureSpec closure{true, 1};
  if (const auto* ea = std::get_if<ExplicitAlgebra>(&cover)) {
    closure.degree = ea->degree;
  } else if (std::get_if<CyclicCover>(&cover)) {
    closure.degree = pole_bound * shape.n();
  } else {
    closure.degree = pole_bound + 2;
  }
  // precision needed so that degree-d products still cover the window
  int deepest = 1;
  std::vector<PuiseuxElement> probe = cover_generators(cover, prec + 1);
  for (const PuiseuxElement& g : probe)
    for (int i = 0; i < shape.r(); ++i)
      if (!g.comp[i].c.empty())
        deepest = std::max(deepest, ceil_div(-g.comp[i].c.begin()->first, shape.e[i]));
  int gen_prec = prec + closure.degree * std::max(deepest, 0) + 1;
  std::vector<PuiseuxElement> gens = cover_generators(cover, gen_prec);
  return close_point(shape, gens, {}, closure, pole_bound, prec);
}

ClassReport classify(const GrassPoint& pt) {
  ClassReport rep;
  rep.ring = is_ring(pt);
  rep.trace_stable = is_trace_stable(pt);
  rep.index = index_report(pt);
  if (rep.index.certified) rep.genus = 1 - rep.index.index;
  rep.decomposition = decompose(pt);
  if (rep.trace_stable.passed()) {
    TraceSubspace ts = trace_subspace(pt);
    rep.base_index = ts.base_index;
    if (ts.base_index.certified) rep.base_genus = 1 - ts.base_index.index;
    // P^1 base: tr(U) must be exactly C[z^-1]
    if (!ts.equals_intersection.passed()) {
      rep.p1_base = CheckReport::inconclusive("trace subspace not certified: " +
                                              ts.equals_intersection.detail);
    } else {
      const CoverShape base({1});
      CheckReport verdict = CheckReport::pass();
      for (const Pos& p : ts.base.pivots)
        if (p.expo > 0) {
          verdict = CheckReport::fail("trace of U has a positive-order element z^" +
                                      std::to_string(p.expo));
          break;
        }
      if (verdict.passed()) {
        int deep = ts.base.max_filtration();
        for (int k = 0; k <= std::max(deep - 1, 1); ++k) {
          PuiseuxElement mono = PuiseuxElement::monomial(base, 0, -k);
          bool ok;
          try {
            ok = contains(ts.base, mono);
          } catch (const precision_error&) {
            verdict = CheckReport::inconclusive("trace window too small for z^-" +
                                                std::to_string(k));
            break;
          }
          if (!ok) {
            verdict = CheckReport::fail("z^-" + std::to_string(k) + " not in tr(U)");
            break;
          }
        }
      }
      rep.p1_base = verdict;
    }
  } else {
    rep.p1_base = CheckReport::fail("precondition: trace stability " +
                                    std::string(rep.trace_stable.verdict_str()));
  }
  return rep;
}

}  // namespace sgr
