#include "sgr/grasspoint.hpp"
#include <set>

#include <algorithm>
#include <sstream>

namespace sgr {

namespace {

std::string pos_str(const Pos& p) {
  return "z" + std::to_string(p.comp + 1) + "^" + std::to_string(p.expo);
}

// lowest known nonzero position of v w.r.t. the window order, if any
std::optional<Pos> leading_pos(const CoverShape& shape, const PuiseuxElement& v) {
  std::optional<Pos> best;
  PosLess less{&shape};
  for (int i = 0; i < shape.r(); ++i) {
    if (v.comp[i].c.empty()) continue;
    Pos p{i, v.comp[i].c.begin()->first};
    if (!best || less(p, *best)) best = p;
  }
  return best;
}

// dense rational kernel: returns a basis of {x : M x = 0}, reduced echelon
// in the given column order
std::vector<std::vector<Rat>> kernel_basis(std::vector<std::vector<Rat>> m, int ncols) {
  std::vector<int> pivot_col;
  size_t row = 0;
  for (int col = 0; col < ncols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = 1 / m[row][col];
    for (int c = col; c < ncols; ++c) m[row][c] *= inv;
    for (size_t rr = 0; rr < m.size(); ++rr) {
      if (rr == row || m[rr][col] == 0) continue;
      Rat f = m[rr][col];
      for (int c = col; c < ncols; ++c) m[rr][c] -= f * m[row][c];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(ncols, false);
  for (int c : pivot_col) is_pivot[c] = true;
  std::vector<std::vector<Rat>> out;
  for (int free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rat> x(ncols, Rat(0));
    x[free] = 1;
    for (size_t rr = 0; rr < pivot_col.size(); ++rr) x[pivot_col[rr]] = -m[rr][free];
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace

int GrassPoint::max_filtration() const {
  int m = kExactPrec;
  for (int i = 0; i < r(); ++i) m = std::min(m, floor_div(-lo[i], shape.e[i]));
  return m;
}

int GrassPoint::filtration_dim(int m) const {
  int d = 0;
  for (const Pos& p : pivots)
    if (p.expo >= -m * shape.e[p.comp]) ++d;
  return d;
}

void insert_row(GrassPoint& pt, PuiseuxElement v) {
  for (int i = 0; i < pt.r(); ++i) {
    if (v.comp[i].prec < pt.hi[i])
      throw precision_error("row known only to z" + std::to_string(i + 1) + "^" +
                            std::to_string(v.comp[i].prec) + ", window needs " +
                            std::to_string(pt.hi[i]));
    v.comp[i] = v.comp[i].truncated(pt.hi[i]);
    if (!v.comp[i].c.empty() && v.comp[i].c.begin()->first < pt.lo[i])
      throw std::invalid_argument("generator pole exceeds the window at component " +
                                  std::to_string(i + 1));
  }
  PosLess less{&pt.shape};
  // eliminate v at every existing pivot, then adjoin what is left
  for (size_t j = 0; j < pt.rows.size(); ++j) {
    const Pos& p = pt.pivots[j];
    Rat c = v.comp[p.comp].coeff(p.expo);
    if (c != 0) v += pt.rows[j].scaled(-c);
  }
  std::optional<Pos> lead = leading_pos(pt.shape, v);
  if (!lead) return;  // dependent
  v = v.scaled(1 / v.comp[lead->comp].coeff(lead->expo));
  for (size_t j = 0; j < pt.rows.size(); ++j) {
    Rat c = pt.rows[j].comp[lead->comp].coeff(lead->expo);
    if (c != 0) pt.rows[j] += v.scaled(-c);
  }
  size_t at = 0;
  while (at < pt.pivots.size() && less(pt.pivots[at], *lead)) ++at;
  pt.rows.insert(pt.rows.begin() + at, std::move(v));
  pt.pivots.insert(pt.pivots.begin() + at, *lead);
}

GrassPoint close_point(const CoverShape& shape, const std::vector<PuiseuxElement>& gens,
                       const std::vector<TailSpec>& tails, const ClosureSpec& closure,
                       int pole_bound, int prec) {
  if (gens.empty() && tails.empty()) throw std::invalid_argument("no generators");
  GrassPoint pt;
  pt.shape = shape;
  pt.lo.resize(shape.r());
  pt.hi.resize(shape.r());
  for (int i = 0; i < shape.r(); ++i) {
    pt.lo[i] = -pole_bound * shape.e[i];
    pt.hi[i] = prec * shape.e[i];
  }

  std::vector<PuiseuxElement> elems;
  if (closure.algebra) {
    // all monomials in the generators through total degree d; deep products
    // (pole below the window) are kept during reduction on an extended window
    // so their combinations inside the window are not lost
    std::vector<PuiseuxElement> frontier{PuiseuxElement::one(shape)};
    elems.push_back(frontier[0]);
    for (int d = 1; d <= closure.degree; ++d) {
      std::vector<PuiseuxElement> next;
      std::set<std::string> seen;
      for (const PuiseuxElement& f : frontier)
        for (const PuiseuxElement& g : gens) {
          PuiseuxElement p = f * g;
          if (seen.insert(format_series(p)).second) next.push_back(std::move(p));
        }
      for (const PuiseuxElement& v : next) elems.push_back(v);
      frontier = std::move(next);
    }
  } else {
    elems = gens;
  }
  for (const TailSpec& t : tails) {
    if (t.comp < 0 || t.comp >= shape.r()) throw std::invalid_argument("bad tail component");
    for (int k = t.top; k >= pt.lo[t.comp]; --k)
      elems.push_back(PuiseuxElement::monomial(shape, t.comp, k));
  }

  // reduce on a window extended downward to the deepest product pole
  GrassPoint ext = pt;
  for (const PuiseuxElement& v : elems)
    for (int i = 0; i < shape.r(); ++i) {
      if (v.comp[i].prec < pt.hi[i])
        throw precision_error("closure product precision falls below the window");
      if (!v.comp[i].c.empty())
        ext.lo[i] = std::min(ext.lo[i], v.comp[i].c.begin()->first);
    }
  for (const PuiseuxElement& v : elems) insert_row(ext, v);

  // keep rows whose pivot lies inside the requested window
  for (size_t j = 0; j < ext.rows.size(); ++j)
    if (pt.in_window(ext.pivots[j])) {
      pt.rows.push_back(ext.rows[j]);
      pt.pivots.push_back(ext.pivots[j]);
    }
  return pt;
}

IndexReport index_report(const GrassPoint& pt) {
  IndexReport rep;
  int M = pt.max_filtration();
  rep.dim_ker = pt.filtration_dim(0);
  int dM = pt.filtration_dim(M);
  rep.dim_coker = pt.shape.n() * M - (dM - rep.dim_ker);
  rep.index = rep.dim_ker - rep.dim_coker;
  for (int m = 1; m <= M; ++m)
    rep.increments.emplace_back(m, pt.filtration_dim(m) - pt.filtration_dim(m - 1));
  int n = pt.shape.n();
  rep.certified = M >= 2 && rep.increments.size() >= 2 &&
                  rep.increments[M - 1].second == n && rep.increments[M - 2].second == n;
  for (int i = 0; i < pt.r(); ++i) {
    int deep = 0;
    for (const Pos& p : pt.pivots)
      if (p.comp == i && p.expo < -(M - 2) * pt.shape.e[i]) ++deep;
    if (deep == 0) rep.degenerate_components.push_back(i);
  }
  if (!rep.degenerate_components.empty()) rep.certified = false;
  return rep;
}

PuiseuxElement reduce(const GrassPoint& pt, const PuiseuxElement& v) {
  PuiseuxElement w = v;
  for (int i = 0; i < pt.r(); ++i) {
    w.comp[i] = w.comp[i].truncated(pt.hi[i]);
    if (!w.comp[i].c.empty() && w.comp[i].c.begin()->first < pt.lo[i])
      throw std::invalid_argument("element pole exceeds the window");
  }
  for (size_t j = 0; j < pt.rows.size(); ++j) {
    const Pos& p = pt.pivots[j];
    if (!w.comp[p.comp].knows(p.expo)) continue;
    Rat c = w.comp[p.comp].coeff(p.expo);
    if (c != 0) w += pt.rows[j].scaled(-c);
  }
  return w;
}

namespace {

struct Membership {
  bool known_zero = true;       // no known nonzero residual coefficient
  bool full_window = true;      // residual known on the whole window
  std::optional<Pos> witness;   // first known nonzero position
  Rat value;
};

Membership membership(const GrassPoint& pt, const PuiseuxElement& v) {
  PuiseuxElement res = v;
  for (int i = 0; i < pt.r(); ++i) {
    res.comp[i] = res.comp[i].truncated(pt.hi[i]);
    if (!res.comp[i].c.empty() && res.comp[i].c.begin()->first < pt.lo[i])
      throw std::invalid_argument("element pole exceeds the window");
  }
  // rows whose pivot coefficient is unknown cannot be applied; the positions
  // they touch are then undetermined in the residual
  std::set<std::pair<int, int>> contaminated;
  for (size_t j = 0; j < pt.rows.size(); ++j) {
    const Pos& p = pt.pivots[j];
    if (!res.comp[p.comp].knows(p.expo) || contaminated.count({p.comp, p.expo})) {
      for (int i = 0; i < pt.r(); ++i)
        for (const auto& [k, c] : pt.rows[j].comp[i].c) contaminated.insert({i, k});
      continue;
    }
    Rat c = res.comp[p.comp].coeff(p.expo);
    if (c != 0) res += pt.rows[j].scaled(-c);
  }
  Membership out;
  PosLess less{&pt.shape};
  if (!contaminated.empty()) out.full_window = false;
  for (int i = 0; i < pt.r(); ++i) {
    if (res.comp[i].prec < pt.hi[i]) out.full_window = false;
    for (const auto& [k, c] : res.comp[i].c) {
      if (contaminated.count({i, k})) continue;
      Pos p{i, k};
      if (!out.witness || less(p, *out.witness)) {
        out.witness = p;
        out.value = c;
      }
      out.known_zero = false;
    }
  }
  return out;
}

}  // namespace

bool contains(const GrassPoint& pt, const PuiseuxElement& v) {
  Membership m = membership(pt, v);
  if (m.known_zero && !m.full_window)
    throw precision_error("membership undetermined: residual unknown inside window");
  return m.known_zero;
}

CheckReport is_ring(const GrassPoint& pt) {
  Membership one = membership(pt, PuiseuxElement::one(pt.shape));
  if (!one.known_zero)
    return CheckReport::fail("1 not in U (residual at " + pos_str(*one.witness) + ")");
  bool partial = !one.full_window;
  for (size_t a = 0; a < pt.rows.size(); ++a)
    for (size_t b = a; b < pt.rows.size(); ++b) {
      PuiseuxElement prod = pt.rows[a] * pt.rows[b];
      bool in_range = true;
      for (int i = 0; i < pt.r(); ++i)
        if (!prod.comp[i].c.empty() && prod.comp[i].c.begin()->first < pt.lo[i])
          in_range = false;
      if (!in_range) continue;  // pole order beyond the representable window
      Membership m = membership(pt, prod);
      if (!m.known_zero)
        return CheckReport::fail("product of basis rows " + std::to_string(a) + "," +
                                 std::to_string(b) + " leaves U (residual at " +
                                 pos_str(*m.witness) + ")");
      if (!m.full_window) partial = true;
    }
  CheckReport rep = CheckReport::pass();
  if (partial) rep.params.emplace_back("verified", "partial window (product precision)");
  return rep;
}

CheckReport is_trace_stable(const GrassPoint& pt) {
  bool partial = false;
  for (size_t j = 0; j < pt.rows.size(); ++j) {
    PuiseuxElement tr = embed_base(trace(pt.rows[j]), pt.shape);
    bool in_range = true;
    for (int i = 0; i < pt.r(); ++i)
      if (!tr.comp[i].c.empty() && tr.comp[i].c.begin()->first < pt.lo[i]) in_range = false;
    if (!in_range)
      return CheckReport::inconclusive("trace of row " + std::to_string(j) +
                                       " falls below the window");
    Membership m = membership(pt, tr);
    if (!m.known_zero)
      return CheckReport::fail("trace of row " + std::to_string(j) +
                               " leaves U (residual at " + pos_str(*m.witness) + ")");
    if (!m.full_window) partial = true;
  }
  CheckReport rep = CheckReport::pass();
  if (partial) rep.params.emplace_back("verified", "partial window (trace precision)");
  return rep;
}

TraceSubspace trace_subspace(const GrassPoint& pt) {
  TraceSubspace out;
  const CoverShape base_shape({1});
  int qlo = -kExactPrec, qhi = kExactPrec;
  for (int i = 0; i < pt.r(); ++i) {
    qlo = std::max(qlo, ceil_div(pt.lo[i], pt.shape.e[i]));
    qhi = std::min(qhi, floor_div(pt.hi[i] - 1, pt.shape.e[i]) + 1);
  }
  out.base.shape = base_shape;
  out.base.lo = {qlo};
  out.base.hi = {qhi};
  for (const PuiseuxElement& row : pt.rows) {
    LSeries t = trace(row).truncated(qhi);
    if (t.c.empty()) continue;
    if (t.c.begin()->first < qlo) continue;  // trace pole below the base window
    insert_row(out.base, PuiseuxElement(base_shape, {t}));
  }
  out.base_index = index_report(out.base);

  // intersection U ∩ diagonal: solve for combinations of rows whose components
  // agree as base series and vanish at non-divisible exponents
  int nrows = static_cast<int>(pt.rows.size());
  std::vector<std::vector<Rat>> cons;
  auto add_constraint = [&](std::vector<Rat> c) {
    for (const Rat& x : c)
      if (x != 0) {
        cons.push_back(std::move(c));
        return;
      }
  };
  for (int i = 0; i < pt.r(); ++i)
    for (int k = pt.lo[i]; k < pt.hi[i]; ++k) {
      if (divides(pt.shape.e[i], k)) continue;
      std::vector<Rat> c(nrows);
      for (int j = 0; j < nrows; ++j) c[j] = pt.rows[j].comp[i].coeff(k);
      add_constraint(std::move(c));
    }
  for (int q = qlo; q < qhi; ++q)
    for (int i = 1; i < pt.r(); ++i) {
      std::vector<Rat> c(nrows);
      for (int j = 0; j < nrows; ++j)
        c[j] = pt.rows[j].comp[i].coeff(q * pt.shape.e[i]) -
               pt.rows[j].comp[0].coeff(q * pt.shape.e[0]);
      add_constraint(std::move(c));
    }
  std::vector<std::vector<Rat>> ker =
      cons.empty() ? std::vector<std::vector<Rat>>{} : kernel_basis(cons, nrows);
  if (cons.empty())
    for (int j = 0; j < nrows; ++j) {
      std::vector<Rat> x(nrows, Rat(0));
      x[j] = 1;
      ker.push_back(std::move(x));
    }

  // base series of the intersection elements
  GrassPoint inter;
  inter.shape = base_shape;
  inter.lo = {qlo};
  inter.hi = {qhi};
  for (const std::vector<Rat>& x : ker) {
    PuiseuxElement v(pt.shape);
    for (int j = 0; j < nrows; ++j) v += pt.rows[j].scaled(x[j]);
    std::map<int, Rat> f;
    for (int q = qlo; q < qhi; ++q) f[q] = v.comp[0].coeff(q * pt.shape.e[0]);
    insert_row(inter, PuiseuxElement(base_shape, {LSeries(std::move(f), qhi)}));
  }

  bool equal = inter.rows.size() == out.base.rows.size();
  std::string why;
  for (const PuiseuxElement& b : out.base.rows)
    if (!contains(inter, b)) {
      equal = false;
      why = "trace element not in the intersection";
      break;
    }
  for (const PuiseuxElement& b : inter.rows)
    if (equal && !contains(out.base, b)) {
      equal = false;
      why = "intersection element not a trace";
    }
  out.equals_intersection =
      equal ? CheckReport::pass() : CheckReport::fail(why.empty() ? "dimension mismatch" : why);
  return out;
}

GrassPoint dual(const GrassPoint& pt) {
  GrassPoint d;
  d.shape = pt.shape;
  d.lo.resize(pt.r());
  d.hi.resize(pt.r());
  std::vector<Pos> cols;
  for (int i = 0; i < pt.r(); ++i) {
    d.lo[i] = -pt.hi[i] - pt.shape.e[i] + 1;
    d.hi[i] = -pt.lo[i] - pt.shape.e[i] + 1;
    for (int b = d.lo[i]; b < d.hi[i]; ++b) cols.push_back({i, b});
  }
  std::sort(cols.begin(), cols.end(),
            [&](const Pos& a, const Pos& b) { return PosLess{&pt.shape}(a, b); });
  int ncols = static_cast<int>(cols.size());
  std::vector<std::vector<Rat>> mat;
  for (const PuiseuxElement& row : pt.rows) {
    std::vector<Rat> c(ncols);
    for (int j = 0; j < ncols; ++j) {
      int i = cols[j].comp;
      int a = -pt.shape.e[i] - cols[j].expo;
      c[j] = row.comp[i].knows(a) ? row.comp[i].coeff(a) * pt.shape.e[i] : Rat(0);
    }
    mat.push_back(std::move(c));
  }
  std::vector<std::vector<Rat>> ker =
      mat.empty() ? std::vector<std::vector<Rat>>{} : kernel_basis(mat, ncols);
  for (const std::vector<Rat>& x : ker) {
    PuiseuxElement v(pt.shape);
    for (int i = 0; i < pt.r(); ++i) v.comp[i].prec = d.hi[i];
    for (int j = 0; j < ncols; ++j)
      if (x[j] != 0) v.comp[cols[j].comp].c[cols[j].expo] = x[j];
    insert_row(d, std::move(v));
  }
  return d;
}

GrassPoint twist(const GrassPoint& pt, const PuiseuxElement& g) {
  GrassPoint t;
  t.shape = pt.shape;
  t.lo.resize(pt.r());
  t.hi.resize(pt.r());
  for (int i = 0; i < pt.r(); ++i) {
    if (g.comp[i].c.empty()) throw std::invalid_argument("twist by a non-invertible element");
    int di = g.comp[i].c.begin()->first;
    t.lo[i] = pt.lo[i] + di;
    t.hi[i] = sat_prec(std::min(static_cast<long>(pt.hi[i]) + di,
                                static_cast<long>(g.comp[i].prec) + pt.lo[i]));
    if (t.hi[i] <= t.lo[i]) throw precision_error("twist window collapses");
  }
  for (const PuiseuxElement& row : pt.rows) insert_row(t, row * g);
  return t;
}

PuiseuxElement project(const PuiseuxElement& v, const std::vector<int>& subset) {
  PuiseuxElement p(v.shape);
  for (int i = 0; i < v.shape.r(); ++i) p.comp[i].prec = v.comp[i].prec;
  for (int i : subset) p.comp[i] = v.comp[i];
  return p;
}

Decomposition decompose(const GrassPoint& pt) {
  Decomposition out;
  int r = pt.r();
  if (r < 2) {
    out.report = CheckReport::inconclusive("decomposition needs r >= 2");
    return out;
  }
  // subsets containing component 0 (each subset tested once, up to complement)
  for (unsigned mask = 0; mask < (1u << (r - 1)); ++mask) {
    std::vector<int> subset{0};
    for (int i = 1; i < r; ++i)
      if (mask & (1u << (i - 1))) subset.push_back(i);
    if (static_cast<int>(subset.size()) == r) continue;
    bool sep = true;
    for (const PuiseuxElement& row : pt.rows) {
      Membership m = membership(pt, project(row, subset));
      if (!m.known_zero) {
        sep = false;
        break;
      }
    }
    if (sep) out.separable_subsets.push_back(subset);
  }
  if (out.separable_subsets.empty()) {
    out.report = CheckReport::fail("no proper decomposition");
    return out;
  }
  // refine {0..r-1} by every separable subset
  std::vector<std::vector<int>> blocks{std::vector<int>{}};
  for (int i = 0; i < r; ++i) blocks[0].push_back(i);
  for (const std::vector<int>& s : out.separable_subsets) {
    std::vector<bool> in(r, false);
    for (int i : s) in[i] = true;
    std::vector<std::vector<int>> next;
    for (const std::vector<int>& b : blocks) {
      std::vector<int> a1, a2;
      for (int i : b) (in[i] ? a1 : a2).push_back(i);
      if (!a1.empty()) next.push_back(a1);
      if (!a2.empty()) next.push_back(a2);
    }
    blocks = std::move(next);
  }
  std::ostringstream desc;
  for (const auto& b : blocks) {
    desc << "{";
    for (size_t i = 0; i < b.size(); ++i) desc << (i ? "," : "") << b[i] + 1;
    desc << "}";
  }
  out.blocks = blocks;
  out.report = CheckReport::pass(desc.str());
  return out;
}

}  // namespace sgr
