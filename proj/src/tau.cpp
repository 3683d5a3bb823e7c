#include "sgr/tau.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sgr {

namespace {

std::string mono_str(const Mono& m) {
  if (m.f.empty()) return "1";
  std::string s;
  for (auto [v, p] : m.f) {
    if (!s.empty()) s += "*";
    s += (var_family(v) == FAM_X ? "x" : "t") + std::to_string(var_idx(v)) + "^(" +
         std::to_string(var_comp(v) + 1) + ")";
    if (p > 1) s += "^" + std::to_string(p);
  }
  return s;
}

}  // namespace

int x_degree(const Mono& m, int comp) {
  int d = 0;
  for (auto [v, p] : m.f)
    if (var_family(v) == FAM_X && var_comp(v) == comp) d += p;
  return d;
}

TPoly filter_x(const TPoly& f, const std::vector<int>& caps) {
  TPoly g(f.wbound);
  for (const auto& [m, v] : f.c) {
    bool keep = true;
    for (size_t i = 0; i < caps.size() && keep; ++i)
      if (x_degree(m, static_cast<int>(i)) > caps[i]) keep = false;
    if (keep) g.c[m] = v;
  }
  return g;
}

namespace {

// union-find over rows+columns joined by nonzero entries; a determinant whose
// sparsity pattern splits into blocks is the signed product of the block
// determinants, which keeps the column-subset expansion small
TPoly poly_det_blocked(const std::vector<std::vector<TPoly>>& mat,
                       const std::vector<int>* caps);

}  // namespace

TPoly poly_det(const std::vector<std::vector<TPoly>>& mat, const std::vector<int>* caps) {
  const int n = static_cast<int>(mat.size());
  if (n == 0) return TPoly::constant(1);
  if (n > 2) {
    std::vector<int> parent(2 * n);
    for (int i = 0; i < 2 * n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (!mat[i][j].is_zero()) parent[find(i)] = find(n + j);
    std::map<int, std::pair<std::vector<int>, std::vector<int>>> comps;
    for (int i = 0; i < n; ++i) comps[find(i)].first.push_back(i);
    for (int j = 0; j < n; ++j) comps[find(n + j)].second.push_back(j);
    if (comps.size() > 1) {
      std::vector<int> rowperm, colperm;
      TPoly out = TPoly::constant(1);
      for (const auto& [root, rc] : comps) {
        const auto& [rows, cols] = rc;
        if (rows.size() != cols.size()) return TPoly();  // some block is singular
        std::vector<std::vector<TPoly>> sub(rows.size(), std::vector<TPoly>(cols.size()));
        for (size_t a = 0; a < rows.size(); ++a)
          for (size_t b = 0; b < cols.size(); ++b) sub[a][b] = mat[rows[a]][cols[b]];
        out = out * poly_det_blocked(sub, caps);
        if (caps) out = filter_x(out, *caps);
        if (out.is_zero()) return out;
        rowperm.insert(rowperm.end(), rows.begin(), rows.end());
        colperm.insert(colperm.end(), cols.begin(), cols.end());
      }
      long inv = 0;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (rowperm[i] > rowperm[j]) ++inv;
          if (colperm[i] > colperm[j]) ++inv;
        }
      return (inv & 1) ? -out : out;
    }
  }
  return poly_det_blocked(mat, caps);
}

namespace {

TPoly poly_det_blocked(const std::vector<std::vector<TPoly>>& mat,
                       const std::vector<int>* caps) {
  const int n = static_cast<int>(mat.size());
  if (n == 0) return TPoly::constant(1);
  // expand row by row; state = set of columns already consumed
  std::map<std::uint32_t, TPoly> states;
  states[0] = TPoly::constant(1);
  for (int row = 0; row < n; ++row) {
    std::map<std::uint32_t, TPoly> next;
    for (const auto& [mask, acc] : states) {
      for (int col = 0; col < n; ++col) {
        if (mask & (1u << col)) continue;
        const TPoly& e = mat[row][col];
        if (e.is_zero()) continue;
        TPoly prod = acc * e;
        if (caps) prod = filter_x(prod, *caps);
        // sign: inversions added by assigning `col` after the used columns
        int inv = __builtin_popcount(mask >> (col + 1));
        if (inv & 1) prod = -prod;
        auto it = next.find(mask | (1u << col));
        if (it == next.end())
          next.emplace(mask | (1u << col), std::move(prod));
        else
          it->second += prod;
      }
    }
    states = std::move(next);
  }
  auto it = states.find((n < 32 ? (1u << n) : 0u) - 1u);
  return it == states.end() ? TPoly() : it->second;
}

}  // namespace

TPoly divide_linear(const TPoly& f, Var va, Var vb, const std::vector<int>* caps) {
  // split f by the exponent of va
  std::map<int, TPoly> part;
  int dmax = 0;
  for (const auto& [m, v] : f.c) {
    Mono rest;
    int d = 0;
    for (auto [w, p] : m.f) {
      if (w == va)
        d = p;
      else
        rest.f.emplace_back(w, p);
    }
    part[d].c[rest] = v;
    dmax = std::max(dmax, d);
  }
  for (auto& [d, p] : part) p.wbound = f.wbound;
  TPoly vbp = TPoly::variable(vb);
  // synthetic division: q_{d-1} = f_d + vb q_d, remainder = f_0 + vb q_0
  std::vector<TPoly> q(std::max(dmax, 1));
  TPoly carry;
  for (int d = dmax; d >= 1; --d) {
    TPoly qd = part.count(d) ? part[d] : TPoly();
    qd += vbp * carry;
    q[d - 1] = qd;
    carry = qd;
  }
  TPoly rem = part.count(0) ? part[0] : TPoly(f.wbound);
  rem += vbp * carry;
  rem = rem.truncated(f.wbound);
  if (caps) rem = filter_x(rem, *caps);
  if (!rem.is_zero()) throw std::runtime_error("linear division is not exact");
  TPoly out;
  for (int d = 0; d < static_cast<int>(q.size()); ++d) {
    if (q[d].is_zero()) continue;
    TPoly vad = TPoly::constant(1);
    for (int k = 0; k < d; ++k) vad = vad * TPoly::variable(va);
    out += q[d] * vad;
  }
  out.wbound = f.wbound >= kExactPrec ? kExactPrec : f.wbound - 1;
  out.normalize();
  if (caps) {
    // the quotient times (va - vb) must land inside the trusted region
    std::vector<int> qcaps = *caps;
    --qcaps[var_comp(va)];
    out = filter_x(out, qcaps);
  }
  return out;
}

std::vector<TPoly> complete_homogeneous(int kmax, int comp, int nvars, int wbound) {
  std::vector<TPoly> h(kmax + 1);
  h[0] = TPoly::constant(1, wbound);
  for (int k = 1; k <= kmax; ++k) h[k] = TPoly(wbound);
  for (int j = 1; j <= nvars; ++j) {
    TPoly xj = TPoly::variable(xvar(comp, j), wbound);
    for (int k = 1; k <= kmax; ++k) h[k] += xj * h[k - 1];
  }
  return h;
}

TPoly schur_x(const Partition& lam, int comp, int nvars, int wbound) {
  int l = lam.size();
  if (l == 0) return TPoly::constant(1, wbound);
  std::vector<TPoly> h = complete_homogeneous(std::min(lam.weight(), wbound), comp, nvars,
                                              kExactPrec);
  auto entry = [&](int k) {
    if (k < 0 || k > static_cast<int>(h.size()) - 1) return TPoly();  // exact zero
    return h[k];
  };
  std::vector<std::vector<TPoly>> m(l, std::vector<TPoly>(l));
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) m[i][j] = entry(lam.part(i) - i + j);
  return poly_det(m).truncated(wbound);
}

namespace {

// per-component sorted exponent profile, padded; lex order makes the Schur
// basis triangular
std::vector<int> mono_profile(const Mono& m, int r, int nvars) {
  std::vector<std::vector<int>> per(r);
  for (auto [v, p] : m.f) {
    if (var_family(v) != FAM_X)
      throw std::invalid_argument("expected a polynomial in the x variables");
    per[var_comp(v)].push_back(p);
  }
  std::vector<int> key;
  for (int i = 0; i < r; ++i) {
    std::sort(per[i].rbegin(), per[i].rend());
    per[i].resize(nvars, 0);
    key.insert(key.end(), per[i].begin(), per[i].end());
  }
  return key;
}

}  // namespace

TPoly x_to_t(const TPoly& x, int r, int nvars, int wbound) {
  TPoly rest = x;
  TPoly out(wbound);
  std::map<std::pair<int, std::vector<int>>, TPoly> cache;
  while (!rest.is_zero()) {
    // monomial with the lex-greatest sorted exponent profile
    auto best = rest.c.begin();
    std::vector<int> bestkey = mono_profile(best->first, r, nvars);
    for (auto it = std::next(rest.c.begin()); it != rest.c.end(); ++it) {
      std::vector<int> key = mono_profile(it->first, r, nvars);
      if (key > bestkey) {
        best = it;
        bestkey = key;
      }
    }
    Rat coef = best->second;
    // profile -> partition tuple
    TPoly basis = TPoly::constant(1);
    TPoly chis = TPoly::constant(1, wbound);
    for (int i = 0; i < r; ++i) {
      std::vector<int> parts(bestkey.begin() + i * nvars, bestkey.begin() + (i + 1) * nvars);
      while (!parts.empty() && parts.back() == 0) parts.pop_back();
      Partition lam(parts);
      auto key = std::make_pair(i, parts);
      auto it = cache.find(key);
      if (it == cache.end())
        it = cache.emplace(key, schur_x(lam, i, nvars, kExactPrec)).first;
      basis = basis * it->second;
      chis = chis * schur_chi(lam, i, wbound, FAM_T);
    }
    rest += basis.scaled(-coef);
    out += chis.scaled(coef);
  }
  return out;
}

TPoly tau_abel(const GrassPoint& pt, int N, int W) {
  const int r = pt.r();
  PuiseuxElement zn(pt.shape);
  for (int i = 0; i < r; ++i) zn.comp[i] = LSeries::monomial(N, Rat(1));
  GrassPoint t = twist(pt, zn);

  std::vector<const PuiseuxElement*> basis;
  int neg_rows = 0;
  for (size_t j = 0; j < t.rows.size(); ++j) {
    if (t.pivots[j].expo >= 0)
      basis.push_back(&t.rows[j]);
    else
      ++neg_rows;
  }
  int neg_positions = 0;
  for (int i = 0; i < r; ++i) neg_positions += std::max(0, -t.lo[i]);
  if (neg_rows != neg_positions)
    throw hypothesis_error("V != V+ + z^N U on the window (N too small)");
  if (static_cast<int>(basis.size()) != N * r)
    throw hypothesis_error("V+ intersection has wrong dimension " +
                           std::to_string(basis.size()) + " != " + std::to_string(N * r));

  std::vector<int> caps(r, W + N * (N - 1) / 2);
  for (int i = 0; i < r; ++i)
    if (t.hi[i] <= caps[i])
      throw precision_error("window precision too small for the Abel determinant");

  const int dim = N * r;
  std::vector<std::vector<TPoly>> m(dim, std::vector<TPoly>(dim));
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < r; ++i)
      for (int k = 1; k <= N; ++k) {
        TPoly e(W + r * N * (N - 1) / 2);
        for (const auto& [a, v] : basis[j]->comp[i].c) {
          if (a > caps[i] || a > e.wbound) continue;
          Mono mono;
          if (a > 0) mono.f.emplace_back(xvar(i, k), a);
          e.c[mono] += v;
        }
        e.normalize();
        m[j][(i * N) + (k - 1)] = e;
      }

  TPoly det = poly_det(m, &caps);
  for (int i = 0; i < r; ++i)
    for (int k = 1; k <= N; ++k)
      for (int l = k + 1; l <= N; ++l) {
        det = divide_linear(det, xvar(i, k), xvar(i, l), &caps);
        --caps[i];
      }
  TPoly out(W);
  for (const auto& [mono, v] : det.c)
    if (mono.weight() <= W) out.c[mono] = v;
  return out;
}

TPoly tau_abel_oracle(const GrassPoint& pt, int N, int W) {
  const int r = pt.r();
  int neg_positions = 0;
  for (int i = 0; i < r; ++i) {
    if (pt.lo[i] > 0) throw std::invalid_argument("window does not reach the poles");
    if (pt.hi[i] < W) throw precision_error("window precision too small for the oracle");
    neg_positions += -pt.lo[i];
  }
  for (const Pos& p : pt.pivots)
    if (p.expo >= 0)
      throw std::invalid_argument("point has a kernel row; oracle needs a transverse point");
  if (static_cast<int>(pt.rows.size()) != neg_positions)
    throw std::invalid_argument("row count does not match the negative window");

  std::vector<std::vector<TPoly>> hs;
  for (int i = 0; i < r; ++i) hs.push_back(complete_homogeneous(W, i, N, kExactPrec));

  const int dim = neg_positions;
  std::vector<std::vector<TPoly>> m(dim, std::vector<TPoly>(dim));
  for (int j = 0; j < dim; ++j) {
    int col = 0;
    for (int i = 0; i < r; ++i)
      for (int b = pt.lo[i]; b < 0; ++b, ++col) {
        TPoly e;
        for (int a = 0; a <= W; ++a) {
          auto it = pt.rows[j].comp[i].c.find(b + a);
          if (it == pt.rows[j].comp[i].c.end()) continue;
          e += hs[i][a].scaled(it->second);
        }
        e.wbound = W;
        e.normalize();
        m[j][col] = e;
      }
  }
  std::vector<int> caps(r, W);
  TPoly det = poly_det(m, &caps);
  TPoly out(W);
  for (const auto& [mono, v] : det.c)
    if (mono.weight() <= W) out.c[mono] = v;
  return out;
}

namespace {

GrassPoint index_reduced(const GrassPoint& pt, int m) {
  if (m == 0) return pt;
  std::vector<int> a = vm_exponents(m, pt.shape);
  PuiseuxElement g(pt.shape);
  for (int i = 0; i < pt.r(); ++i) g.comp[i] = LSeries::monomial(-a[i], Rat(1));
  return twist(pt, g);
}

TPoly normalized_lowest(TPoly f) {
  if (f.is_zero()) return f;
  int w0 = f.wbound + 1;
  for (const auto& [m, v] : f.c) w0 = std::min(w0, m.weight());
  const Mono* lead = nullptr;
  for (const auto& [m, v] : f.c)
    if (m.weight() == w0 && !lead) lead = &m;
  Rat c = f.c.at(*lead);
  return f.scaled(1 / c);
}

}  // namespace

TPoly tau_t(const GrassPoint& pt, int W) {
  IndexReport rep = index_report(pt);
  if (!rep.certified) throw precision_error("index not certified; enlarge the window");
  if (is_omitted_index(rep.index, pt.shape))
    throw std::invalid_argument("index (r-n)/2 is not supported");
  GrassPoint red = index_reduced(pt, rep.index);

  const int ncap = std::max(W, 1) + 4;
  TPoly x;
  int nused = -1;
  for (int N = std::max(W, 1); N <= ncap; ++N) {
    try {
      x = tau_abel(red, N, W);
      nused = N;
      break;
    } catch (const hypothesis_error&) {
      if (N == ncap) throw;
    }
  }
  return normalized_lowest(x_to_t(x, pt.r(), nused, W));
}

namespace {

// reduction against the echelon basis with per-component precision caps;
// rows whose pivot coefficient is undetermined poison their whole support
std::pair<PuiseuxElement, std::set<std::pair<int, int>>> reduce_partial(
    const GrassPoint& pt, const PuiseuxElement& v, const std::vector<int>& prec) {
  PuiseuxElement res = v;
  for (int i = 0; i < pt.r(); ++i) {
    res.comp[i] = res.comp[i].truncated(prec[i]);
    res.comp[i].prec = prec[i];
  }
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
  return {res, contaminated};
}

// kernel of the (rows x r) rational constraint matrix
std::vector<std::vector<Rat>> small_kernel(std::vector<std::vector<Rat>> m, int ncols) {
  std::vector<int> pivot_col;
  size_t row = 0;
  for (int col = 0; col < ncols && row < m.size(); ++col) {
    size_t sel = row;
    while (sel < m.size() && m[sel][col] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    Rat inv = 1 / m[row][col];
    for (int c2 = 0; c2 < ncols; ++c2) m[row][c2] *= inv;
    for (size_t r2 = 0; r2 < m.size(); ++r2) {
      if (r2 == row || m[r2][col] == 0) continue;
      Rat f = m[r2][col];
      for (int c2 = 0; c2 < ncols; ++c2) m[r2][c2] -= f * m[row][c2];
    }
    pivot_col.push_back(col);
    ++row;
  }
  std::vector<std::vector<Rat>> kernel;
  for (int col = 0; col < ncols; ++col) {
    if (std::find(pivot_col.begin(), pivot_col.end(), col) != pivot_col.end()) continue;
    std::vector<Rat> v(ncols, Rat(0));
    v[col] = 1;
    for (size_t p = 0; p < pivot_col.size(); ++p) v[pivot_col[p]] = -m[p][col];
    kernel.push_back(std::move(v));
  }
  return kernel;
}

std::set<Mono> collect_monomials(const BakerFunction& ba, int wmax) {
  std::set<Mono> monos;
  monos.insert(Mono{});
  for (const auto& comp : ba.num)
    for (const auto& [c, poly] : comp)
      for (const auto& [m, v] : poly.c)
        if (m.weight() <= wmax) monos.insert(m);
  return monos;
}

}  // namespace

namespace {

// shared construction: numerators for z-exponents clo..chi, where num[j][c] is
// valid through weight min(W, wt - c) with wt the weight of the tau sections
BakerFunction baker_core(const GrassPoint& pt, int u, int W, int wt, int clo, int chi) {
  const int r = pt.r();
  IndexReport rep = index_report(pt);
  if (!rep.certified) throw precision_error("index not certified; enlarge the window");
  if (is_omitted_index(rep.index, pt.shape))
    throw std::invalid_argument("index (r-n)/2 is not supported");

  BakerFunction ba;
  ba.shape = pt.shape;
  ba.u = u;
  ba.index_m = rep.index;
  ba.zbound = chi;
  std::vector<int> a = vm_exponents(rep.index, pt.shape);
  for (int j = 0; j < r; ++j) ba.pref.push_back(a[j] - (j == u ? 1 : 0));

  ba.tau = tau_t(pt, wt);
  if (ba.tau.is_zero())
    throw std::runtime_error("tau vanishes through the weight bound; cannot form the BA data");

  ba.num.resize(r);
  ba.twist_tau.resize(r);
  for (int j = 0; j < r; ++j) {
    TPoly tauj;
    if (j == u) {
      tauj = ba.tau;
    } else {
      PuiseuxElement g = PuiseuxElement::one(pt.shape);
      g.comp[u] = LSeries::monomial(1, Rat(1));
      g.comp[j] = LSeries::monomial(-1, Rat(1));
      tauj = tau_t(twist(pt, g), wt);
    }
    ba.twist_tau[j] = tauj;
    std::vector<TPoly> sc = shift_tau(tauj, j, +1, wt + 1);
    std::vector<TPoly> ep(W + 1);
    for (int k = 0; k <= W; ++k) ep[k] = negate_times(power_sum(k, j, wt, FAM_T));
    for (int c = clo; c <= chi; ++c) {
      int wb = std::min(W, wt - c);
      if (wb < 0) continue;
      TPoly acc(wb);
      for (int k = std::max(0, -c); k <= wb && k + c <= wt; ++k)
        acc += (ep[k] * sc[k + c]).truncated(wb);
      acc.wbound = wb;
      acc.normalize();
      ba.num[j][c] = acc;
    }
  }

  // per-component normalization: the tau sections were normalized one by one,
  // so solve for the scalars that make every coefficient vector land in U
  std::vector<std::vector<Rat>> constraints;
  for (const Mono& mono : collect_monomials(ba, W)) {
    // entries above wt - weight(mono) are outside their weight bound, so the
    // coefficient vector is truncated there and its precision says so
    const int cmax = std::min(chi, wt - mono.weight());
    if (cmax < clo) continue;
    std::vector<int> prec(r);
    for (int j = 0; j < r; ++j) prec[j] = std::min(pt.hi[j], ba.pref[j] + cmax + 1);
    std::vector<PuiseuxElement> res(r);
    std::set<std::pair<int, int>> contaminated;
    for (int j = 0; j < r; ++j) {
      PuiseuxElement vj(pt.shape);
      std::map<int, Rat> cc;
      for (const auto& [c, poly] : ba.num[j])
        if (c <= cmax && mono.weight() <= poly.wbound) {
          Rat x = poly.coeff(mono);
          if (x != 0) cc[c + ba.pref[j]] = x;
        }
      vj.comp[j] = LSeries(std::move(cc), prec[j]);
      bool in_range = true;
      for (const auto& [k, x] : vj.comp[j].c)
        if (k < pt.lo[j]) in_range = false;
      if (!in_range) continue;  // too deep to constrain on this window
      auto [rj, cont] = reduce_partial(pt, vj, prec);
      res[j] = rj;
      contaminated.insert(cont.begin(), cont.end());
    }
    for (int i = 0; i < r; ++i)
      for (int k = pt.lo[i]; k < prec[i]; ++k) {
        if (contaminated.count({i, k})) continue;
        std::vector<Rat> row(r, Rat(0));
        bool nonzero = false;
        for (int j = 0; j < r; ++j) {
          if (res[j].comp.empty()) continue;
          auto it = res[j].comp[i].c.find(k);
          if (it != res[j].comp[i].c.end()) {
            row[j] = it->second;
            nonzero = true;
          }
        }
        if (nonzero) constraints.push_back(std::move(row));
      }
  }
  std::vector<std::vector<Rat>> kernel = small_kernel(std::move(constraints), r);
  if (kernel.empty())
    throw std::runtime_error("BA normalization has no solution (tau data inconsistent)");
  std::vector<Rat> d;
  for (int seed = 1; seed <= 64 && d.empty(); ++seed) {
    std::vector<Rat> trial(r, Rat(0));
    Rat w(1);
    for (const auto& kv : kernel) {
      for (int j = 0; j < r; ++j) trial[j] += w * kv[j];
      w *= seed;
    }
    bool ok = true;
    for (int j = 0; j < r; ++j)
      if (trial[j] == 0) ok = false;
    if (ok) d = std::move(trial);
  }
  if (d.empty())
    throw std::runtime_error("BA normalization solutions always vanish on some component");
  Rat scale = 1 / d[u];
  ba.calib.resize(r);
  for (int j = 0; j < r; ++j) {
    Rat f = d[j] * scale;
    ba.calib[j] = f;
    ba.twist_tau[j] = ba.twist_tau[j].scaled(f);
    if (f == 1) continue;
    for (auto& [c, poly] : ba.num[j]) poly = poly.scaled(f);
  }
  return ba;
}

}  // namespace

BakerFunction baker(const GrassPoint& pt, int u, int W, int zbound) {
  return baker_core(pt, u, W, W + zbound, -zbound, zbound);
}

BakerFunction baker_window(const GrassPoint& pt, int u, int W, int wt) {
  if (wt < W) throw std::invalid_argument("tau weight below the coefficient weight bound");
  return baker_core(pt, u, W, wt, -W, wt);
}

BakerFunction adjoint_baker(const GrassPoint&, const GrassPoint& dual_pt, int u, int W,
                            int zbound) {
  BakerFunction ba = baker(dual_pt, u, W, zbound);
  ba.tau = negate_times(ba.tau);
  for (auto& tw : ba.twist_tau) tw = negate_times(tw);
  for (auto& comp : ba.num)
    for (auto& [c, poly] : comp) poly = negate_times(poly);
  return ba;
}

BakerFunction adjoint_baker_window(const GrassPoint&, const GrassPoint& dual_pt, int u, int W,
                                   int wt) {
  BakerFunction ba = baker_window(dual_pt, u, W, wt);
  ba.tau = negate_times(ba.tau);
  for (auto& tw : ba.twist_tau) tw = negate_times(tw);
  for (auto& comp : ba.num)
    for (auto& [c, poly] : comp) poly = negate_times(poly);
  return ba;
}

BakerFunction adjoint_baker(const GrassPoint& pt, int u, int W, int zbound) {
  return adjoint_baker(pt, dual(pt), u, W, zbound);
}

PuiseuxElement ba_coefficient_vector(const BakerFunction& ba, const Mono& mono,
                                     const GrassPoint& pt) {
  PuiseuxElement v(ba.shape);
  for (int j = 0; j < ba.shape.r(); ++j) {
    std::map<int, Rat> cc;
    for (const auto& [c, poly] : ba.num[j])
      if (mono.weight() <= poly.wbound) {
        Rat x = poly.coeff(mono);
        if (x != 0) cc[c + ba.pref[j]] = x;
      }
    v.comp[j] = LSeries(std::move(cc), std::min(pt.hi[j], ba.pref[j] + ba.zbound + 1));
  }
  return v;
}

CheckReport verify_ba_spans(const GrassPoint& pt, const BakerFunction& ba) {
  bool partial = false;
  int checked = 0;
  for (const Mono& mono : collect_monomials(ba, ba.tau.wbound)) {
    PuiseuxElement v = ba_coefficient_vector(ba, mono, pt);
    bool in_range = true;
    for (int j = 0; j < pt.r(); ++j)
      if (!v.comp[j].c.empty() && v.comp[j].c.begin()->first < pt.lo[j]) in_range = false;
    if (!in_range) {
      partial = true;
      continue;
    }
    try {
      if (!contains(pt, v))
        return CheckReport::fail("coefficient vector of " + mono_str(mono) + " leaves U");
    } catch (const precision_error&) {
      partial = true;
      continue;
    }
    ++checked;
  }
  CheckReport rep = CheckReport::pass();
  rep.params.emplace_back("monomials", std::to_string(checked));
  if (partial) rep.params.emplace_back("verified", "partial window");
  return rep;
}

}  // namespace sgr
