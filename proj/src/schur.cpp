#include "sgr/schur.hpp"

#include <algorithm>
#include <sstream>

namespace sgr {

std::string Partition::str() const {
  std::ostringstream out;
  out << "(";
  for (size_t i = 0; i < parts.size(); ++i) out << (i ? "," : "") << parts[i];
  out << ")";
  return out.str();
}

namespace {
void enum_partitions(int remaining, int maxpart, std::vector<int>& cur,
                     std::vector<Partition>& out, bool exact) {
  if (remaining == 0 || !exact) out.emplace_back(cur);
  if (remaining == 0) return;
  for (int p = std::min(remaining, maxpart); p >= 1; --p) {
    cur.push_back(p);
    enum_partitions(remaining - p, p, cur, out, exact);
    cur.pop_back();
  }
}
}  // namespace

std::vector<Partition> partitions_up_to(int w) {
  std::vector<Partition> out;
  out.emplace_back();  // empty diagram
  for (int k = 1; k <= w; ++k) {
    std::vector<Partition> of = partitions_of(k);
    out.insert(out.end(), of.begin(), of.end());
  }
  return out;
}

std::vector<Partition> partitions_of(int w) {
  std::vector<Partition> out;
  std::vector<int> cur;
  if (w == 0) {
    out.emplace_back();
    return out;
  }
  enum_partitions(w, w, cur, out, true);
  return out;
}

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono m;
  m.f.reserve(a.f.size() + b.f.size());
  size_t i = 0, j = 0;
  while (i < a.f.size() || j < b.f.size()) {
    if (j == b.f.size() || (i < a.f.size() && a.f[i].first < b.f[j].first))
      m.f.push_back(a.f[i++]);
    else if (i == a.f.size() || b.f[j].first < a.f[i].first)
      m.f.push_back(b.f[j++]);
    else {
      m.f.emplace_back(a.f[i].first, a.f[i].second + b.f[j].second);
      ++i, ++j;
    }
  }
  return m;
}

int TPoly::ord() const {
  int w = wbound >= kExactPrec ? kExactPrec : wbound + 1;
  for (const auto& [m, v] : c) w = std::min(w, m.weight());
  return w;
}

Rat TPoly::coeff(const Mono& m) const {
  if (m.weight() > wbound) throw weight_error("coefficient beyond weight bound");
  auto it = c.find(m);
  return it == c.end() ? Rat(0) : it->second;
}

TPoly TPoly::truncated(int wb) const {
  TPoly p(std::min(wbound, wb));
  for (const auto& [m, v] : c)
    if (m.weight() <= p.wbound) p.c[m] = v;
  return p;
}

TPoly& TPoly::operator+=(const TPoly& o) {
  wbound = std::min(wbound, o.wbound);
  for (const auto& [m, v] : o.c) c[m] += v;
  normalize();
  return *this;
}

TPoly TPoly::operator-() const {
  TPoly p(*this);
  for (auto& [m, v] : p.c) v = -v;
  return p;
}

TPoly operator*(const TPoly& a, const TPoly& b) {
  TPoly p(sat_prec(std::min(static_cast<long>(a.wbound) + b.ord(),
                            static_cast<long>(b.wbound) + a.ord())));
  for (const auto& [ma, va] : a.c) {
    int wa = ma.weight();
    for (const auto& [mb, vb] : b.c) {
      if (wa + mb.weight() > p.wbound) continue;
      p.c[mono_mul(ma, mb)] += va * vb;
    }
  }
  p.normalize();
  return p;
}

TPoly TPoly::scaled(const Rat& x) const {
  TPoly p(*this);
  if (x == 0) {
    p.c.clear();
    return p;
  }
  for (auto& [m, v] : p.c) v *= x;
  return p;
}

std::string TPoly::str() const {
  if (c.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, v] : c) {
    if (!first) out << " + ";
    first = false;
    out << v.get_str();
    for (auto [var, p] : m.f) {
      const char* fam = var_family(var) == FAM_X ? "x" : "t";
      out << "*" << fam << var_idx(var) << "(" << var_comp(var) + 1 << ")";
      if (p > 1) out << "^" << p;
    }
  }
  return out.str();
}

TPoly derivative(const TPoly& f, Var v) {
  TPoly p(f.wbound >= kExactPrec ? kExactPrec
                                 : std::max(0, f.wbound - var_weight(v)));
  for (const auto& [m, coef] : f.c) {
    for (size_t i = 0; i < m.f.size(); ++i) {
      if (m.f[i].first != v) continue;
      Mono d = m;
      int e = d.f[i].second;
      if (e == 1)
        d.f.erase(d.f.begin() + i);
      else
        d.f[i].second = e - 1;
      p.c[d] += coef * e;
      break;
    }
  }
  p.normalize();
  return p;
}

namespace {
TPoly drop_if(const TPoly& f, auto pred) {
  TPoly p(f.wbound);
  for (const auto& [m, v] : f.c) {
    bool keep = true;
    for (auto [var, e] : m.f)
      if (pred(var)) {
        keep = false;
        break;
      }
    if (keep) p.c[m] = v;
  }
  return p;
}
}  // namespace

TPoly set_family_zero(const TPoly& f, int family) {
  return drop_if(f, [&](Var v) { return var_family(v) == family; });
}

TPoly set_component_zero(const TPoly& f, int family, int comp) {
  return drop_if(f, [&](Var v) { return var_family(v) == family && var_comp(v) == comp; });
}

TPoly negate_times(const TPoly& f) {
  TPoly p(f.wbound);
  for (const auto& [m, v] : f.c) {
    int d = 0;
    for (auto [var, e] : m.f)
      if (var_family(var) < 4) d += e;
    p.c[m] = (d % 2) ? -v : v;
  }
  return p;
}

TPoly rename_family(const TPoly& f, int from, int to) {
  TPoly p(f.wbound);
  for (const auto& [m, v] : f.c) {
    Mono r = m;
    for (auto& [var, e] : r.f) {
      if (var_family(var) == from) var = tvar(to, var_comp(var), var_idx(var));
      else if (var_family(var) == to)
        throw std::invalid_argument("rename_family: target family already present");
    }
    std::sort(r.f.begin(), r.f.end());
    p.c[r] += v;
  }
  p.normalize();
  return p;
}

TPoly power_sum(int k, int j, int wbound, int fam) {
  if (k > wbound) throw weight_error("power_sum index exceeds weight bound");
  // k p_k = sum_{i=1}^{k} i t_i p_{k-i}
  std::vector<TPoly> p(k + 1);
  p[0] = TPoly::constant(1, wbound);
  for (int d = 1; d <= k; ++d) {
    TPoly acc(wbound);
    for (int i = 1; i <= d; ++i)
      acc += p[d - i].truncated(wbound) * TPoly::variable(tvar(fam, j, i), wbound).scaled(i);
    p[d] = acc.scaled(rat(1, d));
    p[d].wbound = wbound;
    p[d].normalize();
  }
  p[k].wbound = wbound;
  return p[k];
}

TPoly schur_chi(const Partition& lam, int j, int wbound, int fam) {
  if (lam.weight() > wbound) throw weight_error("schur_chi weight exceeds bound");
  int l = lam.size();
  if (l == 0) return TPoly::constant(1, wbound);
  // det(p_{lam_i - i + j'})_{1<=i,j'<=l} by expansion along the first column
  std::vector<std::vector<TPoly>> M(l, std::vector<TPoly>(l));
  for (int i = 0; i < l; ++i)
    for (int jj = 0; jj < l; ++jj) {
      int idx = lam.part(i) - i + jj;
      M[i][jj] = idx < 0 ? TPoly(wbound) : power_sum(idx, j, wbound, fam);
    }
  // Laplace over rows with a bitmask memo on column subsets
  std::map<std::pair<int, unsigned>, TPoly> memo;
  auto det = [&](auto&& self, int row, unsigned cols) -> TPoly {
    if (row == l) return TPoly::constant(1, wbound);
    auto key = std::make_pair(row, cols);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    TPoly acc(wbound);
    int sign = 1;
    for (int jj = 0; jj < l; ++jj) {
      if (!(cols & (1u << jj))) continue;
      if (!M[row][jj].is_zero())
        acc += (M[row][jj] * self(self, row + 1, cols & ~(1u << jj))).scaled(sign);
      sign = -sign;
    }
    acc.wbound = wbound;
    memo[key] = acc;
    return acc;
  };
  TPoly out = det(det, 0, (1u << l) - 1);
  out.wbound = wbound;
  return out;
}

TPoly apply_tilde(const TPoly& g, const TPoly& f, int sign) {
  // empty operator sum is exactly zero; += takes the min weight bound
  TPoly acc;
  for (const auto& [m, coef] : g.c) {
    TPoly term = f;
    Rat scale = coef;
    for (auto [var, e] : m.f) {
      int i = var_idx(var);
      for (int rep = 0; rep < e; ++rep) {
        term = derivative(term, var);
        scale /= i;
        if (sign < 0) scale = -scale;
      }
    }
    acc += term.scaled(scale);
  }
  return acc;
}

TPoly chi_derivative(const Partition& lam, int j, const TPoly& f, int sign) {
  int wb = lam.weight();
  TPoly chi = schur_chi(lam, j, std::max(wb, 1), FAM_T);
  // the operator polynomial itself is exact; widen its bound so apply_tilde
  // is limited only by f's knowledge
  chi.wbound = kExactPrec;
  return apply_tilde(chi, f, sign);
}

std::vector<Partition> pieri(const Partition& lam, int m) {
  std::vector<Partition> out;
  int rows = lam.size() + 1;
  std::vector<int> mu(rows, 0);
  auto rec = [&](auto&& self, int row, int left) -> void {
    if (row == rows) {
      if (left == 0) {
        std::vector<int> v;
        for (int x : mu)
          if (x > 0) v.push_back(x);
        out.emplace_back(std::move(v));
      }
      return;
    }
    int lo = lam.part(row);
    int hi = row == 0 ? lam.part(0) + left : std::min(lam.part(row - 1), lo + left);
    for (int x = lo; x <= hi; ++x) {
      if (x - lo > left) break;
      mu[row] = x;
      self(self, row + 1, left - (x - lo));
    }
    mu[row] = lam.part(row);
  };
  rec(rec, 0, m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Partition> pieri_down(const Partition& lam, int m) {
  // mu <= lam with lam/mu a horizontal m-strip: lam_i >= mu_i >= lam_{i+1}
  std::vector<Partition> out;
  int rows = lam.size();
  std::vector<int> mu(rows, 0);
  auto rec = [&](auto&& self, int row, int left) -> void {
    if (row == rows) {
      if (left == 0) {
        std::vector<int> v;
        for (int x : mu)
          if (x > 0) v.push_back(x);
        out.emplace_back(std::move(v));
      }
      return;
    }
    int hi = lam.part(row);
    int lo = std::max(lam.part(row + 1), hi - left);
    for (int x = hi; x >= lo; --x) {
      mu[row] = x;
      self(self, row + 1, left - (hi - x));
    }
    return;
  };
  rec(rec, 0, m);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TPoly d_operator(const Partition& lam, int m, int j, const TPoly& f, int sign) {
  TPoly acc;
  for (const Partition& mu : pieri_down(lam, m))
    acc += set_component_zero(chi_derivative(mu, j, f, sign), FAM_T, j);
  return acc;
}

std::vector<TPoly> shift_tau(const TPoly& f, int j, int sign, int zprec) {
  std::vector<TPoly> out;
  out.reserve(zprec);
  for (int i = 0; i < zprec; ++i) {
    TPoly pi = power_sum(i, j, std::max(i, 1), FAM_T);
    pi.wbound = kExactPrec;
    out.push_back(apply_tilde(pi, f, sign));
  }
  return out;
}

}  // namespace sgr
