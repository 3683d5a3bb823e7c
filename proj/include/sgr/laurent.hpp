#pragma once

#include <climits>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgr/rational.hpp"

namespace sgr {

struct shape_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Precision sentinel for exactly-known series (Laurent polynomials).
inline constexpr int kExactPrec = 1 << 24;

inline int sat_prec(long p) {
  if (p >= kExactPrec) return kExactPrec;
  if (p <= -kExactPrec) return -kExactPrec;
  return static_cast<int>(p);
}

inline int floor_div(int a, int b) {
  int q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
inline int ceil_div(int a, int b) { return -floor_div(-a, b); }
inline bool divides(int d, int a) { return a % d == 0; }

// Ramification profile (e_1,...,e_r) of the formal spectral cover.
struct CoverShape {
  std::vector<int> e;

  CoverShape() = default;
  explicit CoverShape(std::vector<int> ee) : e(std::move(ee)) {
    if (e.empty()) throw shape_error("shape needs at least one component");
    for (int x : e)
      if (x < 1) throw shape_error("shape entries must be positive");
  }
  int r() const { return static_cast<int>(e.size()); }
  int n() const {
    int s = 0;
    for (int x : e) s += x;
    return s;
  }
  bool operator==(const CoverShape&) const = default;
};

// One truncated Laurent series: exact coefficients for exponents < prec,
// unknown (not zero) at and beyond prec.
struct LSeries {
  std::map<int, Rat> c;
  int prec = kExactPrec;

  LSeries() = default;
  LSeries(std::map<int, Rat> cc, int p) : c(std::move(cc)), prec(p) { normalize(); }

  static LSeries monomial(int k, const Rat& coeff, int prec = kExactPrec) {
    LSeries s;
    s.prec = prec;
    if (coeff != 0 && k < prec) s.c[k] = coeff;
    return s;
  }
  static LSeries zero(int prec = kExactPrec) {
    LSeries s;
    s.prec = prec;
    return s;
  }

  void normalize() {
    for (auto it = c.begin(); it != c.end();) {
      if (it->second == 0 || it->first >= prec)
        it = c.erase(it);
      else
        ++it;
    }
  }

  bool is_zero() const { return c.empty(); }
  // Order of the lowest known term; for a (truncated) zero series this is prec.
  int ord() const { return c.empty() ? prec : c.begin()->first; }

  bool knows(int k) const { return k < prec; }
  Rat coeff(int k) const {
    if (k >= prec) throw precision_error("coefficient beyond precision");
    auto it = c.find(k);
    return it == c.end() ? Rat(0) : it->second;
  }

  LSeries truncated(int p) const {
    LSeries s;
    s.prec = std::min(prec, p);
    for (const auto& [k, v] : c)
      if (k < s.prec) s.c[k] = v;
    return s;
  }

  LSeries& operator+=(const LSeries& o) {
    prec = std::min(prec, o.prec);
    for (const auto& [k, v] : o.c) c[k] += v;
    normalize();
    return *this;
  }
  friend LSeries operator+(LSeries a, const LSeries& b) { return a += b; }

  LSeries operator-() const {
    LSeries s(*this);
    for (auto& [k, v] : s.c) v = -v;
    return s;
  }
  friend LSeries operator-(const LSeries& a, const LSeries& b) { return a + (-b); }

  friend LSeries operator*(const LSeries& a, const LSeries& b) {
    LSeries s;
    s.prec = sat_prec(std::min(static_cast<long>(a.prec) + b.ord(),
                               static_cast<long>(b.prec) + a.ord()));
    for (const auto& [ka, va] : a.c)
      for (const auto& [kb, vb] : b.c) {
        long k = static_cast<long>(ka) + kb;
        if (k < s.prec) s.c[static_cast<int>(k)] += va * vb;
      }
    s.normalize();
    return s;
  }

  LSeries scaled(const Rat& x) const {
    LSeries s(*this);
    if (x == 0) {
      s.c.clear();
      return s;
    }
    for (auto& [k, v] : s.c) v *= x;
    return s;
  }

  // Multiplication by z^k.
  LSeries shifted(int k) const {
    LSeries s;
    s.prec = sat_prec(static_cast<long>(prec) + k);
    for (const auto& [a, v] : c) s.c[a + k] = v;
    return s;
  }

  // Substitution z -> z^d (exponent dilation), used by the diagonal embedding.
  LSeries dilated(int d) const {
    LSeries s;
    s.prec = sat_prec(static_cast<long>(prec) * d - (d - 1));
    if (prec >= kExactPrec) s.prec = kExactPrec;
    for (const auto& [a, v] : c) s.c[a * d] = v;
    return s;
  }

  bool operator==(const LSeries&) const = default;
};

// Element of V = prod_i C((z_i)): one truncated series per component.
struct PuiseuxElement {
  CoverShape shape;
  std::vector<LSeries> comp;

  PuiseuxElement() = default;
  explicit PuiseuxElement(CoverShape s) : shape(std::move(s)), comp(shape.r()) {}
  PuiseuxElement(CoverShape s, std::vector<LSeries> cs)
      : shape(std::move(s)), comp(std::move(cs)) {
    if (static_cast<int>(comp.size()) != shape.r())
      throw shape_error("component count does not match shape");
  }

  static PuiseuxElement monomial(const CoverShape& s, int component, int expo,
                                 const Rat& coeff = Rat(1)) {
    PuiseuxElement v(s);
    v.comp[component] = LSeries::monomial(expo, coeff);
    return v;
  }
  static PuiseuxElement one(const CoverShape& s) {
    PuiseuxElement v(s);
    for (auto& ls : v.comp) ls = LSeries::monomial(0, Rat(1));
    return v;
  }

  bool is_zero() const {
    for (const auto& ls : comp)
      if (!ls.is_zero()) return false;
    return true;
  }

  void check_shape(const PuiseuxElement& o) const {
    if (shape != o.shape) throw shape_error("shape mismatch");
  }

  PuiseuxElement& operator+=(const PuiseuxElement& o) {
    check_shape(o);
    for (int i = 0; i < shape.r(); ++i) comp[i] += o.comp[i];
    return *this;
  }
  friend PuiseuxElement operator+(PuiseuxElement a, const PuiseuxElement& b) { return a += b; }
  PuiseuxElement operator-() const {
    PuiseuxElement v(*this);
    for (auto& ls : v.comp) ls = -ls;
    return v;
  }
  friend PuiseuxElement operator-(const PuiseuxElement& a, const PuiseuxElement& b) {
    return a + (-b);
  }
  friend PuiseuxElement operator*(const PuiseuxElement& a, const PuiseuxElement& b) {
    a.check_shape(b);
    PuiseuxElement v(a.shape);
    for (int i = 0; i < a.shape.r(); ++i) v.comp[i] = a.comp[i] * b.comp[i];
    return v;
  }
  PuiseuxElement scaled(const Rat& x) const {
    PuiseuxElement v(*this);
    for (auto& ls : v.comp) ls = ls.scaled(x);
    return v;
  }
  // Multiplication by the monomial z_1^{k_1}...z_r^{k_r}.
  PuiseuxElement shifted(const std::vector<int>& k) const {
    PuiseuxElement v(*this);
    for (int i = 0; i < shape.r(); ++i) v.comp[i] = v.comp[i].shifted(k[i]);
    return v;
  }
  PuiseuxElement truncated_at(const std::vector<int>& prec) const {
    PuiseuxElement v(*this);
    for (int i = 0; i < shape.r(); ++i) v.comp[i] = v.comp[i].truncated(prec[i]);
    return v;
  }
  bool operator==(const PuiseuxElement&) const = default;
};

// Multiplicative inverse of a series with nonzero lowest coefficient;
// precision drops to prec - 2*ord as usual for unit inversion.
LSeries inverse(const LSeries& s);

// Diagonal embedding C((z)) -> V, z -> (z_1^{e_1},...,z_r^{e_r}).
PuiseuxElement embed_base(const LSeries& f, const CoverShape& shape);

// Trace of V as a C((z))-algebra; roots-of-unity sums collapsed to the
// divisibility filter Tr_i(z_i^k) = e_i z^{k/e_i} [e_i | k].
LSeries trace(const PuiseuxElement& v);

// T2(a,b) = res_{z=0} tr(a b) dz, the coefficient of z^{-1} in trace(a*b).
Rat t2_pair(const PuiseuxElement& a, const PuiseuxElement& b);

// Exponents (a_1,...,a_r) of the normalizing monomial v_m with
// dim V+ / v_m V+ = m (signed). Rejects the omitted index m=(r-n)/2 for n>r.
std::vector<int> vm_exponents(int m, const CoverShape& shape);
PuiseuxElement vm_element(int m, const CoverShape& shape);

// True when (r-n) is even, m=(r-n)/2 and n>r (the omitted component).
bool is_omitted_index(int m, const CoverShape& shape);

// Series text format: components separated by ';', each a sum of terms
// 'c*zI^k' with c a rational p/q. "0" denotes the zero component.
PuiseuxElement parse_series(const std::string& text, const CoverShape& shape,
                            int prec_hint = kExactPrec);
LSeries parse_lseries(const std::string& text, int var_index /*1-based*/,
                      int prec_hint = kExactPrec);
std::string format_series(const PuiseuxElement& v);
std::string format_lseries(const LSeries& s, const std::string& var);

}  // namespace sgr
