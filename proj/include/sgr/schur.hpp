#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sgr/laurent.hpp"
#include "sgr/rational.hpp"

namespace sgr {

struct weight_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Young diagram: weakly decreasing positive parts.
struct Partition {
  std::vector<int> parts;

  Partition() = default;
  Partition(std::initializer_list<int> p) : parts(p) { validate(); }
  explicit Partition(std::vector<int> p) : parts(std::move(p)) { validate(); }

  void validate() {
    for (size_t i = 0; i < parts.size(); ++i) {
      if (parts[i] < 1) throw std::invalid_argument("partition parts must be positive");
      if (i && parts[i] > parts[i - 1])
        throw std::invalid_argument("partition parts must be weakly decreasing");
    }
  }
  int size() const { return static_cast<int>(parts.size()); }
  int part(int i) const { return i < size() ? parts[i] : 0; }
  int weight() const {
    int w = 0;
    for (int p : parts) w += p;
    return w;
  }
  auto operator<=>(const Partition&) const = default;
  std::string str() const;
};

// All partitions of weight <= w (optionally exactly w).
std::vector<Partition> partitions_up_to(int w);
std::vector<Partition> partitions_of(int w);

// Variable ids for the graded polynomial ring.
// Families 0..3 are time families (t, s, t', t''): variable t_i^{(j)} has weight i.
// Family 8 holds auxiliary weight-1 variables (points x_k^{(j)}).
using Var = std::uint32_t;

enum TimeFamily : int { FAM_T = 0, FAM_S = 1, FAM_TP = 2, FAM_TPP = 3 };
inline constexpr int FAM_X = 8;

inline Var tvar(int family, int comp, int idx) {
  return (static_cast<Var>(family) << 28) | (static_cast<Var>(comp) << 20) |
         static_cast<Var>(idx);
}
inline Var xvar(int comp, int idx) { return tvar(FAM_X, comp, idx); }
inline int var_family(Var v) { return static_cast<int>(v >> 28); }
inline int var_comp(Var v) { return static_cast<int>((v >> 20) & 0xff); }
inline int var_idx(Var v) { return static_cast<int>(v & 0xfffff); }
inline int var_weight(Var v) { return var_family(v) < 4 ? var_idx(v) : 1; }

// Sorted exponent vector (var, power), power > 0.
struct Mono {
  std::vector<std::pair<Var, int>> f;

  int weight() const {
    int w = 0;
    for (auto [v, p] : f) w += var_weight(v) * p;
    return w;
  }
  int degree() const {
    int d = 0;
    for (auto [v, p] : f) d += p;
    return d;
  }
  auto operator<=>(const Mono&) const = default;
};

Mono mono_mul(const Mono& a, const Mono& b);

// Sparse polynomial graded by weight: coefficients of monomials with weight
// <= wbound are exact; heavier monomials are unknown, not zero.
struct TPoly {
  std::map<Mono, Rat> c;
  int wbound = kExactPrec;

  TPoly() = default;
  explicit TPoly(int wb) : wbound(wb) {}

  static TPoly constant(const Rat& x, int wb = kExactPrec) {
    TPoly p(wb);
    if (x != 0) p.c[Mono{}] = x;
    return p;
  }
  static TPoly variable(Var v, int wb = kExactPrec) {
    TPoly p(wb);
    if (var_weight(v) <= wb) p.c[Mono{{{v, 1}}}] = 1;
    else throw weight_error("variable exceeds weight bound");
    return p;
  }

  void normalize() {
    for (auto it = c.begin(); it != c.end();) {
      if (it->second == 0 || it->first.weight() > wbound)
        it = c.erase(it);
      else
        ++it;
    }
  }
  bool is_zero() const { return c.empty(); }
  // Weight of the lightest known term; wbound+1 when none is stored.
  int ord() const;
  Rat coeff(const Mono& m) const;
  Rat constant_term() const { return coeff(Mono{}); }

  TPoly truncated(int wb) const;
  TPoly& operator+=(const TPoly& o);
  friend TPoly operator+(TPoly a, const TPoly& b) { return a += b; }
  TPoly operator-() const;
  friend TPoly operator-(const TPoly& a, const TPoly& b) { return a + (-b); }
  friend TPoly operator*(const TPoly& a, const TPoly& b);
  TPoly scaled(const Rat& x) const;
  bool operator==(const TPoly&) const = default;
  std::string str() const;
};

// d/dv.
TPoly derivative(const TPoly& f, Var v);
// Substitute every variable of the given family (all components) by zero.
TPoly set_family_zero(const TPoly& f, int family);
// Substitute the variables of one component of a family by zero.
TPoly set_component_zero(const TPoly& f, int family, int comp);
// Map every t-family variable t_i -> -t_i (all families and components).
TPoly negate_times(const TPoly& f);
// Rename family a to family b (monomials mixing both families are rejected).
TPoly rename_family(const TPoly& f, int from, int to);

// p_k of component j in family fam: coefficients of exp(sum_i t_i z^i).
TPoly power_sum(int k, int j, int wbound, int fam = FAM_T);
// Schur polynomial via the Jacobi-Trudi determinant in the p_k.
TPoly schur_chi(const Partition& lam, int j, int wbound, int fam = FAM_T);

// Applies g(scaled derivations) to f, where each variable t_i^{(j)} occurring
// in g acts as (1/i) d/dt_i^{(j)} (sign = -1 flips each derivation's sign).
TPoly apply_tilde(const TPoly& g, const TPoly& f, int sign = +1);

// chi_lambda(d~) of component j applied to f.
TPoly chi_derivative(const Partition& lam, int j, const TPoly& f, int sign = +1);

// All mu >= lam with mu - lam a horizontal m-strip.
std::vector<Partition> pieri(const Partition& lam, int m);
// All mu <= lam with lam - mu a horizontal m-strip.
std::vector<Partition> pieri_down(const Partition& lam, int m);

// D_{lam,m}: sum over lam-mu=(m) of chi_mu(d~) f, then t^{(j)} -> 0.
TPoly d_operator(const Partition& lam, int m, int j, const TPoly& f, int sign = +1);

// Coefficients of f(t + sign*[z_j]) as a z_j-series: entry i is p_i(sign d~^(j)) f,
// carrying weight bound wbound(f) - i. Returns zprec entries (i = 0..zprec-1).
std::vector<TPoly> shift_tau(const TPoly& f, int j, int sign, int zprec);

}  // namespace sgr
