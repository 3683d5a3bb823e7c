#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "sgr/schur.hpp"

using namespace sgr;

namespace {

TPoly t_(int i, int j = 0) { return TPoly::variable(tvar(FAM_T, j, i)); }

TPoly random_tpoly(std::mt19937& rng, int wbound, int comps = 1) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 3), pct(0, 99);
  TPoly f(wbound);
  for (int j = 0; j < comps; ++j)
    for (const Partition& lam : partitions_up_to(wbound)) {
      if (pct(rng) >= 45) continue;
      Mono m;
      std::map<int, int> mult;
      for (int p : lam.parts) mult[p]++;
      for (auto [i, e] : mult) m.f.emplace_back(tvar(FAM_T, j, i), e);
      f.c[m] = rat(num(rng), den(rng));
    }
  f.normalize();
  return f;
}

// truncated z-series with TPoly coefficients
using ZSeries = std::vector<TPoly>;

ZSeries zmul(const ZSeries& a, const ZSeries& b) {
  ZSeries c(std::min(a.size(), b.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      if (i + j < c.size()) c[i + j] += a[i] * b[j];
  return c;
}

}  // namespace

TEST_CASE("power sums") {
  CHECK(power_sum(0, 0, 4) == TPoly::constant(1, 4));
  CHECK(power_sum(1, 0, 4) == t_(1).truncated(4));
  TPoly p2 = power_sum(2, 0, 4);
  CHECK(p2.coeff(Mono{{{tvar(FAM_T, 0, 2), 1}}}) == 1);
  CHECK(p2.coeff(Mono{{{tvar(FAM_T, 0, 1), 2}}}) == rat(1, 2));
  CHECK(p2.c.size() == 2);
  CHECK_THROWS_AS(power_sum(5, 0, 4), weight_error);
}

TEST_CASE("generating identity exp(sum t_k z^k) = sum p_k z^k through weight 8") {
  const int W = 8;
  ZSeries T(W + 1, TPoly(W));
  for (int k = 1; k <= W; ++k) T[k] = TPoly::variable(tvar(FAM_T, 0, k), W);
  ZSeries expT(W + 1, TPoly(W));
  expT[0] = TPoly::constant(1, W);
  ZSeries pow(W + 1, TPoly(W));
  pow[0] = TPoly::constant(1, W);
  Rat fact(1);
  for (int j = 1; j <= W; ++j) {
    pow = zmul(pow, T);
    fact *= j;
    for (int k = 0; k <= W; ++k) expT[k] += pow[k].scaled(1 / fact);
  }
  for (int k = 0; k <= W; ++k) CHECK(expT[k] == power_sum(k, 0, W).truncated(expT[k].wbound));
}

TEST_CASE("schur polynomials") {
  CHECK(schur_chi(Partition{1}, 0, 4) == t_(1).truncated(4));
  TPoly c11 = schur_chi(Partition{1, 1}, 0, 4);
  CHECK(c11.coeff(Mono{{{tvar(FAM_T, 0, 1), 2}}}) == rat(1, 2));
  CHECK(c11.coeff(Mono{{{tvar(FAM_T, 0, 2), 1}}}) == -1);
  CHECK(c11.c.size() == 2);
  CHECK(schur_chi(Partition{2}, 0, 4) == power_sum(2, 0, 4));
  CHECK(schur_chi(Partition{}, 0, 4) == TPoly::constant(1, 4));
}

TEST_CASE("orthonormality of schur derivatives") {
  for (const Partition& lam : partitions_up_to(6))
    for (const Partition& mu : partitions_up_to(6)) {
      TPoly chimu = schur_chi(mu, 0, 6);
      Rat got = set_family_zero(chi_derivative(lam, 0, chimu), FAM_T).constant_term();
      REQUIRE(got == (lam == mu ? Rat(1) : Rat(0)));
    }
}

TEST_CASE("empty diagram operator is the identity") {
  std::mt19937 rng(7);
  TPoly f = random_tpoly(rng, 5);
  CHECK(chi_derivative(Partition{}, 0, f) == f);
}

TEST_CASE("pieri") {
  CHECK(pieri(Partition{1}, 1) == std::vector<Partition>{Partition{1, 1}, Partition{2}});
  CHECK(pieri(Partition{2, 1}, 0) == std::vector<Partition>{Partition{2, 1}});
  // identity chi_lam * p_m = sum of chi_mu through weight 6
  for (const Partition& lam : partitions_up_to(5))
    for (int m = 0; lam.weight() + m <= 6; ++m) {
      TPoly lhs = schur_chi(lam, 0, 6) * power_sum(m, 0, 6);
      TPoly rhs(6);
      for (const Partition& mu : pieri(lam, m)) rhs += schur_chi(mu, 0, 6);
      REQUIRE(lhs.truncated(rhs.wbound) == rhs.truncated(lhs.wbound));
    }
}

TEST_CASE("pieri down strips") {
  CHECK(pieri_down(Partition{2}, 1) == std::vector<Partition>{Partition{1}});
  CHECK(pieri_down(Partition{2, 1}, 1) ==
        std::vector<Partition>{Partition{1, 1}, Partition{2}});
  CHECK(pieri_down(Partition{1}, 2).empty());
}

TEST_CASE("d operator") {
  std::mt19937 rng(8);
  TPoly f = random_tpoly(rng, 6);
  // only strip of size 1 below (2) is (1)
  CHECK(d_operator(Partition{2}, 1, 0, f) ==
        set_family_zero(chi_derivative(Partition{1}, 0, f), FAM_T));
  for (const Partition& lam : partitions_up_to(4)) {
    CHECK(d_operator(lam, 0, 0, f) ==
          set_family_zero(chi_derivative(lam, 0, f), FAM_T));
    // D_{lam,m} f = chi_lam(d~)(p_m f)|_0
    for (int m = 0; m + lam.weight() <= 6; ++m) {
      TPoly pf = power_sum(m, 0, 6) * f;
      TPoly rhs = set_family_zero(chi_derivative(lam, 0, pf), FAM_T);
      TPoly lhs = d_operator(lam, m, 0, f);
      REQUIRE(lhs.constant_term() == rhs.constant_term());
    }
  }
}

TEST_CASE("shift") {
  TPoly f1 = t_(1).truncated(5);
  std::vector<TPoly> s = shift_tau(f1, 0, +1, 4);
  CHECK(s[0] == f1);
  CHECK(s[1].constant_term() == 1);
  CHECK(s[2].is_zero());
  CHECK(shift_tau(TPoly::constant(1, 5), 0, +1, 3)[1].is_zero());
  TPoly f2 = t_(2).truncated(5);
  std::vector<TPoly> sm = shift_tau(f2, 0, -1, 4);
  CHECK(sm[0] == f2);
  CHECK(sm[1].is_zero());
  CHECK(sm[2].constant_term() == rat(-1, 2));
}

TEST_CASE("shift composition is the identity") {
  std::mt19937 rng(9);
  const int W = 6, A = 5;
  TPoly f = random_tpoly(rng, W);
  std::vector<TPoly> plus = shift_tau(f, 0, +1, A);
  std::vector<TPoly> comp(A);
  for (int i = 0; i < A; ++i) {
    std::vector<TPoly> minus = shift_tau(plus[i], 0, -1, A);
    for (int k = 0; i + k < A; ++k) comp[i + k] += minus[k];
  }
  CHECK(comp[0] == f);
  for (int k = 1; k < A; ++k) CHECK(comp[k].is_zero());
}

TEST_CASE("multi component independence") {
  TPoly f = t_(1, 0) * t_(2, 1);
  TPoly d = chi_derivative(Partition{1}, 0, f);
  CHECK(d == t_(2, 1).truncated(d.wbound));
  CHECK(set_component_zero(f, FAM_T, 1).is_zero());
  TPoly g = rename_family(t_(1, 0), FAM_T, FAM_S);
  CHECK(g == TPoly::variable(tvar(FAM_S, 0, 1)));
  CHECK(negate_times(f) == f);  // even total degree
  CHECK(negate_times(t_(1, 0) * f) == (t_(1, 0) * f).scaled(-1));
}

TEST_CASE("weight bound contract") {
  CHECK_THROWS_AS(schur_chi(Partition{3}, 0, 2), weight_error);
  TPoly f(3);
  f.c[Mono{{{tvar(FAM_T, 0, 1), 1}}}] = 1;
  CHECK_THROWS_AS(f.coeff(Mono{{{tvar(FAM_T, 0, 4), 1}}}), weight_error);
  // product weight bound: min(w1 + ord2, w2 + ord1)
  TPoly a = t_(2).truncated(6);
  TPoly b = t_(3).truncated(7);
  CHECK((a * b).wbound == 9);
}

TEST_CASE("negate times parity") {
  std::mt19937 rng(10);
  TPoly f = random_tpoly(rng, 5);
  // chi_lam(-t) relates to conjugation only up to sign; here just check involution
  CHECK(negate_times(negate_times(f)) == f);
  // and compatibility with the generating series: p_k(-t) = (-1)^k ... holds for
  // the homogeneous pieces of exp, checked via apply on e^: p_1(-t) = -p_1(t)
  CHECK(negate_times(power_sum(1, 0, 4)) == power_sum(1, 0, 4).scaled(-1));
}
