#pragma once

#include "sgr/grasspoint.hpp"
#include "sgr/schur.hpp"

namespace sgr {

struct hypothesis_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// --- polynomial utilities shared by the determinant formulas ---

// x-degree of a monomial within one component's variable family
int x_degree(const Mono& m, int comp);
// drop monomials whose family-i x-degree exceeds caps[i]
TPoly filter_x(const TPoly& f, const std::vector<int>& caps);

// determinant via Laplace expansion with column-subset memoization;
// caps (optional) prune by per-family x-degree during the expansion
TPoly poly_det(const std::vector<std::vector<TPoly>>& m, const std::vector<int>* caps = nullptr);

// exact division by (va - vb); throws if the division leaves a remainder.
// With caps, only the region of per-family x-degree within caps is trusted:
// the remainder must vanish there and the quotient is filtered accordingly.
TPoly divide_linear(const TPoly& f, Var va, Var vb, const std::vector<int>* caps = nullptr);

// complete homogeneous h_0..h_kmax in x_1^{(comp)}..x_N^{(comp)}
std::vector<TPoly> complete_homogeneous(int kmax, int comp, int nvars, int wbound);
// classical Schur polynomial s_lambda(x_1^{(comp)}..x_N^{(comp)})
TPoly schur_x(const Partition& lam, int comp, int nvars, int wbound);

// rewrite a polynomial symmetric in each x-family as sum of products of
// Schur polynomials, i.e. as a TPoly in the t-families via s_lam -> chi_lam
TPoly x_to_t(const TPoly& x, int r, int nvars, int wbound);

// --- tau functions ---

// Abel pullback: determinant of the basis of V+ ∩ z_.^N U evaluated at the
// points x_k^{(i)}, divided exactly by the Vandermonde factors. Valid up to a
// nonzero constant, through total x-degree W.
TPoly tau_abel(const GrassPoint& pt, int N, int W);

// independent oracle: determinant of the map gU -> V/V+ on the window with
// g = prod (1 - x_k^{(i)}/z_i)^{-1}, through total x-degree W. Exact for
// points whose structure below the window is monomial.
TPoly tau_abel_oracle(const GrassPoint& pt, int N, int W);

// tau in the t-coordinates through weight W, normalized so that the lowest
// weight nonzero coefficient is 1. Nonzero index is first reduced by v_m^{-1}.
TPoly tau_t(const GrassPoint& pt, int W);

// --- Baker-Akhiezer functions ---

// Hirota form: per component j the series sum_c num[j][c] z_j^c (weight-W
// TPoly coefficients) with the common denominator tau and the fractional
// prefactor z_j^{pref[j]} recorded, never multiplied in. The per-component
// normalization scalars are folded into num.
struct BakerFunction {
  CoverShape shape;
  int u = 0;       // marked component (0-based)
  int index_m = 0;
  std::vector<int> pref;               // delta_{ju} - u_j
  std::vector<std::map<int, TPoly>> num;
  TPoly tau;
  int zbound = 0;  // largest stored z-exponent; num[j][c] carries its own wbound
  std::vector<TPoly> twist_tau;        // component tau sections, calibration applied
  std::vector<Rat> calib;              // per-component calibration scalars
};

BakerFunction baker(const GrassPoint& pt, int u, int W, int zbound);

// variant trading z-range against weight: num[j][c] is stored for
// -W <= c <= wt and valid through weight min(W, wt - c), so the tau sections
// are only needed through weight wt (instead of W + zbound)
BakerFunction baker_window(const GrassPoint& pt, int u, int W, int wt);

// psi*_{u,U} = psi_{u,U^perp}(-t); also cross-checked in tests against the
// direct formula through tau_{U_{ju}}(t - [z_j]).
BakerFunction adjoint_baker(const GrassPoint& pt, int u, int W, int zbound);
BakerFunction adjoint_baker(const GrassPoint& pt, const GrassPoint& dual_pt, int u, int W,
                            int zbound);
BakerFunction adjoint_baker_window(const GrassPoint& pt, const GrassPoint& dual_pt, int u,
                                   int W, int wt);

// coefficient vector of one t-monomial of tau_U * psi (prefactors divided
// out), as an element of V
PuiseuxElement ba_coefficient_vector(const BakerFunction& ba, const Mono& mono,
                                     const GrassPoint& pt);

// every t-monomial coefficient vector of tau_U * psi_u lies in U
CheckReport verify_ba_spans(const GrassPoint& pt, const BakerFunction& ba);

}  // namespace sgr
