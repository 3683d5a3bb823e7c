#pragma once

#include "sgr/tau.hpp"

namespace sgr {

// One factor of a residue integrand: per component a z_j-indexed series whose
// coefficients are weight-truncated polynomials. Coefficients are known for
// exponents < prec[j]; exponents below the smallest stored key are zero within
// wcap. The factor carries an implicit monomial multiplier prod_j z_j^{offset[j]}.
struct ZFactor {
  std::vector<std::map<int, TPoly>> comp;
  std::vector<int> prec;
  std::vector<int> offset;
  int wcap = kExactPrec;
};

// tau * psi as a residue factor: comp[j] = num[j] with every coefficient
// moved to the given time family. The monomial multiplier is taken verbatim
// from `offset`; pass ba.pref (plus any residual monomial) so that the factor
// represents the full function including its prefactor.
ZFactor ba_factor(const BakerFunction& ba, int family, const std::vector<int>& offset);

struct ResidueSpec {
  CoverShape shape;
  std::vector<ZFactor> factors;
  bool dz_over_z = true;  // residue against dz/z (coefficient of z^0 of the
                          // trace) instead of dz (coefficient of z^-1)
  int base_shift = 0;     // extra multiplier z^{-base_shift} in the base variable
  std::vector<int> components;  // components entering the trace sum; empty = all
  bool cross = false;     // collapse each factor through the trace separately
                          // before multiplying (integer base powers only)
};

// The tau-scaled residue polynomial whose vanishing is the identity under
// test. Its wbound is the weight through which the value is conclusive.
// Throws precision_error when the target coefficient is outside the z-window.
TPoly residue_pairing(const ResidueSpec& spec);

// Bilinear residues of a pair of points of equal index; they vanish exactly
// when the two points coincide.
CheckReport check_nkp(const GrassPoint& a, const GrassPoint& b, int W);

// Trace-sum bilinear residues of a ring point; they vanish exactly when the
// point is stable under the trace. The report carries the verdict of the
// direct linear-algebra predicate and an agreement flag.
CheckReport check_hurwitz_bilinear(const GrassPoint& pt, int W);

// Cubic and linear residue families characterizing ring points (products stay
// inside, and the unit section lies inside). Reported next to is_ring.
CheckReport check_mring_equations(const GrassPoint& pt, int W);

// Subset-restricted bilinear residues; they vanish exactly when the point is
// a product along the subset. Reported next to the projection test.
CheckReport check_decomposable_residues(const GrassPoint& pt, const std::vector<int>& subset,
                                        int W);

// Young-diagram operator equations applied to the tau sections, the
// coefficient extraction of the bilinear residues: diagram tuples with parts
// of weight <= D, derivative slack W. Tuples whose evaluation needs tau
// beyond the computed weight are reported, never silently passed.
CheckReport check_hurwitz_operator_form(const GrassPoint& pt, int D, int W);

// Residues forcing the base of the covering to be the polynomial ring in
// z^-1: z^-i pairings for 2 <= i <= M. Reported next to the subspace test.
CheckReport check_p1_base(const GrassPoint& pt, int W, int M = 5);

}  // namespace sgr
