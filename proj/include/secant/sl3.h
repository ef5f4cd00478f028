#pragma once

#include <array>
#include <map>
#include <vector>

#include "secant/lattice.h"
#include "secant/rational.h"

namespace secant {

// The irreducible sl3-module V(m,n), realized inside S^m(K^3) (x) S^n(L^2 K^3)
// as the cyclic span of the highest weight vector x1^m (x) (e1^e2)^n, with
// coordinates indexed by the PBW monomials m_b = X1^{n1} X2^{n2} X3^{n3} v
// for b = (n1,n2,n3) in B(m,n). The root vector order is fixed:
// X1 = E21 (beta1 = -a1), X2 = E31 (beta2 = -a1-a2), X3 = E32 (beta3 = -a2).
//
// Basis vectors are stored with the divided-power scaling m_b / (n1! n2! n3!),
// the normalization in which psi/t0 = sum_r t^r m~_r and the operator
// matrices have integer entries; nonzero-coordinate patterns, weights and
// ranks are unaffected by the scaling.
struct Sl3Module {
  int m = 0, n = 0;
  std::vector<LatticePoint> basis_labels;               // B(m,n), lexicographic
  std::array<std::vector<std::vector<Rational>>, 3> op; // operators in the scaled basis
  std::vector<Rational> highest_vector;                 // coordinates of v_lambda

  int dim() const { return static_cast<int>(basis_labels.size()); }
  int label_index(const LatticePoint& b) const;

  // coordinates of the scaled monomial m_r / (r1! r2! r3!), i.e. the
  // coefficient vector of t^r in psi(t)/t0
  std::vector<Rational> pbw_monomial(const LatticePoint& r) const;
};

// Builds V(m,n) by breadth-first lowering from the highest weight vector with
// exact rational elimination, then changes basis to the PBW monomials m_b.
// Throws on internal dimension mismatch with |B(m,n)|.
Sl3Module build_sl3_module(int m, int n);

// Integer view of an operator matrix; throws if an entry is not integral.
std::vector<std::vector<std::int64_t>> op_matrix_int(const Sl3Module& module, int which);

// Exponent sets of the flag parameterization: M = {r : m_r != 0} within the
// enumeration box r1,r2 <= bound, r3 <= n, and A_b = {r in M : m_r has a
// nonzero m_b-coordinate}. Verifies that nothing survives on the outer
// boundary (bound too small otherwise), that every A_b is weight-homogeneous,
// and that A_b meets B exactly in {b}.
struct FlagExpansion {
  std::vector<LatticePoint> M;
  std::map<LatticePoint, std::vector<LatticePoint>> A;
};

FlagExpansion compute_M_and_Ab(const Sl3Module& module, int bound = -1);

GeneralizedInstance flag_generalized_instance(const Sl3Module& module);

// The k=1 check: the functional r -> r1+r2+r3 wins 0 and every e_beta among
// the A_b, and those winning directions span affine dimension dim X = 3.
bool k1_tropical_sanity(const Sl3Module& module);

}  // namespace secant
