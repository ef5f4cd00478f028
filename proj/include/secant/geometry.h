#pragma once

#include <optional>
#include <vector>

#include "secant/lattice.h"
#include "secant/rational.h"

namespace secant {

// Affine-linear functional f(p) = <normal, p> + offset.
struct AffineFunctional {
  std::vector<Rational> normal;
  Rational offset = 0;

  Rational eval(const LatticePoint& p) const;
  Rational eval(const std::vector<Rational>& x) const;
};

// Dimension of the affine span: -1 for the empty set, 0 for a point, etc.
int affine_dim(const std::vector<LatticePoint>& points);

// |points| == 1 + affine_dim, i.e. the points are affinely independent.
bool affinely_independent(const std::vector<LatticePoint>& points);

// --- exact LP ------------------------------------------------------------
//
// maximize c.x  subject to  A x <= b, x >= 0, with every b_i >= 0 so the
// slack basis is feasible from the start. Bland's rule, exact rationals.
struct LpProblem {
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  std::vector<Rational> c;
};

struct LpSolution {
  bool unbounded = false;
  Rational value = 0;
  std::vector<Rational> x;
};

LpSolution simplex_max(const LpProblem& lp);

// --- partition inducibility ------------------------------------------------
//
// Decide whether affine-linear f_1..f_k exist with f_i < f_j on part_i for
// all j != i. Strictness is handled by maximizing a margin under the
// normalization |coefficients|_inf <= 1; feasible iff the optimum is > 0.
struct LpWitness {
  std::vector<AffineFunctional> functionals;
  Rational margin;
};

std::optional<LpWitness> induce_partition_lp(const std::vector<std::vector<LatticePoint>>& parts);

// Strict winner sets of a tuple of functionals over a point set: point p goes
// to part i iff f_i(p) < f_j(p) for all j != i; tied points are dropped.
std::vector<std::vector<LatticePoint>> winner_sets(const std::vector<AffineFunctional>& fs,
                                                   const std::vector<LatticePoint>& points);

// --- cones ---------------------------------------------------------------

// True iff the cone generated by the vectors contains no nontrivial linear
// subspace (LP margin check; zero generators are ignored).
bool strictly_convex(const std::vector<std::array<std::int64_t, 3>>& cone_gen, int dim);

// Adds a single linear functional f0 to every f_j so that all of them become
// strictly decreasing along every nonzero direction of the cone. Winner sets
// on singleton instances are unchanged. Throws if the cone is not strictly
// convex.
std::vector<AffineFunctional> decreasing_shift(const std::vector<AffineFunctional>& fs,
                                               const std::vector<std::array<std::int64_t, 3>>& cone_gen,
                                               int dim);

}  // namespace secant
