#include "doctest.h"
#include "secant/geometry.h"
#include "secant/util.h"
#include <algorithm>
#include <stdexcept>

using namespace secant;

TEST_CASE("affine_dim") {
  CHECK(affine_dim({}) == -1);
  CHECK(affine_dim({LatticePoint{2, 5}}) == 0);
  // type 1 and type 2 cells span all of R^3
  CHECK(affine_dim({LatticePoint{0, 0, 0}, LatticePoint{1, 0, 0}, LatticePoint{0, 1, 0},
                    LatticePoint{0, 0, 1}}) == 3);
  CHECK(affine_dim({LatticePoint{1, 0, 0}, LatticePoint{0, 0, 0}, LatticePoint{0, 1, 0},
                    LatticePoint{0, 1, 1}}) == 3);
  CHECK(affine_dim({LatticePoint{0, 0}, LatticePoint{1, 1}, LatticePoint{2, 2}}) == 1);
  CHECK(affinely_independent({LatticePoint{0, 0}, LatticePoint{1, 0}, LatticePoint{0, 1}}));
  CHECK_FALSE(affinely_independent({LatticePoint{0, 0}, LatticePoint{1, 0}, LatticePoint{2, 0}}));
}

TEST_CASE("affine_dim invariant under lattice symmetries") {
  Model m = build_model(spec_p1p1(3, 2));
  Rng rng(7);
  auto syms = lattice_symmetries(m);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<LatticePoint> pts;
    for (const auto& p : m.points)
      if (rng.below(2)) pts.push_back(p);
    int d = affine_dim(pts);
    for (const auto& g : syms) {
      std::vector<LatticePoint> img;
      for (const auto& p : pts) img.push_back(g.apply(p));
      CHECK(affine_dim(img) == d);
    }
  }
}

TEST_CASE("simplex basics") {
  // max x + y st x <= 2, y <= 3: optimum 5
  LpProblem lp;
  lp.A = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)}};
  lp.b = {Rational(2), Rational(3)};
  lp.c = {Rational(1), Rational(1)};
  auto sol = simplex_max(lp);
  CHECK_FALSE(sol.unbounded);
  CHECK(sol.value == Rational(5));
  CHECK(sol.x[0] == Rational(2));
  CHECK(sol.x[1] == Rational(3));

  // unbounded: max x, no constraints binding
  LpProblem lp2;
  lp2.A = {{Rational(-1)}};
  lp2.b = {Rational(1)};
  lp2.c = {Rational(1)};
  CHECK(simplex_max(lp2).unbounded);
}

TEST_CASE("induce_partition_lp feasible cases") {
  // the 4-triple partition of the (3,2) grid
  std::vector<std::vector<LatticePoint>> parts = {
      {LatticePoint{0, 0}, LatticePoint{1, 0}, LatticePoint{0, 1}},
      {LatticePoint{1, 1}, LatticePoint{0, 2}, LatticePoint{1, 2}},
      {LatticePoint{2, 0}, LatticePoint{3, 0}, LatticePoint{2, 1}},
      {LatticePoint{3, 1}, LatticePoint{2, 2}, LatticePoint{3, 2}},
  };
  auto w = induce_partition_lp(parts);
  REQUIRE(w.has_value());
  CHECK(w->margin > 0);

  // round trip: the witness reproduces exactly the declared winners
  Model grid = build_model(spec_p1p1(3, 2));
  auto wins = winner_sets(w->functionals, grid.points);
  REQUIRE(wins.size() == 4);
  for (int i = 0; i < 4; ++i) {
    auto a = wins[i], b = parts[i];
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);
  }

  CHECK(induce_partition_lp({{LatticePoint{0, 0}}, {LatticePoint{1, 1}}}).has_value());
}

TEST_CASE("induce_partition_lp infeasible middle point") {
  // f1 < f2 at (0,0) and (2,0), f2 < f1 at (1,0): impossible for affine pairs
  std::vector<std::vector<LatticePoint>> parts = {
      {LatticePoint{0, 0}, LatticePoint{2, 0}},
      {LatticePoint{1, 0}},
  };
  CHECK_FALSE(induce_partition_lp(parts).has_value());
}

TEST_CASE("induce_partition_lp rejects overlap") {
  CHECK_THROWS_AS(induce_partition_lp({{LatticePoint{0, 0}}, {LatticePoint{0, 0}}}),
                  std::invalid_argument);
}

TEST_CASE("strictly_convex") {
  CHECK(strictly_convex({{1, -1, 1}}, 3));
  CHECK_FALSE(strictly_convex({{1, 0, 0}, {-1, 0, 0}}, 3));
  CHECK_FALSE(strictly_convex({{1, 0, 0}, {0, 1, 0}, {-1, -1, 0}}, 2));
  CHECK(strictly_convex({}, 3));
  CHECK(strictly_convex({{2, 1, 0}, {1, 2, 0}, {0, 0, 1}}, 3));
}

TEST_CASE("decreasing_shift") {
  std::vector<std::array<std::int64_t, 3>> ray = {{1, -1, 1}};
  // start from the zero functional
  AffineFunctional zero;
  zero.normal = {Rational(0), Rational(0), Rational(0)};
  auto shifted = decreasing_shift({zero}, ray, 3);
  REQUIRE(shifted.size() == 1);
  // strictly decreasing along z on random rational points
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    std::vector<Rational> x = {Rational(rng.range(-20, 20), 1 + rng.below(7)),
                               Rational(rng.range(-20, 20), 1 + rng.below(7)),
                               Rational(rng.range(-20, 20), 1 + rng.below(7))};
    std::vector<Rational> xz = x;
    for (int j = 0; j < 3; ++j) xz[j] += Rational(ray[0][j]);
    CHECK(shifted[0].eval(xz) < shifted[0].eval(x));
  }

  // winner sets on singletons unchanged under the shift
  Model b = build_model(spec_flag(1, 1));
  Rng rng2(5);
  std::vector<AffineFunctional> fs;
  for (int i = 0; i < 3; ++i) {
    AffineFunctional f;
    for (int j = 0; j < 3; ++j) f.normal.push_back(Rational(rng2.range(-9, 9), 1 + rng2.below(4)));
    f.offset = Rational(rng2.range(-9, 9));
    fs.push_back(f);
  }
  auto before = winner_sets(fs, b.points);
  auto after = winner_sets(decreasing_shift(fs, ray, 3), b.points);
  CHECK(before == after);

  CHECK_THROWS_AS(decreasing_shift({zero}, {{1, 0, 0}, {-1, 0, 0}}, 3), std::invalid_argument);
}
