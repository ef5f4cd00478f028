#include "doctest.h"
#include "secant/geometry.h"
#include "secant/oracle.h"
#include "secant/sl3.h"

using namespace secant;

namespace {
std::vector<std::vector<std::int64_t>> commutator(const std::vector<std::vector<std::int64_t>>& a,
                                                  const std::vector<std::vector<std::int64_t>>& b) {
  int n = static_cast<int>(a.size());
  std::vector<std::vector<std::int64_t>> c(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) c[i][j] += a[i][k] * b[k][j] - b[i][k] * a[k][j];
  return c;
}

std::int64_t trace(const std::vector<std::vector<std::int64_t>>& a) {
  std::int64_t t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}
}  // namespace

TEST_CASE("standard representation (1,0)") {
  Sl3Module mod = build_sl3_module(1, 0);
  CHECK(mod.dim() == 3);
  // operator relations of e21, e31, e32: [X3, X1] = X2, others commute
  auto m1 = op_matrix_int(mod, 0), m2 = op_matrix_int(mod, 1), m3 = op_matrix_int(mod, 2);
  CHECK(commutator(m3, m1) == m2);
  auto zero = commutator(m1, m2);
  for (const auto& row : zero)
    for (auto v : row) CHECK(v == 0);
}

TEST_CASE("adjoint module (1,1)") {
  Sl3Module mod = build_sl3_module(1, 1);
  CHECK(mod.dim() == 8);
  for (int which = 0; which < 3; ++which) {
    auto m = op_matrix_int(mod, which);
    CHECK(trace(m) == 0);
    // nilpotent: m^8 = 0
    std::vector<std::vector<std::int64_t>> acc = m;
    for (int i = 1; i < 8; ++i) {
      std::vector<std::vector<std::int64_t>> next(8, std::vector<std::int64_t>(8, 0));
      for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b)
          for (int c = 0; c < 8; ++c) next[a][b] += acc[a][c] * m[c][b];
      acc = next;
    }
    for (const auto& row : acc)
      for (auto v : row) CHECK(v == 0);
  }
  // PBW relation [X3, X1] = X2 holds in every module
  CHECK(commutator(op_matrix_int(mod, 2), op_matrix_int(mod, 0)) == op_matrix_int(mod, 1));
}

TEST_CASE("module dimensions match |B| (Weyl dimension formula)") {
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 2; ++n) {
      if (m + n == 0) continue;
      Sl3Module mod = build_sl3_module(m, n);
      CHECK(mod.dim() == (m + 1) * (n + 1) * (m + n + 2) / 2);
    }
}

TEST_CASE("operators shift weights by their root") {
  Sl3Module mod = build_sl3_module(2, 1);
  const std::array<std::array<int, 2>, 3> beta = {{{-1, 0}, {-1, -1}, {0, -1}}};
  for (int which = 0; which < 3; ++which)
    for (int col = 0; col < mod.dim(); ++col)
      for (int row = 0; row < mod.dim(); ++row) {
        if (mod.op[which][row][col] == 0) continue;
        auto wc = weight_map(mod.basis_labels[col]);
        auto wr = weight_map(mod.basis_labels[row]);
        CHECK(wr[0] == wc[0] + beta[which][0]);
        CHECK(wr[1] == wc[1] + beta[which][1]);
      }
}

TEST_CASE("expansion sets A_b: lemma checks run for small weights") {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    Sl3Module mod = build_sl3_module(m, n);
    FlagExpansion exp = compute_M_and_Ab(mod);  // throws on any lemma violation
    Model b = build_model(spec_flag(m, n));
    CHECK(static_cast<int>(exp.A.size()) == b.dimV);

    // r3 <= n for all r in M
    for (const auto& r : exp.M) CHECK(r[2] <= n);

    // every element of A_b beyond b sits strictly below b along z = (1,-1,1)
    for (const auto& [bb, set] : exp.A)
      for (const auto& r : set) {
        if (r == bb) continue;
        LatticePoint diff = bb - r;
        CHECK(diff[0] == diff[2]);
        CHECK(diff[0] == -diff[1]);
        CHECK(diff[0] > 0);
      }
  }
}

TEST_CASE("unique minimal elements make the singleton reduction valid") {
  Sl3Module mod = build_sl3_module(1, 1);
  GeneralizedInstance gi = flag_generalized_instance(mod);
  CHECK(gi.sets.size() == 8);
  CHECK(strictly_convex(gi.cone_gen, 3));
  for (std::size_t i = 0; i < gi.sets.size(); ++i) {
    CHECK(!gi.sets[i].empty());
    // minimal element with respect to p <= q iff p - q in R>=0 z is b itself
    for (const auto& r : gi.sets[i]) {
      if (r == gi.labels[i]) continue;
      LatticePoint diff = gi.labels[i] - r;
      CHECK(diff[0] > 0);
    }
  }
}

TEST_CASE("k=1 tropical sanity: AP value 4 = dim C") {
  CHECK(k1_tropical_sanity(build_sl3_module(1, 1)));
  CHECK(k1_tropical_sanity(build_sl3_module(2, 1)));
  CHECK(k1_tropical_sanity(build_sl3_module(2, 2)));
}

TEST_CASE("psi expands as sum_r t^r m~_r (independent code paths agree)") {
  // psi_eval computes nilpotent exponential sums; the right side sums scaled
  // PBW monomials over the exponent box. Checking equality at several
  // rational points validates the whole expansion, hence the A_b supports.
  Model model = build_model(spec_flag(1, 1));
  Sl3Module mod = build_sl3_module(1, 1);
  FlagExpansion exp = compute_M_and_Ab(mod);
  for (auto t : std::vector<std::array<int, 3>>{{1, 2, 3}, {-1, 1, 2}, {5, 0, -2}}) {
    auto lhs = psi_eval(model, {Rational(1), Rational(t[0]), Rational(t[1]), Rational(t[2])});
    std::vector<Rational> rhs(mod.dim(), Rational(0));
    for (const auto& r : exp.M) {
      Rational tr = 1;
      for (int j = 0; j < 3; ++j)
        for (int i = 0; i < r[j]; ++i) tr *= t[j];
      auto coords = mod.pbw_monomial(r);
      for (int i = 0; i < mod.dim(); ++i) rhs[i] += tr * coords[i];
    }
    // psi_eval orders coordinates by the model's lexicographic points, the
    // module by its basis labels; both are the lex order of B
    CHECK(lhs == rhs);
  }
}

TEST_CASE("pbw monomial coefficients: expansion matches the 1/r! rule") {
  // psi(t)/t0 = sum_r t^r/prod(r_i!) m_r, so exp-of-ops applied to v must
  // reproduce the same exponent support as compute_M_and_Ab
  Sl3Module mod = build_sl3_module(1, 1);
  FlagExpansion exp = compute_M_and_Ab(mod);
  for (const auto& [b, set] : exp.A) {
    int bi = mod.label_index(b);
    REQUIRE(bi >= 0);
    for (const auto& r : exp.M) {
      auto coords = mod.pbw_monomial(r);
      bool in_a = std::binary_search(set.begin(), set.end(), r);
      CHECK((coords[bi] != 0) == in_a);
    }
  }
}
