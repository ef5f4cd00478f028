#include "secant/geometry.h"

#include <algorithm>
#include <stdexcept>

namespace secant {

Rational AffineFunctional::eval(const LatticePoint& p) const {
  Rational s = offset;
  for (int i = 0; i < p.dim && i < static_cast<int>(normal.size()); ++i)
    s += normal[i] * p[i];
  return s;
}

Rational AffineFunctional::eval(const std::vector<Rational>& x) const {
  Rational s = offset;
  for (std::size_t i = 0; i < x.size() && i < normal.size(); ++i) s += normal[i] * x[i];
  return s;
}

int affine_dim(const std::vector<LatticePoint>& points) {
  if (points.empty()) return -1;
  int d = points[0].dim;
  // rank of the difference set over Q; fraction-free elimination in 128-bit
  // intermediates is exact for any coordinates the models can produce
  using Wide = __int128;
  std::vector<std::array<Wide, 3>> rows;
  for (std::size_t i = 1; i < points.size(); ++i) {
    std::array<Wide, 3> r{0, 0, 0};
    for (int j = 0; j < d; ++j) r[j] = Wide(points[i][j]) - points[0][j];
    rows.push_back(r);
  }
  int rank = 0;
  for (int col = 0; col < d && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int i = rank; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      Wide a = rows[rank][col], bq = rows[i][col];
      for (int j = 0; j < d; ++j) rows[i][j] = rows[i][j] * a - rows[rank][j] * bq;
    }
    ++rank;
  }
  return rank;
}

bool affinely_independent(const std::vector<LatticePoint>& points) {
  return static_cast<int>(points.size()) == affine_dim(points) + 1;
}

// --- simplex ----------------------------------------------------------------

LpSolution simplex_max(const LpProblem& lp) {
  const int m = static_cast<int>(lp.A.size());
  const int n = static_cast<int>(lp.c.size());
  for (const auto& bi : lp.b)
    if (bi < 0) throw std::invalid_argument("simplex_max expects b >= 0");

  // tableau rows 0..m-1: constraints; row m: objective (reduced costs).
  // columns 0..n-1: structural vars, n..n+m-1: slacks, last: rhs.
  std::vector<std::vector<Rational>> t(m + 1, std::vector<Rational>(n + m + 1, Rational(0)));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) t[i][j] = lp.A[i][j];
    t[i][n + i] = 1;
    t[i][n + m] = lp.b[i];
  }
  for (int j = 0; j < n; ++j) t[m][j] = -lp.c[j];

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  for (;;) {
    // Bland: entering variable = lowest index with negative reduced cost
    int enter = -1;
    for (int j = 0; j < n + m; ++j)
      if (t[m][j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0) break;
    // leaving row: minimum ratio, ties by lowest basis index (Bland)
    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][n + m] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0) {
      LpSolution s;
      s.unbounded = true;
      return s;
    }
    // pivot
    Rational piv = t[leave][enter];
    for (auto& v : t[leave]) v /= piv;
    for (int i = 0; i <= m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      Rational f = t[i][enter];
      for (int j = 0; j <= n + m; ++j) t[i][j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  LpSolution s;
  s.x.assign(n, Rational(0));
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) s.x[basis[i]] = t[i][n + m];
  s.value = t[m][n + m];
  return s;
}

// --- partition inducibility ---------------------------------------------------

std::optional<LpWitness> induce_partition_lp(const std::vector<std::vector<LatticePoint>>& parts) {
  const int k = static_cast<int>(parts.size());
  if (k == 0) return LpWitness{{}, Rational(1)};
  int dim = 0;
  {
    std::vector<LatticePoint> all;
    for (const auto& part : parts)
      for (const auto& p : part) all.push_back(p);
    if (all.empty()) throw std::invalid_argument("empty partition");
    dim = all[0].dim;
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end())
      throw std::invalid_argument("parts are not disjoint");
  }
  if (k == 1) {
    AffineFunctional f;
    f.normal.assign(dim, Rational(0));
    return LpWitness{{f}, Rational(1)};
  }

  // Variables per functional: dim+1 coefficients, each split u - v with
  // u, v in [0,1] so that |coef|_inf <= 1; final variable is the margin.
  const int per = dim + 1;
  const int nvar = 2 * k * per + 1;
  const int eps_col = nvar - 1;
  auto ucol = [&](int i, int c) { return 2 * (i * per + c); };
  auto vcol = [&](int i, int c) { return 2 * (i * per + c) + 1; };

  LpProblem lp;
  lp.c.assign(nvar, Rational(0));
  lp.c[eps_col] = 1;

  auto add_row = [&](std::vector<Rational> row, Rational rhs) {
    lp.A.push_back(std::move(row));
    lp.b.push_back(std::move(rhs));
  };

  // f_i(p) - f_j(p) + eps <= 0 for p in part_i, j != i
  for (int i = 0; i < k; ++i) {
    for (const auto& p : parts[i]) {
      for (int j = 0; j < k; ++j) {
        if (j == i) continue;
        std::vector<Rational> row(nvar, Rational(0));
        for (int c = 0; c < per; ++c) {
          Rational coef = (c < dim) ? Rational(p[c]) : Rational(1);
          row[ucol(i, c)] += coef;
          row[vcol(i, c)] -= coef;
          row[ucol(j, c)] -= coef;
          row[vcol(j, c)] += coef;
        }
        row[eps_col] = 1;
        add_row(std::move(row), Rational(0));
      }
    }
  }
  // box: every u, v <= 1
  for (int col = 0; col < nvar - 1; ++col) {
    std::vector<Rational> row(nvar, Rational(0));
    row[col] = 1;
    add_row(std::move(row), Rational(1));
  }

  LpSolution sol = simplex_max(lp);
  if (sol.unbounded) throw std::logic_error("partition LP cannot be unbounded");
  if (sol.value <= 0) return std::nullopt;

  LpWitness w;
  w.margin = sol.value;
  for (int i = 0; i < k; ++i) {
    AffineFunctional f;
    f.normal.resize(dim);
    for (int c = 0; c < dim; ++c) f.normal[c] = sol.x[ucol(i, c)] - sol.x[vcol(i, c)];
    f.offset = sol.x[ucol(i, dim)] - sol.x[vcol(i, dim)];
    w.functionals.push_back(std::move(f));
  }
  return w;
}

std::vector<std::vector<LatticePoint>> winner_sets(const std::vector<AffineFunctional>& fs,
                                                   const std::vector<LatticePoint>& points) {
  std::vector<std::vector<LatticePoint>> wins(fs.size());
  for (const auto& p : points) {
    int best = -1;
    bool tie = false;
    Rational bv;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      Rational v = fs[i].eval(p);
      if (best < 0 || v < bv) {
        best = static_cast<int>(i);
        bv = v;
        tie = false;
      } else if (v == bv) {
        tie = true;
      }
    }
    if (best >= 0 && !tie) wins[best].push_back(p);
  }
  return wins;
}

// --- cones -------------------------------------------------------------------

namespace {
// max margin of <w, g_i> >= eps over |w|_inf <= 1; cone is pointed iff > 0
LpSolution cone_margin_lp(const std::vector<std::array<std::int64_t, 3>>& gens, int dim) {
  const int nvar = 2 * dim + 1;
  const int eps_col = nvar - 1;
  LpProblem lp;
  lp.c.assign(nvar, Rational(0));
  lp.c[eps_col] = 1;
  for (const auto& g : gens) {
    std::vector<Rational> row(nvar, Rational(0));
    for (int c = 0; c < dim; ++c) {
      row[2 * c] -= Rational(g[c]);
      row[2 * c + 1] += Rational(g[c]);
    }
    row[eps_col] = 1;
    lp.A.push_back(std::move(row));
    lp.b.push_back(Rational(0));
  }
  for (int col = 0; col < nvar - 1; ++col) {
    std::vector<Rational> row(nvar, Rational(0));
    row[col] = 1;
    lp.A.push_back(std::move(row));
    lp.b.push_back(Rational(1));
  }
  return simplex_max(lp);
}

std::vector<std::array<std::int64_t, 3>> nonzero_gens(
    const std::vector<std::array<std::int64_t, 3>>& cone_gen, int dim) {
  std::vector<std::array<std::int64_t, 3>> gens;
  for (const auto& g : cone_gen) {
    bool zero = true;
    for (int i = 0; i < dim; ++i) zero &= g[i] == 0;
    if (!zero) gens.push_back(g);
  }
  return gens;
}
}  // namespace

bool strictly_convex(const std::vector<std::array<std::int64_t, 3>>& cone_gen, int dim) {
  auto gens = nonzero_gens(cone_gen, dim);
  if (gens.empty()) return true;
  return cone_margin_lp(gens, dim).value > 0;
}

std::vector<AffineFunctional> decreasing_shift(const std::vector<AffineFunctional>& fs,
                                               const std::vector<std::array<std::int64_t, 3>>& cone_gen,
                                               int dim) {
  auto gens = nonzero_gens(cone_gen, dim);
  std::vector<Rational> w(dim, Rational(0));
  if (!gens.empty()) {
    LpSolution sol = cone_margin_lp(gens, dim);
    if (sol.value <= 0) throw std::invalid_argument("cone is not strictly convex");
    for (int c = 0; c < dim; ++c) w[c] = sol.x[2 * c] - sol.x[2 * c + 1];
  }
  // pick T with T*<w,g> > <a_j,g> for every functional and generator, then
  // f0 = -T<w,.>; f0 cancels in comparisons at equal points.
  Rational T = 1;
  for (const auto& g : gens) {
    Rational wg = 0;
    for (int c = 0; c < dim; ++c) wg += w[c] * g[c];
    for (const auto& f : fs) {
      Rational ag = 0;
      for (int c = 0; c < dim && c < static_cast<int>(f.normal.size()); ++c)
        ag += f.normal[c] * g[c];
      if (wg > 0) T = std::max(T, Rational(ag / wg + 1));
    }
  }
  std::vector<AffineFunctional> out = fs;
  for (auto& f : out) {
    f.normal.resize(dim, Rational(0));
    for (int c = 0; c < dim; ++c) f.normal[c] -= T * w[c];
  }
  return out;
}

}  // namespace secant
