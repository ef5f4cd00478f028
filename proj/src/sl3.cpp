#include "secant/sl3.h"

#include <algorithm>
#include <stdexcept>

#include "secant/geometry.h"

namespace secant {

namespace {

// Ambient space W = S^m(K^3) (x) S^n(L^2 K^3), monomials indexed by
// (a1,a2,a3 | c1,c2,c3) with sum(a) = m, sum(c) = n. The wedge basis is
// w1 = e1^e2, w2 = e1^e3, w3 = e2^e3.
struct Ambient {
  int m, n;
  std::vector<std::array<int, 6>> mons;
  std::map<std::array<int, 6>, int> index;

  explicit Ambient(int m_, int n_) : m(m_), n(n_) {
    for (int a1 = 0; a1 <= m; ++a1)
      for (int a2 = 0; a1 + a2 <= m; ++a2)
        for (int c1 = 0; c1 <= n; ++c1)
          for (int c2 = 0; c1 + c2 <= n; ++c2) {
            std::array<int, 6> mon{a1, a2, m - a1 - a2, c1, c2, n - c1 - c2};
            index[mon] = static_cast<int>(mons.size());
            mons.push_back(mon);
          }
  }

  int dim() const { return static_cast<int>(mons.size()); }

  // X acts as a derivation on both tensor factors. Moves:
  //  E21: x1->x2, w2->w3;  E31: x1->x3, w1->-w3;  E32: x2->x3, w1->w2.
  std::vector<Rational> apply(int which, const std::vector<Rational>& v) const {
    std::vector<Rational> out(dim(), Rational(0));
    for (int i = 0; i < dim(); ++i) {
      if (v[i] == 0) continue;
      const auto& mo = mons[i];
      auto add = [&](std::array<int, 6> target, int coeff) {
        if (coeff == 0) return;
        out[index.at(target)] += v[i] * coeff;
      };
      std::array<int, 6> t;
      switch (which) {
        case 0:  // E21
          if (mo[0] > 0) { t = mo; --t[0]; ++t[1]; add(t, mo[0]); }
          if (mo[4] > 0) { t = mo; --t[4]; ++t[5]; add(t, mo[4]); }
          break;
        case 1:  // E31
          if (mo[0] > 0) { t = mo; --t[0]; ++t[2]; add(t, mo[0]); }
          if (mo[3] > 0) { t = mo; --t[3]; ++t[5]; add(t, -mo[3]); }
          break;
        case 2:  // E32
          if (mo[1] > 0) { t = mo; --t[1]; ++t[2]; add(t, mo[1]); }
          if (mo[3] > 0) { t = mo; --t[3]; ++t[4]; add(t, mo[3]); }
          break;
      }
    }
    return out;
  }
};

bool is_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Row-echelon store with transformation tracking: each stored row is a
// reduced vector together with its expression in the inserted originals.
class EchelonSolver {
 public:
  explicit EchelonSolver(int width) : width_(width) {}

  int rank() const { return static_cast<int>(rows_.size()); }

  // Insert an original vector; returns true if it enlarged the span.
  bool insert(const std::vector<Rational>& v) {
    std::vector<Rational> r = v;
    std::vector<Rational> comb(n_orig_ + 1, Rational(0));
    comb[n_orig_] = 1;
    reduce(r, comb);
    ++n_orig_;
    for (auto& row : rows_) row.comb.resize(n_orig_, Rational(0));
    if (is_zero(r)) return false;
    normalize_and_store(std::move(r), std::move(comb));
    return true;
  }

  // Solve sum_j x_j orig_j = w; empty result if w is outside the span.
  std::optional<std::vector<Rational>> solve(const std::vector<Rational>& w) const {
    std::vector<Rational> r = w;
    std::vector<Rational> acc(n_orig_, Rational(0));
    for (const auto& row : rows_) {
      if (r[row.pivot] == 0) continue;
      Rational f = r[row.pivot];
      for (int j = 0; j < width_; ++j) r[j] -= f * row.vec[j];
      for (int j = 0; j < n_orig_; ++j) acc[j] += f * row.comb[j];
    }
    if (!is_zero(r)) return std::nullopt;
    return acc;
  }

 private:
  struct Row {
    std::vector<Rational> vec;
    std::vector<Rational> comb;
    int pivot;
  };

  void reduce(std::vector<Rational>& r, std::vector<Rational>& comb) const {
    for (const auto& row : rows_) {
      if (r[row.pivot] == 0) continue;
      Rational f = r[row.pivot];
      for (int j = 0; j < width_; ++j) r[j] -= f * row.vec[j];
      for (std::size_t j = 0; j < row.comb.size(); ++j) comb[j] -= f * row.comb[j];
    }
  }

  void normalize_and_store(std::vector<Rational> r, std::vector<Rational> comb) {
    int pivot = 0;
    while (r[pivot] == 0) ++pivot;
    Rational pv = r[pivot];
    for (auto& x : r) x /= pv;
    for (auto& x : comb) x /= pv;
    for (auto& row : rows_) {  // full reduction keeps solves single-pass
      if (row.vec[pivot] == 0) continue;
      Rational f = row.vec[pivot];
      for (int j = 0; j < width_; ++j) row.vec[j] -= f * r[j];
      for (std::size_t j = 0; j < comb.size() && j < row.comb.size(); ++j)
        row.comb[j] -= f * comb[j];
    }
    rows_.push_back(Row{std::move(r), std::move(comb), pivot});
    std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
      return a.pivot < b.pivot;
    });
  }

  int width_;
  int n_orig_ = 0;
  std::vector<Row> rows_;
};

}  // namespace

int Sl3Module::label_index(const LatticePoint& b) const {
  auto it = std::lower_bound(basis_labels.begin(), basis_labels.end(), b);
  if (it != basis_labels.end() && *it == b) return static_cast<int>(it - basis_labels.begin());
  return -1;
}

std::vector<Rational> Sl3Module::pbw_monomial(const LatticePoint& r) const {
  std::vector<Rational> v = highest_vector;
  auto apply_power = [&](int which, int times) {
    for (int i = 0; i < times; ++i) {
      std::vector<Rational> next(dim(), Rational(0));
      for (int col = 0; col < dim(); ++col) {
        if (v[col] == 0) continue;
        for (int row = 0; row < dim(); ++row) {
          if (op[which][row][col] == 0) continue;
          next[row] += op[which][row][col] * v[col];
        }
      }
      v = std::move(next);
    }
  };
  apply_power(2, r[2]);
  apply_power(1, r[1]);
  apply_power(0, r[0]);
  Rational scale = 1;
  for (int i = 0; i < 3; ++i)
    for (int j = 2; j <= r[i]; ++j) scale *= j;
  for (auto& x : v) x /= scale;
  return v;
}

Sl3Module build_sl3_module(int m, int n) {
  if (m < 0 || n < 0) throw std::invalid_argument("flag weights must be >= 0");
  Ambient W(m, n);

  std::vector<Rational> v0(W.dim(), Rational(0));
  v0[W.index.at({m, 0, 0, n, 0, 0})] = 1;  // x1^m (x) w1^n

  // cyclic span under the two simple lowering operators E21, E32
  EchelonSolver span(W.dim());
  std::vector<std::vector<Rational>> frontier{v0};
  span.insert(v0);
  while (!frontier.empty()) {
    std::vector<std::vector<Rational>> next;
    for (const auto& v : frontier) {
      for (int which : {0, 2}) {
        auto w = W.apply(which, v);
        if (!is_zero(w) && span.insert(w)) next.push_back(std::move(w));
      }
    }
    frontier = std::move(next);
  }

  Model bset = build_model(spec_flag(m, n), true);
  if (span.rank() != bset.dimV)
    throw std::runtime_error("sl3 module dimension " + std::to_string(span.rank()) +
                             " does not match |B| = " + std::to_string(bset.dimV));

  // PBW basis vectors m_b in the ambient space, powers applied rightmost
  // first: X3^{n3}, then X2^{n2}, then X1^{n1}; divided-power scaling
  EchelonSolver basis(W.dim());
  std::vector<std::vector<Rational>> mb;
  for (const auto& b : bset.points) {
    std::vector<Rational> v = v0;
    for (int i = 0; i < b[2]; ++i) v = W.apply(2, v);
    for (int i = 0; i < b[1]; ++i) v = W.apply(1, v);
    for (int i = 0; i < b[0]; ++i) v = W.apply(0, v);
    if (is_zero(v)) throw std::runtime_error("PBW monomial m_" + b.str() + " vanishes");
    Rational scale = 1;
    for (int i = 0; i < 3; ++i)
      for (int j = 2; j <= b[i]; ++j) scale *= j;
    for (auto& x : v) x /= scale;
    if (!basis.insert(v)) throw std::runtime_error("PBW monomials are dependent at " + b.str());
    mb.push_back(std::move(v));
  }

  Sl3Module mod;
  mod.m = m;
  mod.n = n;
  mod.basis_labels = bset.points;
  for (int which = 0; which < 3; ++which) {
    auto& mat = mod.op[which];
    mat.assign(bset.dimV, std::vector<Rational>(bset.dimV, Rational(0)));
    for (int col = 0; col < bset.dimV; ++col) {
      auto img = W.apply(which, mb[col]);
      auto coords = basis.solve(img);
      if (!coords)
        throw std::runtime_error("operator image leaves the module at column " +
                                 bset.points[col].str());
      for (int row = 0; row < bset.dimV; ++row) mat[row][col] = (*coords)[row];
    }
  }
  mod.highest_vector.assign(bset.dimV, Rational(0));
  int hv = mod.label_index(LatticePoint::of(3, 0, 0, 0));
  if (hv < 0) throw std::runtime_error("highest weight label missing from B");
  mod.highest_vector[hv] = 1;
  return mod;
}

std::vector<std::vector<std::int64_t>> op_matrix_int(const Sl3Module& module, int which) {
  std::vector<std::vector<std::int64_t>> out(module.dim(),
                                             std::vector<std::int64_t>(module.dim(), 0));
  for (int i = 0; i < module.dim(); ++i)
    for (int j = 0; j < module.dim(); ++j) {
      const Rational& r = module.op[which][i][j];
      if (denominator(r) != 1)
        throw std::runtime_error("operator entry is not integral: " + rational_to_string(r));
      out[i][j] = static_cast<std::int64_t>(numerator(r));
    }
  return out;
}

FlagExpansion compute_M_and_Ab(const Sl3Module& module, int bound) {
  const int m = module.m, n = module.n;
  if (bound < 0) bound = m + n;
  FlagExpansion out;
  Model bset = build_model(spec_flag(m, n), true);

  for (int r3 = 0; r3 <= n + 1; ++r3) {
    std::vector<Rational> v3 = module.pbw_monomial(LatticePoint::of(3, 0, 0, r3));
    if (r3 == n + 1) {
      if (!is_zero(v3)) throw std::runtime_error("enumeration bound too small in r3");
      continue;
    }
    for (int r2 = 0; r2 <= bound + 1; ++r2) {
      std::vector<Rational> v23 = v3;
      for (int i = 0; i < r2; ++i) {
        std::vector<Rational> next(module.dim(), Rational(0));
        for (int col = 0; col < module.dim(); ++col)
          if (v23[col] != 0)
            for (int row = 0; row < module.dim(); ++row)
              if (module.op[1][row][col] != 0) next[row] += module.op[1][row][col] * v23[col];
        v23 = std::move(next);
      }
      if (r2 == bound + 1) {
        if (!is_zero(v23)) throw std::runtime_error("enumeration bound too small in r2");
        continue;
      }
      std::vector<Rational> v = v23;
      for (int r1 = 0; r1 <= bound + 1; ++r1) {
        if (r1 > 0) {
          std::vector<Rational> next(module.dim(), Rational(0));
          for (int col = 0; col < module.dim(); ++col)
            if (v[col] != 0)
              for (int row = 0; row < module.dim(); ++row)
                if (module.op[0][row][col] != 0) next[row] += module.op[0][row][col] * v[col];
          v = std::move(next);
        }
        if (r1 == bound + 1) {
          if (!is_zero(v)) throw std::runtime_error("enumeration bound too small in r1");
          continue;
        }
        if (is_zero(v)) continue;
        LatticePoint r = LatticePoint::of(3, r1, r2, r3);
        out.M.push_back(r);
        for (int row = 0; row < module.dim(); ++row)
          if (v[row] != 0) out.A[module.basis_labels[row]].push_back(r);
      }
    }
  }
  std::sort(out.M.begin(), out.M.end());
  for (auto& [b, set] : out.A) std::sort(set.begin(), set.end());

  // structural checks from the expansion lemmas
  for (const auto& [b, set] : out.A) {
    auto wb = weight_map(b);
    for (const auto& r : set) {
      if (weight_map(r) != wb)
        throw std::runtime_error("A_" + b.str() + " contains off-weight exponent " + r.str());
      if (!(r == b) && bset.contains(r))
        throw std::runtime_error("A_" + b.str() + " meets B beyond b at " + r.str());
    }
    if (!std::binary_search(set.begin(), set.end(), b))
      throw std::runtime_error("A_" + b.str() + " misses b itself");
  }
  return out;
}

GeneralizedInstance flag_generalized_instance(const Sl3Module& module) {
  auto exp = compute_M_and_Ab(module);
  GeneralizedInstance gi;
  for (auto& [b, set] : exp.A) {
    if (set.empty()) throw std::runtime_error("empty exponent set A_" + b.str());
    gi.labels.push_back(b);
    gi.sets.push_back(set);
  }
  gi.cone_gen.push_back({1, -1, 1});
  if (!strictly_convex(gi.cone_gen, 3))
    throw std::runtime_error("reduction cone is not strictly convex");
  return gi;
}

bool k1_tropical_sanity(const Sl3Module& module) {
  auto exp = compute_M_and_Ab(module);
  // winning directions of f1(r) = r1+r2+r3: unique minimizer per A_b
  std::vector<LatticePoint> win;
  for (const auto& [b, set] : exp.A) {
    const LatticePoint* best = nullptr;
    bool tie = false;
    std::int64_t bv = 0;
    for (const auto& r : set) {
      std::int64_t v = r[0] + r[1] + r[2];
      if (!best || v < bv) {
        best = &r;
        bv = v;
        tie = false;
      } else if (v == bv) {
        tie = true;
      }
    }
    if (best && !tie) win.push_back(*best);
  }
  std::sort(win.begin(), win.end());
  auto has = [&](const LatticePoint& p) {
    return std::binary_search(win.begin(), win.end(), p);
  };
  if (!has(LatticePoint::of(3, 0, 0, 0)) || !has(LatticePoint::of(3, 1, 0, 0)) ||
      !has(LatticePoint::of(3, 0, 1, 0)) || !has(LatticePoint::of(3, 0, 0, 1)))
    return false;
  return affine_dim(win) == 3;
}

}  // namespace secant
