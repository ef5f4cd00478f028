#include "secant/oracle.h"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "json.hpp"
#include "secant/sl3.h"
#include "secant/util.h"

namespace secant {

namespace {

// arithmetic mod a 31-bit prime; products fit in 64 bits
struct Fp {
  std::uint64_t p;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p - b) % p; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t pow(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    a %= p;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  std::uint64_t inv(std::uint64_t a) const { return pow(a, p - 2); }
  std::uint64_t of_int(const Int& v) const {
    Int r = v % Int(p);
    if (r < 0) r += Int(p);
    return r.convert_to<std::uint64_t>();
  }
  std::uint64_t of_rational(const Rational& v) const {
    return mul(of_int(numerator(v)), inv(of_int(denominator(v))));
  }
};

bool is_prime_u32(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// incremental row echelon rank over F_p
class FpRank {
 public:
  FpRank(Fp fp, int width) : fp_(fp), width_(width) {}

  void add_row(std::vector<std::uint64_t> row) {
    for (const auto& [pivot, r] : rows_) {
      if (row[pivot] == 0) continue;
      std::uint64_t f = row[pivot];
      for (int j = pivot; j < width_; ++j) row[j] = fp_.sub(row[j], fp_.mul(f, r[j]));
    }
    int pivot = -1;
    for (int j = 0; j < width_; ++j)
      if (row[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) return;
    std::uint64_t inv = fp_.inv(row[pivot]);
    for (int j = pivot; j < width_; ++j) row[j] = fp_.mul(row[j], inv);
    rows_.emplace(pivot, std::move(row));
  }

  int rank() const { return static_cast<int>(rows_.size()); }

 private:
  Fp fp_;
  int width_;
  std::map<int, std::vector<std::uint64_t>> rows_;  // pivot -> normalized row
};

Int factorial(int k) {
  Int f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  Int r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

// --- monomial description of the Segre-Veronese parameterizations ------------
//
// Each coordinate of psi / t0 is a single monomial coeff * t^exps in the
// dimX parameters; the exponent vector runs over B.
struct MonomialMap {
  std::vector<Int> coeff;                 // per point of B
  std::vector<std::array<int, 3>> exps;   // per point of B
};

MonomialMap monomial_map(const Model& model) {
  MonomialMap mm;
  const auto& deg = model.spec.degrees;
  for (const auto& b : model.points) {
    Int c = 1;
    std::array<int, 3> e{0, 0, 0};
    switch (model.spec.variety) {
      case Variety::P1:
        c = binomial(deg[0], b[0]);
        e = {b[0], 0, 0};
        break;
      case Variety::P1xP1:
        c = binomial(deg[0], b[0]) * binomial(deg[1], b[1]);
        e = {b[0], b[1], 0};
        break;
      case Variety::P1xP1xP1:
        c = binomial(deg[0], b[0]) * binomial(deg[1], b[1]) * binomial(deg[2], b[2]);
        e = {b[0], b[1], b[2]};
        break;
      case Variety::P2:
        c = factorial(deg[0]) / (factorial(b[0]) * factorial(b[1]) * factorial(deg[0] - b[0] - b[1]));
        e = {b[0], b[1], 0};
        break;
      case Variety::P2xP1:
        c = factorial(deg[0]) / (factorial(b[0]) * factorial(b[1]) * factorial(deg[0] - b[0] - b[1]));
        c *= binomial(deg[1], b[2]);
        e = {b[0], b[1], b[2]};
        break;
      case Variety::Flag:
        throw std::logic_error("flag model has no monomial map");
    }
    mm.coeff.push_back(c);
    mm.exps.push_back(e);
  }
  return mm;
}

// --- flag module over F_p -----------------------------------------------------
//
// Mirror of the exact sl3 construction with modular arithmetic; used for the
// rank oracle where exact rationals would be needlessly slow.
struct FpFlagModule {
  Fp fp;
  int dim = 0;
  std::array<std::vector<std::vector<std::uint64_t>>, 3> op;
  int highest = 0;
  std::array<int, 3> nil{0, 0, 0};  // nilpotency index per operator

  std::vector<std::uint64_t> apply(int which, const std::vector<std::uint64_t>& v) const {
    std::vector<std::uint64_t> out(dim, 0);
    for (int col = 0; col < dim; ++col) {
      if (v[col] == 0) continue;
      for (int row = 0; row < dim; ++row)
        if (op[which][row][col] != 0)
          out[row] = fp.add(out[row], fp.mul(op[which][row][col], v[col]));
    }
    return out;
  }

  // exp(t * X_which) v via the finite nilpotent sum
  std::vector<std::uint64_t> exp_apply(int which, std::uint64_t t,
                                       std::vector<std::uint64_t> v) const {
    std::vector<std::uint64_t> out = v;
    std::uint64_t tpow = 1;
    Int fact = 1;
    for (int j = 1; j <= nil[which]; ++j) {
      v = apply(which, v);
      bool zero = std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
      if (zero) break;
      tpow = fp.mul(tpow, t);
      fact *= j;
      std::uint64_t f = fp.mul(tpow, fp.inv(fp.of_int(fact)));
      for (int i = 0; i < dim; ++i) out[i] = fp.add(out[i], fp.mul(f, v[i]));
    }
    return out;
  }
};

FpFlagModule build_fp_flag_module(int m, int n, std::uint32_t prime) {
  Fp fp{prime};
  // ambient monomials and derivation actions as in the exact construction
  std::vector<std::array<int, 6>> mons;
  std::map<std::array<int, 6>, int> index;
  for (int a1 = 0; a1 <= m; ++a1)
    for (int a2 = 0; a1 + a2 <= m; ++a2)
      for (int c1 = 0; c1 <= n; ++c1)
        for (int c2 = 0; c1 + c2 <= n; ++c2) {
          std::array<int, 6> mon{a1, a2, m - a1 - a2, c1, c2, n - c1 - c2};
          index[mon] = static_cast<int>(mons.size());
          mons.push_back(mon);
        }
  const int D = static_cast<int>(mons.size());

  auto apply_ambient = [&](int which, const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> out(D, 0);
    for (int i = 0; i < D; ++i) {
      if (v[i] == 0) continue;
      const auto& mo = mons[i];
      auto add = [&](std::array<int, 6> t, std::int64_t coeff) {
        if (coeff == 0) return;
        std::uint64_t c = coeff > 0 ? coeff : fp.p - (-coeff) % fp.p;
        out[index.at(t)] = fp.add(out[index.at(t)], fp.mul(v[i], c % fp.p));
      };
      std::array<int, 6> t;
      switch (which) {
        case 0:
          if (mo[0] > 0) { t = mo; --t[0]; ++t[1]; add(t, mo[0]); }
          if (mo[4] > 0) { t = mo; --t[4]; ++t[5]; add(t, mo[4]); }
          break;
        case 1:
          if (mo[0] > 0) { t = mo; --t[0]; ++t[2]; add(t, mo[0]); }
          if (mo[3] > 0) { t = mo; --t[3]; ++t[5]; add(t, -mo[3]); }
          break;
        case 2:
          if (mo[1] > 0) { t = mo; --t[1]; ++t[2]; add(t, mo[1]); }
          if (mo[3] > 0) { t = mo; --t[3]; ++t[4]; add(t, mo[3]); }
          break;
      }
    }
    return out;
  };

  // reduced echelon with combination tracking over F_p
  struct Row {
    std::vector<std::uint64_t> vec, comb;
    int pivot;
  };
  std::vector<Row> rows;
  int norig = 0;
  auto reduce = [&](std::vector<std::uint64_t>& r, std::vector<std::uint64_t>& comb) {
    for (const auto& row : rows) {
      if (r[row.pivot] == 0) continue;
      std::uint64_t f = r[row.pivot];
      for (int j = 0; j < D; ++j) r[j] = fp.sub(r[j], fp.mul(f, row.vec[j]));
      for (std::size_t j = 0; j < row.comb.size(); ++j)
        comb[j] = fp.sub(comb[j], fp.mul(f, row.comb[j]));
    }
  };
  auto insert = [&](const std::vector<std::uint64_t>& v) {
    std::vector<std::uint64_t> r = v, comb(norig + 1, 0);
    comb[norig] = 1;
    reduce(r, comb);
    ++norig;
    for (auto& row : rows) row.comb.resize(norig, 0);
    int pivot = -1;
    for (int j = 0; j < D; ++j)
      if (r[j] != 0) {
        pivot = j;
        break;
      }
    if (pivot < 0) return false;
    std::uint64_t iv = fp.inv(r[pivot]);
    for (auto& x : r) x = fp.mul(x, iv);
    for (auto& x : comb) x = fp.mul(x, iv);
    for (auto& row : rows) {
      if (row.vec[pivot] == 0) continue;
      std::uint64_t f = row.vec[pivot];
      for (int j = 0; j < D; ++j) row.vec[j] = fp.sub(row.vec[j], fp.mul(f, r[j]));
      for (std::size_t j = 0; j < comb.size(); ++j)
        row.comb[j] = fp.sub(row.comb[j], fp.mul(f, comb[j]));
    }
    rows.push_back(Row{std::move(r), std::move(comb), pivot});
    return true;
  };
  auto solve = [&](const std::vector<std::uint64_t>& w)
      -> std::optional<std::vector<std::uint64_t>> {
    std::vector<std::uint64_t> r = w, acc(norig, 0);
    for (const auto& row : rows) {
      if (r[row.pivot] == 0) continue;
      std::uint64_t f = r[row.pivot];
      for (int j = 0; j < D; ++j) r[j] = fp.sub(r[j], fp.mul(f, row.vec[j]));
      for (int j = 0; j < norig; ++j) acc[j] = fp.add(acc[j], fp.mul(f, row.comb[j]));
    }
    if (!std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; }))
      return std::nullopt;
    return acc;
  };

  Model bset = build_model(spec_flag(m, n), true);
  std::vector<std::uint64_t> v0(D, 0);
  v0[index.at({m, 0, 0, n, 0, 0})] = 1;
  std::vector<std::vector<std::uint64_t>> mb;
  for (const auto& b : bset.points) {
    std::vector<std::uint64_t> v = v0;
    for (int i = 0; i < b[2]; ++i) v = apply_ambient(2, v);
    for (int i = 0; i < b[1]; ++i) v = apply_ambient(1, v);
    for (int i = 0; i < b[0]; ++i) v = apply_ambient(0, v);
    if (!insert(v))
      throw std::runtime_error("modular PBW basis degenerated; rerun with another prime");
    mb.push_back(std::move(v));
  }

  FpFlagModule mod;
  mod.fp = fp;
  mod.dim = bset.dimV;
  for (int which = 0; which < 3; ++which) {
    auto& mat = mod.op[which];
    mat.assign(mod.dim, std::vector<std::uint64_t>(mod.dim, 0));
    for (int col = 0; col < mod.dim; ++col) {
      auto coords = solve(apply_ambient(which, mb[col]));
      if (!coords)
        throw std::runtime_error("modular operator image left the module; rerun with another prime");
      for (int row = 0; row < mod.dim; ++row) mat[row][col] = (*coords)[row];
    }
  }
  mod.highest = bset.point_index(LatticePoint::of(3, 0, 0, 0));
  // nilpotency indexes: smallest j with op^j v = 0 cannot exceed the weight
  // string lengths; dim is always a safe cap
  for (int which = 0; which < 3; ++which) mod.nil[which] = mod.dim;
  return mod;
}

// --- jacobians -----------------------------------------------------------------

// rows of the Jacobian of psi at t (length dimX+1 each of width dimV)
std::vector<std::vector<std::uint64_t>> jacobian_rows(const Model& model, const MonomialMap* mm,
                                                      const FpFlagModule* flag, Fp fp,
                                                      const std::vector<std::uint64_t>& t) {
  const int dim = model.dimX;
  std::vector<std::vector<std::uint64_t>> rows(dim + 1,
                                               std::vector<std::uint64_t>(model.dimV, 0));
  if (mm) {
    auto powmod = [&](std::uint64_t base, int e) -> std::uint64_t {
      if (e == 0) return 1;  // 0^0 = 1 in the polynomial sense
      return fp.pow(base, e);
    };
    for (int b = 0; b < model.dimV; ++b) {
      std::uint64_t c = fp.of_int(mm->coeff[b]);
      if (c == 0) continue;
      const auto& e = mm->exps[b];
      // d/dt0: the coordinate itself divided by t0
      std::uint64_t base = c;
      for (int j = 0; j < dim; ++j) base = fp.mul(base, powmod(t[j + 1], e[j]));
      rows[0][b] = base;
      for (int j = 0; j < dim; ++j) {
        if (e[j] == 0) continue;
        std::uint64_t v = fp.mul(c, fp.mul(e[j] % fp.p, t[0]));
        for (int l = 0; l < dim; ++l)
          v = fp.mul(v, powmod(t[l + 1], l == j ? e[l] - 1 : e[l]));
        rows[j + 1][b] = v;
      }
    }
    return rows;
  }

  // flag model: psi = t0 exp(t1 X1) exp(t2 X2) exp(t3 X3) v
  std::vector<std::uint64_t> v(flag->dim, 0);
  v[flag->highest] = 1;
  std::vector<std::uint64_t> v3 = flag->exp_apply(2, t[3], v);
  std::vector<std::uint64_t> v23 = flag->exp_apply(1, t[2], v3);
  std::vector<std::uint64_t> v123 = flag->exp_apply(0, t[1], v23);
  rows[0] = v123;  // d/dt0
  // d/dt1 = t0 X1 exp(t1 X1) ...
  {
    auto w = flag->apply(0, v123);
    for (int i = 0; i < flag->dim; ++i) rows[1][i] = fp.mul(t[0], w[i]);
  }
  // d/dt2 = t0 exp(t1 X1) X2 exp(t2 X2) exp(t3 X3) v
  {
    auto w = flag->exp_apply(0, t[1], flag->apply(1, v23));
    for (int i = 0; i < flag->dim; ++i) rows[2][i] = fp.mul(t[0], w[i]);
  }
  // d/dt3 = t0 exp(t1 X1) exp(t2 X2) X3 exp(t3 X3) v
  {
    auto w = flag->exp_apply(0, t[1], flag->exp_apply(1, t[2], flag->apply(2, v3)));
    for (int i = 0; i < flag->dim; ++i) rows[3][i] = fp.mul(t[0], w[i]);
  }
  return rows;
}

std::vector<int> profile_ranks(const Model& model, int kmax, const OracleOptions& opts,
                               std::vector<std::uint64_t>& trial_seeds, std::vector<int>& agree,
                               bool& stable) {
  if (!is_prime_u32(opts.prime) || opts.prime <= (1u << 30))
    throw std::invalid_argument("oracle prime must be a prime larger than 2^30");
  Fp fp{opts.prime};
  std::optional<MonomialMap> mm;
  std::optional<FpFlagModule> flag;
  if (model.spec.variety == Variety::Flag)
    flag = build_fp_flag_module(model.spec.degrees[0], model.spec.degrees[1], opts.prime);
  else
    mm = monomial_map(model);

  std::vector<int> best(kmax, 0);
  std::vector<std::vector<int>> per_trial;
  for (int trial = 0; trial < opts.trials; ++trial) {
    std::uint64_t tseed = hash_mix(opts.seed, 0x5ee00d + trial);
    trial_seeds.push_back(tseed);
    Rng rng(tseed);
    FpRank rank(fp, model.dimV);
    std::vector<int> dims;
    for (int k = 1; k <= kmax; ++k) {
      std::vector<std::uint64_t> t(model.dimX + 1);
      for (auto& x : t) x = rng.below(fp.p);
      for (auto& row : jacobian_rows(model, mm ? &*mm : nullptr, flag ? &*flag : nullptr, fp, t))
        rank.add_row(std::move(row));
      dims.push_back(rank.rank());
    }
    per_trial.push_back(dims);
    for (int k = 0; k < kmax; ++k) best[k] = std::max(best[k], dims[k]);
  }
  agree.assign(kmax, 0);
  for (const auto& dims : per_trial)
    for (int k = 0; k < kmax; ++k)
      if (dims[k] == best[k]) ++agree[k];
  stable = std::all_of(agree.begin(), agree.end(),
                       [&](int a) { return a == opts.trials; });
  return best;
}

}  // namespace

std::vector<Rational> psi_eval(const Model& model, const std::vector<Rational>& params) {
  if (static_cast<int>(params.size()) != model.dimX + 1)
    throw std::invalid_argument("psi_eval expects dimX+1 parameters");
  std::vector<Rational> out(model.dimV, Rational(0));
  if (model.spec.variety != Variety::Flag) {
    MonomialMap mm = monomial_map(model);
    for (int b = 0; b < model.dimV; ++b) {
      Rational v(mm.coeff[b]);
      for (int j = 0; j < model.dimX; ++j) {
        for (int i = 0; i < mm.exps[b][j]; ++i) v *= params[j + 1];
      }
      out[b] = params[0] * v;
    }
    return out;
  }
  Sl3Module mod = build_sl3_module(model.spec.degrees[0], model.spec.degrees[1]);
  std::vector<Rational> v = mod.highest_vector;
  for (int which = 2; which >= 0; --which) {
    // exp(t X) v as a finite sum
    std::vector<Rational> acc = v, term = v;
    Rational fact = 1;
    for (int j = 1; j <= mod.dim(); ++j) {
      std::vector<Rational> next(mod.dim(), Rational(0));
      bool zero = true;
      for (int col = 0; col < mod.dim(); ++col) {
        if (term[col] == 0) continue;
        for (int row = 0; row < mod.dim(); ++row) {
          if (mod.op[which][row][col] == 0) continue;
          next[row] += mod.op[which][row][col] * term[col];
          zero = false;
        }
      }
      if (zero) break;
      term = std::move(next);
      fact *= j;
      Rational tj = 1;
      for (int i = 0; i < j; ++i) tj *= params[which + 1];
      for (int i = 0; i < mod.dim(); ++i) acc[i] += tj / fact * term[i];
    }
    v = std::move(acc);
  }
  for (auto& x : v) x *= params[0];
  return v;
}

int terracini_dim(const Model& model, int k, const OracleOptions& opts) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  std::vector<std::uint64_t> seeds;
  std::vector<int> agree;
  bool stable = true;
  return profile_ranks(model, k, opts, seeds, agree, stable)[k - 1];
}

OracleReport terracini_profile(const Model& model, int kmax, const OracleOptions& opts) {
  OracleReport rep;
  rep.spec = model.spec;
  rep.prime = opts.prime;
  rep.seed = opts.seed;
  rep.trials = opts.trials;
  rep.dims = profile_ranks(model, kmax, opts, rep.trial_seeds, rep.agree, rep.stable);
  return rep;
}

std::string oracle_report_to_json(const OracleReport& report) {
  nlohmann::ordered_json j;
  j["model"] = {{"variety", variety_name(report.spec.variety)}, {"degrees", report.spec.degrees}};
  j["prime"] = report.prime;
  j["seed"] = report.seed;
  j["trials"] = report.trials;
  j["trial_seeds"] = report.trial_seeds;
  auto dims = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.dims.size(); ++i)
    dims.push_back({{"k", i + 1}, {"dim", report.dims[i]}, {"agreeing_trials", report.agree[i]}});
  j["dims"] = dims;
  j["stable"] = report.stable;
  return j.dump(2) + "\n";
}

}  // namespace secant
