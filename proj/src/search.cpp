#include "secant/search.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <unordered_map>

namespace secant {

std::vector<int> Deficits::sizes_desc() const {
  std::vector<int> out;
  for (int s = 3; s >= 1; --s)
    for (int i = 0; i < count[s - 1]; ++i) out.push_back(s);
  return out;
}

std::vector<Deficits> Deficits::submultisets() const {
  std::vector<Deficits> out;
  for (int c3 = count[2]; c3 >= 0; --c3)
    for (int c2 = count[1]; c2 >= 0; --c2)
      for (int c1 = count[0]; c1 >= 0; --c1) {
        Deficits d;
        d.count = {c1, c2, c3};
        out.push_back(d);
      }
  return out;
}

Deficits Deficits::minus(const Deficits& o) const {
  Deficits d;
  for (int i = 0; i < 3; ++i) d.count[i] = count[i] - o.count[i];
  return d;
}

std::vector<Deficits> Deficits::enumerate(int cells, int max_size, int residue, int modulus) {
  std::vector<Deficits> out;
  for (int c3 = (max_size >= 3 ? cells : 0); c3 >= 0; --c3)
    for (int c2 = (max_size >= 2 ? cells - c3 : 0); c2 >= 0; --c2) {
      int c1 = cells - c3 - c2;
      if (c1 < 0) continue;
      Deficits d;
      d.count = {c1, c2, c3};
      if (d.points() % modulus == residue) out.push_back(d);
    }
  // largest sizes first, e.g. {3,1} before {2,2}
  std::sort(out.begin(), out.end(), [](const Deficits& a, const Deficits& b) {
    return a.sizes_desc() > b.sizes_desc();
  });
  return out;
}

namespace {

struct BudgetExhausted {};

std::vector<std::array<std::int64_t, 3>> make_normals(int dim) {
  std::vector<std::array<std::int64_t, 3>> out;
  if (dim == 1) {
    out.push_back({1, 0, 0});
    return out;
  }
  auto gcd3 = [](std::int64_t a, std::int64_t b, std::int64_t c) {
    return std::gcd(std::gcd(std::abs(a), std::abs(b)), std::abs(c));
  };
  int lo = -2, hi = 2;
  for (int x = lo; x <= hi; ++x)
    for (int y = lo; y <= hi; ++y)
      for (int z = (dim == 3 ? lo : 0); z <= (dim == 3 ? hi : 0); ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        // first nonzero coordinate positive: one representative per sign pair
        int first = x != 0 ? x : (y != 0 ? y : z);
        if (first < 0) continue;
        if (gcd3(x, y, z) != 1) continue;
        out.push_back({x, y, z});
      }
  return out;
}

// canonical form of a cell up to signed coordinate permutations + translation
std::vector<LatticePoint> canonical_cell(const std::vector<LatticePoint>& cell, int dim) {
  std::vector<LatticePoint> best;
  std::array<int, 3> perm{0, 1, 2};
  std::sort(perm.begin(), perm.begin() + dim);
  do {
    for (int smask = 0; smask < (1 << dim); ++smask) {
      std::vector<LatticePoint> img;
      img.reserve(cell.size());
      for (const auto& p : cell) {
        LatticePoint q = LatticePoint::of(dim);
        for (int j = 0; j < dim; ++j) q[perm[j]] = ((smask >> j) & 1 ? -1 : 1) * p[j];
        img.push_back(q);
      }
      LatticePoint mn = img[0];
      for (const auto& q : img)
        for (int i = 0; i < dim; ++i) mn[i] = std::min(mn[i], q[i]);
      for (auto& q : img) q = q - mn;
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = img;
    }
  } while (std::next_permutation(perm.begin(), perm.begin() + dim));
  return best;
}

const std::vector<std::vector<LatticePoint>>& standard_cells(int dim) {
  static const std::vector<std::vector<LatticePoint>> two = {
      canonical_cell({{0, 0}, {1, 0}, {0, 1}}, 2)};
  static const std::vector<std::vector<LatticePoint>> three = {
      canonical_cell({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}}, 3),   // type 1
      canonical_cell({{1, 0, 0}, {0, 0, 0}, {0, 1, 0}, {0, 1, 1}}, 3)};  // type 2
  static const std::vector<std::vector<LatticePoint>> none;
  if (dim == 2) return two;
  if (dim == 3) return three;
  return none;
}

bool standard_shape(const std::vector<LatticePoint>& cell, int dim) {
  if (dim < 2) return true;
  auto canon = canonical_cell(cell, dim);
  for (const auto& ref : standard_cells(dim))
    if (canon == ref) return true;
  return false;
}

class RegionSearcher {
 public:
  RegionSearcher(std::vector<LatticePoint> pts, int dim, const SearchConfig& cfg, bool types12)
      : pts_(std::move(pts)), dim_(dim), cfg_(cfg), types12_(types12) {
    normals_ = make_normals(dim);
    vals_.resize(normals_.size());
    for (std::size_t ni = 0; ni < normals_.size(); ++ni) {
      vals_[ni].resize(pts_.size());
      for (std::size_t i = 0; i < pts_.size(); ++i) vals_[ni][i] = dot(normals_[ni], pts_[i]);
    }
    if (cfg_.symmetry_breaking) {
      for (const auto& g : point_set_symmetries(pts_, dim_)) {
        std::vector<int> perm(pts_.size());
        std::vector<LatticePoint> sorted = pts_;
        std::sort(sorted.begin(), sorted.end());
        bool ok = true;
        for (std::size_t i = 0; i < pts_.size() && ok; ++i) {
          LatticePoint q = g.apply(pts_[i]);
          auto it = std::lower_bound(sorted.begin(), sorted.end(), q);
          if (it == sorted.end() || !(*it == q)) ok = false;
          // map into the index space of pts_ (pts_ may be unsorted)
          if (ok) perm[i] = index_of(q);
        }
        if (ok) sym_perms_.push_back(std::move(perm));
      }
    }
  }

  std::optional<Picture> run(const Deficits& ms, bool* hit_budget) {
    budget_ = cfg_.max_backtracks;
    if (hit_budget) *hit_budget = false;
    std::optional<Built> built;
    try {
      built = solve(IndexSet::full(static_cast<int>(pts_.size())), ms, true);
    } catch (const BudgetExhausted&) {
      if (hit_budget) *hit_budget = true;
      return std::nullopt;
    }
    if (!built) return std::nullopt;
    return to_picture(*built);
  }

  std::int64_t used_budget() const { return cfg_.max_backtracks - budget_; }

 private:
  struct Built {
    CutTree tree;
    std::vector<std::vector<int>> cells;

    Built clone() const {
      Built b;
      b.tree = tree.clone();
      b.cells = cells;
      return b;
    }
  };

  struct Key {
    IndexSet region;
    std::uint32_t ms;
    bool operator==(const Key& o) const { return ms == o.ms && region == o.region; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const { return hash_mix(k.region.hash(), k.ms); }
  };

  int index_of(const LatticePoint& q) const {
    for (std::size_t i = 0; i < pts_.size(); ++i)
      if (pts_[i] == q) return static_cast<int>(i);
    return -1;
  }

  std::vector<LatticePoint> gather(const IndexSet& region) const {
    std::vector<LatticePoint> out;
    region.for_each([&](int i) { out.push_back(pts_[i]); });
    return out;
  }

  struct Candidate {
    IndexSet below;
    int below_n = 0;
    int normal = 0;
    std::int64_t threshold = 0;
    std::uint64_t order = 0;
  };

  std::vector<Candidate> candidates(const IndexSet& region, int n, bool root) {
    std::vector<Candidate> out;
    std::set<IndexSet> seen;
    std::vector<int> idx = region.indices();
    std::vector<std::pair<std::int64_t, int>> vals;
    for (std::size_t ni = 0; ni < normals_.size(); ++ni) {
      vals.clear();
      for (int i : idx) vals.emplace_back(vals_[ni][i], i);
      std::sort(vals.begin(), vals.end());
      IndexSet below(static_cast<int>(pts_.size()));
      for (int i = 0; i + 1 < n; ++i) {
        below.set(vals[i].second);
        if (vals[i].first == vals[i + 1].first) continue;
        IndexSet above(static_cast<int>(pts_.size()));
        for (int j = i + 1; j < n; ++j) above.set(vals[j].second);
        IndexSet canon = canonical_pair(below, above, root);
        if (!seen.insert(canon).second) continue;
        Candidate c;
        c.below = below;
        c.below_n = i + 1;
        c.normal = static_cast<int>(ni);
        c.threshold = vals[i].first;
        out.push_back(std::move(c));
      }
    }
    // Most even split first for modest regions; for large ones prefer cuts
    // that carve off a small chunk (at least one full cell's worth).
    const bool carve = n > 24;
    for (auto& c : out) {
      int small = std::min(c.below_n, n - c.below_n);
      std::uint64_t primary =
          carve ? (small < dim_ + 1 ? (1u << 20) + small : static_cast<std::uint64_t>(small))
                : static_cast<std::uint64_t>(std::abs(n - 2 * c.below_n));
      c.order = (primary << 40) ^ (hash_mix(cfg_.seed, c.below.hash()) >> 24);
    }
    std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
      if (a.order != b.order) return a.order < b.order;
      if (a.normal != b.normal) return a.normal < b.normal;
      return a.threshold < b.threshold;
    });
    return out;
  }

  IndexSet canonical_pair(const IndexSet& below, const IndexSet& above, bool root) {
    IndexSet best = std::min(below, above);
    if (root && !sym_perms_.empty()) {
      for (const auto& perm : sym_perms_) {
        IndexSet ib(static_cast<int>(pts_.size())), ia(static_cast<int>(pts_.size()));
        below.for_each([&](int i) { ib.set(perm[i]); });
        above.for_each([&](int i) { ia.set(perm[i]); });
        best = std::min(best, std::min(ib, ia));
      }
    }
    return best;
  }

  std::optional<Built> solve(const IndexSet& region, const Deficits& ms, bool root) {
    if (--budget_ < 0) throw BudgetExhausted{};
    const int n = region.count();
    const int cell = dim_ + 1;
    const int def_pts = ms.points();
    if (def_pts > n || (n - def_pts) % cell != 0) return std::nullopt;
    const int fulls = (n - def_pts) / cell;

    // single-cell leaves
    if (fulls == 1 && ms.cells() == 0) {
      auto cellpts = gather(region);
      if (affinely_independent(cellpts) && (!types12_ || standard_shape(cellpts, dim_)))
        return leaf_built(region);
      return std::nullopt;  // dim+1 points cannot split into full cells
    }
    if (fulls == 0 && ms.cells() == 1) {
      auto cellpts = gather(region);
      if (affinely_independent(cellpts)) return leaf_built(region);
      return std::nullopt;
    }

    Key key{region, ms.encode()};
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (!it->second) return std::nullopt;
      return it->second->clone();
    }

    // a degenerate region cannot host any full cell
    if (fulls > 0 && affine_dim(gather(region)) < dim_) {
      memo_.emplace(std::move(key), std::nullopt);
      return std::nullopt;
    }

    auto divisions = ms.submultisets();
    for (const auto& cand : candidates(region, n, root)) {
      IndexSet above(static_cast<int>(pts_.size()));
      region.for_each([&](int i) {
        if (!cand.below.test(i)) above.set(i);
      });
      const int bn = cand.below_n, an = n - bn;
      for (const auto& msA : divisions) {
        Deficits msB = ms.minus(msA);
        if (msA.points() > bn || (bn - msA.points()) % cell != 0) continue;
        if (msB.points() > an || (an - msB.points()) % cell != 0) continue;
        // smaller side first to fail fast
        std::optional<Built> first, second;
        if (bn <= an) {
          first = solve(cand.below, msA, false);
          if (!first) continue;
          second = solve(above, msB, false);
        } else {
          second = solve(above, msB, false);
          if (!second) continue;
          first = solve(cand.below, msA, false);
        }
        if (!first || !second) continue;
        Built combined = combine(cand_functional(cand), std::move(*first), std::move(*second));
        memo_.emplace(key, combined.clone());
        return combined;
      }
    }
    memo_.emplace(std::move(key), std::nullopt);
    return std::nullopt;
  }

  Built leaf_built(const IndexSet& region) {
    Built b;
    b.tree = CutTree::leaf(0);
    b.cells.push_back(region.indices());
    return b;
  }

  AffineFunctional cand_functional(const Candidate& c) const {
    AffineFunctional f;
    f.normal.assign(dim_, Rational(0));
    for (int i = 0; i < dim_; ++i) f.normal[i] = Rational(normals_[c.normal][i]);
    // offset at the half-integer just above the threshold
    f.offset = -Rational(2 * c.threshold + 1, 2);
    return f;
  }

  Built combine(AffineFunctional cut, Built below, Built above) {
    const int shift = static_cast<int>(below.cells.size());
    struct Shifter {
      static CutTree run(const CutTree& t, int s) {
        if (t.is_leaf()) return CutTree::leaf(t.leaf_id + s);
        return CutTree::node(t.cut, run(*t.below, s), run(*t.above, s));
      }
    };
    Built b;
    b.tree = CutTree::node(std::move(cut), std::move(below.tree), Shifter::run(above.tree, shift));
    b.cells = std::move(below.cells);
    for (auto& c : above.cells) b.cells.push_back(std::move(c));
    return b;
  }

  Picture to_picture(const Built& built) {
    // canonical part order: full cells first, deficient last, each block by
    // lexicographically least point
    struct Entry {
      std::vector<LatticePoint> pts;
      bool full;
      int old_id;
    };
    std::vector<Entry> entries;
    for (std::size_t i = 0; i < built.cells.size(); ++i) {
      Entry e;
      for (int idx : built.cells[i]) e.pts.push_back(pts_[idx]);
      std::sort(e.pts.begin(), e.pts.end());
      e.full = affine_dim(e.pts) == dim_;
      e.old_id = static_cast<int>(i);
      entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
      if (a.full != b.full) return a.full;
      return a.pts.front() < b.pts.front();
    });
    std::vector<int> remap(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) remap[entries[i].old_id] = static_cast<int>(i);
    struct Remapper {
      static CutTree run(const CutTree& t, const std::vector<int>& remap) {
        if (t.is_leaf()) return CutTree::leaf(remap[t.leaf_id]);
        return CutTree::node(t.cut, run(*t.below, remap), run(*t.above, remap));
      }
    };
    Picture pic;
    pic.points = pts_;
    pic.tree = Remapper::run(built.tree, remap);
    for (auto& e : entries) pic.parts.push_back(std::move(e.pts));
    return pic;
  }

  std::vector<LatticePoint> pts_;
  int dim_;
  SearchConfig cfg_;
  bool types12_;
  std::vector<std::array<std::int64_t, 3>> normals_;
  std::vector<std::vector<std::int64_t>> vals_;
  std::vector<std::vector<int>> sym_perms_;
  std::unordered_map<Key, std::optional<Built>, KeyHash> memo_;
  std::int64_t budget_ = 0;
};

std::vector<bool> mode_sequence(CellShapes cs, bool flag_like, int dim) {
  if (dim < 2) return {false};
  switch (cs) {
    case CellShapes::Types12Only: return {true};
    case CellShapes::AnyIndependent: return {false};
    case CellShapes::Auto: return flag_like ? std::vector<bool>{false} : std::vector<bool>{true, false};
  }
  return {false};
}

constexpr int kMaxExtraDeficits = 4;

// the searcher handles every desk-scale model; the cap only guards against
// runaway exhaustive failures on huge inputs
int direct_threshold(int) { return 360; }

}  // namespace

std::optional<Picture> search_picture(const std::vector<LatticePoint>& points, int dim,
                                      const Deficits& deficits, const SearchConfig& config,
                                      bool* hit_budget) {
  if (points.empty()) return std::nullopt;
  bool any_budget = false;
  std::optional<Picture> out;
  for (bool types12 : mode_sequence(config.cell_shapes, false, dim)) {
    RegionSearcher searcher(points, dim, config, types12);
    bool hb = false;
    out = searcher.run(deficits, &hb);
    any_budget |= hb;
    if (out) break;
  }
  if (hit_budget) *hit_budget = any_budget;
  return out;
}

namespace {

SearchResult finalize_search(const Model& model, std::optional<Picture> pic, int deficit_cells,
                             bool hit_budget, std::int64_t backtracks) {
  SearchResult res;
  res.hit_budget = hit_budget;
  res.backtracks = backtracks;
  res.deficient_cells = deficit_cells;
  if (!pic) return res;
  Certificate cert = certificate_of(std::move(*pic), model.spec);
  res.report = verify_certificate(cert);
  if (!res.report.valid_partition)
    throw std::logic_error("search produced an invalid certificate: " + res.report.failure);
  res.certificate = std::move(cert);
  return res;
}

}  // namespace

SearchResult search_certificate(const Model& model, const SearchConfig& config) {
  const int cell = model.dimX + 1;
  const int r0 = model.dimV % cell;
  bool any_budget = false;
  std::int64_t total_backtracks = 0;

  for (bool types12 : mode_sequence(config.cell_shapes, model.spec.variety == Variety::Flag,
                                    model.dimX)) {
    RegionSearcher searcher(model.points, model.dimX, config, types12);
    for (int b = (r0 ? 1 : 0); b <= (r0 ? 1 : 0) + kMaxExtraDeficits; ++b) {
      for (const auto& ms : Deficits::enumerate(b, model.dimX, r0, cell)) {
        bool hb = false;
        auto pic = searcher.run(ms, &hb);
        any_budget |= hb;
        total_backtracks += searcher.used_budget();
        if (pic)
          return finalize_search(model, std::move(pic), ms.cells(), any_budget, total_backtracks);
      }
    }
  }
  return finalize_search(model, std::nullopt, 0, any_budget, total_backtracks);
}

// --- induction planner ----------------------------------------------------------

namespace {

// canonical representative (sorted degrees / m >= n) and the affine map that
// carries the canonical B onto the original one
std::pair<ModelSpec, AffineMap> canonicalize_spec(const ModelSpec& spec) {
  int dim = variety_dim(spec.variety);
  switch (spec.variety) {
    case Variety::P1xP1:
    case Variety::P1xP1xP1: {
      std::vector<int> sorted = spec.degrees;
      std::sort(sorted.rbegin(), sorted.rend());
      ModelSpec canon{spec.variety, sorted};
      AffineMap map = AffineMap::identity(dim);
      std::vector<bool> used(dim, false);
      for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < dim; ++i) {
          if (!used[i] && spec.degrees[i] == sorted[j]) {
            map.perm[j] = i;
            used[i] = true;
            break;
          }
        }
      }
      return {canon, map};
    }
    case Variety::Flag: {
      int m = spec.degrees[0], n = spec.degrees[1];
      if (m >= n) return {spec, AffineMap::identity(dim)};
      ModelSpec canon{Variety::Flag, {n, m}};
      AffineMap map;  // (n1,n2,n3) in B(n,m) -> (n1, m-n3, n-n2) in B(m,n)
      map.dim = 3;
      map.perm = {0, 2, 1};
      map.sign = {1, -1, -1};
      map.shift = LatticePoint::of(3, 0, m, n);
      return {canon, map};
    }
    default:
      return {spec, AffineMap::identity(dim)};
  }
}

AffineFunctional axis_cut(int dim, int axis, int below_max) {
  AffineFunctional f;
  f.normal.assign(dim, Rational(0));
  f.normal[axis] = 1;
  f.offset = -Rational(2 * below_max + 1, 2);
  return f;
}

}  // namespace

InductionPlanner::InductionPlanner(const SearchConfig& config) : config_(config) {}

std::vector<InductionPlanner::Decomp> InductionPlanner::decompositions(
    const ModelSpec& spec) const {
  std::vector<Decomp> out;
  const auto& deg = spec.degrees;
  auto push_axis_split = [&](Variety v, int dim, int axis, int h) {
    // below: degrees with deg[axis] = h-1; above: deg[axis] -= h, shifted
    Decomp d;
    std::vector<int> lo = deg, hi = deg;
    lo[axis] = h - 1;
    hi[axis] = deg[axis] - h;
    LatticePoint off = LatticePoint::of(dim);
    off[axis] = h;
    d.pieces.push_back({ModelSpec{v, lo}, LatticePoint::of(dim)});
    d.pieces.push_back({ModelSpec{v, hi}, off});
    d.cuts.push_back(axis_cut(dim, axis, h - 1));
    out.push_back(std::move(d));
  };

  switch (spec.variety) {
    case Variety::P1:
      for (int h = 1; h <= deg[0]; ++h) push_axis_split(Variety::P1, 1, 0, h);
      break;
    case Variety::P1xP1:
      for (int axis = 0; axis < 2; ++axis)
        for (int h = 1; h <= deg[axis]; ++h) push_axis_split(Variety::P1xP1, 2, axis, h);
      break;
    case Variety::P1xP1xP1:
      for (int axis = 0; axis < 3; ++axis)
        for (int h = 1; h <= deg[axis]; ++h) push_axis_split(Variety::P1xP1xP1, 3, axis, h);
      break;
    case Variety::P2: {
      int dd = deg[0];
      for (int c = 1; c <= dd - 1; ++c) {
        // {y<=c}: box (d-c, c) plus triangle(c-1) shifted right; above: triangle(d-c-1)
        Decomp d;
        d.pieces.push_back({spec_p1p1(dd - c, c), LatticePoint::of(2)});
        d.pieces.push_back({spec_p2(c - 1), LatticePoint::of(2, dd - c + 1, 0)});
        d.pieces.push_back({spec_p2(dd - c - 1), LatticePoint::of(2, 0, c + 1)});
        d.cuts.push_back(axis_cut(2, 1, c));       // outer: y <= c | y >= c+1
        d.cuts.push_back(axis_cut(2, 0, dd - c));  // inner: x <= d-c | x >= d-c+1
        d.shape = Decomp::Shape::InnerBelow;
        out.push_back(std::move(d));
      }
      break;
    }
    case Variety::P2xP1: {
      int dd = deg[0], ee = deg[1];
      for (int h = 1; h <= ee; ++h) {
        Decomp d;
        d.pieces.push_back({spec_p2p1(dd, h - 1), LatticePoint::of(3)});
        d.pieces.push_back({spec_p2p1(dd, ee - h), LatticePoint::of(3, 0, 0, h)});
        d.cuts.push_back(axis_cut(3, 2, h - 1));
        out.push_back(std::move(d));
      }
      for (int c = 1; c <= dd - 1; ++c) {
        Decomp d;
        d.pieces.push_back({spec_p1p1p1(dd - c, c, ee), LatticePoint::of(3)});
        d.pieces.push_back({spec_p2p1(c - 1, ee), LatticePoint::of(3, dd - c + 1, 0, 0)});
        d.pieces.push_back({spec_p2p1(dd - c - 1, ee), LatticePoint::of(3, 0, c + 1, 0)});
        d.cuts.push_back(axis_cut(3, 1, c));
        d.cuts.push_back(axis_cut(3, 0, dd - c));
        d.shape = Decomp::Shape::InnerBelow;
        out.push_back(std::move(d));
      }
      break;
    }
    case Variety::Flag: {
      int mm = deg[0], nn = deg[1];
      // column splits along n2
      for (int s = 2; s <= mm - 1; ++s) {
        Decomp d;
        d.pieces.push_back({spec_p1p1p1(mm - s, s - 1, nn), LatticePoint::of(3)});
        d.pieces.push_back({spec_flag(s - 1, nn), LatticePoint::of(3, mm - s + 1, 0, 0)});
        d.pieces.push_back({spec_flag(mm - s, nn), LatticePoint::of(3, 0, s, 0)});
        d.cuts.push_back(axis_cut(3, 1, s - 1));   // outer: n2
        d.cuts.push_back(axis_cut(3, 0, mm - s));  // inner: n1
        d.shape = Decomp::Shape::InnerBelow;
        out.push_back(std::move(d));
      }
      // layer splits along n3: below = flag(m, n-t), above = block + flag(m, t-1)
      for (int t = 2; t <= nn - 1; ++t) {
        Decomp d;
        d.pieces.push_back({spec_flag(mm, nn - t), LatticePoint::of(3)});
        d.pieces.push_back({spec_p1p1p1(nn - t, mm, t - 1), LatticePoint::of(3, 0, 0, nn - t + 1)});
        d.pieces.push_back({spec_flag(mm, t - 1), LatticePoint::of(3, nn - t + 1, 0, nn - t + 1)});
        d.cuts.push_back(axis_cut(3, 2, nn - t));  // outer: n3
        d.cuts.push_back(axis_cut(3, 0, nn - t));  // inner: n1 within the slab
        d.shape = Decomp::Shape::InnerAbove;
        out.push_back(std::move(d));
      }
      break;
    }
  }

  // prefer decompositions whose largest piece is smallest
  std::stable_sort(out.begin(), out.end(), [](const Decomp& a, const Decomp& b) {
    auto size_of = [](const Piece& p) {
      std::int64_t s = 1;
      Variety v = p.spec.variety;
      const auto& dg = p.spec.degrees;
      switch (v) {
        case Variety::P1: return std::int64_t(dg[0] + 1);
        case Variety::P2: return std::int64_t(dg[0] + 1) * (dg[0] + 2) / 2;
        case Variety::P1xP1: return std::int64_t(dg[0] + 1) * (dg[1] + 1);
        case Variety::P1xP1xP1: return std::int64_t(dg[0] + 1) * (dg[1] + 1) * (dg[2] + 1);
        case Variety::P2xP1: return std::int64_t(dg[0] + 1) * (dg[0] + 2) / 2 * (dg[1] + 1);
        case Variety::Flag:
          return std::int64_t(dg[0] + 1) * (dg[1] + 1) * (dg[0] + dg[1] + 2) / 2;
      }
      return s;
    };
    auto max_piece = [&](const Decomp& d) {
      std::int64_t mx = 0;
      for (const auto& p : d.pieces) mx = std::max(mx, size_of(p));
      return mx;
    };
    return max_piece(a) < max_piece(b);
  });
  return out;
}

std::optional<Picture> InductionPlanner::assemble(const Decomp& d, const Deficits& ms) {
  const int np = static_cast<int>(d.pieces.size());
  std::vector<Model> models;
  for (const auto& piece : d.pieces) models.push_back(build_model(piece.spec, true));

  // enumerate assignments of the multiset across the pieces, residues
  // matching per piece; for each full assignment, plan all pieces
  std::vector<Deficits> assign(np);
  std::vector<Picture> built(np);
  const int cell = variety_dim(d.pieces[0].spec.variety) + 1;

  std::function<bool(int, const Deficits&)> enumerate = [&](int i, const Deficits& rest) -> bool {
    if (i == np) {
      if (rest.cells() != 0) return false;
      for (int j = 0; j < np; ++j) {
        auto pic = plan(d.pieces[j].spec, assign[j]);
        if (!pic) return false;
        built[j] = glue_translate(*pic, d.pieces[j].offset);
      }
      return true;
    }
    for (const auto& msA : rest.submultisets()) {
      if (msA.points() > models[i].dimV || (models[i].dimV - msA.points()) % cell != 0) continue;
      assign[i] = msA;
      if (enumerate(i + 1, rest.minus(msA))) return true;
    }
    return false;
  };

  if (!enumerate(0, ms)) return std::nullopt;

  if (np == 2) return glue_stack(built[0], built[1], d.cuts[0]);
  if (d.shape == Decomp::Shape::InnerBelow) {
    // ((p0 | p1) | p2): pieces 0 and 1 below the outer cut
    Picture inner = glue_stack(built[0], built[1], d.cuts[1]);
    return glue_stack(inner, built[2], d.cuts[0]);
  }
  // (p0 | (p1 | p2)): pieces 1 and 2 above the outer cut
  Picture inner = glue_stack(built[1], built[2], d.cuts[1]);
  return glue_stack(built[0], inner, d.cuts[0]);
}

std::optional<Picture> InductionPlanner::plan(const ModelSpec& spec, const Deficits& ms) {
  auto [canon, to_orig] = canonicalize_spec(spec);
  auto key = std::make_pair(canon.str(), ms.encode());
  auto orient = [&](const std::optional<Picture>& pic) -> std::optional<Picture> {
    if (!pic) return std::nullopt;
    if (to_orig.is_identity()) return *pic;
    return glue_transform(*pic, to_orig);
  };
  if (auto it = cache_.find(key); it != cache_.end()) return orient(it->second);

  Model model = build_model(canon, true);
  const int dim = model.dimX;
  const int cell = dim + 1;
  auto fail = [&]() -> std::optional<Picture> {
    cache_.emplace(key, std::nullopt);
    return std::nullopt;
  };

  if (ms.points() > model.dimV || (model.dimV - ms.points()) % cell != 0) return fail();

  // a picture with this multiset would certify more than the known truth
  const int fulls = (model.dimV - ms.points()) / cell;
  auto sizes = ms.sizes_desc();
  auto bound_at = [&](int k) {
    std::int64_t b = std::int64_t(std::min(k, fulls)) * cell;
    for (int i = 0; i < std::min<int>(k - fulls, sizes.size()); ++i) b += sizes[i];
    return b;
  };
  for (const auto& kd : known_defects(canon)) {
    int expected = std::min(std::int64_t(kd.k) * cell, std::int64_t(model.dimV));
    if (bound_at(kd.k) > expected - kd.defect) return fail();
  }

  // degenerate sets only host deficient cells
  if (fulls > 0 && affine_dim(model.points) < dim) return fail();

  for (const auto& d : decompositions(canon)) {
    auto pic = assemble(d, ms);
    if (pic) {
      cache_.emplace(key, *pic);
      return orient(pic);
    }
  }

  if (model.dimV <= direct_threshold(dim)) {
    SearchConfig cfg = config_;
    if (cfg.cell_shapes == CellShapes::Auto && canon.variety == Variety::Flag)
      cfg.cell_shapes = CellShapes::AnyIndependent;
    bool hb = false;
    auto pic = search_picture(model.points, dim, ms, cfg, &hb);
    hit_budget_ |= hb;
    cache_.emplace(key, pic ? std::optional<Picture>(*pic) : std::nullopt);
    return orient(pic);
  }
  return fail();
}

SearchResult InductionPlanner::run(const Model& model) {
  const int cell = model.dimX + 1;
  const int r0 = model.dimV % cell;
  for (int b = (r0 ? 1 : 0); b <= (r0 ? 1 : 0) + kMaxExtraDeficits; ++b) {
    for (const auto& ms : Deficits::enumerate(b, model.dimX, r0, cell)) {
      auto pic = plan(model.spec, ms);
      if (pic) return finalize_search(model, std::move(pic), ms.cells(), hit_budget_, 0);
    }
  }
  return finalize_search(model, std::nullopt, 0, hit_budget_, 0);
}

SearchResult search_by_induction(const Model& model, const SearchConfig& config) {
  InductionPlanner planner(config);
  return planner.run(model);
}

}  // namespace secant
