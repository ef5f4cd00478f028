// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status 0 iff all pass.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "secant/certificate.h"
#include "secant/geometry.h"
#include "secant/oracle.h"
#include "secant/report.h"
#include "secant/search.h"
#include "secant/sl3.h"
#include "secant/svg.h"
#include "secant/util.h"

using namespace secant;

namespace {

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void()> run;
};

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool cond, const std::string& what) {
  if (!cond) throw Failure(what);
}

// every certificate produced anywhere in the suite, re-checked against the
// oracle at the end (criterion 7)
std::vector<Certificate>& produced() {
  static std::vector<Certificate> certs;
  return certs;
}

SearchResult checked_search(const Model& model, InductionPlanner& planner) {
  SearchResult res = planner.run(model);
  if (res.certificate) produced().push_back(*res.certificate);
  return res;
}

// ---------------------------------------------------------------------------

void criterion1_basis_counts() {
  for (int d = 1; d <= 6; ++d)
    for (int e = 1; e <= 6; ++e) {
      require(build_model(spec_p1p1(d, e)).dimV == (d + 1) * (e + 1), "grid count");
      require(build_model(spec_p2p1(d, e)).dimV == (d + 1) * (d + 2) * (e + 1) / 2,
              "prism count");
      require(build_model(spec_flag(d, e)).dimV == (d + 1) * (e + 1) * (d + e + 2) / 2,
              "flag count");
      for (int f = 1; f <= 6; ++f)
        require(build_model(spec_p1p1p1(d, e, f)).dimV == (d + 1) * (e + 1) * (f + 1),
                "block count");
    }
}

void criterion2_figure1() {
  Model grid = build_model(spec_p1p1(3, 2));
  auto res = search_certificate(grid);
  require(res.certificate.has_value(), "no certificate found for (3,2)");
  produced().push_back(*res.certificate);
  require(res.report.non_defective, "(3,2) certificate not non-defective");
  require(res.report.parts_total == 4, "(3,2) certificate should have 4 parts");
  require(res.report.bound_at(4) == 12, "(3,2) certified value should be 12");
  require(terracini_dim(grid, 4) == 12, "oracle disagrees: dim 4C != 12");
}

void criterion3_theorem1_scan() {
  ScanOptions opts;
  opts.max_degrees = {8, 8};
  TheoremScan scan = run_theorem_scan(Variety::P1xP1, opts);
  require(scan.classifications_match, "oracle classification mismatch in p1p1 scan");
  require(scan.sound, "certificate bound exceeded oracle in p1p1 scan");
  for (const auto& c : scan.cases) {
    int d = c.spec.degrees[0], e = c.spec.degrees[1];
    bool defective = e == 2 && d % 2 == 0;
    require(c.search_found, "search found nothing for " + c.spec.str());
    if (!defective) {
      require(c.cert_non_defective, "missing non-defective certificate for " + c.spec.str());
    } else {
      int k = d + 1;
      require(c.cert_bounds[k - 1] == 3 * (d + 1) - 1,
              "best bound at k=d+1 should be 3(d+1)-1 for " + c.spec.str());
      require(c.oracle_dims[k - 1] == 3 * (d + 1) - 1,
              "oracle at k=d+1 should be 3(d+1)-1 for " + c.spec.str());
    }
  }
}

void criterion4_theorem2_spots() {
  // The d-even defective case of the block family at its smallest degree is
  // (2,1,1): dim 3C = 11 against dimV = 12 (defect 1). The (1,1,1) block is
  // non-defective (d odd): dim 2C = 8 = dimV.
  InductionPlanner planner{};
  Model b211 = build_model(spec_p1p1p1(2, 1, 1));
  require(terracini_dim(b211, 3) == 11, "(2,1,1): dim 3C should be 11");
  require(b211.dimV == 12, "(2,1,1): dimV should be 12");

  Model b111 = build_model(spec_p1p1p1(1, 1, 1));
  require(terracini_dim(b111, 2) == 8, "(1,1,1): dim 2C should be 8 (non-defective)");

  Model b222 = build_model(spec_p1p1p1(2, 2, 2));
  require(terracini_dim(b222, 7) == 26, "(2,2,2): dim 7C should be 26");
  require(b222.dimV == 27, "(2,2,2): dimV should be 27");

  Model b322 = build_model(spec_p1p1p1(3, 2, 2));
  auto res = checked_search(b322, planner);
  require(res.certificate.has_value() && res.report.non_defective,
          "(3,2,2): non-defective certificate required");
  OracleReport rep = terracini_profile(b322, capping_k(b322));
  for (int k = 1; k <= capping_k(b322); ++k)
    require(rep.dim_at(k) == expected_cone_dim(b322, k), "(3,2,2) oracle defect at some k");
}

void criterion5_theorem3_spots() {
  InductionPlanner planner{};
  Model p22 = build_model(spec_p2p1(2, 2));
  require(terracini_dim(p22, 4) == 15, "p2p1 (2,2): dim 4C should be 15");
  require(terracini_dim(p22, 5) == 17, "p2p1 (2,2): dim 5C should be 17");

  Model p31 = build_model(spec_p2p1(3, 1));
  require(terracini_dim(p31, 5) == 19, "p2p1 (3,1): dim 5C should be 19");
  require(p31.dimV == 20, "p2p1 (3,1): dimV should be 20");

  for (auto [d, e] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {4, 1}, {3, 2}}) {
    Model m = build_model(spec_p2p1(d, e));
    auto res = checked_search(m, planner);
    require(res.certificate.has_value() && res.report.non_defective,
            "p2p1 (" + std::to_string(d) + "," + std::to_string(e) +
                "): non-defective certificate required");
    OracleReport rep = terracini_profile(m, capping_k(m));
    for (int k = 1; k <= capping_k(m); ++k) {
      require(rep.dim_at(k) == expected_cone_dim(m, k), "unexpected oracle defect");
      require(res.report.bound_at(k) == expected_cone_dim(m, k), "bound below expected");
    }
  }
}

void criterion6_theorem4_spots() {
  InductionPlanner planner{};
  Model f11 = build_model(spec_flag(1, 1));
  require(terracini_dim(f11, 2) == 7, "flag (1,1): dim 2C should be 7");
  require(f11.dimV == 8, "flag (1,1): dimV should be 8");

  Model f22 = build_model(spec_flag(2, 2));
  require(terracini_dim(f22, 7) == 26, "flag (2,2): dim 7C should be 26");
  require(f22.dimV == 27, "flag (2,2): dimV should be 27");

  for (auto [m, n] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}}) {
    Model fm = build_model(spec_flag(m, n));
    auto res = checked_search(fm, planner);
    require(res.certificate.has_value() && res.report.non_defective,
            "flag (" + std::to_string(m) + "," + std::to_string(n) +
                "): non-defective certificate required");
    OracleReport rep = terracini_profile(fm, capping_k(fm));
    for (int k = 1; k <= capping_k(fm); ++k) {
      require(rep.dim_at(k) == expected_cone_dim(fm, k), "unexpected oracle defect");
      require(res.report.bound_at(k) == rep.dim_at(k), "flag bound below oracle");
    }
  }
}

void criterion7_soundness() {
  require(!produced().empty(), "no certificates were produced by the suite");
  for (const auto& cert : produced()) {
    Model m = build_model(cert.model_spec);
    APReport rep = verify_certificate(cert);
    require(rep.valid_partition, "stored certificate no longer verifies");
    OracleReport oracle = terracini_profile(m, capping_k(m));
    for (int k = 1; k <= capping_k(m); ++k)
      require(rep.bound_at(k) <= oracle.dim_at(k),
              "certified bound exceeds oracle dim for " + cert.model_spec.str());
  }
}

void criterion8_cutting_lemma() {
  Rng rng(20260810);
  int done = 0;
  while (done < 200) {
    ModelSpec spec;
    switch (rng.below(4)) {
      case 0: spec = spec_p1p1(1 + rng.below(3), 1 + rng.below(3)); break;
      case 1: spec = spec_p2(1 + rng.below(3)); break;
      case 2: spec = spec_p1p1p1(1, 1, 1); break;
      default: spec = spec_p2p1(1 + rng.below(2), 1); break;
    }
    Model m = build_model(spec);

    // random cut tree: recursive random hyperplane splits
    std::function<CutTree(std::vector<LatticePoint>, int, int&)> rand_tree =
        [&](std::vector<LatticePoint> pts, int depth, int& next) -> CutTree {
      if (depth == 0 || pts.size() <= 1) return CutTree::leaf(next++);
      for (int attempt = 0; attempt < 20; ++attempt) {
        AffineFunctional f;
        for (int j = 0; j < m.dimX; ++j) f.normal.push_back(Rational(rng.range(-2, 2)));
        std::vector<Rational> vals;
        for (const auto& p : pts) vals.push_back(f.eval(p));
        auto [mn, mx] = std::minmax_element(vals.begin(), vals.end());
        if (*mn == *mx) continue;
        std::int64_t lo = numerator(*mn).convert_to<std::int64_t>();
        std::int64_t hi = numerator(*mx).convert_to<std::int64_t>();
        f.offset = -Rational(2 * rng.range(lo, hi - 1) + 1, 2);
        std::vector<LatticePoint> below, above;
        for (const auto& p : pts) (sign(f.eval(p)) < 0 ? below : above).push_back(p);
        if (below.empty() || above.empty()) continue;
        CutTree bt = rand_tree(below, depth - 1, next);
        CutTree at = rand_tree(above, depth - 1, next);
        return CutTree::node(std::move(f), std::move(bt), std::move(at));
      }
      return CutTree::leaf(next++);
    };
    int next = 0;
    CutTree tree = rand_tree(m.points, 1 + static_cast<int>(rng.below(3)), next);
    auto parts = evaluate_tree(m.points, tree);
    parts.erase(std::remove_if(parts.begin(), parts.end(),
                               [](const auto& p) { return p.empty(); }),
                parts.end());
    require(induce_partition_lp(parts).has_value(),
            "cut-tree partition not LP-feasible on " + spec.str());
    ++done;
  }
}

void criterion9_flag_structure() {
  for (auto [m, n] : std::vector<std::pair<int, int>>{{1, 1}, {2, 1}, {1, 2}, {2, 2}}) {
    Sl3Module mod = build_sl3_module(m, n);
    FlagExpansion exp = compute_M_and_Ab(mod);  // throws on lemma violations
    Model b = build_model(spec_flag(m, n));
    // lower ideal: non-b elements of A_b lie strictly below b along (1,-1,1)
    for (const auto& [bb, set] : exp.A) {
      require(b.contains(bb), "A_b label outside B");
      for (const auto& r : set) {
        if (r == bb) continue;
        LatticePoint diff = bb - r;
        require(diff[0] == diff[2] && diff[0] == -diff[1] && diff[0] > 0,
                "lower ideal violated");
      }
    }
    require(k1_tropical_sanity(mod), "k=1 sanity failed");
  }
}

void criterion10_reproducibility() {
  Model grid = build_model(spec_p1p1(3, 2));
  SearchConfig cfg;
  cfg.seed = 7;
  auto a = search_certificate(grid, cfg);
  auto b = search_certificate(grid, cfg);
  require(a.certificate.has_value() && b.certificate.has_value(), "search failed");
  require(certificate_to_json(*a.certificate) == certificate_to_json(*b.certificate),
          "certificates differ across runs");
  require(svg_string(*a.certificate) == svg_string(*b.certificate), "SVG differs across runs");

  OracleOptions opts;
  opts.seed = 13;
  auto r1 = oracle_report_to_json(terracini_profile(grid, 4, opts));
  auto r2 = oracle_report_to_json(terracini_profile(grid, 4, opts));
  require(r1 == r2, "oracle reports differ across runs");

  ScanOptions sopts;
  sopts.max_degrees = {3, 3};
  require(scan_to_json(run_theorem_scan(Variety::P1xP1, sopts)) ==
              scan_to_json(run_theorem_scan(Variety::P1xP1, sopts)),
          "scan reports differ across runs");
}

}  // namespace

int main() {
  std::vector<Criterion> criteria = {
      {1, "basis counts (all families, degrees <= 6)", 1.0, criterion1_basis_counts},
      {2, "figure-1 case: (3,2) certificate of value 12 + oracle", 5.0, criterion2_figure1},
      {3, "theorem 1 scan d,e <= 8", 120.0, criterion3_theorem1_scan},
      {4, "theorem 2 spot checks (block family)", 120.0, criterion4_theorem2_spots},
      {5, "theorem 3 spot checks (prism family)", 120.0, criterion5_theorem3_spots},
      {6, "theorem 4 spot checks (flag family)", 180.0, criterion6_theorem4_spots},
      {7, "soundness: certified bound <= oracle dim on every certificate", 120.0,
       criterion7_soundness},
      {8, "cutting lemma: 200 random cut-trees are LP-feasible", 60.0, criterion8_cutting_lemma},
      {9, "flag structure lemmas + k=1 sanity", 120.0, criterion9_flag_structure},
      {10, "reproducibility: byte-identical reports and SVG", 60.0, criterion10_reproducibility},
  };

  int failures = 0;
  for (auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run();
    } catch (const std::exception& e) {
      error = e.what();
    }
    double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (error.empty() && secs > c.limit_seconds)
      error = "time limit exceeded: " + std::to_string(secs) + "s > " +
              std::to_string(c.limit_seconds) + "s";
    if (error.empty()) {
      std::printf("PASS  criterion %2d: %s (%.2fs, limit %.0fs)\n", c.id, c.name.c_str(), secs,
                  c.limit_seconds);
    } else {
      std::printf("FAIL  criterion %2d: %s (%.2fs)\n      %s\n", c.id, c.name.c_str(), secs,
                  error.c_str());
      ++failures;
    }
    std::fflush(stdout);
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures == 0 ? 0 : 1;
}
