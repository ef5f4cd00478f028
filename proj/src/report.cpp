#include "secant/report.h"

#include <algorithm>
#include <sstream>

#include "json.hpp"

namespace secant {

std::vector<int> default_caps(Variety variety) {
  switch (variety) {
    case Variety::P1xP1: return {8, 8};
    case Variety::P1xP1xP1: return {6, 6, 4};
    case Variety::P2xP1: return {6, 6};
    case Variety::Flag: return {6, 6};
    case Variety::P1: return {12};
    case Variety::P2: return {6};
  }
  return {};
}

namespace {

std::vector<ModelSpec> enumerate_tuples(Variety v, const std::vector<int>& caps) {
  std::vector<ModelSpec> out;
  switch (v) {
    case Variety::P1:
      for (int d = 1; d <= caps[0]; ++d) out.push_back(spec_p1(d));
      break;
    case Variety::P2:
      for (int d = 1; d <= caps[0]; ++d) out.push_back(spec_p2(d));
      break;
    case Variety::P1xP1:
      for (int d = 1; d <= caps[0]; ++d)
        for (int e = 1; e <= std::min(d, caps[1]); ++e) out.push_back(spec_p1p1(d, e));
      break;
    case Variety::P1xP1xP1:
      for (int d = 1; d <= caps[0]; ++d)
        for (int e = 1; e <= std::min(d, caps[1]); ++e)
          for (int f = 1; f <= std::min(e, caps[2]); ++f) out.push_back(spec_p1p1p1(d, e, f));
      break;
    case Variety::P2xP1:
      for (int d = 1; d <= caps[0]; ++d)
        for (int e = 1; e <= caps[1]; ++e) out.push_back(spec_p2p1(d, e));
      break;
    case Variety::Flag:
      for (int m = 1; m <= caps[0]; ++m)
        for (int n = 1; n <= std::min(m, caps[1]); ++n) out.push_back(spec_flag(m, n));
      break;
  }
  return out;
}

}  // namespace

TheoremScan run_theorem_scan(Variety variety, const ScanOptions& opts) {
  TheoremScan scan;
  scan.variety = variety;
  std::vector<int> caps = opts.max_degrees.empty() ? default_caps(variety) : opts.max_degrees;
  if (static_cast<int>(caps.size()) != variety_degree_count(variety))
    throw std::invalid_argument("wrong cap count for family scan");

  InductionPlanner planner(opts.search);  // shared so base pictures are reused

  for (const auto& spec : enumerate_tuples(variety, caps)) {
    ScanCase c;
    c.spec = spec;
    Model model = build_model(spec);
    c.dimV = model.dimV;
    const int kmax = capping_k(model);
    c.known = known_defects(spec);

    SearchResult found = planner.run(model);
    if (found.certificate) {
      c.search_found = true;
      c.cert_non_defective = found.report.non_defective;
      for (int k = 1; k <= kmax; ++k) c.cert_bounds.push_back(found.report.bound_at(k));
    }

    OracleReport oracle = terracini_profile(model, kmax, opts.oracle);
    c.oracle_dims = oracle.dims;
    for (int k = 1; k <= kmax; ++k) c.expected.push_back(expected_cone_dim(model, k));

    // certificate bound above the oracle dimension signals a bug somewhere
    for (int k = 1; k <= kmax && c.search_found; ++k)
      if (c.cert_bounds[k - 1] > c.oracle_dims[k - 1]) c.sound = false;

    // oracle classification vs the built-in table
    std::vector<std::pair<int, int>> observed, expected_defects;
    for (int k = 1; k <= kmax; ++k)
      if (c.oracle_dims[k - 1] < c.expected[k - 1])
        observed.push_back({k, c.expected[k - 1] - c.oracle_dims[k - 1]});
    for (const auto& kd : c.known)
      if (kd.k <= kmax) expected_defects.push_back({kd.k, kd.defect});
    std::sort(expected_defects.begin(), expected_defects.end());
    c.classification_matches = observed == expected_defects;

    scan.classifications_match &= c.classification_matches;
    scan.sound &= c.sound;
    if (c.known.empty() && !(c.search_found && c.cert_non_defective))
      scan.search_complete = false;
    scan.cases.push_back(std::move(c));
  }
  return scan;
}

std::string scan_to_text(const TheoremScan& scan) {
  std::ostringstream os;
  os << "family " << variety_name(scan.variety) << ": " << scan.cases.size() << " cases\n";
  os << "spec           dimV  verdict            defective k (defect)      search\n";
  for (const auto& c : scan.cases) {
    std::ostringstream defects;
    bool any = false;
    for (std::size_t k = 1; k <= c.oracle_dims.size(); ++k) {
      if (c.oracle_dims[k - 1] < c.expected[k - 1]) {
        if (any) defects << ", ";
        defects << "k=" << k << " (" << c.expected[k - 1] - c.oracle_dims[k - 1] << ")";
        any = true;
      }
    }
    std::string verdict = any ? "defective" : "non-defective";
    if (!c.classification_matches) verdict += " [MISMATCH]";
    if (!c.sound) verdict += " [UNSOUND]";
    std::string search = !c.search_found ? "none"
                         : c.cert_non_defective ? "certificate"
                                                : "best-effort";
    os << std::left;
    os.width(15);
    os << c.spec.str();
    os.width(6);
    os << c.dimV;
    os.width(19);
    os << verdict;
    os.width(26);
    os << (any ? defects.str() : "-");
    os << search << "\n";
  }
  os << (scan.classifications_match ? "all classifications match the built-in table\n"
                                    : "CLASSIFICATION MISMATCH\n");
  if (!scan.sound) os << "SOUNDNESS VIOLATION: certificate bound exceeded oracle dimension\n";
  return os.str();
}

std::string scan_to_json(const TheoremScan& scan) {
  nlohmann::ordered_json j;
  j["family"] = variety_name(scan.variety);
  j["classifications_match"] = scan.classifications_match;
  j["sound"] = scan.sound;
  j["search_complete"] = scan.search_complete;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& c : scan.cases) {
    nlohmann::ordered_json r;
    r["variety"] = variety_name(c.spec.variety);
    r["degrees"] = c.spec.degrees;
    r["dimV"] = c.dimV;
    r["expected"] = c.expected;
    r["oracle"] = c.oracle_dims;
    if (c.search_found) {
      r["certified"] = c.cert_bounds;
      r["cert_non_defective"] = c.cert_non_defective;
    } else {
      r["certified"] = nullptr;
    }
    auto defs = nlohmann::ordered_json::array();
    for (const auto& kd : c.known)
      defs.push_back({{"k", kd.k}, {"defect", kd.defect}, {"note", kd.note}});
    r["known_defects"] = defs;
    r["classification_matches"] = c.classification_matches;
    rows.push_back(std::move(r));
  }
  j["cases"] = rows;
  return j.dump(2) + "\n";
}

}  // namespace secant
