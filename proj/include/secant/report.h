#pragma once

#include <optional>
#include <string>
#include <vector>

#include "secant/certificate.h"
#include "secant/oracle.h"
#include "secant/search.h"

namespace secant {

struct ScanOptions {
  std::vector<int> max_degrees;  // empty = family default caps
  OracleOptions oracle;
  SearchConfig search;
  bool strict = false;  // fail when a known non-defective case lacks a certificate
};

struct ScanCase {
  ModelSpec spec;
  int dimV = 0;
  bool search_found = false;
  bool cert_non_defective = false;
  std::vector<int> cert_bounds;  // per k, empty when no certificate
  std::vector<int> oracle_dims;  // per k = 1..capping k
  std::vector<int> expected;     // per k
  std::vector<KnownDefect> known;
  bool classification_matches = true;  // oracle defects == known table
  bool sound = true;                   // cert bound <= oracle dim everywhere
};

struct TheoremScan {
  Variety variety = Variety::P1xP1;
  std::vector<ScanCase> cases;
  bool classifications_match = true;
  bool sound = true;            // no certificate exceeded the oracle anywhere
  bool search_complete = true;  // every known non-defective case got a certificate

  bool ok(bool strict) const {
    return classifications_match && sound && (!strict || search_complete);
  }
};

// Scan a whole family: for each degree tuple build the model, search for a
// certificate (induction planner with direct fallback), verify it, run the
// rank oracle for every k up to the capping value, and classify. A
// certificate bound exceeding the oracle dimension is a hard failure.
TheoremScan run_theorem_scan(Variety variety, const ScanOptions& opts = {});

std::vector<int> default_caps(Variety variety);

std::string scan_to_text(const TheoremScan& scan);
std::string scan_to_json(const TheoremScan& scan);

}  // namespace secant
