#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "secant/certificate.h"

namespace secant {

enum class CellShapes {
  Types12Only,     // full cells restricted to the two standard lattice shapes
  AnyIndependent,  // any affinely independent full cell
  Auto,            // Types12 first, AnyIndependent as fallback (flag: Any only)
};

struct SearchConfig {
  std::int64_t max_backtracks = 200000;
  CellShapes cell_shapes = CellShapes::Auto;
  bool symmetry_breaking = true;
  std::uint64_t seed = 0;
};

// Multiset of deficient-cell sizes (1..dimX) a picture is allowed to use.
// A perfect picture for B has the single forced multiset of total size
// |B| mod (dimX+1); escalation adds more cells for best-effort searches.
struct Deficits {
  std::array<int, 3> count{0, 0, 0};  // cells of size 1, 2, 3

  int cells() const { return count[0] + count[1] + count[2]; }
  int points() const { return count[0] + 2 * count[1] + 3 * count[2]; }
  bool empty() const { return cells() == 0; }
  std::uint32_t encode() const {
    return static_cast<std::uint32_t>(count[0]) | (count[1] << 8) | (count[2] << 16);
  }
  std::vector<int> sizes_desc() const;
  std::vector<Deficits> submultisets() const;
  Deficits minus(const Deficits& o) const;

  // all multisets with `cells` cells of sizes 1..max_size whose total is
  // congruent to residue mod modulus, best (largest sizes) first
  static std::vector<Deficits> enumerate(int cells, int max_size, int residue, int modulus);
};

struct SearchResult {
  std::optional<Certificate> certificate;
  APReport report;                 // verification of the returned certificate
  int deficient_cells = 0;         // cells in the multiset actually used
  bool hit_budget = false;         // some attempt stopped on budget, not exhaustion
  std::int64_t backtracks = 0;
};

// Backtracking cut-tree search over B itself: recursively split the region
// with lattice hyperplanes (integer normals with entries in -2..2, offsets at
// half-integers) until every leaf is an affinely independent cell. Returns a
// verified certificate or failure; escalates the deficiency multiset when no
// perfect picture exists.
SearchResult search_certificate(const Model& model, const SearchConfig& config = {});

// Same over an arbitrary point set with a fixed multiset; building block for
// the induction planner and for tests.
std::optional<Picture> search_picture(const std::vector<LatticePoint>& points, int dim,
                                      const Deficits& deficits, const SearchConfig& config,
                                      bool* hit_budget = nullptr);

// Recursive construction by gluing: axis splits for grids and blocks, corner
// splits for prisms, layer/column splits for the flag family, with base
// pictures found by direct search and results memoized per (spec, multiset).
class InductionPlanner {
 public:
  explicit InductionPlanner(const SearchConfig& config = {});

  SearchResult run(const Model& model);
  std::optional<Picture> plan(const ModelSpec& spec, const Deficits& deficits);

 private:
  struct Piece {
    ModelSpec spec;       // plan() returns the piece in this orientation
    LatticePoint offset;  // translation into position
  };
  struct Decomp {
    std::vector<Piece> pieces;           // 2 or 3
    std::vector<AffineFunctional> cuts;  // [outer] or [outer, inner]
    // 3-piece nesting: innermost pair below or above the outer cut
    enum class Shape { Pair, InnerBelow, InnerAbove } shape = Shape::Pair;
  };

  std::vector<Decomp> decompositions(const ModelSpec& spec) const;
  std::optional<Picture> assemble(const Decomp& d, const Deficits& ms);

  SearchConfig config_;
  bool hit_budget_ = false;
  std::map<std::pair<std::string, std::uint32_t>, std::optional<Picture>> cache_;
};

SearchResult search_by_induction(const Model& model, const SearchConfig& config = {});

}  // namespace secant
