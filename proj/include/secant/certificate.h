#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "secant/geometry.h"
#include "secant/lattice.h"

namespace secant {

// Nested hyperplane-split tree. Leaves carry part ids; evaluating a node
// sends a point to `below` when the cut is negative on it and to `above`
// when positive. A point evaluating to exactly zero on a traversed cut is a
// hard reject.
struct CutTree {
  int leaf_id = -1;  // >= 0 at leaves
  AffineFunctional cut;
  std::unique_ptr<CutTree> below, above;

  bool is_leaf() const { return leaf_id >= 0; }

  static CutTree leaf(int id);
  static CutTree node(AffineFunctional cut, CutTree below, CutTree above);
  CutTree clone() const;
  int leaf_count() const;
};

struct TieError : std::runtime_error {
  LatticePoint point;
  explicit TieError(const LatticePoint& p)
      : std::runtime_error("point " + p.str() + " lies exactly on a traversed cut"), point(p) {}
};

// A picture over an arbitrary finite point set: the gluing building block.
// Certificates are pictures whose point set is exactly a model's B.
struct Picture {
  std::vector<LatticePoint> points;
  std::optional<CutTree> tree;
  std::vector<std::vector<LatticePoint>> parts;

  Picture() = default;
  Picture(const Picture& o);
  Picture& operator=(const Picture& o);
  Picture(Picture&&) = default;
  Picture& operator=(Picture&&) = default;
};

struct Certificate {
  ModelSpec model_spec;
  std::optional<CutTree> tree;  // absent trees fall back to the LP path
  std::vector<std::vector<LatticePoint>> declared_parts;

  Certificate() = default;
  Certificate(const Certificate& o);
  Certificate& operator=(const Certificate& o);
  Certificate(Certificate&&) = default;
  Certificate& operator=(Certificate&&) = default;
};

// Partition of the given points by the tree's leaves, indexed by leaf id.
// Throws TieError if some point hits a cut exactly.
std::vector<std::vector<LatticePoint>> evaluate_tree(const std::vector<LatticePoint>& points,
                                                     const CutTree& tree);

enum class Verdict { NonDefectiveCertified, BoundBelowExpected };

struct APRow {
  int k = 0;
  int lower_bound = 0;
  int expected = 0;
  Verdict verdict = Verdict::BoundBelowExpected;
};

struct APReport {
  std::vector<APRow> rows;        // k = 1 .. max(#parts, capping k)
  bool non_defective = false;     // all rows certified
  bool valid_partition = false;   // tree/LP induced exactly the declared parts
  int parts_total = 0;
  int full_parts = 0;
  int deficient_parts = 0;        // affine span below dimX
  int dependent_parts = 0;        // affinely dependent parts (never in valid pictures)
  std::string failure;            // set when valid_partition is false

  int bound_at(int k) const;
};

// Checks that the tree (or, failing a tree, an LP witness) induces exactly
// the declared parts, that parts are affinely independent, and counts how
// many fall below full dimension; then derives the per-k certified lower
// bounds and compares them with the expected cone dimensions.
APReport verify_certificate(const Certificate& cert);

// --- gluing -----------------------------------------------------------------

Picture picture_of(const Certificate& cert);
Certificate certificate_of(Picture pic, const ModelSpec& spec);

Picture glue_translate(const Picture& pic, const LatticePoint& offset);
Picture glue_transform(const Picture& pic, const AffineMap& map);

// Transform a certificate by an affine lattice map onto a (possibly
// different) model, e.g. transposing a grid picture.
Certificate glue_transform(const Certificate& cert, const AffineMap& map,
                           const ModelSpec& target_spec);

// Stack two pictures separated by the given cut: a strictly below, b strictly
// above, point sets disjoint. The new tree is Node{cut, a.tree, b.tree}.
Picture glue_stack(const Picture& a, const Picture& b, const AffineFunctional& cut);
// Convenience: separate along a coordinate axis at offset (typically half-integer).
Picture glue_stack(const Picture& a, const Picture& b, int axis, const Rational& offset);

// --- known defective cases ---------------------------------------------------

// Built-in classification of the defective cases within the supported
// families, so that reports can tell "bound below expected, known defective"
// from "search failure". Defect is measured in cone dimension.
struct KnownDefect {
  int k;
  int defect;
  std::string note;
};

std::vector<KnownDefect> known_defects(const ModelSpec& spec);

// --- serialization -----------------------------------------------------------

std::string certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const std::string& text);

}  // namespace secant
