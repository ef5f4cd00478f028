#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "secant/util.h"

namespace secant {

// A lattice point in Z^1, Z^2 or Z^3. Coordinates stay small (degree-scale),
// so 32-bit storage with checked construction is plenty.
struct LatticePoint {
  std::array<std::int32_t, 3> c{0, 0, 0};
  int dim = 0;

  LatticePoint() = default;
  LatticePoint(std::initializer_list<std::int64_t> xs);
  static LatticePoint of(int dim, std::int64_t x = 0, std::int64_t y = 0, std::int64_t z = 0);

  std::int32_t operator[](int i) const { return c[i]; }
  std::int32_t& operator[](int i) { return c[i]; }

  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;

  friend bool operator==(const LatticePoint& a, const LatticePoint& b) {
    return a.dim == b.dim && a.c == b.c;
  }
  // Lexicographic; used for the canonical point order of a model.
  friend bool operator<(const LatticePoint& a, const LatticePoint& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    return a.c < b.c;
  }

  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const LatticePoint& p);

std::int64_t dot(const std::array<std::int64_t, 3>& n, const LatticePoint& p);

enum class Variety { P1, P2, P1xP1, P1xP1xP1, P2xP1, Flag };

const char* variety_name(Variety v);
std::optional<Variety> variety_from_name(const std::string& name);
int variety_dim(Variety v);
int variety_degree_count(Variety v);

// A variety family together with the degree tuple (the highest-weight
// coordinates). Degrees must be >= 1 at public boundaries; zero entries are
// tolerated internally so translated building blocks can be expressed.
struct ModelSpec {
  Variety variety;
  std::vector<int> degrees;

  std::string str() const;
  friend bool operator==(const ModelSpec& a, const ModelSpec& b) {
    return a.variety == b.variety && a.degrees == b.degrees;
  }
  friend bool operator<(const ModelSpec& a, const ModelSpec& b) {
    if (a.variety != b.variety) return a.variety < b.variety;
    return a.degrees < b.degrees;
  }
};

ModelSpec spec_p1(int d);
ModelSpec spec_p2(int d);
ModelSpec spec_p1p1(int d, int e);
ModelSpec spec_p1p1p1(int d, int e, int f);
ModelSpec spec_p2p1(int d, int e);
ModelSpec spec_flag(int m, int n);

// Throws std::invalid_argument on bad degree counts / ranges. Degree-0
// factors pass only with allow_zero (internal gluing blocks).
void validate_spec(const ModelSpec& spec, bool allow_zero = false);

struct Model {
  ModelSpec spec;
  int dimX = 0;
  std::vector<LatticePoint> points;  // the set B, sorted lexicographically
  int dimV = 0;                      // |B|

  int point_index(const LatticePoint& p) const;  // -1 if absent
  bool contains(const LatticePoint& p) const { return point_index(p) >= 0; }
};

// B exactly as each embedding defines it: interval, triangle, grid, block,
// prism, or the flag exponent set {0<=n2<=m, 0<=n3<=n, 0<=n1<=m+n3-n2}.
Model build_model(const ModelSpec& spec, bool allow_zero = false);

// min(k*(dimX+1), dimV): the expected dimension of the k-th secant of the
// affine cone.
int expected_cone_dim(const Model& model, int k);

// Smallest k at which the expected cone dimension reaches dimV.
int capping_k(const Model& model);

// (n1,n2,n3) |-> (n1, n-n3, m-n2), a bijection B(m,n) -> B(n,m).
LatticePoint flag_transpose(const LatticePoint& p, int m, int n);

// Affine lattice map p |-> S*p + t where S is a signed permutation matrix.
struct AffineMap {
  // column j of S is sign[j] * e_perm[j]: maps coordinate j of the input.
  std::array<int, 3> perm{0, 1, 2};
  std::array<int, 3> sign{1, 1, 1};
  LatticePoint shift;
  int dim = 0;

  static AffineMap identity(int dim);
  LatticePoint apply(const LatticePoint& p) const;
  AffineMap inverse() const;
  bool is_identity() const;
};

// All signed-permutation-plus-translation maps sending B onto itself.
std::vector<AffineMap> lattice_symmetries(const Model& model);
std::vector<AffineMap> point_set_symmetries(const std::vector<LatticePoint>& points, int dim);

// xi(r) = r1*b1 + r2*b2 + r3*b3 in the (alpha1, alpha2) basis, with
// b1 = -a1, b2 = -a1-a2, b3 = -a2.
std::array<int, 2> weight_map(const LatticePoint& r);

// A tuple (A_1..A_n) of exponent sets together with generators of a strictly
// convex cone Z; the reduction data for non-singleton instances.
struct GeneralizedInstance {
  std::vector<LatticePoint> labels;                 // the b indexing each set
  std::vector<std::vector<LatticePoint>> sets;      // A_b, same order
  std::vector<std::array<std::int64_t, 3>> cone_gen;
};

struct SingletonReduction {
  Model model;                       // singleton instance: alpha_b = b for b in B
  std::array<std::int64_t, 3> z{};   // cone generator (1,-1,1)
};

// The flag instance collapses to the singleton instance on B(m,n) with the
// ray Z = R>=0 * (1,-1,1); the bound for the singleton problem is a lower
// bound for the generalized one.
SingletonReduction flag_reduce_to_singletons(int m, int n);

// JSON (de)serialization of models: {variety, degrees, points:[[ints]]}.
std::string model_to_json(const Model& model);
Model model_from_json(const std::string& text);

}  // namespace secant
