#include "secant/lattice.h"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace secant {

namespace {
constexpr std::int64_t kCoordLimit = 1 << 15;  // coordinates stay 16-bit at desk scale

std::int32_t checked_coord(std::int64_t v) {
  if (v <= -kCoordLimit || v >= kCoordLimit)
    throw std::overflow_error("lattice coordinate out of range: " + std::to_string(v));
  return static_cast<std::int32_t>(v);
}
}  // namespace

LatticePoint::LatticePoint(std::initializer_list<std::int64_t> xs) {
  if (xs.size() > 3) throw std::invalid_argument("lattice point has at most 3 coordinates");
  dim = static_cast<int>(xs.size());
  int i = 0;
  for (auto v : xs) c[i++] = checked_coord(v);
}

LatticePoint LatticePoint::of(int d, std::int64_t x, std::int64_t y, std::int64_t z) {
  LatticePoint p;
  p.dim = d;
  if (d > 0) p.c[0] = checked_coord(x);
  if (d > 1) p.c[1] = checked_coord(y);
  if (d > 2) p.c[2] = checked_coord(z);
  return p;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  LatticePoint r;
  r.dim = dim;
  for (int i = 0; i < dim; ++i) r.c[i] = checked_coord(std::int64_t(c[i]) + o.c[i]);
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  LatticePoint r;
  r.dim = dim;
  for (int i = 0; i < dim; ++i) r.c[i] = checked_coord(std::int64_t(c[i]) - o.c[i]);
  return r;
}

std::string LatticePoint::str() const {
  std::ostringstream os;
  os << *this;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const LatticePoint& p) {
  os << '(';
  for (int i = 0; i < p.dim; ++i) {
    if (i) os << ',';
    os << p.c[i];
  }
  return os << ')';
}

std::int64_t dot(const std::array<std::int64_t, 3>& n, const LatticePoint& p) {
  std::int64_t s = 0;
  for (int i = 0; i < p.dim; ++i) s += n[i] * p.c[i];
  return s;
}

const char* variety_name(Variety v) {
  switch (v) {
    case Variety::P1: return "p1";
    case Variety::P2: return "p2";
    case Variety::P1xP1: return "p1p1";
    case Variety::P1xP1xP1: return "p1p1p1";
    case Variety::P2xP1: return "p2p1";
    case Variety::Flag: return "flag";
  }
  return "?";
}

std::optional<Variety> variety_from_name(const std::string& name) {
  for (Variety v : {Variety::P1, Variety::P2, Variety::P1xP1, Variety::P1xP1xP1,
                    Variety::P2xP1, Variety::Flag})
    if (name == variety_name(v)) return v;
  return std::nullopt;
}

int variety_dim(Variety v) {
  switch (v) {
    case Variety::P1: return 1;
    case Variety::P2:
    case Variety::P1xP1: return 2;
    default: return 3;
  }
}

int variety_degree_count(Variety v) {
  switch (v) {
    case Variety::P1:
    case Variety::P2: return 1;
    case Variety::P1xP1xP1: return 3;
    default: return 2;
  }
}

std::string ModelSpec::str() const {
  std::ostringstream os;
  os << variety_name(variety) << '(';
  for (std::size_t i = 0; i < degrees.size(); ++i) {
    if (i) os << ',';
    os << degrees[i];
  }
  os << ')';
  return os.str();
}

ModelSpec spec_p1(int d) { return {Variety::P1, {d}}; }
ModelSpec spec_p2(int d) { return {Variety::P2, {d}}; }
ModelSpec spec_p1p1(int d, int e) { return {Variety::P1xP1, {d, e}}; }
ModelSpec spec_p1p1p1(int d, int e, int f) { return {Variety::P1xP1xP1, {d, e, f}}; }
ModelSpec spec_p2p1(int d, int e) { return {Variety::P2xP1, {d, e}}; }
ModelSpec spec_flag(int m, int n) { return {Variety::Flag, {m, n}}; }

void validate_spec(const ModelSpec& spec, bool allow_zero) {
  if (static_cast<int>(spec.degrees.size()) != variety_degree_count(spec.variety))
    throw std::invalid_argument("wrong number of degrees for " +
                                std::string(variety_name(spec.variety)));
  int lo = allow_zero ? 0 : 1;
  for (int d : spec.degrees)
    if (d < lo || d >= kCoordLimit / 4)
      throw std::invalid_argument("invalid degree " + std::to_string(d) + " in " + spec.str());
}

Model build_model(const ModelSpec& spec, bool allow_zero) {
  validate_spec(spec, allow_zero);
  Model m;
  m.spec = spec;
  m.dimX = variety_dim(spec.variety);
  const auto& d = spec.degrees;
  switch (spec.variety) {
    case Variety::P1:
      for (int x = 0; x <= d[0]; ++x) m.points.push_back(LatticePoint::of(1, x));
      break;
    case Variety::P2:
      for (int x = 0; x <= d[0]; ++x)
        for (int y = 0; x + y <= d[0]; ++y) m.points.push_back(LatticePoint::of(2, x, y));
      break;
    case Variety::P1xP1:
      for (int x = 0; x <= d[0]; ++x)
        for (int y = 0; y <= d[1]; ++y) m.points.push_back(LatticePoint::of(2, x, y));
      break;
    case Variety::P1xP1xP1:
      for (int x = 0; x <= d[0]; ++x)
        for (int y = 0; y <= d[1]; ++y)
          for (int z = 0; z <= d[2]; ++z) m.points.push_back(LatticePoint::of(3, x, y, z));
      break;
    case Variety::P2xP1:
      for (int x = 0; x <= d[0]; ++x)
        for (int y = 0; x + y <= d[0]; ++y)
          for (int z = 0; z <= d[1]; ++z) m.points.push_back(LatticePoint::of(3, x, y, z));
      break;
    case Variety::Flag: {
      int mm = d[0], nn = d[1];
      for (int n2 = 0; n2 <= mm; ++n2)
        for (int n3 = 0; n3 <= nn; ++n3)
          for (int n1 = 0; n1 <= mm + n3 - n2; ++n1)
            m.points.push_back(LatticePoint::of(3, n1, n2, n3));
      break;
    }
  }
  std::sort(m.points.begin(), m.points.end());
  m.dimV = static_cast<int>(m.points.size());
  return m;
}

int Model::point_index(const LatticePoint& p) const {
  auto it = std::lower_bound(points.begin(), points.end(), p);
  if (it != points.end() && *it == p) return static_cast<int>(it - points.begin());
  return -1;
}

int expected_cone_dim(const Model& model, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return std::min(std::int64_t(k) * (model.dimX + 1), std::int64_t(model.dimV));
}

int capping_k(const Model& model) {
  return (model.dimV + model.dimX) / (model.dimX + 1);
}

LatticePoint flag_transpose(const LatticePoint& p, int m, int n) {
  Model b = build_model(spec_flag(m, n), true);
  if (!b.contains(p))
    throw std::invalid_argument("point " + p.str() + " not in flag set B(" + std::to_string(m) +
                                "," + std::to_string(n) + ")");
  return LatticePoint::of(3, p[0], n - p[2], m - p[1]);
}

AffineMap AffineMap::identity(int d) {
  AffineMap g;
  g.dim = d;
  g.shift = LatticePoint::of(d);
  return g;
}

LatticePoint AffineMap::apply(const LatticePoint& p) const {
  LatticePoint q = LatticePoint::of(dim);
  for (int j = 0; j < dim; ++j) q[perm[j]] = sign[j] * p[j];
  return q + shift;
}

AffineMap AffineMap::inverse() const {
  AffineMap inv;
  inv.dim = dim;
  for (int j = 0; j < dim; ++j) {
    inv.perm[perm[j]] = j;
    inv.sign[perm[j]] = sign[j];
  }
  LatticePoint t = LatticePoint::of(dim);
  for (int j = 0; j < dim; ++j) t[inv.perm[j]] = -inv.sign[j] * shift[j];
  inv.shift = t;
  return inv;
}

bool AffineMap::is_identity() const {
  for (int j = 0; j < dim; ++j) {
    if (perm[j] != j || sign[j] != 1 || shift[j] != 0) return false;
  }
  return true;
}

std::vector<AffineMap> lattice_symmetries(const Model& model) {
  return point_set_symmetries(model.points, model.dimX);
}

std::vector<AffineMap> point_set_symmetries(const std::vector<LatticePoint>& points, int d) {
  std::vector<AffineMap> out;
  if (points.empty()) return out;
  std::vector<LatticePoint> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  auto contains = [&](const LatticePoint& p) {
    return std::binary_search(sorted.begin(), sorted.end(), p);
  };

  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.begin() + d));

  LatticePoint lo = sorted.front();
  for (const auto& q : sorted)
    for (int i = 0; i < d; ++i) lo[i] = std::min(lo[i], q[i]);

  for (const auto& perm : perms) {
    for (int smask = 0; smask < (1 << d); ++smask) {
      AffineMap g;
      g.dim = d;
      g.perm = perm;
      for (int j = 0; j < d; ++j) g.sign[j] = (smask >> j) & 1 ? -1 : 1;
      g.shift = LatticePoint::of(d);
      // align the image bounding box with the original, then test setwise
      LatticePoint ilo = g.apply(sorted.front());
      for (const auto& q : sorted) {
        LatticePoint iq = g.apply(q);
        for (int i = 0; i < d; ++i) ilo[i] = std::min(ilo[i], iq[i]);
      }
      for (int i = 0; i < d; ++i) g.shift[i] = lo[i] - ilo[i];
      bool ok = true;
      for (const auto& q : sorted) {
        if (!contains(g.apply(q))) {
          ok = false;
          break;
        }
      }
      if (ok) out.push_back(g);
    }
  }
  return out;
}

std::array<int, 2> weight_map(const LatticePoint& r) {
  if (r.dim != 3) throw std::invalid_argument("weight_map expects a 3-coordinate exponent vector");
  return {-(r[0] + r[1]), -(r[1] + r[2])};
}

SingletonReduction flag_reduce_to_singletons(int m, int n) {
  if (m < 1 || n < 1) throw std::invalid_argument("flag weights must be >= 1");
  SingletonReduction red;
  red.model = build_model(spec_flag(m, n));
  red.z = {1, -1, 1};
  return red;
}

std::string model_to_json(const Model& model) {
  nlohmann::ordered_json j;
  j["variety"] = variety_name(model.spec.variety);
  j["degrees"] = model.spec.degrees;
  auto pts = nlohmann::ordered_json::array();
  for (const auto& p : model.points) {
    auto row = nlohmann::ordered_json::array();
    for (int i = 0; i < p.dim; ++i) row.push_back(p[i]);
    pts.push_back(row);
  }
  j["points"] = pts;
  return j.dump(2) + "\n";
}

Model model_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto v = variety_from_name(j.at("variety").get<std::string>());
  if (!v) throw std::invalid_argument("unknown variety in model JSON");
  ModelSpec spec{*v, j.at("degrees").get<std::vector<int>>()};
  Model m = build_model(spec, true);
  if (j.contains("points")) {
    std::vector<LatticePoint> pts;
    for (const auto& row : j.at("points")) {
      auto xs = row.get<std::vector<std::int64_t>>();
      LatticePoint p = LatticePoint::of(static_cast<int>(xs.size()));
      for (std::size_t i = 0; i < xs.size(); ++i) p[static_cast<int>(i)] = checked_coord(xs[i]);
      pts.push_back(p);
    }
    std::sort(pts.begin(), pts.end());
    if (pts != m.points)
      throw std::invalid_argument("model JSON point set disagrees with " + spec.str());
  }
  return m;
}

}  // namespace secant
