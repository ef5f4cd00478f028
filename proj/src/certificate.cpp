#include "secant/certificate.h"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

namespace secant {

CutTree CutTree::leaf(int id) {
  CutTree t;
  t.leaf_id = id;
  return t;
}

CutTree CutTree::node(AffineFunctional cut, CutTree below, CutTree above) {
  CutTree t;
  t.cut = std::move(cut);
  t.below = std::make_unique<CutTree>(std::move(below));
  t.above = std::make_unique<CutTree>(std::move(above));
  return t;
}

CutTree CutTree::clone() const {
  CutTree t;
  t.leaf_id = leaf_id;
  t.cut = cut;
  if (below) t.below = std::make_unique<CutTree>(below->clone());
  if (above) t.above = std::make_unique<CutTree>(above->clone());
  return t;
}

int CutTree::leaf_count() const {
  if (is_leaf()) return 1;
  return below->leaf_count() + above->leaf_count();
}

Picture::Picture(const Picture& o) : points(o.points), parts(o.parts) {
  if (o.tree) tree = o.tree->clone();
}
Picture& Picture::operator=(const Picture& o) {
  points = o.points;
  parts = o.parts;
  tree.reset();
  if (o.tree) tree = o.tree->clone();
  return *this;
}

Certificate::Certificate(const Certificate& o)
    : model_spec(o.model_spec), declared_parts(o.declared_parts) {
  if (o.tree) tree = o.tree->clone();
}
Certificate& Certificate::operator=(const Certificate& o) {
  model_spec = o.model_spec;
  declared_parts = o.declared_parts;
  tree.reset();
  if (o.tree) tree = o.tree->clone();
  return *this;
}

namespace {
void evaluate_rec(const std::vector<LatticePoint>& pts, const CutTree& t,
                  std::vector<std::vector<LatticePoint>>& out) {
  if (t.is_leaf()) {
    if (t.leaf_id >= static_cast<int>(out.size())) out.resize(t.leaf_id + 1);
    auto& part = out[t.leaf_id];
    part.insert(part.end(), pts.begin(), pts.end());
    return;
  }
  std::vector<LatticePoint> lo, hi;
  for (const auto& p : pts) {
    int s = sign(t.cut.eval(p));
    if (s == 0) throw TieError(p);
    (s < 0 ? lo : hi).push_back(p);
  }
  evaluate_rec(lo, *t.below, out);
  evaluate_rec(hi, *t.above, out);
}

std::vector<std::vector<LatticePoint>> sorted_parts(std::vector<std::vector<LatticePoint>> parts) {
  for (auto& part : parts) std::sort(part.begin(), part.end());
  std::sort(parts.begin(), parts.end());
  return parts;
}
}  // namespace

std::vector<std::vector<LatticePoint>> evaluate_tree(const std::vector<LatticePoint>& points,
                                                     const CutTree& tree) {
  std::vector<std::vector<LatticePoint>> out;
  evaluate_rec(points, tree, out);
  return out;
}

int APReport::bound_at(int k) const {
  if (rows.empty() || k < 1) return 0;
  if (k > static_cast<int>(rows.size())) return rows.back().lower_bound;
  return rows[k - 1].lower_bound;
}

APReport verify_certificate(const Certificate& cert) {
  APReport rep;
  Model model = build_model(cert.model_spec, true);
  rep.parts_total = static_cast<int>(cert.declared_parts.size());

  // (a) the declared parts really partition B
  {
    std::vector<LatticePoint> all;
    for (const auto& part : cert.declared_parts) {
      if (part.empty()) {
        rep.failure = "empty declared part";
        return rep;
      }
      all.insert(all.end(), part.begin(), part.end());
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
      rep.failure = "declared parts are not disjoint";
      return rep;
    }
    if (all != model.points) {
      rep.failure = "declared parts do not partition B";
      return rep;
    }
  }

  // (b) the tree (or an LP witness) induces exactly the declared parts
  if (cert.tree) {
    std::vector<std::vector<LatticePoint>> got;
    try {
      got = evaluate_tree(model.points, *cert.tree);
    } catch (const TieError& e) {
      rep.failure = e.what();
      return rep;
    }
    got.erase(std::remove_if(got.begin(), got.end(),
                             [](const auto& p) { return p.empty(); }),
              got.end());
    if (sorted_parts(got) != sorted_parts(cert.declared_parts)) {
      rep.failure = "tree leaves disagree with declared parts";
      return rep;
    }
  } else {
    auto witness = induce_partition_lp(cert.declared_parts);
    if (!witness) {
      rep.failure = "partition is not LP-inducible";
      return rep;
    }
    auto wins = winner_sets(witness->functionals, model.points);
    if (sorted_parts(wins) != sorted_parts(cert.declared_parts)) {
      rep.failure = "LP witness winners disagree with declared parts";
      return rep;
    }
  }
  rep.valid_partition = true;

  // (c) part values: 1 + affine dimension, independence bookkeeping
  std::vector<int> values;
  for (const auto& part : cert.declared_parts) {
    int ad = affine_dim(part);
    values.push_back(1 + ad);
    if (!affinely_independent(part)) ++rep.dependent_parts;
    if (ad == model.dimX)
      ++rep.full_parts;
    else
      ++rep.deficient_parts;
  }
  std::sort(values.rbegin(), values.rend());  // deficient parts count last

  int kmax = std::max(rep.parts_total, capping_k(model));
  int prefix = 0;
  for (int k = 1; k <= kmax; ++k) {
    if (k <= static_cast<int>(values.size())) prefix += values[k - 1];
    APRow row;
    row.k = k;
    row.lower_bound = prefix;
    row.expected = expected_cone_dim(model, k);
    row.verdict = row.lower_bound >= row.expected ? Verdict::NonDefectiveCertified
                                                  : Verdict::BoundBelowExpected;
    rep.rows.push_back(row);
  }
  rep.non_defective = rep.dependent_parts == 0 && rep.deficient_parts <= 1 &&
                      std::all_of(rep.rows.begin(), rep.rows.end(), [](const APRow& r) {
                        return r.verdict == Verdict::NonDefectiveCertified;
                      });
  return rep;
}

// --- gluing -------------------------------------------------------------------

Picture picture_of(const Certificate& cert) {
  Picture pic;
  Model m = build_model(cert.model_spec, true);
  pic.points = m.points;
  if (cert.tree) pic.tree = cert.tree->clone();
  pic.parts = cert.declared_parts;
  return pic;
}

Certificate certificate_of(Picture pic, const ModelSpec& spec) {
  Model m = build_model(spec, true);
  std::vector<LatticePoint> sorted = pic.points;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != m.points)
    throw std::invalid_argument("picture point set is not B of " + spec.str());
  Certificate cert;
  cert.model_spec = spec;
  cert.tree = std::move(pic.tree);
  cert.declared_parts = std::move(pic.parts);
  return cert;
}

namespace {
CutTree translate_tree(const CutTree& t, const LatticePoint& offset) {
  if (t.is_leaf()) return CutTree::leaf(t.leaf_id);
  AffineFunctional cut = t.cut;
  // f'(p) = f(p - offset)
  for (int i = 0; i < offset.dim && i < static_cast<int>(cut.normal.size()); ++i)
    cut.offset -= cut.normal[i] * offset[i];
  return CutTree::node(std::move(cut), translate_tree(*t.below, offset),
                       translate_tree(*t.above, offset));
}

CutTree transform_tree(const CutTree& t, const AffineMap& inv) {
  if (t.is_leaf()) return CutTree::leaf(t.leaf_id);
  // f'(q) = f(inv(q)): the q_j coefficient is normal[inv.perm[j]] * inv.sign[j],
  // and the constant picks up <normal, inv.shift>
  AffineFunctional cut;
  cut.normal.assign(inv.dim, Rational(0));
  cut.offset = t.cut.offset;
  for (int j = 0; j < inv.dim; ++j) {
    if (inv.perm[j] < static_cast<int>(t.cut.normal.size()))
      cut.normal[j] = t.cut.normal[inv.perm[j]] * inv.sign[j];
  }
  for (int i = 0; i < inv.dim && i < static_cast<int>(t.cut.normal.size()); ++i)
    cut.offset += t.cut.normal[i] * inv.shift[i];
  return CutTree::node(std::move(cut), transform_tree(*t.below, inv),
                       transform_tree(*t.above, inv));
}
}  // namespace

Picture glue_translate(const Picture& pic, const LatticePoint& offset) {
  Picture out;
  for (const auto& p : pic.points) out.points.push_back(p + offset);
  if (pic.tree) out.tree = translate_tree(*pic.tree, offset);
  for (const auto& part : pic.parts) {
    std::vector<LatticePoint> q;
    for (const auto& p : part) q.push_back(p + offset);
    out.parts.push_back(std::move(q));
  }
  return out;
}

Picture glue_transform(const Picture& pic, const AffineMap& map) {
  Picture out;
  for (const auto& p : pic.points) out.points.push_back(map.apply(p));
  if (pic.tree) out.tree = transform_tree(*pic.tree, map.inverse());
  for (const auto& part : pic.parts) {
    std::vector<LatticePoint> q;
    for (const auto& p : part) q.push_back(map.apply(p));
    out.parts.push_back(std::move(q));
  }
  return out;
}

Certificate glue_transform(const Certificate& cert, const AffineMap& map,
                           const ModelSpec& target_spec) {
  return certificate_of(glue_transform(picture_of(cert), map), target_spec);
}

Picture glue_stack(const Picture& a, const Picture& b, const AffineFunctional& cut) {
  for (const auto& p : a.points)
    if (sign(cut.eval(p)) >= 0)
      throw std::invalid_argument("lower picture not strictly below the cut at " + p.str());
  for (const auto& p : b.points)
    if (sign(cut.eval(p)) <= 0)
      throw std::invalid_argument("upper picture not strictly above the cut at " + p.str());
  if (!a.tree || !b.tree) throw std::invalid_argument("glue_stack needs trees on both pictures");

  Picture out;
  out.points = a.points;
  out.points.insert(out.points.end(), b.points.begin(), b.points.end());
  {
    std::vector<LatticePoint> sorted = out.points;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("glue_stack pictures overlap");
  }
  // re-id the upper tree's leaves after the lower picture's parts
  const int shift = static_cast<int>(a.parts.size());
  struct Shifter {
    static CutTree run(const CutTree& t, int s) {
      if (t.is_leaf()) return CutTree::leaf(t.leaf_id + s);
      return CutTree::node(t.cut, run(*t.below, s), run(*t.above, s));
    }
  };
  out.tree = CutTree::node(cut, a.tree->clone(), Shifter::run(*b.tree, shift));
  out.parts = a.parts;
  out.parts.insert(out.parts.end(), b.parts.begin(), b.parts.end());
  return out;
}

Picture glue_stack(const Picture& a, const Picture& b, int axis, const Rational& offset) {
  int dim = a.points.empty() ? (b.points.empty() ? 0 : b.points[0].dim) : a.points[0].dim;
  AffineFunctional cut;
  cut.normal.assign(dim, Rational(0));
  cut.normal[axis] = 1;
  cut.offset = -offset;
  return glue_stack(a, b, cut);
}

// --- known defective cases -----------------------------------------------------

std::vector<KnownDefect> known_defects(const ModelSpec& spec) {
  std::vector<KnownDefect> out;
  std::vector<int> d = spec.degrees;
  switch (spec.variety) {
    case Variety::P1xP1: {
      std::sort(d.rbegin(), d.rend());
      if (d[1] == 2 && d[0] % 2 == 0)
        out.push_back({d[0] + 1, 1, "e=2, d even: (d+1)-st secant has codimension 1"});
      break;
    }
    case Variety::P1xP1xP1: {
      std::sort(d.rbegin(), d.rend());
      if (d[1] == 1 && d[2] == 1 && d[0] % 2 == 0)
        out.push_back({d[0] + 1, 1, "e=f=1, d even: (d+1)-st secant has codimension 1"});
      if (d[0] == 2 && d[1] == 2 && d[2] == 2)
        out.push_back({7, 1, "(2,2,2): 7th secant has codimension 1"});
      break;
    }
    case Variety::P2xP1: {
      if (d[0] == 2 && d[1] % 2 == 0) {
        int h = d[1] / 2;
        out.push_back({3 * h + 1, 1, "d=2, e even: (3e/2+1)-st secant has codimension 3, not 2"});
        out.push_back({3 * h + 2, 1, "d=2, e even: (3e/2+2)-nd secant has codimension 1"});
      }
      if (d[0] == 3 && d[1] == 1)
        out.push_back({5, 1, "(3,1): 5th secant has codimension 1"});
      break;
    }
    case Variety::Flag: {
      std::sort(d.rbegin(), d.rend());
      if (d[0] == 1 && d[1] == 1)
        out.push_back({2, 1, "(1,1): 2nd secant has codimension 1"});
      if (d[0] == 2 && d[1] == 2)
        out.push_back({7, 1, "(2,2): 7th secant has codimension 1"});
      break;
    }
    default:
      break;
  }
  return out;
}

// --- serialization ---------------------------------------------------------------

namespace {
nlohmann::ordered_json tree_to_json(const CutTree& t) {
  nlohmann::ordered_json j;
  if (t.is_leaf()) {
    j["leaf"] = t.leaf_id;
    return j;
  }
  auto cut = nlohmann::ordered_json::array();
  for (const auto& c : t.cut.normal) cut.push_back(rational_to_string(c));
  cut.push_back(rational_to_string(t.cut.offset));
  j["cut"] = cut;
  j["below"] = tree_to_json(*t.below);
  j["above"] = tree_to_json(*t.above);
  return j;
}

CutTree tree_from_json(const nlohmann::json& j) {
  if (j.contains("leaf")) return CutTree::leaf(j.at("leaf").get<int>());
  AffineFunctional cut;
  auto arr = j.at("cut");
  for (std::size_t i = 0; i + 1 < arr.size(); ++i)
    cut.normal.push_back(rational_from_string(arr[i].get<std::string>()));
  cut.offset = rational_from_string(arr.back().get<std::string>());
  return CutTree::node(std::move(cut), tree_from_json(j.at("below")),
                       tree_from_json(j.at("above")));
}
}  // namespace

std::string certificate_to_json(const Certificate& cert) {
  Model model = build_model(cert.model_spec, true);
  nlohmann::ordered_json j;
  j["model"] = nlohmann::ordered_json::object();
  j["model"]["variety"] = variety_name(cert.model_spec.variety);
  j["model"]["degrees"] = cert.model_spec.degrees;
  j["tree"] = cert.tree ? tree_to_json(*cert.tree) : nlohmann::ordered_json(nullptr);
  auto parts = nlohmann::ordered_json::array();
  for (const auto& part : cert.declared_parts) {
    auto row = nlohmann::ordered_json::array();
    for (const auto& p : part) {
      int idx = model.point_index(p);
      if (idx < 0) throw std::invalid_argument("certificate part point outside B: " + p.str());
      row.push_back(idx);
    }
    parts.push_back(row);
  }
  j["parts"] = parts;
  return j.dump(2) + "\n";
}

Certificate certificate_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto v = variety_from_name(j.at("model").at("variety").get<std::string>());
  if (!v) throw std::invalid_argument("unknown variety in certificate JSON");
  Certificate cert;
  cert.model_spec = ModelSpec{*v, j.at("model").at("degrees").get<std::vector<int>>()};
  Model model = build_model(cert.model_spec, true);
  if (j.contains("tree") && !j.at("tree").is_null()) cert.tree = tree_from_json(j.at("tree"));
  for (const auto& row : j.at("parts")) {
    std::vector<LatticePoint> part;
    for (const auto& idx : row) {
      int i = idx.get<int>();
      if (i < 0 || i >= model.dimV)
        throw std::invalid_argument("certificate part index out of range");
      part.push_back(model.points[i]);
    }
    cert.declared_parts.push_back(std::move(part));
  }
  return cert;
}

}  // namespace secant
