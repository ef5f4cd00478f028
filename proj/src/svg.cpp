#include "secant/svg.h"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace secant {

namespace {

const char* kPalette[] = {
    "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
    "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939",
    "#8c6d31", "#843c39", "#7b4173", "#3182bd", "#e6550d", "#31a354",
    "#756bb1", "#636363", "#9c9ede", "#cedb9c", "#e7ba52", "#ad494a",
};
constexpr int kColors = sizeof(kPalette) / sizeof(kPalette[0]);
constexpr int kScale = 44;
constexpr int kMargin = 36;
constexpr int kPanelGap = 30;

struct Box {
  int xmin = 0, xmax = 0, ymin = 0, ymax = 0, zmin = 0, zmax = 0;
};

Box bounding(const std::vector<LatticePoint>& pts) {
  Box b;
  b.xmin = b.xmax = pts[0][0];
  if (pts[0].dim > 1) b.ymin = b.ymax = pts[0][1];
  if (pts[0].dim > 2) b.zmin = b.zmax = pts[0][2];
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, (int)p[0]);
    b.xmax = std::max(b.xmax, (int)p[0]);
    if (p.dim > 1) {
      b.ymin = std::min(b.ymin, (int)p[1]);
      b.ymax = std::max(b.ymax, (int)p[1]);
    }
    if (p.dim > 2) {
      b.zmin = std::min(b.zmin, (int)p[2]);
      b.zmax = std::max(b.zmax, (int)p[2]);
    }
  }
  return b;
}

}  // namespace

std::string svg_string(const Certificate& cert) {
  Model model = build_model(cert.model_spec, true);
  const auto& parts = cert.declared_parts;
  Box box = bounding(model.points);
  const int dim = model.dimX;
  const int layers = dim == 3 ? box.zmax - box.zmin + 1 : 1;
  const int panel_w = (box.xmax - box.xmin) * kScale + 2 * kMargin;
  const int panel_h = (dim >= 2 ? box.ymax - box.ymin : 0) * kScale + 2 * kMargin;
  const int width = layers * panel_w + (layers - 1) * kPanelGap;
  const int height = panel_h + 30;

  auto px = [&](int layer, const LatticePoint& p) {
    int x = layer * (panel_w + kPanelGap) + kMargin + (p[0] - box.xmin) * kScale;
    return x;
  };
  auto py = [&](const LatticePoint& p) {
    int y = dim >= 2 ? kMargin + (box.ymax - p[1]) * kScale : kMargin;
    return y + 30;
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<text x=\"8\" y=\"20\" font-family=\"monospace\" font-size=\"16\">" << cert.model_spec.str()
     << ", " << parts.size() << " parts</text>\n";

  for (int layer = 0; layer < layers; ++layer) {
    int z = box.zmin + layer;
    if (dim == 3)
      os << "<text x=\"" << layer * (panel_w + kPanelGap) + kMargin << "\" y=\"" << panel_h + 24
         << "\" font-family=\"monospace\" font-size=\"13\">z=" << z << "</text>\n";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const char* color = kPalette[i % kColors];
      // connect the points of the part within this layer to make cells visible
      std::vector<LatticePoint> in_layer;
      for (const auto& p : parts[i])
        if (dim < 3 || p[2] == z) in_layer.push_back(p);
      std::sort(in_layer.begin(), in_layer.end());
      for (std::size_t a = 0; a + 1 < in_layer.size(); ++a)
        os << "<line x1=\"" << px(layer, in_layer[a]) << "\" y1=\"" << py(in_layer[a])
           << "\" x2=\"" << px(layer, in_layer[a + 1]) << "\" y2=\"" << py(in_layer[a + 1])
           << "\" stroke=\"" << color << "\" stroke-width=\"3\" stroke-opacity=\"0.45\"/>\n";
      for (const auto& p : in_layer)
        os << "<circle cx=\"" << px(layer, p) << "\" cy=\"" << py(p) << "\" r=\"8\" fill=\""
           << color << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void emit_svg(const Certificate& cert, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << svg_string(cert);
}

}  // namespace secant
