#include "moore/svg.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "moore/error.hpp"

namespace moore {

namespace {

// Region of the picture occupied by a sub-cube, in unscaled units. Local
// coordinates a in [0, e] map to o + a, or o + e - a on a flipped axis.
struct Frame {
  std::array<double, 2> o{0.0, 0.0};
  std::array<double, 2> e{0.0, 0.0};
  std::array<bool, 2> flip{false, false};

  std::array<double, 2> global(double a0, double a1) const {
    const std::array<double, 2> a{a0, a1};
    std::array<double, 2> g{};
    for (int k = 0; k < 2; ++k) g[k] = flip[k] ? o[k] + e[k] - a[k] : o[k] + a[k];
    return g;
  }

  Frame slab(int axis, double lo, double width) const {
    Frame f = *this;
    f.o[axis] = flip[axis] ? o[axis] + e[axis] - lo - width : o[axis] + lo;
    f.e[axis] = width;
    return f;
  }
};

struct Polyline {
  std::string cls;
  std::vector<std::array<double, 2>> pts;
};

struct Scene {
  std::vector<Polyline> items;
  int levels = 4;

  void add(std::string cls, const Frame& f, std::initializer_list<std::array<double, 2>> local) {
    Polyline p{std::move(cls), {}};
    for (const auto& a : local) p.pts.push_back(f.global(a[0], a[1]));
    items.push_back(std::move(p));
  }
};

std::vector<double> seams_1d(const MooreCube& c, double e) {
  std::vector<double> out;
  const double r = c.shape().extents()[0];
  const double u = r > 0 ? e / r : 0.0;
  std::visit(
      [&](const auto& how) {
        using T = std::decay_t<decltype(how)>;
        if constexpr (std::is_same_v<T, ComposeOf>) {
          const double l = how.left->shape().extents()[0] * u;
          const double w = how.right->shape().extents()[0] * u;
          out = seams_1d(*how.left, l);
          out.push_back(l);
          for (double s : seams_1d(*how.right, w)) out.push_back(l + s);
        } else if constexpr (std::is_same_v<T, GridOf>) {
          double at = 0.0;
          for (std::size_t k = 0; k < how.cells.size(); ++k) {
            const double w = how.widths[0][k] * u;
            for (double s : seams_1d(*how.cells[k], w)) out.push_back(at + s);
            at += w;
            if (k + 1 < how.cells.size()) out.push_back(at);
          }
        } else if constexpr (std::is_same_v<T, ReverseOf>) {
          for (double s : seams_1d(*how.of, e)) out.push_back(e - s);
        } else if constexpr (std::is_same_v<T, RespaceOf>) {
          out = seams_1d(*how.of, e);
        }
      },
      c.construction());
  std::erase_if(out, [e](double s) { return s <= 0.0 || s >= e; });
  return out;
}

std::vector<double> levels_for(double e, int n, const std::vector<double>& seams) {
  std::vector<double> v = seams;
  for (int k = 1; k < n; ++k) v.push_back(e * k / n);
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end(), [e](double a, double b) { return b - a <= 1e-9 * std::max(1.0, e); }), v.end());
  return v;
}

void draw(const MooreCube& c, const Frame& f, Scene& scene) {
  std::visit(
      [&](const auto& how) {
        using T = std::decay_t<decltype(how)>;
        if constexpr (std::is_same_v<T, ComposeOf>) {
          const int k = static_cast<int>(how.direction) - 1;
          const int other = 1 - k;
          const double r = c.shape().extents()[k];
          if (r <= 0.0) {
            draw(*how.left, f, scene);
            return;
          }
          const double u = f.e[k] / r;
          const double l = how.left->shape().extents()[k] * u;
          const double w = how.right->shape().extents()[k] * u;
          std::array<double, 2> p0{}, p1{};
          p0[k] = p1[k] = l;
          p0[other] = 0.0;
          p1[other] = f.e[other];
          scene.add("seam", f, {p0, p1});
          draw(*how.left, f.slab(k, 0.0, l), scene);
          draw(*how.right, f.slab(k, l, w), scene);
        } else if constexpr (std::is_same_v<T, GridOf>) {
          std::array<std::vector<std::pair<double, double>>, 2> slabs;
          for (int k = 0; k < 2; ++k) {
            const int other = 1 - k;
            double total = 0.0;
            for (double w : how.widths[k]) total += w;
            const double u = total > 0.0 ? f.e[k] / total : 0.0;
            double at = 0.0;
            for (std::size_t s = 0; s < how.widths[k].size(); ++s) {
              const double w = total > 0.0 ? how.widths[k][s] * u : f.e[k];
              slabs[k].emplace_back(total > 0.0 ? at : 0.0, w);
              at += total > 0.0 ? w : 0.0;
              if (total > 0.0 && s + 1 < how.widths[k].size()) {
                std::array<double, 2> p0{}, p1{};
                p0[k] = p1[k] = at;
                p1[other] = f.e[other];
                scene.add("seam", f, {p0, p1});
              }
            }
          }
          for (std::size_t i0 = 0; i0 < how.counts[0]; ++i0) {
            for (std::size_t i1 = 0; i1 < how.counts[1]; ++i1) {
              const Frame cell = f.slab(0, slabs[0][i0].first, slabs[0][i0].second)
                                     .slab(1, slabs[1][i1].first, slabs[1][i1].second);
              draw(*how.cells[i0 * how.counts[1] + i1], cell, scene);
            }
          }
        } else if constexpr (std::is_same_v<T, ConnectionOf>) {
          const double e = std::min(f.e[0], f.e[1]);
          const auto seams = seams_1d(*how.of, e);
          for (double s : seams) {
            scene.add("seam", f, {{s, 0.0}, {s, f.e[1]}});
            scene.add("seam", f, {{0.0, s}, {f.e[0], s}});
          }
          for (double l : levels_for(e, scene.levels, seams)) {
            if (how.sign == Sign::minus) {
              scene.add("constancy", f, {{l, 0.0}, {l, l}, {0.0, l}});
            } else {
              scene.add("constancy", f, {{l, f.e[1]}, {l, l}, {f.e[0], l}});
            }
          }
        } else if constexpr (std::is_same_v<T, DegeneracyOf>) {
          const int ig = static_cast<int>(how.index) - 1;
          const int ax = 1 - ig;
          const auto seams = seams_1d(*how.of, f.e[ax]);
          for (double l : levels_for(f.e[ax], scene.levels, seams)) {
            const bool seam = std::find(seams.begin(), seams.end(), l) != seams.end();
            std::array<double, 2> p0{}, p1{};
            p0[ax] = p1[ax] = l;
            p1[ig] = f.e[ig];
            scene.add(seam ? "seam" : "constancy", f, {p0, p1});
          }
        } else if constexpr (std::is_same_v<T, ReverseOf>) {
          Frame g = f;
          g.flip[how.index - 1] = !g.flip[how.index - 1];
          draw(*how.of, g, scene);
        } else if constexpr (std::is_same_v<T, RespaceOf>) {
          draw(*how.of, f, scene);
        }
      },
      c.construction());
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

std::string render_svg(const MooreCube& c, const SvgOptions& opts) {
  if (c.dim() != 2) throw DimensionMismatch("svg needs a 2-cube, got dim " + std::to_string(c.dim()));
  const auto r = c.shape().extents();
  const double longest = std::max(r[0], r[1]);
  Frame top;
  for (int k = 0; k < 2; ++k) top.e[k] = r[k] > 0.0 ? r[k] : (longest > 0.0 ? 0.15 * longest : 1.0);
  const double scale = opts.size / std::max(top.e[0], top.e[1]);
  const double m = opts.margin;
  const double width = 2 * m + top.e[0] * scale;
  const double height = 2 * m + top.e[1] * scale;

  Scene scene;
  scene.levels = std::max(1, opts.levels);
  draw(c, top, scene);

  auto px = [&](const std::array<double, 2>& g) {
    return num(m + g[0] * scale) + "," + num(m + (top.e[1] - g[1]) * scale);
  };

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
     << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
     << "<style>.shape{fill:#fafafa;stroke:#000;stroke-width:1.5}"
     << ".seam{fill:none;stroke:#b00;stroke-width:1.2}"
     << ".constancy{fill:none;stroke:#36c;stroke-width:0.8}"
     << "text{font:12px sans-serif}</style>\n"
     << "<rect class=\"shape\" x=\"" << num(m) << "\" y=\"" << num(m) << "\" width=\"" << num(top.e[0] * scale)
     << "\" height=\"" << num(top.e[1] * scale) << "\"/>\n";
  for (const auto& item : scene.items) {
    if (item.pts.size() == 2) {
      os << "<line class=\"" << item.cls << "\" x1=\"" << num(m + item.pts[0][0] * scale) << "\" y1=\""
         << num(m + (top.e[1] - item.pts[0][1]) * scale) << "\" x2=\"" << num(m + item.pts[1][0] * scale)
         << "\" y2=\"" << num(m + (top.e[1] - item.pts[1][1]) * scale) << "\"/>\n";
    } else {
      os << "<polyline class=\"" << item.cls << "\" points=\"";
      for (std::size_t k = 0; k < item.pts.size(); ++k) os << (k ? " " : "") << px(item.pts[k]);
      os << "\"/>\n";
    }
  }
  os << "<text x=\"" << num(m + top.e[0] * scale / 2) << "\" y=\"" << num(height - 8) << "\" text-anchor=\"middle\">t1 in [0, "
     << label(r[0]) << "]</text>\n"
     << "<text x=\"12\" y=\"" << num(m + top.e[1] * scale / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 12 "
     << num(m + top.e[1] * scale / 2) << ")\">t2 in [0, " << label(r[1]) << "]</text>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace moore
