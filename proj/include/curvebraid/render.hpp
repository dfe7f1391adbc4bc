#pragma once
// Static SVG diagrams: the punctured model disk with a set of arcs, and the
// critical chart along the real axis.  Coordinates are the disk coordinates
// scaled uniformly, with the vertical axis flipped for screen space.

#include <algorithm>
#include <string>
#include <vector>

#include "curvebraid/chart.hpp"
#include "curvebraid/disk.hpp"
#include "curvebraid/io.hpp"
#include "curvebraid/skeleton.hpp"

namespace cb {
namespace detail {

inline std::string svg_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

struct SvgCanvas {
  double x0, y0, scale, height;
  std::string body;

  // Disk window [ax, bx] x [ay, by], y up; 'scale' pixels per unit.
  SvgCanvas(double ax, double bx, double ay, double by, double s)
      : x0(ax), y0(by), scale(s), height((by - ay) * s) {
    width = (bx - ax) * s;
  }
  double width;
  double px(double x) const { return (x - x0) * scale; }
  double py(double y) const { return (y0 - y) * scale; }

  void polyline(const std::vector<cpx>& pts, const char* stroke) {
    body += "<polyline fill=\"none\" stroke=\"";
    body += stroke;
    body += "\" stroke-width=\"1.5\" points=\"";
    for (cpx p : pts) body += svg_num(px(p.real())) + "," + svg_num(py(p.imag())) + " ";
    body += "\"/>\n";
  }
  void circle(cpx c, double r_px, const char* fill, const char* stroke) {
    body += "<circle cx=\"" + svg_num(px(c.real())) + "\" cy=\"" + svg_num(py(c.imag())) +
            "\" r=\"" + svg_num(r_px) + "\" fill=\"" + fill + "\" stroke=\"" + stroke + "\"/>\n";
  }
  void text(cpx at, const std::string& s, const char* anchor = "middle") {
    body += "<text x=\"" + svg_num(px(at.real())) + "\" y=\"" + svg_num(py(at.imag())) +
            "\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"" + anchor + "\">" + s +
            "</text>\n";
  }
  std::string finish() const {
    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + svg_num(width) +
                      "\" height=\"" + svg_num(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += body;
    out += "</svg>\n";
    return out;
  }
};

}  // namespace detail

// The model disk with n - d real and d column punctures and the given arcs.
inline std::string svg_of_disk(int n, int d, const std::vector<Arc>& arcs,
                               const std::string& caption) {
  std::vector<cpx> config = model_config(n, d);
  double top = d / 2 + 1.5;
  detail::SvgCanvas cv(0.0, n + 2.0, -top, top, 60.0);
  cv.polyline({{0.0, 0.0}, {n + 2.0, 0.0}}, "#cccccc");
  static const char* palette[] = {"#1f6fb2", "#b23a1f", "#2e8b57", "#8b2eb2", "#b28b1f"};
  for (std::size_t i = 0; i < arcs.size(); ++i)
    cv.polyline(arcs[i].pts, palette[i % (sizeof(palette) / sizeof(*palette))]);
  for (std::size_t i = 0; i < config.size(); ++i) {
    cv.circle(config[i], 3.5, "black", "black");
    cv.text(config[i] + cpx(0, -0.35), std::to_string(i + 1));
  }
  if (!caption.empty()) cv.text(cpx(0.2, top - 0.4), caption, "start");
  return cv.finish();
}

// The embedded skeleton of one singularity record, drawn with every distinct
// arc once and the formal twist product as caption.
inline std::string svg_of_skeleton(const SingularityRecord& rec, int n, int d) {
  GeneralizedSkeleton sk = generalized_skeleton(rec, n, d);
  std::vector<Arc> distinct;
  for (const Arc& a : sk.twists) {
    bool seen = false;
    for (const Arc& b : distinct) seen = seen || (a.a == b.a && a.b == b.b);
    if (!seen) distinct.push_back(a);
  }
  std::string caption = std::string(to_string(rec.type)) + "  " + sk.product_spec;
  return svg_of_disk(n, d, distinct, caption);
}

// The critical chart: N-points with their disk radii, B-points, base point.
inline std::string svg_of_chart(const CurveAnalysis& an) {
  double lo = an.chart.x0, hi = an.chart.x0;
  for (const auto& p : an.chart.n_points) {
    lo = std::min(lo, p.x - p.alpha);
    hi = std::max(hi, p.x + p.alpha);
  }
  for (const auto& b : an.chart.b_points) {
    lo = std::min(lo, b.rec.x - b.delta);
    hi = std::max(hi, b.rec.x + b.delta);
  }
  double span = std::max(hi - lo, 1e-3), margin = 0.08 * span;
  double scale = 760.0 / (span + 2 * margin);
  detail::SvgCanvas cv(lo - margin, hi + margin, -1.8, 1.8, scale);
  cv.polyline({{lo - margin, 0.0}, {hi + margin, 0.0}}, "#cccccc");
  for (std::size_t i = 0; i < an.chart.n_points.size(); ++i) {
    const auto& p = an.chart.n_points[i];
    cv.circle(cpx(p.x, 0), p.alpha * scale, "none", "#1f6fb2");
    cv.circle(cpx(p.x, 0), 3.0, "#1f6fb2", "#1f6fb2");
    cv.text(cpx(p.x, 0.55), to_string(an.singular[i].type));
    cv.text(cpx(p.x, -0.75), decimal12(p.x));
  }
  for (const auto& b : an.chart.b_points) {
    cv.circle(cpx(b.rec.x, 0), b.delta * scale, "none", "#b23a1f");
    cv.circle(cpx(b.rec.x, 0), 3.0, "white", "#b23a1f");
    cv.text(cpx(b.rec.x, 0.55), "b");
  }
  cv.circle(cpx(an.chart.x0, 0), 3.0, "black", "black");
  cv.text(cpx(an.chart.x0, 0.55), "base");
  return cv.finish();
}

}  // namespace cb
