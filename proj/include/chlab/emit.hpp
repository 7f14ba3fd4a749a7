#pragma once

// CSV and SVG writers for skeletons, the deltoid and trace curves.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "chlab/linalg.hpp"
#include "chlab/momentum.hpp"
#include "chlab/trace_geometry.hpp"
#include "chlab/triangle_groups.hpp"

namespace chlab::emit {

/// Shortest decimal text that reads back to the same double.
inline std::string num(double x) {
  char buf[32];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

inline std::string px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

class Csv {
 public:
  explicit Csv(std::vector<std::string> header) { row_strings(header); }

  template <class... Ts>
  void row(const Ts&... cells) {
    std::vector<std::string> v{cell(cells)...};
    row_strings(v);
  }

  std::string str() const { return out_.str(); }

 private:
  static std::string cell(double x) { return num(x); }
  static std::string cell(int x) { return std::to_string(x); }
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(std::string_view s) { return std::string(s); }

  void row_strings(const std::vector<std::string>& v) {
    for (std::size_t i = 0; i < v.size(); ++i) out_ << (i ? "," : "") << v[i];
    out_ << '\n';
  }
  std::ostringstream out_;
};

/// Minimal SVG canvas with a linear map from a data rectangle to pixels (y up).
class Svg {
 public:
  Svg(double xmin, double xmax, double ymin, double ymax, double size = 600.0, double margin = 30.0)
      : xmin_(xmin), xmax_(xmax), ymin_(ymin), ymax_(ymax), margin_(margin) {
    const double sx = (size - 2 * margin) / (xmax - xmin), sy = (size - 2 * margin) / (ymax - ymin);
    scale_ = std::min(sx, sy);
    w_ = 2 * margin + scale_ * (xmax - xmin);
    h_ = 2 * margin + scale_ * (ymax - ymin);
  }

  double X(double x) const { return margin_ + (x - xmin_) * scale_; }
  double Y(double y) const { return h_ - margin_ - (y - ymin_) * scale_; }

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke, double width = 1.5,
                const std::string& cls = "") {
    if (pts.empty()) return;
    body_ << "<polyline" << (cls.empty() ? "" : " class=\"" + cls + "\"") << " fill=\"none\" stroke=\"" << stroke
          << "\" stroke-width=\"" << px(width) << "\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << px(X(pts[i].first)) << ',' << px(Y(pts[i].second));
    body_ << "\"/>\n";
  }

  void line(double x1, double y1, double x2, double y2, const std::string& stroke, double width = 1.0) {
    body_ << "<line x1=\"" << px(X(x1)) << "\" y1=\"" << px(Y(y1)) << "\" x2=\"" << px(X(x2)) << "\" y2=\""
          << px(Y(y2)) << "\" stroke=\"" << stroke << "\" stroke-width=\"" << px(width) << "\"/>\n";
  }

  void circle(double x, double y, double r, const std::string& fill, const std::string& cls = "") {
    body_ << "<circle" << (cls.empty() ? "" : " class=\"" + cls + "\"") << " cx=\"" << px(X(x)) << "\" cy=\""
          << px(Y(y)) << "\" r=\"" << px(r) << "\" fill=\"" << fill << "\"/>\n";
  }

  void text(double x, double y, const std::string& s, int size = 12) {
    body_ << "<text x=\"" << px(X(x)) << "\" y=\"" << px(Y(y)) << "\" font-size=\"" << size
          << "\" font-family=\"sans-serif\">" << s << "</text>\n";
  }

  std::string str() const {
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(w_) << "\" height=\"" << px(h_)
      << "\" viewBox=\"0 0 " << px(w_) << ' ' << px(h_) << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << body_.str() << "</svg>\n";
    return o.str();
  }

 private:
  double xmin_, xmax_, ymin_, ymax_, margin_, scale_, w_, h_;
  std::ostringstream body_;
};

/// Columns: part, kind, slope, polyline, x, y. Vertices have part "vertex".
inline std::string skeleton_csv(const ReducibleSkeleton& sk) {
  Csv csv({"part", "kind", "slope", "polyline", "x", "y"});
  for (const auto& v : sk.vertices) csv.row("vertex", "totally_reducible", 0.0, 0, v.a1, v.a2);
  auto seg = [&](const std::string& name, const SkeletonSegment& s) {
    const char* kind = s.kind == SkeletonSegment::Kind::Spherical ? "spherical" : "hyperbolic";
    for (std::size_t i = 0; i < s.polylines.size(); ++i)
      for (const auto& p : s.polylines[i]) csv.row(name, kind, s.slope, static_cast<int>(i), p.a1, p.a2);
  };
  seg("spherical", sk.spherical);
  for (std::size_t k = 0; k < sk.hyperbolic.size(); ++k) seg("hyperbolic" + std::to_string(k), sk.hyperbolic[k]);
  return csv.str();
}

inline std::string skeleton_svg(const ReducibleSkeleton& sk) {
  Svg svg(0.0, kTwoPi, 0.0, kTwoPi);
  svg.polyline({{0, 0}, {kTwoPi, 0}, {kTwoPi, kTwoPi}, {0, 0}}, "#444", 1.0, "frame");
  auto draw = [&](const SkeletonSegment& s, const std::string& color, const std::string& cls) {
    for (const auto& pl : s.polylines) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& p : pl) pts.emplace_back(p.a1, p.a2);
      svg.polyline(pts, color, 2.0, cls);
    }
  };
  for (const auto& h : sk.hyperbolic) draw(h, "#1f77b4", "hyperbolic");
  draw(sk.spherical, "#d62728", "spherical");
  for (const auto& v : sk.vertices) svg.circle(v.a1, v.a2, 4.0, "black", "vertex");
  return svg.str();
}

/// Columns: curve, index, theta, re, im. Curve "deltoid" samples the boundary, "tangentK" the tangent lines.
inline std::string deltoid_csv(int grid, std::optional<cplx> point) {
  Csv csv({"curve", "index", "theta", "re", "im"});
  for (int i = 0; i <= grid; ++i) {
    const double t = kTwoPi * i / grid;
    const cplx z = deltoid_point(t);
    csv.row("deltoid", i, t, z.real(), z.imag());
  }
  if (point) {
    const auto tri = tangents_through(*point);
    for (int k = 0; k < 3; ++k) {
      const TangentLine tl(tri.thetas[k]);
      const std::string name = "tangent" + std::to_string(k);
      csv.row(name, 0, tl.foot_theta, tl.foot.real(), tl.foot.imag());
      csv.row(name, 1, tl.foot_theta, point->real(), point->imag());
    }
  }
  return csv.str();
}

inline std::string deltoid_svg(int grid, std::optional<cplx> point) {
  Svg svg(-3.5, 3.5, -3.5, 3.5);
  svg.line(-3.5, 0, 3.5, 0, "#bbb");
  svg.line(0, -3.5, 0, 3.5, "#bbb");
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i <= grid; ++i) {
    const cplx z = deltoid_point(kTwoPi * i / grid);
    pts.emplace_back(z.real(), z.imag());
  }
  svg.polyline(pts, "black", 2.0, "deltoid");
  if (point) {
    const auto tri = tangents_through(*point);
    for (double t : tri.thetas) {
      const TangentLine tl(t);
      const cplx a = tl.foot + 3.0 * tl.direction, b = tl.foot - 3.0 * tl.direction;
      svg.polyline({{a.real(), a.imag()}, {b.real(), b.imag()}}, "#1f77b4", 1.0, "tangent");
      svg.circle(tl.foot.real(), tl.foot.imag(), 3.0, "#1f77b4", "foot");
    }
    svg.circle(point->real(), point->imag(), 4.0, "#d62728", "point");
  }
  return svg.str();
}

struct TraceCurve {
  std::string chart_id;
  std::vector<TracePoint> points;
};

/// Columns: theta, alpha, re_tr_ainv_b, im_tr_ainv_b, chart_id.
inline std::string trace_curves_csv(const std::vector<TraceCurve>& curves) {
  Csv csv({"theta", "alpha", "re_tr_ainv_b", "im_tr_ainv_b", "chart_id"});
  for (const auto& c : curves)
    for (const auto& p : c.points) csv.row(p.theta, p.alpha, p.tr_ainv_b.real(), p.tr_ainv_b.imag(), c.chart_id);
  return csv.str();
}

inline std::string trace_curves_svg(const std::vector<TraceCurve>& curves) {
  double lo = -3.5, hi = 3.5;
  for (const auto& c : curves)
    for (const auto& p : c.points) {
      lo = std::min({lo, p.tr_ainv_b.real(), p.tr_ainv_b.imag()});
      hi = std::max({hi, p.tr_ainv_b.real(), p.tr_ainv_b.imag()});
    }
  Svg svg(lo, hi, lo, hi);
  svg.line(lo, 0, hi, 0, "#bbb");
  svg.line(0, lo, 0, hi, "#bbb");
  std::vector<std::pair<double, double>> del;
  for (int i = 0; i <= 256; ++i) {
    const cplx z = deltoid_point(kTwoPi * i / 256);
    del.emplace_back(z.real(), z.imag());
  }
  svg.polyline(del, "#999", 1.0, "deltoid");
  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t k = 0; k < curves.size(); ++k) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : curves[k].points) pts.emplace_back(p.tr_ainv_b.real(), p.tr_ainv_b.imag());
    svg.polyline(pts, palette[k % 6], 1.5, "curve");
  }
  return svg.str();
}

}  // namespace chlab::emit
