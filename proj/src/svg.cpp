#include "mmp/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <vector>

namespace mmp {

namespace {

constexpr double kCanvas = 600;
constexpr double kDrawable = 560;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

struct Box {
  double min_x = INFINITY, max_x = -INFINITY, min_y = INFINITY, max_y = -INFINITY;
  void add(Point p, double r = 0) {
    min_x = std::min(min_x, p.x - r);
    max_x = std::max(max_x, p.x + r);
    min_y = std::min(min_y, p.y - r);
    max_y = std::max(max_y, p.y + r);
  }
};

struct Transform {
  double cx = 0, cy = 0, s = 1;
  double x(double wx) const { return kCanvas / 2 + s * (wx - cx); }
  double y(double wy) const { return kCanvas / 2 - s * (wy - cy); }
};

std::string header(const std::string& transform_note) {
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<!-- " + transform_note + " -->\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"600\" height=\"600\" "
         "viewBox=\"0 0 600 600\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"600\" height=\"600\" fill=\"white\"/>\n";
  return out;
}

const char* point_fill(const PointSet& ps, std::size_t i) {
  if (!ps.colored()) return "black";
  return (*ps.colors)[i] == Color::Red ? "#d62728" : "#1f77b4";
}

}  // namespace

std::string empty_svg() { return header("empty canvas: no shapes") + "</svg>\n"; }

std::string render_svg(const PointSetDocument& doc, const RunReport& report, const SvgOptions& opts) {
  const PointSet& ps = doc.point_set;
  if (ps.size() == 0) return empty_svg();
  std::vector<Segment> segs = segments_of(ps, report.matching);
  std::vector<EllipseRegion> ellipses;
  if (opts.ellipse_factor) ellipses = ellipses_of(segs, *opts.ellipse_factor);

  Box box;
  for (const Point& p : ps.points) box.add(p);
  for (const Disk& d : report.disks) box.add(d.center, d.radius);
  for (const EllipseRegion& e : ellipses) box.add(midpoint(e.focus_a, e.focus_b), e.semimajor);
  if (report.piercing.witness) box.add(*report.piercing.witness);

  Transform t;
  t.cx = (box.min_x + box.max_x) / 2;
  t.cy = (box.min_y + box.max_y) / 2;
  double extent = std::max(box.max_x - box.min_x, box.max_y - box.min_y);
  t.s = extent > 0 ? kDrawable / extent : 1.0;

  std::string out = header("px = 300 + s*(x - cx), py = 300 - s*(y - cy); cx=" + num(t.cx) + " cy=" + num(t.cy) +
                           " s=" + num(t.s));
  if (doc.name) {
    std::string title;
    for (char c : *doc.name) {
      if (c == '<') title += "&lt;";
      else if (c == '>') title += "&gt;";
      else if (c == '&') title += "&amp;";
      else title += c;
    }
    out += "<title>" + title + "</title>\n";
  }

  out += "<g class=\"disks\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1\">\n";
  for (const Disk& d : report.disks) {
    out += "<circle class=\"disk\" cx=\"" + num(t.x(d.center.x)) + "\" cy=\"" + num(t.y(d.center.y)) + "\" r=\"" +
           num(t.s * d.radius) + "\"/>\n";
  }
  out += "</g>\n";

  if (!ellipses.empty()) {
    out += "<g class=\"ellipses\" fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1\" stroke-dasharray=\"4 3\">\n";
    for (const EllipseRegion& e : ellipses) {
      double c = distance(e.focus_a, e.focus_b) / 2;
      if (e.semimajor <= c) continue;
      double b = std::sqrt(e.semimajor * e.semimajor - c * c);
      Point m = midpoint(e.focus_a, e.focus_b);
      // SVG angles run clockwise because y points down.
      double angle = -std::atan2(e.focus_b.y - e.focus_a.y, e.focus_b.x - e.focus_a.x) * 180 / std::numbers::pi;
      out += "<ellipse class=\"ellipse\" cx=\"" + num(t.x(m.x)) + "\" cy=\"" + num(t.y(m.y)) + "\" rx=\"" +
             num(t.s * e.semimajor) + "\" ry=\"" + num(t.s * b) + "\" transform=\"rotate(" + num(angle) + " " +
             num(t.x(m.x)) + " " + num(t.y(m.y)) + ")\"/>\n";
    }
    out += "</g>\n";
  }

  out += "<g class=\"matching\" stroke=\"black\" stroke-width=\"2\">\n";
  for (const Segment& s : segs) {
    out += "<line class=\"segment\" x1=\"" + num(t.x(s.p.x)) + "\" y1=\"" + num(t.y(s.p.y)) + "\" x2=\"" +
           num(t.x(s.q.x)) + "\" y2=\"" + num(t.y(s.q.y)) + "\"/>\n";
  }
  out += "</g>\n";

  out += "<g class=\"points\">\n";
  for (std::size_t i = 0; i < ps.size(); ++i) {
    out += "<circle class=\"point\" cx=\"" + num(t.x(ps[i].x)) + "\" cy=\"" + num(t.y(ps[i].y)) +
           "\" r=\"4\" fill=\"" + point_fill(ps, i) + "\"/>\n";
  }
  out += "</g>\n";

  if (report.piercing.witness) {
    Point w = *report.piercing.witness;
    double x = t.x(w.x), y = t.y(w.y);
    out += "<path class=\"witness\" d=\"M " + num(x - 6) + " " + num(y - 6) + " L " + num(x + 6) + " " + num(y + 6) +
           " M " + num(x - 6) + " " + num(y + 6) + " L " + num(x + 6) + " " + num(y - 6) +
           "\" stroke=\"#ff7f0e\" stroke-width=\"2\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace mmp
