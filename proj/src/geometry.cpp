#include "mmp/geometry.hpp"

#include <algorithm>
#include <array>

#include "mmp/tolerance.hpp"

namespace mmp {

double coordinate_scale(std::initializer_list<Point> pts) {
  return coordinate_scale(std::span<const Point>(pts.begin(), pts.size()));
}

double coordinate_scale(std::span<const Point> pts) {
  double s = 0;
  for (const Point& p : pts) s = std::max({s, std::abs(p.x), std::abs(p.y)});
  return s;
}

bool HyperbolaSide::degenerate() const {
  double focal = distance(focus_a, focus_b);
  double tol = boundary_tolerance(coordinate_scale({focus_a, focus_b, through}));
  return std::abs(std::abs(constant()) - focal) <= tol;
}

const char* to_string(Orientation o) {
  switch (o) {
    case Orientation::Left: return "Left";
    case Orientation::Right: return "Right";
    case Orientation::Collinear: return "Collinear";
  }
  return "?";
}

const char* to_string(Containment c) {
  switch (c) {
    case Containment::Interior: return "Interior";
    case Containment::Boundary: return "Boundary";
    case Containment::Exterior: return "Exterior";
  }
  return "?";
}

const char* to_string(HyperbolaRegion h) {
  switch (h) {
    case HyperbolaRegion::OnArc: return "OnArc";
    case HyperbolaRegion::SideOfFocusA: return "SideOfFocusA";
    case HyperbolaRegion::SideOfFocusB: return "SideOfFocusB";
  }
  return "?";
}

Orientation orientation(Point a, Point b, Point c) {
  double scale = coordinate_scale({a, b, c});
  double cr = cross(b - a, c - a);
  if (std::abs(cr) <= collinear_tolerance(scale)) return Orientation::Collinear;
  return cr > 0 ? Orientation::Left : Orientation::Right;
}

namespace {

Containment classify_band(double value, double limit, double tol) {
  if (value < limit - tol) return Containment::Interior;
  if (value > limit + tol) return Containment::Exterior;
  return Containment::Boundary;
}

// x lies in the tolerance-padded bounding box of s. Only meaningful once x is
// known to be collinear with s.
bool within_box(Point x, const Segment& s) {
  double tol = boundary_tolerance(coordinate_scale({x, s.p, s.q}));
  return x.x >= std::min(s.p.x, s.q.x) - tol && x.x <= std::max(s.p.x, s.q.x) + tol &&
         x.y >= std::min(s.p.y, s.q.y) - tol && x.y <= std::max(s.p.y, s.q.y) + tol;
}

bool opposite(Orientation a, Orientation b) {
  return (a == Orientation::Left && b == Orientation::Right) ||
         (a == Orientation::Right && b == Orientation::Left);
}

bool inside_closed_triangle(Point x, Point a, Point b, Point c) {
  std::array<Orientation, 3> o{orientation(a, b, x), orientation(b, c, x), orientation(c, a, x)};
  bool has_left = std::ranges::count(o, Orientation::Left) > 0;
  bool has_right = std::ranges::count(o, Orientation::Right) > 0;
  if (has_left && has_right) return false;
  if (orientation(a, b, c) != Orientation::Collinear) return true;
  // Degenerate triangle: x must lie on the segment it spans.
  return !has_left && !has_right &&
         (within_box(x, {a, b}) || within_box(x, {b, c}) || within_box(x, {c, a}));
}

}  // namespace

Containment in_disk(Point p, const Disk& d) {
  double scale = std::max(coordinate_scale({p, d.center}), d.radius);
  return classify_band(distance(p, d.center), d.radius, boundary_tolerance(scale));
}

CrossResult segments_cross(const Segment& s1, const Segment& s2) {
  Orientation o1 = orientation(s1.p, s1.q, s2.p);
  Orientation o2 = orientation(s1.p, s1.q, s2.q);
  Orientation o3 = orientation(s2.p, s2.q, s1.p);
  Orientation o4 = orientation(s2.p, s2.q, s1.q);

  if (opposite(o1, o2) && opposite(o3, o4)) return {true, false};

  bool touch = (o1 == Orientation::Collinear && within_box(s2.p, s1)) ||
               (o2 == Orientation::Collinear && within_box(s2.q, s1)) ||
               (o3 == Orientation::Collinear && within_box(s1.p, s2)) ||
               (o4 == Orientation::Collinear && within_box(s1.q, s2));
  return {touch, touch};
}

std::optional<Point> crossing_point(const Segment& s1, const Segment& s2) {
  CrossResult r = segments_cross(s1, s2);
  if (!r.crosses) return std::nullopt;
  Point d1 = s1.q - s1.p;
  Point d2 = s2.q - s2.p;
  double den = cross(d1, d2);
  double scale = coordinate_scale({s1.p, s1.q, s2.p, s2.q});
  if (!r.improper && std::abs(den) > collinear_tolerance(scale)) {
    double t = cross(s2.p - s1.p, d2) / den;
    return s1.p + t * d1;
  }
  // Touching or overlapping: report an endpoint that lies on the other segment.
  for (Point e : {s2.p, s2.q}) {
    if (orientation(s1.p, s1.q, e) == Orientation::Collinear && within_box(e, s1)) return e;
  }
  for (Point e : {s1.p, s1.q}) {
    if (orientation(s2.p, s2.q, e) == Orientation::Collinear && within_box(e, s2)) return e;
  }
  return std::nullopt;
}

bool strictly_inside_triangle(Point x, Point a, Point b, Point c) {
  Orientation o = orientation(a, b, c);
  if (o == Orientation::Collinear) return false;
  return orientation(a, b, x) == o && orientation(b, c, x) == o && orientation(c, a, x) == o;
}

bool points_to(const Segment& s1, const Segment& s2) {
  if (s2.degenerate()) return false;
  if (!strictly_inside_triangle(s1.q, s1.p, s2.p, s2.q)) return false;
  return in_disk(s1.q, diametral_disk(s2)) == Containment::Interior;
}

HyperbolaRegion hyperbola_side(const HyperbolaSide& h, Point x) {
  double diff = distance(h.focus_a, x) - distance(h.focus_b, x);
  double tol = boundary_tolerance(coordinate_scale({h.focus_a, h.focus_b, h.through, x}));
  double k = h.constant();
  if (diff > k + tol) return HyperbolaRegion::SideOfFocusB;
  if (diff < k - tol) return HyperbolaRegion::SideOfFocusA;
  return HyperbolaRegion::OnArc;
}

Containment in_ellipse(const EllipseRegion& e, Point x) {
  double scale = std::max(coordinate_scale({e.focus_a, e.focus_b, x}), e.semimajor);
  double sum = distance(x, e.focus_a) + distance(x, e.focus_b);
  return classify_band(sum, 2 * e.semimajor, boundary_tolerance(scale));
}

bool in_convex_position(Point a, Point b, Point c, Point d) {
  return !inside_closed_triangle(a, b, c, d) && !inside_closed_triangle(b, a, c, d) &&
         !inside_closed_triangle(c, a, b, d) && !inside_closed_triangle(d, a, b, c);
}

Point project_onto_segment(Point x, const Segment& s) {
  Point d = s.q - s.p;
  double len2 = dot(d, d);
  if (len2 == 0) return s.p;
  double t = std::clamp(dot(x - s.p, d) / len2, 0.0, 1.0);
  return s.p + t * d;
}

double distance_to_segment(Point x, const Segment& s) { return distance(x, project_onto_segment(x, s)); }

Point foot_on_line(Point x, const Segment& s) {
  Point d = s.q - s.p;
  return s.p + (dot(x - s.p, d) / dot(d, d)) * d;
}

std::vector<Point> circle_intersections(const Disk& d1, const Disk& d2) {
  Point cv = d2.center - d1.center;
  double d = norm(cv);
  double scale = std::max({coordinate_scale({d1.center, d2.center}), d1.radius, d2.radius});
  double tol = boundary_tolerance(scale);
  if (d <= tol) return {};
  if (d > d1.radius + d2.radius + tol || d < std::abs(d1.radius - d2.radius) - tol) return {};
  double along = (d1.radius * d1.radius - d2.radius * d2.radius + d * d) / (2 * d);
  Point base = d1.center + (along / d) * cv;
  double h2 = d1.radius * d1.radius - along * along;
  if (h2 <= 0) return {base};
  Point off = (std::sqrt(h2) / d) * perp(cv);
  return {base + off, base - off};
}

}  // namespace mmp
