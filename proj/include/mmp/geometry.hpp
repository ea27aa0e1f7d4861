#pragma once

#include <cmath>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

namespace mmp {

struct Point {
  double x = 0;
  double y = 0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Point operator/(Point a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point a, Point b) = default;
};

constexpr double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
constexpr Point midpoint(Point a, Point b) { return {(a.x + b.x) / 2, (a.y + b.y) / 2}; }
// Counter-clockwise quarter turn.
constexpr Point perp(Point a) { return {-a.y, a.x}; }

inline bool is_finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

// Largest absolute coordinate among the given points; the length scale that
// sizes every tolerance band.
double coordinate_scale(std::initializer_list<Point> pts);
double coordinate_scale(std::span<const Point> pts);

// Oriented segment from p (tail) to q (head). Zero length is allowed.
struct Segment {
  Point p;
  Point q;

  Segment reversed() const { return {q, p}; }
  double length() const { return distance(p, q); }
  bool degenerate() const { return p == q; }
};

struct Disk {
  Point center;
  double radius = 0;
};

// Smallest disk covering p and q.
inline Disk diametral_disk(Point p, Point q) { return {midpoint(p, q), distance(p, q) / 2}; }
inline Disk diametral_disk(const Segment& s) { return diametral_disk(s.p, s.q); }

// Closed region whose focal-distance sum is at most 2 * semimajor.
struct EllipseRegion {
  Point focus_a;
  Point focus_b;
  double semimajor = 0;
};

// One branch of the locus |focus_a - x| - |focus_b - x| = const, where the
// constant is fixed by a point the branch passes through.
struct HyperbolaSide {
  Point focus_a;
  Point focus_b;
  Point through;

  double constant() const { return distance(focus_a, through) - distance(focus_b, through); }
  // The branch collapses to a ray when |constant| reaches the focal distance.
  bool degenerate() const;
};

enum class Orientation { Left, Right, Collinear };
enum class Containment { Interior, Boundary, Exterior };
enum class HyperbolaRegion { OnArc, SideOfFocusA, SideOfFocusB };

const char* to_string(Orientation o);
const char* to_string(Containment c);
const char* to_string(HyperbolaRegion h);

// Sign of (b - a) x (c - a); Collinear within 1e-12 * scale^2.
Orientation orientation(Point a, Point b, Point c);

Containment in_disk(Point p, const Disk& d);

struct CrossResult {
  bool crosses = false;
  // The shared point is an endpoint of one of the segments, or the segments
  // overlap along a collinear piece.
  bool improper = false;

  explicit operator bool() const { return crosses; }
};

// Closed-segment intersection test.
CrossResult segments_cross(const Segment& s1, const Segment& s2);

// The segments' intersection point when they cross at a single point.
std::optional<Point> crossing_point(const Segment& s1, const Segment& s2);

// Whether head(s1) lies strictly inside both the triangle (tail(s1), s2.p, s2.q)
// and the diametral disk of s2. Degenerate triangles and zero-length s2 give
// false.
bool points_to(const Segment& s1, const Segment& s2);

// Strict interior test for the triangle abc (either orientation).
bool strictly_inside_triangle(Point x, Point a, Point b, Point c);

// SideOfFocusB when |focus_a - x| - |focus_b - x| exceeds the branch constant.
HyperbolaRegion hyperbola_side(const HyperbolaSide& h, Point x);

Containment in_ellipse(const EllipseRegion& e, Point x);

// Whether none of the four points lies in the closed triangle of the other three.
bool in_convex_position(Point a, Point b, Point c, Point d);

// Closest point to x on the closed segment.
Point project_onto_segment(Point x, const Segment& s);
double distance_to_segment(Point x, const Segment& s);

// Orthogonal projection of x onto the supporting line of s (s non-degenerate).
Point foot_on_line(Point x, const Segment& s);

// Intersection points of the two boundary circles: empty when the circles are
// disjoint, nested or concentric; one point when tangent.
std::vector<Point> circle_intersections(const Disk& d1, const Disk& d2);

}  // namespace mmp
