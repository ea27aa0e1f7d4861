#include "mmp/piercing.hpp"

#include <algorithm>
#include <array>
#include <limits>

#include "mmp/errors.hpp"
#include "mmp/tolerance.hpp"

namespace mmp {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::NonEmpty: return "NonEmpty";
    case Verdict::Tangent: return "Tangent";
    case Verdict::Empty: return "Empty";
  }
  return "?";
}

const char* to_string(PairOverlap p) {
  switch (p) {
    case PairOverlap::Overlap: return "Overlap";
    case PairOverlap::Tangent: return "Tangent";
    case PairOverlap::Disjoint: return "Disjoint";
  }
  return "?";
}

double depth_at(std::span<const Disk> disks, Point x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const Disk& d : disks) worst = std::max(worst, distance(x, d.center) - d.radius);
  return worst;
}

namespace {

double disk_scale(std::span<const Disk> disks) {
  double s = 0;
  for (const Disk& d : disks) s = std::max({s, std::abs(d.center.x), std::abs(d.center.y), d.radius});
  return s;
}

Verdict verdict_for(double depth, double tol) {
  if (depth < -tol) return Verdict::NonEmpty;
  if (depth > tol) return Verdict::Empty;
  return Verdict::Tangent;
}

PiercingResult finish(Point best, double depth, double tol, std::size_t iterations) {
  PiercingResult r;
  r.deepest = best;
  r.depth = depth;
  r.verdict = verdict_for(depth, tol);
  if (r.verdict != Verdict::Empty) r.witness = best;
  r.iterations = iterations;
  return r;
}

// Points x with |x - c_i| = r_i + t for all three disks.
std::vector<Point> equal_excess_points(const Disk& d1, const Disk& d2, const Disk& d3) {
  // Work relative to the first center.
  Point c2 = d2.center - d1.center;
  Point c3 = d3.center - d1.center;
  double r1 = d1.radius, r2 = d2.radius, r3 = d3.radius;

  // Subtracting the first equation from the others leaves
  //   2 c_i . x = |c_i|^2 - (r_i^2 - r1^2) - 2 t (r_i - r1),   i = 2, 3.
  double det = 4 * cross(c2, c3);
  double scale = std::max({norm(c2), norm(c3), 1e-300});
  if (std::abs(det) <= 1e-12 * scale * scale) return {};

  auto solve = [&](double b2, double b3) {
    // [2 c2; 2 c3] x = (b2, b3)
    return Point{(b2 * 2 * c3.y - b3 * 2 * c2.y) / det, (2 * c2.x * b3 - 2 * c3.x * b2) / det};
  };
  Point u = solve(dot(c2, c2) - (r2 * r2 - r1 * r1), dot(c3, c3) - (r3 * r3 - r1 * r1));
  Point v = solve(-2 * (r2 - r1), -2 * (r3 - r1));

  // |u + t v|^2 = (r1 + t)^2
  double qa = dot(v, v) - 1;
  double qb = 2 * (dot(u, v) - r1);
  double qc = dot(u, u) - r1 * r1;

  std::vector<double> ts;
  if (std::abs(qa) <= 1e-14) {
    if (qb != 0) ts.push_back(-qc / qb);
  } else {
    double disc = qb * qb - 4 * qa * qc;
    if (disc < 0 && disc > -1e-12 * (qb * qb + std::abs(4 * qa * qc))) disc = 0;
    if (disc >= 0) {
      double sq = std::sqrt(disc);
      // Numerically stable pair of roots.
      double q = -0.5 * (qb + (qb >= 0 ? sq : -sq));
      if (q != 0) {
        ts.push_back(q / qa);
        ts.push_back(qc / q);
      } else {
        ts.push_back(0);
      }
    }
  }

  std::vector<Point> out;
  double rmin = std::min({r1, r2, r3});
  for (double t : ts) {
    if (!std::isfinite(t) || rmin + t < -1e-9 * (1 + scale)) continue;
    out.push_back(d1.center + u + t * v);
  }
  return out;
}

// Candidate minimizers of the depth for one to three disks.
std::vector<Point> kkt_candidates(std::span<const Disk> disks) {
  std::vector<Point> out;
  for (const Disk& d : disks) out.push_back(d.center);
  for (std::size_t i = 0; i < disks.size(); ++i) {
    for (std::size_t j = i + 1; j < disks.size(); ++j) {
      Point dir = disks[j].center - disks[i].center;
      double len = norm(dir);
      if (len == 0) continue;
      double s = std::clamp((len + disks[i].radius - disks[j].radius) / 2, 0.0, len);
      out.push_back(disks[i].center + (s / len) * dir);
    }
  }
  if (disks.size() == 3) {
    for (Point p : equal_excess_points(disks[0], disks[1], disks[2])) out.push_back(p);
  }
  return out;
}

// Lowest depth wins; near-equal depths fall back to lowest x, then lowest y.
bool better_candidate(double depth, Point p, double best_depth, Point best, double eps) {
  if (depth < best_depth - eps) return true;
  if (depth > best_depth + eps) return false;
  if (p.x != best.x) return p.x < best.x;
  return p.y < best.y;
}

struct Minimax {
  Point point;
  double depth;
};

Minimax exact_minimax(std::span<const Disk> disks) {
  const double tol = pierce_tolerance(disk_scale(disks));

  std::vector<Disk> kept;
  std::vector<bool> dropped(disks.size(), false);
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (dropped[i]) continue;
    for (std::size_t j = 0; j < disks.size(); ++j) {
      if (i == j || dropped[j]) continue;
      // D_i inside D_j: D_j never determines the depth.
      if (distance(disks[i].center, disks[j].center) <= disks[j].radius - disks[i].radius + tol) {
        dropped[j] = true;
      }
    }
  }
  for (std::size_t i = 0; i < disks.size(); ++i) {
    if (!dropped[i]) kept.push_back(disks[i]);
  }

  const double eps = 1e-15 * (1 + disk_scale(disks));
  Minimax best{disks.front().center, std::numeric_limits<double>::infinity()};
  bool first = true;
  for (Point p : kkt_candidates(kept)) {
    double d = depth_at(disks, p);
    if (first || better_candidate(d, p, best.depth, best.point, eps)) {
      best = {p, d};
      first = false;
    }
  }
  return best;
}

}  // namespace

PairOverlap pairwise_intersect(const Disk& d1, const Disk& d2) {
  std::array<Disk, 2> pair{d1, d2};
  double tol = pierce_tolerance(disk_scale(pair));
  double gap = distance(d1.center, d2.center) - d1.radius - d2.radius;
  if (gap < -tol) return PairOverlap::Overlap;
  if (gap > tol) return PairOverlap::Disjoint;
  return PairOverlap::Tangent;
}

PiercingResult small_family_exact(std::span<const Disk> disks) {
  if (disks.empty() || disks.size() > 3) {
    throw InvalidParameter("exact piercing handles one to three disks");
  }
  Minimax m = exact_minimax(disks);
  return finish(m.point, m.depth, pierce_tolerance(disk_scale(disks)), 0);
}

PiercingResult triple_intersect_exact(const Disk& d1, const Disk& d2, const Disk& d3) {
  std::array<Disk, 3> family{d1, d2, d3};
  return small_family_exact(family);
}

namespace {

// Best polished point over all subsets of size <= 3 of `active`, together
// with the largest subset depth (a lower bound on the optimum).
struct Polish {
  Point point;
  double depth = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
};

Polish polish_over(std::span<const Disk> disks, const std::vector<std::size_t>& active) {
  Polish out;
  const double eps = 1e-15 * (1 + disk_scale(disks));
  auto consider = [&](std::vector<Disk> subset) {
    Minimax local = exact_minimax(subset);
    out.lower_bound = std::max(out.lower_bound, local.depth);
    double global = depth_at(disks, local.point);
    if (better_candidate(global, local.point, out.depth, out.point, eps)) {
      out.point = local.point;
      out.depth = global;
    }
  };
  const std::size_t k = active.size();
  for (std::size_t a = 0; a < k; ++a) {
    consider({disks[active[a]]});
    for (std::size_t b = a + 1; b < k; ++b) {
      consider({disks[active[a]], disks[active[b]]});
      for (std::size_t c = b + 1; c < k; ++c) {
        consider({disks[active[a]], disks[active[b]], disks[active[c]]});
      }
    }
  }
  return out;
}

}  // namespace

PiercingResult pierce_disks(std::span<const Disk> disks) {
  if (disks.empty()) throw InvalidParameter("pierce_disks needs at least one disk");
  const double scale = disk_scale(disks);
  const double tol = pierce_tolerance(scale);

  Point x{0, 0};
  for (const Disk& d : disks) x = x + d.center;
  x = x / static_cast<double>(disks.size());

  double extent = 0;
  for (const Disk& d : disks) extent = std::max(extent, distance(x, d.center) + d.radius);
  double step = std::max(extent, 1e-300);
  const double min_move = 1e-12 * std::max(scale, 1e-300);
  constexpr double kDecay = 0.995;
  constexpr std::size_t kMaxIterations = 1'000'000;

  Point best = x;
  double best_depth = depth_at(disks, x);
  std::size_t iterations = 0;
  while (iterations < kMaxIterations && step >= min_move) {
    ++iterations;
    std::size_t arg = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < disks.size(); ++i) {
      double v = distance(x, disks[i].center) - disks[i].radius;
      if (v > worst) {
        worst = v;
        arg = i;
      }
    }
    if (worst < best_depth) {
      best_depth = worst;
      best = x;
    }
    Point g = x - disks[arg].center;
    double gn = norm(g);
    if (gn == 0) break;  // x is the center of the only active disk
    x = x - (step / gn) * g;
    step *= kDecay;
  }
  double final_depth = depth_at(disks, x);
  if (final_depth < best_depth) {
    best_depth = final_depth;
    best = x;
  }

  // Disks within a band of the numeric optimum; everything for small families.
  std::vector<std::size_t> active;
  std::vector<std::size_t> all(disks.size());
  for (std::size_t i = 0; i < disks.size(); ++i) all[i] = i;
  if (disks.size() <= 3) {
    active = all;
  } else {
    const double band = 1e-4 * (1 + extent);
    for (std::size_t i = 0; i < disks.size(); ++i) {
      if (distance(best, disks[i].center) - disks[i].radius >= best_depth - band) active.push_back(i);
    }
  }

  Polish polished = polish_over(disks, active);
  bool certified = polished.depth <= polished.lower_bound + tol;
  if (!certified && active.size() < disks.size() && disks.size() <= 40) {
    polished = polish_over(disks, all);
    certified = polished.depth <= polished.lower_bound + tol;
  }
  if (certified || polished.depth < best_depth) {
    best = polished.point;
    best_depth = polished.depth;
  }
  return finish(best, best_depth, tol, iterations);
}

std::vector<EllipseRegion> ellipses_of(std::span<const Segment> pairs, double factor) {
  std::vector<EllipseRegion> out;
  out.reserve(pairs.size());
  for (const Segment& s : pairs) out.push_back({s.p, s.q, factor * s.length()});
  return out;
}

std::vector<Disk> disks_of(std::span<const Segment> pairs) {
  std::vector<Disk> out;
  out.reserve(pairs.size());
  for (const Segment& s : pairs) out.push_back(diametral_disk(s));
  return out;
}

namespace {

double ellipse_excess(const EllipseRegion& e, Point x) {
  return distance(x, e.focus_a) + distance(x, e.focus_b) - 2 * e.semimajor;
}

double ellipse_depth(std::span<const EllipseRegion> regions, Point x) {
  double worst = -std::numeric_limits<double>::infinity();
  for (const EllipseRegion& e : regions) worst = std::max(worst, ellipse_excess(e, x));
  return worst;
}

Point unit_or_zero(Point v) {
  double n = norm(v);
  return n == 0 ? Point{0, 0} : v / n;
}

}  // namespace

PiercingResult pierce_ellipses(std::span<const EllipseRegion> regions) {
  if (regions.empty()) throw InvalidParameter("pierce_ellipses needs at least one region");
  double scale = 0;
  for (const EllipseRegion& e : regions) {
    scale = std::max({scale, coordinate_scale({e.focus_a, e.focus_b}), e.semimajor});
  }
  const double tol = pierce_tolerance(scale);

  if (regions.size() == 1) {
    Point mid = midpoint(regions[0].focus_a, regions[0].focus_b);
    return finish(mid, ellipse_excess(regions[0], mid), tol, 0);
  }

  Point c{0, 0};
  for (const EllipseRegion& e : regions) c = c + midpoint(e.focus_a, e.focus_b);
  c = c / static_cast<double>(regions.size());
  double reach = 0;
  double smax = 0;
  for (const EllipseRegion& e : regions) {
    reach = std::max({reach, distance(c, e.focus_a), distance(c, e.focus_b)});
    smax = std::max(smax, e.semimajor);
  }
  // The minimizer lies within 2 * (reach + smax) of c.
  double radius = 2 * (reach + smax) + 1e-12 * (1 + scale);

  // Shape matrix P (symmetric), ellipsoid {x : (x - c)^T P^{-1} (x - c) <= 1}.
  double p11 = radius * radius, p12 = 0, p22 = radius * radius;
  Point best = c;
  double best_depth = ellipse_depth(regions, c);
  const double stop = 1e-13 * (1 + scale);
  constexpr std::size_t kMaxIterations = 20'000;
  std::size_t iterations = 0;
  while (iterations < kMaxIterations) {
    ++iterations;
    std::size_t arg = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < regions.size(); ++i) {
      double v = ellipse_excess(regions[i], c);
      if (v > worst) {
        worst = v;
        arg = i;
      }
    }
    if (worst < best_depth) {
      best_depth = worst;
      best = c;
    }
    Point g = unit_or_zero(c - regions[arg].focus_a) + unit_or_zero(c - regions[arg].focus_b);
    Point pg{p11 * g.x + p12 * g.y, p12 * g.x + p22 * g.y};
    double gpg = dot(g, pg);
    if (!(gpg > 0)) break;
    Point gt = pg / std::sqrt(gpg);
    c = c - gt / 3.0;
    p11 = 4.0 / 3.0 * (p11 - 2.0 / 3.0 * gt.x * gt.x);
    p12 = 4.0 / 3.0 * (p12 - 2.0 / 3.0 * gt.x * gt.y);
    p22 = 4.0 / 3.0 * (p22 - 2.0 / 3.0 * gt.y * gt.y);
    double trace = p11 + p22;
    if (!(trace > 0) || std::sqrt(trace) < stop) break;
  }
  double last = ellipse_depth(regions, c);
  if (last < best_depth) {
    best_depth = last;
    best = c;
  }
  return finish(best, best_depth, tol, iterations);
}

StretchReport stretch_report(std::span<const Segment> pairs, Point o, double bound) {
  StretchReport r;
  r.bound = bound;
  r.max_ratio = 1;
  double scale = coordinate_scale({o});
  for (const Segment& s : pairs) scale = std::max(scale, coordinate_scale({s.p, s.q}));
  const double tol = pierce_tolerance(scale);

  r.worst_segment_excess = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const Segment& s = pairs[i];
    double len = s.length();
    if (len == 0) {
      r.ratios.push_back(std::nullopt);
      r.zero_length_pairs.push_back(i);
    } else {
      double ratio = (distance(s.p, o) + distance(s.q, o)) / len;
      r.ratios.push_back(ratio);
      r.max_ratio = std::max(r.max_ratio, ratio);
    }
    double d = distance_to_segment(o, s);
    r.segment_distance.push_back(d);
    r.worst_segment_excess = std::max(r.worst_segment_excess, d - len / 2);
  }
  r.holds = r.max_ratio <= bound + pierce_tolerance(0);
  r.segment_distance_holds = pairs.empty() || r.worst_segment_excess <= tol;
  if (pairs.empty()) r.worst_segment_excess = 0;
  return r;
}

Point midpoint_shortest_edge(std::span<const Segment> pairs) {
  if (pairs.empty()) throw InvalidParameter("midpoint_shortest_edge needs at least one pair");
  std::size_t pick = 0;
  double shortest = pairs[0].length();
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    double len = pairs[i].length();
    if (len < shortest) {
      shortest = len;
      pick = i;
    }
  }
  return midpoint(pairs[pick].p, pairs[pick].q);
}

}  // namespace mmp
