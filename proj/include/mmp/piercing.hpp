#pragma once

#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "mmp/geometry.hpp"

namespace mmp {

// Stretch constants: conjectured optimum, disk witness, midpoint of the
// shortest edge (refined), midpoint of the shortest edge (classic).
inline constexpr double kFingerhutBound = 2.0 / std::numbers::sqrt3;
inline constexpr double kSqrt2Bound = std::numbers::sqrt2;
inline constexpr double kSqrt5Bound = 2.236067977499789696409173668731276235;
inline constexpr double kEppsteinBound = 2.5;

enum class Verdict { NonEmpty, Tangent, Empty };
enum class PairOverlap { Overlap, Tangent, Disjoint };

const char* to_string(Verdict v);
const char* to_string(PairOverlap p);

// Outcome of minimizing depth(x) = max_i (|x - c_i| - r_i) over the plane.
struct PiercingResult {
  Verdict verdict = Verdict::Empty;
  // Present for NonEmpty and Tangent.
  std::optional<Point> witness;
  // The minimizer, reported even when the family is not pierced.
  Point deepest;
  double depth = 0;
  std::size_t iterations = 0;
};

// max_i (|x - c_i| - r_i)
double depth_at(std::span<const Disk> disks, Point x);

PairOverlap pairwise_intersect(const Disk& d1, const Disk& d2);

// Closed-form minimax for three disks: drops any disk that contains another,
// then takes the best of the Karush-Kuhn-Tucker candidates (centers,
// two-disk balance points on the center segments, and the additively
// weighted equidistant points of the triple).
PiercingResult triple_intersect_exact(const Disk& d1, const Disk& d2, const Disk& d3);

// Same as above for one to three disks.
PiercingResult small_family_exact(std::span<const Disk> disks);

// Subgradient descent with geometric step decay from the centroid of the
// centers, then exact polishing on the near-active disks. The polished point
// is accepted only with a lower-bound certificate from the triple solver.
PiercingResult pierce_disks(std::span<const Disk> disks);

// Semimajor = factor * |a - b| for each segment.
std::vector<EllipseRegion> ellipses_of(std::span<const Segment> pairs, double factor);
std::vector<Disk> disks_of(std::span<const Segment> pairs);

// Minimizes max_i (focal sum_i(x) - 2 * semimajor_i) with the central-cut
// ellipsoid method; a single region reports the midpoint of its foci.
PiercingResult pierce_ellipses(std::span<const EllipseRegion> regions);

struct StretchReport {
  // (|a_i - o| + |b_i - o|) / |a_i - b_i|; empty for zero-length pairs.
  std::vector<std::optional<double>> ratios;
  std::vector<std::size_t> zero_length_pairs;
  double max_ratio = 1;
  double bound = 0;
  bool holds = false;
  // Distance from o to each segment against half its length.
  std::vector<double> segment_distance;
  double worst_segment_excess = 0;  // max_i (d(o, a_i b_i) - |a_i - b_i| / 2)
  bool segment_distance_holds = false;
};

StretchReport stretch_report(std::span<const Segment> pairs, Point o, double bound);

// Midpoint of a shortest pair; ties go to the lowest index.
Point midpoint_shortest_edge(std::span<const Segment> pairs);

}  // namespace mmp
