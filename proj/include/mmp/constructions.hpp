#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>

#include "mmp/matching.hpp"
#include "mmp/piercing.hpp"

namespace mmp {

// Red-blue instance whose max-sum matching has pairwise intersecting disks
// but an empty common intersection.
//
// Point order: reds a, b, c, a_1..a_{n-3}, then blues a', b', c',
// a'_1..a'_{n-3}. So a = 0, b = 1, c = 2, a' = n, b' = n+1, c' = n+2.
struct CounterexampleInstance {
  std::string name;
  PointSet point_set;
  double epsilon = 0;
  std::size_t n = 0;
  Matching claimed_optimum;
  // Indices into claimed_optimum.pairs: the pairs of a, b and c'.
  std::array<std::size_t, 3> empty_triple{};
  // Depth of the empty triple as computed at construction.
  double empty_depth = 0;
  // Set when the optimum was confirmed by exhaustive enumeration.
  bool oracle_checked = false;
};

// Exclusive upper bound on epsilon for the three-pair family: (5 - sqrt10 - sqrt3)/4.
double theorem2_threshold();
// Exclusive upper bound on epsilon for n >= 4 pairs: 1/(10(2n-1)).
double theorem3_threshold(std::size_t n);

// Used when the caller passes no epsilon: 0.9 of the threshold.
double theorem2_default_epsilon();
double theorem3_default_epsilon(std::size_t n);

// Throws InvalidParameter for epsilon outside (0, threshold) and
// ConstructionFailure if any construction-time check fails.
CounterexampleInstance theorem2_instance(double epsilon);
CounterexampleInstance theorem3_instance(std::size_t n, double epsilon);

// Lower bound on the cost of any matching pairing c' with c or some a_i.
double m1_lower_bound(std::size_t n, double epsilon);
// Upper bound on the cost of any matching pairing c' with a or b.
double m2_upper_bound(std::size_t n, double epsilon);

// Costs of the alternative three-pair matchings of the n = 3 instance.
struct Theorem2Costs {
  double optimum = 0;
  double rotated_ab = 0;  // {(a,b'), (b,c'), (c,a')}
  double rotated_ac = 0;  // {(a,c'), (b,a'), (c,b')}
  double swap_a = 0;      // {(a,c'), (b,b'), (c,a')}
  double swap_b = 0;      // {(a,a'), (b,c'), (c,b')}
};
Theorem2Costs theorem2_costs(const CounterexampleInstance& inst);

// x-range covered by the intersection of two disks; nullopt when disjoint.
struct XExtent {
  double min_x = 0;
  double max_x = 0;
};
std::optional<XExtent> lens_x_extent(const Disk& d1, const Disk& d2);

// The lens of a's disk with c''s disk lies in x < 0 and the lens of b's disk
// with c''s disk in x > 0.
bool emptiness_separated(const CounterexampleInstance& inst);

// Six uncolored points, two at each vertex of (0,0), (side,0), (side/2, side*sqrt3/2).
PointSet equilateral_tightness(double side);

// {a, b, c, z, z, z}. Requires z strictly inside triangle abc; the matching
// {(a,z),(b,z),(c,z)} is checked to be max-sum.
PointSet singleton_disk_instance(Point a, Point b, Point c, Point z);

// Stable fixture names.
std::string theorem2_fixture_name(double epsilon);
std::string theorem3_fixture_name(std::size_t n);

}  // namespace mmp
