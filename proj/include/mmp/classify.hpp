#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "mmp/geometry.hpp"
#include "mmp/matching.hpp"

namespace mmp {

// Relation between two matched segments. NotPointing covers disjoint,
// non-convex configurations where the interior endpoint misses the other
// segment's disk; like ConvexDisjoint it cannot come from a max-sum matching.
enum class PairRelation { Cross, FirstPointsToSecond, SecondPointsToFirst, NotPointing, ConvexDisjoint };

enum class CaseLabel { A, B, C, D, E, F, G, H, I, J, NotMaxSumCompatible };

// Coarse labels that do not depend on the C/D and E/F/G splits.
enum class CaseGroup { A, B, CD, EFG, H, I, J, None };

const char* to_string(PairRelation r);
const char* to_string(CaseLabel c);
const char* to_string(CaseGroup g);
CaseGroup group_of(CaseLabel c);
bool is_easy_case(CaseLabel c);  // A..G

struct RelationDetail {
  PairRelation relation = PairRelation::ConvexDisjoint;
  // For a pointing relation: the head of the pointing segment, i.e. its
  // endpoint inside the triangle formed with the other segment.
  std::optional<Point> head;
  // For Cross: the single crossing point, when there is one.
  std::optional<Point> crossing;
  // Some predicate evaluated within tolerance of its decision boundary.
  bool fragile = false;
};

RelationDetail relate(const Segment& s1, const Segment& s2);
PairRelation pair_relation(const Segment& s1, const Segment& s2);

struct Classification {
  CaseLabel label = CaseLabel::NotMaxSumCompatible;
  CaseGroup group = CaseGroup::None;
  // Relations of the segment pairs (0,1), (0,2), (1,2).
  std::array<PairRelation, 3> relations{};
  std::size_t crossings = 0;
  // Segment indices in decision-table order:
  //   A: input order
  //   B, E: the non-crossing segment, then the crossing pair
  //   C: the segment crossing both, the pointing one, the pointed-at one
  //   D: the pointed-at segment, then the crossing pair
  //   I: the middle of the chain, its target, its source
  //   F, G, J: source, middle, sink of the transitive pointing order
  //   H: a cycle starting at segment 0
  std::array<std::size_t, 3> roles{0, 1, 2};
  bool fragile = false;
};

// Case of three segments, independent of the segment order and orientation.
Classification classify_three(const std::array<Segment, 3>& segments);
// Throws InvalidParameter unless m has exactly three pairs.
Classification classify_three(const PointSet& ps, const Matching& m);

// Constructive common point of the three diametral disks for cases A..G.
// Throws InvalidParameter for other labels and ConstructionFailure when no
// candidate lies in all three disks.
Point witness_easy_case(const std::array<Segment, 3>& segments, const Classification& c);
Point witness_easy_case(const PointSet& ps, const Matching& m, const Classification& c);

}  // namespace mmp
