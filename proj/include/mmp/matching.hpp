#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mmp/geometry.hpp"

namespace mmp {

enum class Color { Red, Blue };

const char* to_string(Color c);

// 2n planar points, optionally split into n red and n blue. Coincident points
// are allowed and stay distinct by index.
struct PointSet {
  std::vector<Point> points;
  std::optional<std::vector<Color>> colors;

  static PointSet uncolored(std::vector<Point> pts);
  // Reds take indices [0, n), blues [n, 2n).
  static PointSet bichromatic(const std::vector<Point>& red, const std::vector<Point>& blue);

  bool colored() const { return colors.has_value(); }
  std::size_t size() const { return points.size(); }
  std::size_t pair_count() const { return points.size() / 2; }
  const Point& operator[](std::size_t i) const { return points[i]; }

  // Throws InvalidParameter unless the cardinality, finiteness and color
  // balance invariants hold.
  void validate() const;
};

// Index pair stored as (smaller, larger).
using IndexPair = std::pair<std::size_t, std::size_t>;

struct Matching {
  // Sorted ascending; together the pairs partition {0, ..., 2n-1}.
  std::vector<IndexPair> pairs;
  double cost = 0;
};

// Canonicalizes the pairs, checks the partition and color constraints
// (InvalidMatching) and fills in the cost.
Matching make_matching(const PointSet& ps, std::vector<IndexPair> pairs);

// Sum of pair lengths in ascending pair order. Throws InvalidMatching.
double cost(const PointSet& ps, const Matching& m);

// Matched pairs as segments oriented from the lower to the higher index.
std::vector<Segment> segments_of(const PointSet& ps, const Matching& m);

// Enumeration cap: at most 16 points (n <= 8 pairs) in either mode.
inline constexpr std::size_t kBruteForceMaxPoints = 16;

struct BruteForceResult {
  Matching matching;
  // No other matching lies within the cost tie band of the optimum.
  bool is_unique = false;
  std::size_t enumerated = 0;
};

// Exhaustive max-sum matching: (2n-1)!! candidates when uncolored, n! when
// colored. Among optima within the tie band, returns the lexicographically
// smallest pair list. Throws SizeLimitExceeded above the cap.
BruteForceResult max_sum_bruteforce(const PointSet& ps);

struct TwoOptViolation {
  std::size_t first_pair = 0;   // indices into Matching::pairs
  std::size_t second_pair = 0;
  IndexPair replacement_a;      // the improving rematch
  IndexPair replacement_b;
  double gain = 0;
};

// Every pair-of-pairs exchange that raises the cost by more than the tie
// band. Empty is necessary but not sufficient for max-sum.
std::vector<TwoOptViolation> verify_2opt_maximality(const PointSet& ps, const Matching& m);

struct HeuristicResult {
  Matching matching;
  std::size_t improvement_rounds = 0;
  // Always false: local search gives no optimality guarantee.
  bool exact = false;
};

// Applies the best improving 2-opt exchange until none is left.
HeuristicResult improve_2opt(const PointSet& ps, Matching start);

// Farthest-pair greedy start followed by improve_2opt.
HeuristicResult max_sum_local_search(const PointSet& ps);

}  // namespace mmp
