#include "mmp/matching.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

#include "mmp/errors.hpp"
#include "mmp/tolerance.hpp"

namespace mmp {

const char* to_string(Color c) { return c == Color::Red ? "red" : "blue"; }

PointSet PointSet::uncolored(std::vector<Point> pts) {
  PointSet ps;
  ps.points = std::move(pts);
  return ps;
}

PointSet PointSet::bichromatic(const std::vector<Point>& red, const std::vector<Point>& blue) {
  PointSet ps;
  ps.points = red;
  ps.points.insert(ps.points.end(), blue.begin(), blue.end());
  std::vector<Color> colors(red.size(), Color::Red);
  colors.insert(colors.end(), blue.size(), Color::Blue);
  ps.colors = std::move(colors);
  return ps;
}

void PointSet::validate() const {
  if (points.empty() || points.size() % 2 != 0) {
    throw InvalidParameter("point set must hold an even, positive number of points (got " +
                           std::to_string(points.size()) + ")");
  }
  for (const Point& p : points) {
    if (!is_finite(p)) throw InvalidParameter("point coordinates must be finite");
  }
  if (colors) {
    if (colors->size() != points.size()) throw InvalidParameter("one color per point required");
    auto reds = std::ranges::count(*colors, Color::Red);
    if (static_cast<std::size_t>(reds) * 2 != points.size()) {
      throw InvalidParameter("colored point set needs as many red as blue points");
    }
  }
}

namespace {

void check_pairs(const PointSet& ps, const std::vector<IndexPair>& pairs) {
  if (pairs.size() * 2 != ps.size()) {
    throw InvalidMatching("matching has " + std::to_string(pairs.size()) + " pairs for " +
                          std::to_string(ps.size()) + " points");
  }
  std::vector<bool> seen(ps.size(), false);
  for (auto [i, j] : pairs) {
    if (i >= ps.size() || j >= ps.size()) throw InvalidMatching("pair index out of range");
    if (i == j || seen[i] || seen[j]) throw InvalidMatching("pairs do not partition the point set");
    seen[i] = seen[j] = true;
    if (ps.colored() && (*ps.colors)[i] == (*ps.colors)[j]) {
      throw InvalidMatching("pair (" + std::to_string(i) + "," + std::to_string(j) +
                            ") joins two points of the same color");
    }
  }
}

std::vector<IndexPair> canonical(std::vector<IndexPair> pairs) {
  for (auto& [i, j] : pairs) {
    if (i > j) std::swap(i, j);
  }
  std::ranges::sort(pairs);
  return pairs;
}

double sum_lengths(const PointSet& ps, const std::vector<IndexPair>& pairs) {
  double total = 0;
  for (auto [i, j] : pairs) total += distance(ps[i], ps[j]);
  return total;
}

using DistanceTable = std::vector<std::vector<double>>;

DistanceTable distance_table(const PointSet& ps) {
  DistanceTable d(ps.size(), std::vector<double>(ps.size(), 0.0));
  for (std::size_t i = 0; i < ps.size(); ++i) {
    for (std::size_t j = i + 1; j < ps.size(); ++j) d[i][j] = d[j][i] = distance(ps[i], ps[j]);
  }
  return d;
}

// Visits every perfect matching of an uncolored set in lexicographic order of
// the (sorted) pair list. The callback receives the pair list and its cost
// accumulated in ascending pair order.
template <typename Visit>
void enumerate_uncolored(const DistanceTable& d, Visit&& visit) {
  const std::size_t n = d.size();
  std::vector<bool> used(n, false);
  std::vector<IndexPair> stack;
  stack.reserve(n / 2);
  auto rec = [&](auto&& self, double acc) -> void {
    std::size_t i = 0;
    while (i < n && used[i]) ++i;
    if (i == n) {
      visit(stack, acc);
      return;
    }
    used[i] = true;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      used[j] = true;
      stack.emplace_back(i, j);
      self(self, acc + d[i][j]);
      stack.pop_back();
      used[j] = false;
    }
    used[i] = false;
  };
  rec(rec, 0.0);
}

// Visits every red-blue perfect matching, in permutation order of the blue
// partners of the reds (reds taken by ascending index).
template <typename Visit>
void enumerate_colored(const PointSet& ps, const DistanceTable& d, Visit&& visit) {
  std::vector<std::size_t> reds;
  std::vector<std::size_t> blues;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    ((*ps.colors)[i] == Color::Red ? reds : blues).push_back(i);
  }
  std::vector<std::size_t> perm(blues.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<IndexPair> pairs(reds.size());
  do {
    for (std::size_t k = 0; k < reds.size(); ++k) {
      std::size_t r = reds[k];
      std::size_t b = blues[perm[k]];
      pairs[k] = {std::min(r, b), std::max(r, b)};
    }
    std::vector<IndexPair> sorted = pairs;
    std::ranges::sort(sorted);
    double acc = 0;
    for (auto [i, j] : sorted) acc += d[i][j];
    visit(sorted, acc);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

template <typename Visit>
void enumerate_all(const PointSet& ps, const DistanceTable& d, Visit&& visit) {
  if (ps.colored()) {
    enumerate_colored(ps, d, visit);
  } else {
    enumerate_uncolored(d, visit);
  }
}

}  // namespace

Matching make_matching(const PointSet& ps, std::vector<IndexPair> pairs) {
  Matching m;
  m.pairs = canonical(std::move(pairs));
  check_pairs(ps, m.pairs);
  m.cost = sum_lengths(ps, m.pairs);
  return m;
}

double cost(const PointSet& ps, const Matching& m) {
  check_pairs(ps, m.pairs);
  return sum_lengths(ps, canonical(m.pairs));
}

std::vector<Segment> segments_of(const PointSet& ps, const Matching& m) {
  std::vector<Segment> out;
  out.reserve(m.pairs.size());
  for (auto [i, j] : m.pairs) out.push_back({ps[i], ps[j]});
  return out;
}

BruteForceResult max_sum_bruteforce(const PointSet& ps) {
  ps.validate();
  if (ps.size() > kBruteForceMaxPoints) {
    throw SizeLimitExceeded("brute-force matching is capped at " +
                            std::to_string(kBruteForceMaxPoints) + " points (got " +
                            std::to_string(ps.size()) + ")");
  }
  const DistanceTable d = distance_table(ps);

  double best = -std::numeric_limits<double>::infinity();
  std::size_t enumerated = 0;
  enumerate_all(ps, d, [&](const std::vector<IndexPair>&, double c) {
    ++enumerated;
    best = std::max(best, c);
  });

  const double band = cost_tolerance(best);
  std::size_t ties = 0;
  std::vector<IndexPair> chosen;
  enumerate_all(ps, d, [&](const std::vector<IndexPair>& pairs, double c) {
    if (c < best - band) return;
    ++ties;
    if (chosen.empty() || pairs < chosen) chosen = pairs;
  });

  BruteForceResult result;
  result.matching = make_matching(ps, std::move(chosen));
  result.is_unique = ties == 1;
  result.enumerated = enumerated;
  return result;
}

namespace {

struct Rematch {
  IndexPair a;
  IndexPair b;
};

// Exchanges allowed between pairs (i, j) and (k, l): one when colored (keep
// every pair bichromatic), two when uncolored.
std::vector<Rematch> rematches(const PointSet& ps, IndexPair first, IndexPair second) {
  auto [i, j] = first;
  auto [k, l] = second;
  if (ps.colored()) {
    const auto& col = *ps.colors;
    std::size_t red1 = col[i] == Color::Red ? i : j;
    std::size_t blue1 = red1 == i ? j : i;
    std::size_t red2 = col[k] == Color::Red ? k : l;
    std::size_t blue2 = red2 == k ? l : k;
    return {{{red1, blue2}, {red2, blue1}}};
  }
  return {{{i, k}, {j, l}}, {{i, l}, {j, k}}};
}

IndexPair ordered(IndexPair p) { return p.first < p.second ? p : IndexPair{p.second, p.first}; }

}  // namespace

std::vector<TwoOptViolation> verify_2opt_maximality(const PointSet& ps, const Matching& m) {
  check_pairs(ps, m.pairs);
  const double total = sum_lengths(ps, m.pairs);
  const double band = cost_tolerance(total);
  auto len = [&](IndexPair p) { return distance(ps[p.first], ps[p.second]); };

  std::vector<TwoOptViolation> out;
  for (std::size_t s = 0; s < m.pairs.size(); ++s) {
    for (std::size_t t = s + 1; t < m.pairs.size(); ++t) {
      double current = len(m.pairs[s]) + len(m.pairs[t]);
      for (const Rematch& r : rematches(ps, m.pairs[s], m.pairs[t])) {
        double gain = len(r.a) + len(r.b) - current;
        if (gain > band) out.push_back({s, t, ordered(r.a), ordered(r.b), gain});
      }
    }
  }
  return out;
}

HeuristicResult max_sum_local_search(const PointSet& ps) {
  ps.validate();
  const std::size_t n = ps.size();
  std::vector<bool> used(n, false);
  std::vector<IndexPair> pairs;
  for (std::size_t round = 0; round < n / 2; ++round) {
    double best = -1;
    IndexPair pick{0, 0};
    for (std::size_t i = 0; i < n; ++i) {
      if (used[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        if (ps.colored() && (*ps.colors)[i] == (*ps.colors)[j]) continue;
        double dij = distance(ps[i], ps[j]);
        if (dij > best) {
          best = dij;
          pick = {i, j};
        }
      }
    }
    used[pick.first] = used[pick.second] = true;
    pairs.push_back(pick);
  }

  return improve_2opt(ps, make_matching(ps, pairs));
}

HeuristicResult improve_2opt(const PointSet& ps, Matching start) {
  HeuristicResult result;
  result.matching = make_matching(ps, std::move(start.pairs));
  // Each accepted exchange raises the cost by more than the tie band.
  const std::size_t max_rounds = 100 * ps.size() * ps.size();
  while (result.improvement_rounds < max_rounds) {
    auto violations = verify_2opt_maximality(ps, result.matching);
    if (violations.empty()) break;
    auto best = std::ranges::max_element(violations, {}, &TwoOptViolation::gain);
    std::vector<IndexPair> next = result.matching.pairs;
    next[best->first_pair] = best->replacement_a;
    next[best->second_pair] = best->replacement_b;
    result.matching = make_matching(ps, std::move(next));
    ++result.improvement_rounds;
  }
  return result;
}

}  // namespace mmp
