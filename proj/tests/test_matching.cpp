#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "doctest.h"
#include "mmp/errors.hpp"
#include "mmp/matching.hpp"
#include "mmp/random.hpp"

using namespace mmp;

namespace {

// Independent oracle: every perfect matching via permutations of the index
// list, canonicalized and deduplicated.
std::set<std::vector<IndexPair>> all_matchings(const PointSet& ps) {
  std::vector<std::size_t> idx(ps.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::set<std::vector<IndexPair>> out;
  do {
    std::vector<IndexPair> pairs;
    bool ok = true;
    for (std::size_t k = 0; k < idx.size(); k += 2) {
      std::size_t i = std::min(idx[k], idx[k + 1]);
      std::size_t j = std::max(idx[k], idx[k + 1]);
      if (ps.colored() && (*ps.colors)[i] == (*ps.colors)[j]) ok = false;
      pairs.emplace_back(i, j);
    }
    if (!ok) continue;
    std::ranges::sort(pairs);
    out.insert(pairs);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

double pair_cost(const PointSet& ps, const std::vector<IndexPair>& pairs) {
  double c = 0;
  for (auto [i, j] : pairs) c += distance(ps[i], ps[j]);
  return c;
}

PointSet random_set(Rng& rng, std::size_t n, bool colored) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < 2 * n; ++i) pts.push_back(rng.in_square());
  if (!colored) return PointSet::uncolored(pts);
  return PointSet::bichromatic({pts.begin(), pts.begin() + n}, {pts.begin() + n, pts.end()});
}

constexpr double kSqrt3 = std::numbers::sqrt3;

// Red a, b, c and blue a', b', c' of the red-blue counterexample, built from
// the stated coordinates.
PointSet counterexample_points(double eps) {
  Point a{-1, 0}, b{1, 0}, c{0, kSqrt3}, cp{0, 3};
  Point ap{eps / 2, kSqrt3 * (1 - eps / 2)};
  Point bp{-eps / 2, kSqrt3 * (1 - eps / 2)};
  return PointSet::bichromatic({a, b, c}, {ap, bp, cp});
}

}  // namespace

TEST_CASE("cost of simple matchings") {
  auto coincident = PointSet::uncolored({{0.3, 0.3}, {0.3, 0.3}});
  CHECK(cost(coincident, make_matching(coincident, {{0, 1}})) == 0);

  auto square = PointSet::uncolored({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  auto diagonals = make_matching(square, {{0, 2}, {1, 3}});
  CHECK(diagonals.cost == doctest::Approx(2 * std::numbers::sqrt2).epsilon(1e-15));

  auto ps = counterexample_points(0.02);
  auto m = make_matching(ps, {{0, 3}, {1, 4}, {2, 5}});
  double expected = 2 * distance(ps[0], ps[3]) + (3 - kSqrt3);
  CHECK(m.cost == doctest::Approx(expected).epsilon(1e-15));
  CHECK(m.cost == doctest::Approx(5.2481).epsilon(1e-4));
  CHECK(m.cost >= 7 - kSqrt3 - 2 * 0.02);
}

TEST_CASE("invalid matchings are rejected") {
  auto ps = PointSet::bichromatic({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}});
  CHECK_THROWS_AS(make_matching(ps, {{0, 1}, {2, 3}}), InvalidMatching);  // monochromatic
  CHECK_THROWS_AS(make_matching(ps, {{0, 2}, {0, 3}}), InvalidMatching);  // reused index
  CHECK_THROWS_AS(make_matching(ps, {{0, 2}}), InvalidMatching);          // too few pairs
  CHECK_THROWS_AS(make_matching(ps, {{0, 2}, {1, 7}}), InvalidMatching);  // out of range
  Matching bad{{{0, 1}, {2, 3}}, 0};
  CHECK_THROWS_AS(cost(ps, bad), InvalidMatching);
}

TEST_CASE("pairs are canonicalized and the cost is recomputed") {
  auto ps = PointSet::uncolored({{0, 0}, {3, 4}, {1, 1}, {2, 2}});
  auto m = make_matching(ps, {{3, 2}, {1, 0}});
  CHECK(m.pairs == std::vector<IndexPair>{{0, 1}, {2, 3}});
  CHECK(std::abs(m.cost - cost(ps, m)) <= 1e-12 * m.cost);
}

TEST_CASE("brute force on the red-blue counterexample") {
  auto ps = counterexample_points(0.02);
  auto r = max_sum_bruteforce(ps);
  CHECK(r.matching.pairs == std::vector<IndexPair>{{0, 3}, {1, 4}, {2, 5}});
  CHECK(r.is_unique);
  CHECK(r.enumerated == 6);
}

TEST_CASE("brute force on doubled equilateral vertices") {
  double h = kSqrt3 / 2;
  auto ps = PointSet::uncolored({{0, 0}, {0, 0}, {1, 0}, {1, 0}, {0.5, h}, {0.5, h}});
  auto r = max_sum_bruteforce(ps);
  CHECK(r.enumerated == 15);
  CHECK(r.matching.cost == doctest::Approx(3).epsilon(1e-12));
  CHECK_FALSE(r.is_unique);
  // Lexicographically smallest optimum.
  CHECK(r.matching.pairs == std::vector<IndexPair>{{0, 2}, {1, 4}, {3, 5}});
}

TEST_CASE("brute force on two coincident pairs") {
  auto ps = PointSet::uncolored({{0, 0}, {0, 0}, {1, 0}, {1, 0}});
  auto r = max_sum_bruteforce(ps);
  CHECK(r.matching.cost == doctest::Approx(2));
  for (auto [i, j] : r.matching.pairs) CHECK(ps[i] != ps[j]);
}

TEST_CASE("brute force refuses inputs above the cap") {
  std::vector<Point> pts(18, Point{0, 0});
  for (std::size_t i = 0; i < pts.size(); ++i) pts[i] = {double(i), double(i * i)};
  CHECK_THROWS_AS(max_sum_bruteforce(PointSet::uncolored(pts)), SizeLimitExceeded);
  CHECK_THROWS_AS(max_sum_bruteforce(PointSet::uncolored({{0, 0}, {1, 1}, {2, 2}})), InvalidParameter);
}

TEST_CASE("brute force matches the permutation oracle") {
  Rng rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + trial % 4;
    bool colored = trial % 2 == 1;
    PointSet ps = random_set(rng, n, colored);
    auto r = max_sum_bruteforce(ps);
    auto every = all_matchings(ps);
    CHECK(r.enumerated == every.size());
    double best = -1;
    for (const auto& m : every) {
      double c = pair_cost(ps, m);
      best = std::max(best, c);
      CHECK(r.matching.cost >= c - 1e-12);
    }
    CHECK(r.matching.cost == doctest::Approx(best).epsilon(1e-12));
    if (colored) {
      for (auto [i, j] : r.matching.pairs) CHECK((*ps.colors)[i] != (*ps.colors)[j]);
    }
    CHECK(verify_2opt_maximality(ps, r.matching).empty());
  }
}

TEST_CASE("optimal cost is similarity equivariant") {
  Rng rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    PointSet ps = random_set(rng, 3, trial % 2 == 0);
    double scale = rng.uniform(0.1, 10), theta = rng.angle();
    Point shift = rng.in_square(3);
    PointSet moved = ps;
    for (Point& p : moved.points) {
      p = Point{scale * (std::cos(theta) * p.x - std::sin(theta) * p.y) + shift.x,
                scale * (std::sin(theta) * p.x + std::cos(theta) * p.y) + shift.y};
    }
    auto a = max_sum_bruteforce(ps);
    auto b = max_sum_bruteforce(moved);
    CHECK(std::abs(b.matching.cost - scale * a.matching.cost) <= 1e-9 * scale * a.matching.cost);
    if (a.is_unique) CHECK(a.matching.pairs == b.matching.pairs);
  }
}

TEST_CASE("2-opt violations") {
  // a'(0,0), a(1,0), b(1,1), b'(0,1): consecutive square corners matched along
  // two sides; the diagonal rematch is longer.
  auto ps = PointSet::bichromatic({{1, 0}, {1, 1}}, {{0, 0}, {0, 1}});
  auto sides = make_matching(ps, {{0, 2}, {1, 3}});
  auto v = verify_2opt_maximality(ps, sides);
  REQUIRE(v.size() == 1);
  CHECK(v[0].gain == doctest::Approx(2 * std::numbers::sqrt2 - 2));
  CHECK(v[0].replacement_a == IndexPair{0, 3});
  CHECK(v[0].replacement_b == IndexPair{1, 2});

  // Rotated matching {(a,b'),(b,c'),(c,a')} of the counterexample.
  auto cx = counterexample_points(0.02);
  auto rotated = make_matching(cx, {{0, 4}, {1, 5}, {2, 3}});
  CHECK(rotated.cost == doctest::Approx(2 + std::sqrt(10.0)).epsilon(1e-12));
  CHECK_FALSE(verify_2opt_maximality(cx, rotated).empty());
}

TEST_CASE("substituting an extended partner keeps the matching optimal") {
  Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    PointSet ps = random_set(rng, 3, trial % 3 == 0);
    auto best = max_sum_bruteforce(ps).matching;
    auto [a1, b1] = best.pairs[trial % 3];
    if (trial % 2) std::swap(a1, b1);
    PointSet moved = ps;
    moved.points[b1] = ps[a1] + rng.uniform(1.05, 2.5) * (ps[b1] - ps[a1]);
    double substituted = cost(moved, best);
    CHECK(substituted >= max_sum_bruteforce(moved).matching.cost - 1e-12);
  }
}

TEST_CASE("local search yields a 2-opt maximal matching") {
  Rng rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    PointSet ps = random_set(rng, 5, trial % 2 == 0);
    auto h = max_sum_local_search(ps);
    CHECK_FALSE(h.exact);
    CHECK(verify_2opt_maximality(ps, h.matching).empty());
    CHECK(h.matching.cost <= max_sum_bruteforce(ps).matching.cost + 1e-12);
  }
  // Beyond the enumeration cap.
  PointSet big = random_set(rng, 20, false);
  CHECK(verify_2opt_maximality(big, max_sum_local_search(big).matching).empty());
}

TEST_CASE("square fixture of the vector inequality") {
  // a', a, b, b' as consecutive vertices of the unit square
  Point a_{0, 0}, a{1, 0}, b{1, 1}, b_{0, 1};
  PointSet ps = PointSet::bichromatic({a, b}, {a_, b_});
  auto slack = [](Point p, Point p_, Point q, Point q_) {
    return distance(p, p_) + distance(q, q_) - norm((p + p_) - (q + q_));
  };
  // The natural labeling is tight but not max-sum: the diagonals are longer.
  CHECK(std::abs(slack(a, a_, b, b_)) <= 1e-12);
  CHECK_FALSE(verify_2opt_maximality(ps, make_matching(ps, {{0, 2}, {1, 3}})).empty());
  auto bf = max_sum_bruteforce(ps);
  CHECK(bf.is_unique);
  CHECK(bf.matching.pairs == std::vector<IndexPair>{{0, 3}, {1, 2}});
  CHECK(bf.matching.cost == doctest::Approx(2 * std::sqrt(2.0)));
  CHECK(slack(a, b_, b, a_) == doctest::Approx(2 * std::sqrt(2.0)));
}
