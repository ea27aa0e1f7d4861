#include "mmp/constructions.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <vector>

#include "mmp/errors.hpp"
#include "mmp/tolerance.hpp"

namespace mmp {

namespace {

constexpr double kSqrt3 = std::numbers::sqrt3;

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_epsilon(double epsilon, double threshold, const std::string& what) {
  if (!(epsilon > 0 && epsilon < threshold)) {
    throw InvalidParameter(what + ": epsilon must lie in (0, " + shortest(threshold) + "), got " +
                           shortest(epsilon));
  }
}

// Reds a, b, c and blues a', b', c' of the three-pair base configuration.
struct Base {
  Point a{-1, 0};
  Point b{1, 0};
  Point c{0, kSqrt3};
  Point ap;
  Point bp;
  Point cp{0, 3};
};

Base base(double epsilon) {
  Base s;
  // a' on cb and b' on ca, both at distance epsilon from c.
  s.ap = s.c + epsilon * (s.b - s.c) / distance(s.b, s.c);
  s.bp = s.c + epsilon * (s.a - s.c) / distance(s.a, s.c);
  return s;
}

std::size_t pair_containing(const Matching& m, std::size_t index) {
  for (std::size_t k = 0; k < m.pairs.size(); ++k) {
    if (m.pairs[k].first == index || m.pairs[k].second == index) return k;
  }
  throw ConstructionFailure("index missing from matching");
}

std::size_t partner(const Matching& m, std::size_t index) {
  const IndexPair& p = m.pairs[pair_containing(m, index)];
  return p.first == index ? p.second : p.first;
}

Disk disk_of_pair(const PointSet& ps, const IndexPair& p) { return diametral_disk(ps[p.first], ps[p.second]); }

// Fills in the empty triple of pairs containing a, b and c' and confirms the
// three disks have no common point.
void certify_empty_triple(CounterexampleInstance& inst) {
  const std::size_t n = inst.n;
  const Matching& m = inst.claimed_optimum;
  inst.empty_triple = {pair_containing(m, 0), pair_containing(m, 1), pair_containing(m, n + 2)};
  std::array<Disk, 3> disks{};
  for (std::size_t k = 0; k < 3; ++k) disks[k] = disk_of_pair(inst.point_set, m.pairs[inst.empty_triple[k]]);
  PiercingResult r = small_family_exact(disks);
  inst.empty_depth = r.depth;
  if (r.verdict != Verdict::Empty) {
    throw ConstructionFailure(inst.name + ": the disks of a, b and c' share a point (depth " +
                              shortest(r.depth) + ")");
  }
}

}  // namespace

double theorem2_threshold() { return (5 - std::sqrt(10.0) - kSqrt3) / 4; }

double theorem3_threshold(std::size_t n) { return 1.0 / (10.0 * (2.0 * static_cast<double>(n) - 1)); }

double theorem2_default_epsilon() { return 0.9 * theorem2_threshold(); }

double theorem3_default_epsilon(std::size_t n) { return 0.9 * theorem3_threshold(n); }

double m1_lower_bound(std::size_t, double epsilon) { return 7 - kSqrt3 - 2 * epsilon; }

double m2_upper_bound(std::size_t n, double epsilon) {
  return std::sqrt(10.0) + 2 + epsilon + 2 * (static_cast<double>(n) - 2) * epsilon;
}

CounterexampleInstance theorem2_instance(double epsilon) {
  check_epsilon(epsilon, theorem2_threshold(), "three-pair counterexample");
  Base s = base(epsilon);

  CounterexampleInstance inst;
  inst.name = theorem2_fixture_name(epsilon);
  inst.point_set = PointSet::bichromatic({s.a, s.b, s.c}, {s.ap, s.bp, s.cp});
  inst.epsilon = epsilon;
  inst.n = 3;
  inst.claimed_optimum = make_matching(inst.point_set, {{0, 3}, {1, 4}, {2, 5}});

  BruteForceResult bf = max_sum_bruteforce(inst.point_set);
  if (bf.matching.pairs != inst.claimed_optimum.pairs || !bf.is_unique) {
    throw ConstructionFailure(inst.name + ": {(a,a'),(b,b'),(c,c')} is not the unique optimum");
  }
  inst.oracle_checked = true;
  certify_empty_triple(inst);
  return inst;
}

CounterexampleInstance theorem3_instance(std::size_t n, double epsilon) {
  if (n < 4) throw InvalidParameter("counterexample family needs n >= 4, got " + std::to_string(n));
  check_epsilon(epsilon, theorem3_threshold(n), "counterexample with n = " + std::to_string(n));
  Base s = base(epsilon);

  std::vector<Point> red{s.a, s.b, s.c};
  std::vector<Point> blue{s.ap, s.bp, s.cp};
  const double steps = static_cast<double>(n - 2);
  for (std::size_t i = 1; i + 3 <= n; ++i) {
    double t = static_cast<double>(i) / steps;
    double side = i % 2 == 1 ? 1.0 : -1.0;
    red.push_back({side * epsilon * t, kSqrt3});
    blue.push_back(s.bp + t * (s.ap - s.bp));
  }

  CounterexampleInstance inst;
  inst.name = theorem3_fixture_name(n);
  inst.point_set = PointSet::bichromatic(red, blue);
  inst.epsilon = epsilon;
  inst.n = n;

  if (m1_lower_bound(n, epsilon) <= m2_upper_bound(n, epsilon)) {
    throw ConstructionFailure(inst.name + ": cost bounds do not separate the two matching forms");
  }

  if (inst.point_set.size() <= kBruteForceMaxPoints) {
    inst.claimed_optimum = max_sum_bruteforce(inst.point_set).matching;
    inst.oracle_checked = true;
  } else {
    // Start from c'-c, a-a', b-b', a_i-a'_i and improve by exchanges.
    std::vector<IndexPair> seed;
    for (std::size_t i = 0; i < n; ++i) seed.emplace_back(i, n + i);
    inst.claimed_optimum = improve_2opt(inst.point_set, make_matching(inst.point_set, seed)).matching;
  }

  const std::size_t cp_partner = partner(inst.claimed_optimum, n + 2);
  if (cp_partner == 0 || cp_partner == 1) {
    throw ConstructionFailure(inst.name + ": the optimum matches c' to a or b");
  }
  if (inst.claimed_optimum.cost < m1_lower_bound(n, epsilon) - cost_tolerance(inst.claimed_optimum.cost)) {
    throw ConstructionFailure(inst.name + ": optimum cost falls below the lower bound");
  }
  certify_empty_triple(inst);
  return inst;
}

Theorem2Costs theorem2_costs(const CounterexampleInstance& inst) {
  const PointSet& ps = inst.point_set;
  auto c = [&](std::vector<IndexPair> pairs) { return make_matching(ps, std::move(pairs)).cost; };
  Theorem2Costs out;
  out.optimum = c({{0, 3}, {1, 4}, {2, 5}});
  out.rotated_ab = c({{0, 4}, {1, 5}, {2, 3}});
  out.rotated_ac = c({{0, 5}, {1, 3}, {2, 4}});
  out.swap_a = c({{0, 5}, {1, 4}, {2, 3}});
  out.swap_b = c({{0, 3}, {1, 5}, {2, 4}});
  return out;
}

std::optional<XExtent> lens_x_extent(const Disk& d1, const Disk& d2) {
  const double gap = distance(d1.center, d2.center);
  if (gap > d1.radius + d2.radius) return std::nullopt;

  std::vector<Point> candidates = circle_intersections(d1, d2);
  auto inside = [](Point p, const Disk& d) { return distance(p, d.center) <= d.radius * (1 + 1e-12); };
  for (auto [self, other] : {std::pair{&d1, &d2}, std::pair{&d2, &d1}}) {
    for (double sx : {-1.0, 1.0}) {
      Point extreme{self->center.x + sx * self->radius, self->center.y};
      if (inside(extreme, *other)) candidates.push_back(extreme);
    }
  }
  if (candidates.empty()) return std::nullopt;
  XExtent e{candidates.front().x, candidates.front().x};
  for (Point p : candidates) {
    e.min_x = std::min(e.min_x, p.x);
    e.max_x = std::max(e.max_x, p.x);
  }
  return e;
}

bool emptiness_separated(const CounterexampleInstance& inst) {
  const PointSet& ps = inst.point_set;
  const Matching& m = inst.claimed_optimum;
  Disk da = disk_of_pair(ps, m.pairs[pair_containing(m, 0)]);
  Disk db = disk_of_pair(ps, m.pairs[pair_containing(m, 1)]);
  Disk dc = disk_of_pair(ps, m.pairs[pair_containing(m, inst.n + 2)]);
  auto left = lens_x_extent(da, dc);
  auto right = lens_x_extent(db, dc);
  return (!left || left->max_x < 0) && (!right || right->min_x > 0);
}

PointSet equilateral_tightness(double side) {
  if (!(side > 0) || !std::isfinite(side)) {
    throw InvalidParameter("equilateral side must be positive and finite, got " + shortest(side));
  }
  Point v0{0, 0}, v1{side, 0}, v2{side / 2, side * kSqrt3 / 2};
  return PointSet::uncolored({v0, v0, v1, v1, v2, v2});
}

PointSet singleton_disk_instance(Point a, Point b, Point c, Point z) {
  for (Point p : {a, b, c, z}) {
    if (!is_finite(p)) throw InvalidParameter("singleton instance needs finite points");
  }
  if (orientation(a, b, c) == Orientation::Collinear) {
    throw InvalidParameter("singleton instance needs a non-degenerate triangle");
  }
  if (!strictly_inside_triangle(z, a, b, c)) {
    throw InvalidParameter("singleton instance needs z strictly inside the triangle");
  }
  PointSet ps = PointSet::uncolored({a, b, c, z, z, z});
  double star = make_matching(ps, {{0, 3}, {1, 4}, {2, 5}}).cost;
  double best = max_sum_bruteforce(ps).matching.cost;
  if (best > star + cost_tolerance(best)) {
    throw ConstructionFailure("singleton instance: matching every vertex to z is not max-sum");
  }
  return ps;
}

std::string theorem2_fixture_name(double epsilon) { return "thm2_eps" + shortest(epsilon); }

std::string theorem3_fixture_name(std::size_t n) { return "thm3_n" + std::to_string(n); }

}  // namespace mmp
