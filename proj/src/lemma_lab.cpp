#include "mmp/lemma_lab.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <optional>
#include <thread>
#include <vector>

#include "mmp/errors.hpp"
#include "mmp/geometry.hpp"
#include "mmp/matching.hpp"
#include "mmp/random.hpp"
#include "mmp/tolerance.hpp"

namespace mmp {

const char* to_string(LemmaId id) {
  switch (id) {
    case LemmaId::SqrtFiveDisk: return "lemma1";
    case LemmaId::Monotone1: return "lemma5";
    case LemmaId::Monotone2: return "lemma6";
    case LemmaId::CommonPoint1: return "lemma7";
    case LemmaId::CommonPoint2: return "lemma8";
    case LemmaId::CommonPoint3: return "lemma9";
    case LemmaId::HyperbolaArc: return "prop2";
    case LemmaId::Extension: return "extension";
    case LemmaId::ExtensionColored: return "extension-colored";
    case LemmaId::Monotone3: return "monotone3";
  }
  return "?";
}

std::optional<LemmaId> lemma_from_string(std::string_view name) {
  for (LemmaId id : kAllLemmas) {
    if (name == to_string(id)) return id;
  }
  return std::nullopt;
}

std::size_t default_trials(LemmaId id) {
  switch (id) {
    case LemmaId::CommonPoint1:
    case LemmaId::CommonPoint2:
    case LemmaId::CommonPoint3:
    case LemmaId::Extension:
    case LemmaId::ExtensionColored: return 1000;
    default: return 10000;
  }
}

namespace {

// A trial gives up after this many rejected draws.
constexpr std::size_t kMaxDrawsPerTrial = 1'000'000;
constexpr double kMinAcceptanceRate = 1e-4;

struct Outcome {
  std::size_t draws = 0;
  bool accepted = false;
  double margin = 0;
  bool violated = false;
  bool near_equal = false;
  std::vector<const char*> branches;
};

// Strict inequality with slack `margin`: wrong side beyond tol is a violation.
void judge(Outcome& o, double margin, double tol) {
  o.accepted = true;
  o.margin = margin;
  o.violated = margin < -tol;
  o.near_equal = std::abs(margin) <= tol;
}

double tol_for(std::initializer_list<Point> pts) { return pierce_tolerance(coordinate_scale(pts)); }

// Runs trial i on its own substream and merges in index order, so the report
// is independent of the thread count.
template <typename Trial>
LemmaTrialReport run_trials(std::string_view name, std::size_t trials, std::uint64_t seed, const LemmaOptions& opts,
                            Trial&& trial) {
  if (trials == 0) throw InvalidParameter("trial count must be positive");
  std::vector<Outcome> outcomes(trials);
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, trials));

  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](unsigned t) {
    try {
      for (std::size_t i = t; i < trials; i += threads) {
        Rng rng = Rng::substream(seed, i);
        outcomes[i] = trial(rng);
      }
    } catch (...) {
      errors[t] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  LemmaTrialReport r;
  r.lemma = std::string(name);
  r.seed = seed;
  r.negative_control = opts.negative_control;
  r.worst_margin = std::numeric_limits<double>::infinity();
  for (const Outcome& o : outcomes) {
    r.attempted += o.draws;
    if (!o.accepted) continue;
    ++r.accepted;
    r.worst_margin = std::min(r.worst_margin, o.margin);
    if (o.violated) ++r.violations;
    if (o.near_equal) ++r.near_equal;
    for (const char* b : o.branches) ++r.branches[b];
  }
  if (r.accepted < trials ||
      static_cast<double>(r.accepted) < kMinAcceptanceRate * static_cast<double>(r.attempted)) {
    throw SamplerStarvation(r.lemma + ": hypothesis accepted " + std::to_string(r.accepted) +
                            " of " + std::to_string(r.attempted) + " draws");
  }
  return r;
}

// Draws until `sample` accepts or the per-trial budget runs out.
template <typename Sample>
Outcome rejection_loop(Rng& rng, Sample&& sample) {
  Outcome o;
  while (o.draws < kMaxDrawsPerTrial) {
    ++o.draws;
    if (sample(rng, o)) return o;
  }
  o.accepted = false;
  return o;
}

// An endpoint pair (u, u') with u - z orthogonal to u' - z and z to the left
// of the oriented line l(u, u'): u = z + s d, u' = z + s' perp(d).
struct Arm {
  Point u;
  Point up;
};

Arm orthogonal_arm(Rng& rng, Point z) {
  Point d = rng.direction();
  Point u = z + rng.uniform(0.05, 2.0) * d;
  Point up = z + rng.uniform(0.05, 2.0) * perp(d);
  return {u, up};
}

// Negative controls replace u' by an unconstrained point.
Arm arm_for(Rng& rng, Point z, bool broken) {
  Arm a = orthogonal_arm(rng, z);
  if (broken) a.up = rng.in_square(2.0);
  return a;
}

// Orthogonal arm whose direction is drawn mostly from the half-turn after
// `base`, with arm lengths mixing uniform and log-uniform draws. Every
// configuration keeps positive density; the bias only concentrates draws
// where the seven-point pointing patterns live.
Arm skewed_arm(Rng& rng, Point z, double base) {
  auto length = [&] { return rng.uniform() < 0.5 ? 0.01 * std::pow(200.0, rng.uniform()) : rng.uniform(0.05, 2.0); };
  double turn = rng.uniform() < 0.9 ? rng.uniform(0, std::numbers::pi) : rng.uniform(0, 2 * std::numbers::pi);
  Point d{std::cos(base + turn), std::sin(base + turn)};
  Point u = z + length() * d;
  Point up = z + length() * perp(d);
  return {u, up};
}

double angle_of(const Arm& a, Point z) { return std::atan2(a.u.y - z.y, a.u.x - z.x); }

bool left_of(Point x, Point a, Point b) { return orientation(a, b, x) == Orientation::Left; }
bool right_of(Point x, Point a, Point b) { return orientation(a, b, x) == Orientation::Right; }

// Slack of |p-z| - |q-z| < |p-q'| - |q-q'|.
double monotone_margin(Point p, Point q, Point qp, Point z) {
  return (distance(p, qp) - distance(q, qp)) - (distance(p, z) - distance(q, z));
}

}  // namespace

LemmaTrialReport check_lemma1(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts) {
  // p, q uniform in the square; r = U(0,1] * r_pq (up to 3 r_pq for the
  // control); o at a uniform distance in [0, r + r_pq] from the center of D_pq.
  return run_trials(to_string(LemmaId::SqrtFiveDisk), trials, seed, opts, [&](Rng& rng) {
    Outcome o;
    o.draws = 1;
    Point p = rng.in_square(), q = rng.in_square();
    Disk dpq = diametral_disk(p, q);
    double rmax = (opts.negative_control ? 3.0 : 1.0) * dpq.radius;
    double r = rng.uniform(0, 1) * rmax;
    Point c = dpq.center + rng.uniform(0, 1) * (r + dpq.radius) * rng.direction();
    double lhs = distance(p, c) + distance(q, c);
    judge(o, std::sqrt(5.0) * distance(p, q) - lhs, tol_for({p, q, c}));
    if (r > dpq.radius) o.branches.push_back("radius_above_r_pq");
    return o;
  });
}

LemmaTrialReport check_lemma5(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts) {
  // z uniform in the square, both arms orthogonal at z; rejection on the
  // pointing relation and on the side conditions.
  return run_trials(to_string(LemmaId::Monotone1), trials, seed, opts, [&](Rng& rng) {
    return rejection_loop(rng, [&](Rng& g, Outcome& o) {
      Point z = g.in_square();
      auto [p, pp] = orthogonal_arm(g, z);
      auto [q, qp] = arm_for(g, z, opts.negative_control);
      if (!left_of(z, q, qp)) return false;
      if (!points_to({p, pp}, {q, qp})) return false;
      if (!right_of(q, p, pp)) return false;
      if (!left_of(q, z, p)) return false;
      judge(o, monotone_margin(p, q, qp, z), tol_for({p, pp, q, qp, z}));
      bool q_right = right_of(q, z, pp);
      bool cross = segments_cross({p, qp}, {q, z}).crosses;
      o.branches.push_back(q_right ? "q_right_of_zp'" : "q_not_right_of_zp'");
      if (q_right != cross) o.branches.push_back("crossing_certificate_mismatch");
      return true;
    });
  });
}

LemmaTrialReport check_lemma6(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts) {
  // Same parametrization as lemma5, filtered on convex position and on q, q'
  // lying on opposite sides of l(p, p').
  return run_trials(to_string(LemmaId::Monotone2), trials, seed, opts, [&](Rng& rng) {
    return rejection_loop(rng, [&](Rng& g, Outcome& o) {
      Point z = g.in_square();
      auto [p, pp] = orthogonal_arm(g, z);
      auto [q, qp] = arm_for(g, z, opts.negative_control);
      if (!left_of(z, q, qp)) return false;
      if (!right_of(q, p, pp) || !left_of(qp, p, pp)) return false;
      if (!in_convex_position(p, pp, q, qp)) return false;
      const double tol = tol_for({p, pp, q, qp, z});
      // Without q left of l(z, p) the diagonals pq' and qz can miss each
      // other and the inequality fails; such draws are rejected and counted.
      if (!left_of(q, z, p)) {
        if (monotone_margin(p, q, qp, z) < -tol) o.branches.push_back("rejected_counterexample_without_side_condition");
        return false;
      }
      judge(o, monotone_margin(p, q, qp, z), tol);
      o.branches.push_back(segments_cross({p, qp}, {q, z}).crosses ? "diagonals_cross" : "diagonals_disjoint");
      return true;
    });
  });
}

LemmaTrialReport check_common_point_lemmas(int which, std::size_t trials, std::uint64_t seed,
                                           const LemmaOptions& opts) {
  if (which < 7 || which > 9) {
    throw InvalidParameter("common-point lemma must be 7, 8 or 9, got " + std::to_string(which));
  }
  const LemmaId id = which == 7 ? LemmaId::CommonPoint1 : which == 8 ? LemmaId::CommonPoint2 : LemmaId::CommonPoint3;
  const bool relaxed = opts.negative_control;

  // Hypotheses split by the segments they involve. The control drops one
  // pointing condition: cc' to aa' for 7 and 9, aa' to bb' for 8.
  auto b_ok = [&](const Arm& a, const Arm& b) {
    if (which == 9) {
      return !right_of(b.u, a.u, a.up) && !right_of(b.up, a.u, a.up) && points_to({b.up, b.u}, {a.u, a.up});
    }
    return (relaxed && which == 8) || points_to({a.u, a.up}, {b.u, b.up});
  };
  auto c_ok = [&](const Arm& a, const Arm& b, const Arm& c) {
    if (!points_to({b.u, b.up}, {c.u, c.up})) return false;
    if (which == 9) {
      return !right_of(c.u, a.u, a.up) && !right_of(c.up, a.u, a.up) &&
             (relaxed || points_to({c.u, c.up}, {a.u, a.up}));
    }
    if (!left_of(c.u, a.u, b.u)) return false;
    if (which == 7) return relaxed || points_to({c.u, c.up}, {a.u, a.up});
    return segments_cross({a.u, a.up}, {c.u, c.up}).crosses && right_of(a.u, c.u, c.up) && left_of(a.up, c.u, c.up);
  };

  return run_trials(to_string(id), trials, seed, opts, [&](Rng& rng) {
    return rejection_loop(rng, [&](Rng& g, Outcome& o) {
      Point z = g.in_square();
      Arm a = skewed_arm(g, z, g.uniform(0, 2 * std::numbers::pi));
      Arm b = skewed_arm(g, z, angle_of(a, z));
      if (!b_ok(a, b)) return false;
      Arm c = skewed_arm(g, z, angle_of(b, z));
      if (!c_ok(a, b, c)) return false;

      auto [pa, pap] = a;
      auto [pb, pbp] = b;
      auto [pc, pcp] = c;
      const double tol = tol_for({pa, pb, pc, pap, pbp, pcp, z});
      PointSet ps = PointSet::uncolored({pa, pb, pc, pap, pbp, pcp});
      double identity = make_matching(ps, {{0, 3}, {1, 4}, {2, 5}}).cost;
      double best = max_sum_bruteforce(ps).matching.cost;
      double rotated_gain = (distance(pa, pbp) + distance(pb, pcp) + distance(pc, pap)) - identity;

      if (which == 8) {
        o.branches.push_back(left_of(pa, z, pc) ? "a_left_of_zc" : "a_not_left_of_zc");
      }
      bool sum_applies = which != 9 || strictly_inside_triangle(pb, pa, pap, z);
      if (which == 9) {
        o.branches.push_back(sum_applies ? "b_in_triangle" : "b_outside_triangle");
        if (sum_applies) {
          o.branches.push_back(segments_cross({pb, z}, {pa, pbp}).crosses ? "bz_crosses_ab'" : "bz_misses_ab'");
        }
      }
      judge(o, sum_applies ? rotated_gain : best - identity, tol);
      // Not max-sum means some matching beats the identity outright.
      if (best <= identity) o.violated = true;
      return true;
    });
  });
}

LemmaTrialReport check_prop2(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts) {
  // Four points uniform in the square. Every labelling of the two optimal
  // pairs is tested; the control uses the cheapest matching instead.
  return run_trials(to_string(LemmaId::HyperbolaArc), trials, seed, opts, [&](Rng& rng) {
    Outcome o;
    o.draws = 1;
    std::vector<Point> pts;
    for (int i = 0; i < 4; ++i) pts.push_back(rng.in_square());
    PointSet ps = PointSet::uncolored(pts);
    Matching m = max_sum_bruteforce(ps).matching;
    if (opts.negative_control) {
      Matching worst;
      for (auto pairs : {std::vector<IndexPair>{{0, 1}, {2, 3}}, std::vector<IndexPair>{{0, 2}, {1, 3}},
                         std::vector<IndexPair>{{0, 3}, {1, 2}}}) {
        Matching cand = make_matching(ps, pairs);
        if (worst.pairs.empty() || cand.cost < worst.cost) worst = cand;
      }
      m = worst;
    }
    double margin = std::numeric_limits<double>::infinity();
    bool on_arc = false, focus_a_side = false;
    for (int swap_pairs = 0; swap_pairs < 2; ++swap_pairs) {
      IndexPair first = m.pairs[swap_pairs], second = m.pairs[1 - swap_pairs];
      for (int fa = 0; fa < 2; ++fa) {
        for (int fb = 0; fb < 2; ++fb) {
          Point a = ps[fa ? first.second : first.first], ap = ps[fa ? first.first : first.second];
          Point b = ps[fb ? second.second : second.first], bp = ps[fb ? second.first : second.second];
          double diff = (distance(a, ap) - distance(b, ap)) - (distance(a, bp) - distance(b, bp));
          margin = std::min(margin, diff);
          HyperbolaRegion side = hyperbola_side({a, b, bp}, ap);
          if (side == HyperbolaRegion::OnArc) on_arc = true;
          if (side == HyperbolaRegion::SideOfFocusA) focus_a_side = true;
        }
      }
    }
    o.accepted = true;
    o.margin = margin;
    // Membership in the closed side: only the wrong side beyond tol counts.
    const double tol = tol_for({pts[0], pts[1], pts[2], pts[3]});
    o.violated = margin < -tol;
    o.near_equal = std::abs(margin) <= tol;
    o.branches.push_back(focus_a_side ? "side_of_focus_a" : on_arc ? "on_arc" : "side_of_focus_b");
    return o;
  });
}

LemmaTrialReport check_extension_lemma(std::size_t trials, std::uint64_t seed, bool colored, std::size_t pairs,
                                       const LemmaOptions& opts) {
  if (pairs == 0 || 2 * pairs > 8) throw InvalidParameter("extension checks use 1 to 4 pairs");
  const LemmaId id = colored ? LemmaId::ExtensionColored : LemmaId::Extension;
  // 2n points uniform in the square; a random optimal pair (a1, b1) is
  // stretched to c = a1 + t (b1 - a1) with t in [1.05, 3] (control: [0.05, 0.6]).
  return run_trials(to_string(id), trials, seed, opts, [&](Rng& rng) {
    Outcome o;
    o.draws = 1;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < 2 * pairs; ++i) pts.push_back(rng.in_square());
    PointSet ps = colored ? PointSet::bichromatic({pts.begin(), pts.begin() + static_cast<long>(pairs)},
                                                  {pts.begin() + static_cast<long>(pairs), pts.end()})
                          : PointSet::uncolored(pts);
    Matching m = max_sum_bruteforce(ps).matching;
    auto [a1, b1] = m.pairs[rng.bits() % pairs];
    if (rng.uniform() < 0.5) std::swap(a1, b1);
    double t = opts.negative_control ? rng.uniform(0.05, 0.6) : rng.uniform(1.05, 3.0);
    PointSet moved = ps;
    moved.points[b1] = ps[a1] + t * (ps[b1] - ps[a1]);
    double substituted = cost(moved, m);
    double best = max_sum_bruteforce(moved).matching.cost;
    judge(o, substituted - best, cost_tolerance(best));
    return o;
  });
}

LemmaTrialReport check_monotone3(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts) {
  // p, p' uniform in the square; z on C_pp' at a uniform angle on the left
  // half; q = z + t (p' - z) with t in [0, 1); q' = o + s (z - o) with s in
  // (1, 4] (control: s in (0, 1), inside segment oz).
  return run_trials(to_string(LemmaId::Monotone3), trials, seed, opts, [&](Rng& rng) {
    return rejection_loop(rng, [&](Rng& g, Outcome& o) {
      Point p = g.in_square(), pp = g.in_square();
      double len = distance(p, pp);
      if (len < 1e-3) return false;
      Point o_mid = midpoint(p, pp);
      Point u = (pp - p) / len;
      double phi = g.uniform(0, std::numbers::pi);
      Point z = o_mid + (len / 2) * (std::cos(phi) * u + std::sin(phi) * perp(u));
      if (!left_of(z, p, pp)) return false;
      Point q = z + g.uniform() * (pp - z);
      double s = opts.negative_control ? g.uniform(0.0, 1.0) : 1.0 + (1.0 - g.uniform()) * 3.0;
      Point qp = o_mid + s * (z - o_mid);
      double lhs = len + distance(q, qp);
      double rhs = distance(p, q) + distance(pp, qp);
      judge(o, rhs - lhs, tol_for({p, pp, q, qp}));
      o.branches.push_back(len >= distance(qp, pp) ? "pp'_at_least_q'p'" : "pp'_below_q'p'");
      return true;
    });
  });
}

LemmaTrialReport run_rejection_check(std::string_view name, std::size_t trials, std::uint64_t seed,
                                     const LemmaOptions& opts,
                                     const std::function<std::optional<LemmaSample>(Rng&)>& draw) {
  return run_trials(name, trials, seed, opts, [&](Rng& rng) {
    return rejection_loop(rng, [&](Rng& g, Outcome& o) {
      std::optional<LemmaSample> s = draw(g);
      if (!s) return false;
      judge(o, s->margin, s->tol);
      return true;
    });
  });
}

LemmaTrialReport run_lemma(LemmaId id, std::size_t trials, std::uint64_t seed, const LemmaOptions& opts) {
  switch (id) {
    case LemmaId::SqrtFiveDisk: return check_lemma1(trials, seed, opts);
    case LemmaId::Monotone1: return check_lemma5(trials, seed, opts);
    case LemmaId::Monotone2: return check_lemma6(trials, seed, opts);
    case LemmaId::CommonPoint1: return check_common_point_lemmas(7, trials, seed, opts);
    case LemmaId::CommonPoint2: return check_common_point_lemmas(8, trials, seed, opts);
    case LemmaId::CommonPoint3: return check_common_point_lemmas(9, trials, seed, opts);
    case LemmaId::HyperbolaArc: return check_prop2(trials, seed, opts);
    case LemmaId::Extension: return check_extension_lemma(trials, seed, false, 3, opts);
    case LemmaId::ExtensionColored: return check_extension_lemma(trials, seed, true, 3, opts);
    case LemmaId::Monotone3: return check_monotone3(trials, seed, opts);
  }
  throw InvalidParameter("unknown lemma");
}

}  // namespace mmp
