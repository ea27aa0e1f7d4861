// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "mmp/constructions.hpp"
#include "mmp/errors.hpp"
#include "mmp/lemma_lab.hpp"
#include "mmp/matching.hpp"
#include "mmp/piercing.hpp"
#include "mmp/report.hpp"
#include "mmp/tolerance.hpp"

using namespace mmp;

namespace {

constexpr std::uint64_t kCampaignSeed = 1;
constexpr std::uint64_t kLemmaSeed = 1;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Exhaustive red-blue oracle: reds are [0, n), blues [n, 2n).
struct ColoredOptimum {
  std::vector<std::size_t> blue_of_red;  // best permutation, as blue offsets
  double best = -1;
  double second = -1;
};

ColoredOptimum colored_oracle(const PointSet& ps) {
  std::size_t n = ps.size() / 2;
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  ColoredOptimum out;
  do {
    double c = 0;
    for (std::size_t i = 0; i < n; ++i) c += std::hypot(ps[i].x - ps[n + perm[i]].x, ps[i].y - ps[n + perm[i]].y);
    if (c > out.best) {
      out.second = out.best;
      out.best = c;
      out.blue_of_red = perm;
    } else if (c > out.second) {
      out.second = c;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

double pair_cost(const PointSet& ps, std::initializer_list<std::pair<std::size_t, std::size_t>> pairs) {
  double c = 0;
  for (auto [i, j] : pairs) c += std::hypot(ps[i].x - ps[j].x, ps[i].y - ps[j].y);
  return c;
}

std::vector<Disk> triple_disks(const CounterexampleInstance& inst) {
  std::vector<Segment> segs = segments_of(inst.point_set, inst.claimed_optimum);
  std::vector<Disk> out;
  for (std::size_t k : inst.empty_triple) out.push_back(diametral_disk(segs[k]));
  return out;
}

// Campaigns are shared between criteria and rerun for determinism.
Json uncolored_campaign(unsigned threads = 0) {
  CampaignOptions o;
  o.pair_counts = {2, 3, 4, 5, 6};
  o.trials = 500;
  o.seed = kCampaignSeed;
  o.threads = threads;
  return run_campaign(o);
}

Json colored_campaign(unsigned threads = 0) {
  CampaignOptions o;
  o.pair_counts = {2, 3, 4, 5};
  o.trials = 500;
  o.seed = kCampaignSeed;
  o.colored = true;
  o.threads = threads;
  return run_campaign(o);
}

Json lemma_suite(bool negative, unsigned threads = 0) {
  Json all = Json::array();
  for (LemmaId id : kAllLemmas) all.push_back(to_json(run_lemma(id, default_trials(id), kLemmaSeed, {negative, threads})));
  return all;
}

std::size_t counter(const Json& campaign, const char* key) {
  std::size_t total = 0;
  for (const Json& row : campaign["per_n"]) total += row["violations"][key].get<std::size_t>();
  return total;
}

double max_over(const Json& campaign, const char* key) {
  double m = 0;
  for (const Json& row : campaign["per_n"]) m = std::max(m, row["max_ratio"][key].get<double>());
  return m;
}

Outcome criterion1() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  const double eps = 0.02;
  CounterexampleInstance inst = theorem2_instance(eps);
  const PointSet& ps = inst.point_set;
  ColoredOptimum oracle = colored_oracle(ps);
  bool identity = oracle.blue_of_red == std::vector<std::size_t>{0, 1, 2};
  double band = cost_tolerance(oracle.best);
  o.require(identity, "optimum is {(a,a'),(b,b'),(c,c')}");
  o.require(oracle.best - oracle.second > band, "optimum unique");
  BruteForceResult lib = max_sum_bruteforce(ps);
  o.require(lib.is_unique && std::abs(lib.matching.cost - oracle.best) <= band, "library enumeration agrees");

  double lower = 7 - std::sqrt(3.0) - 2 * eps;
  o.require(oracle.best >= lower, "cost >= 7 - sqrt3 - 2eps");
  double target = 2 + std::sqrt(10.0);
  double alt1 = pair_cost(ps, {{0, 4}, {1, 5}, {2, 3}});
  double alt2 = pair_cost(ps, {{0, 5}, {1, 3}, {2, 4}});
  o.require(std::abs(alt1 - target) <= 1e-9 && std::abs(alt2 - target) <= 1e-9, "alternatives equal 2 + sqrt10");

  std::vector<Disk> d = {diametral_disk(ps[0], ps[3]), diametral_disk(ps[1], ps[4]), diametral_disk(ps[2], ps[5])};
  PiercingResult pr = triple_intersect_exact(d[0], d[1], d[2]);
  double tol = pierce_tolerance(coordinate_scale(std::span<const Point>(ps.points)));
  o.require(pr.verdict == Verdict::Empty, "triple Empty");
  o.require(pr.depth > 10 * tol, "depth > 10 tol");
  double secs = seconds_since(t0);
  o.require(secs < 1, "runtime < 1 s");
  o.detail << "cost=" << oracle.best << " (>= " << lower << "), alternatives=" << alt1 << "," << alt2
           << ", depth=" << pr.depth << " (tol " << tol << "), " << secs << " s";
  return o;
}

Outcome criterion2() {
  Outcome o;
  double exact = (5 - std::sqrt(10.0) - std::sqrt(3.0)) / 4;
  o.require(std::abs(theorem2_threshold() - exact) <= 1e-15, "threshold value");
  bool accepted = false;
  try {
    theorem2_instance(0.026);
    accepted = true;
  } catch (const std::exception&) {
  }
  o.require(accepted, "eps=0.026 accepted");
  bool rejected = false;
  try {
    theorem2_instance(0.027);
  } catch (const InvalidParameter&) {
    rejected = true;
  }
  o.require(rejected, "eps=0.027 rejected");
  o.detail << "threshold=" << exact;

  for (std::size_t n = 4; n <= 8; ++n) {
    double bound = 1 / (10.0 * static_cast<double>(2 * n - 1));
    o.require(std::abs(theorem3_threshold(n) - bound) <= 1e-15, "thm3 threshold n=" + std::to_string(n));
    for (double eps : {bound, std::nextafter(bound, 1.0), 1.5 * bound, 0.5}) {
      bool threw = false;
      try {
        theorem3_instance(n, eps);
      } catch (const InvalidParameter&) {
        threw = true;
      }
      o.require(threw, "thm3 n=" + std::to_string(n) + " rejects eps=" + std::to_string(eps));
    }
  }
  o.detail << ", thm3 rejects eps >= 1/(10(2n-1)) for n=4..8";
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  for (std::size_t n = 4; n <= 6; ++n) {
    double eps = theorem3_default_epsilon(n);
    CounterexampleInstance inst = theorem3_instance(n, eps);
    double nd = static_cast<double>(n);
    double m1 = 7 - std::sqrt(3.0) - 2 * eps;
    double m2 = std::sqrt(10.0) + 2 + eps + 2 * (nd - 2) * eps;
    std::string tag = "n=" + std::to_string(n);
    o.require(std::abs(m1_lower_bound(n, eps) - m1) <= 1e-9, tag + " M1 bound formula");
    o.require(std::abs(m2_upper_bound(n, eps) - m2) <= 1e-9, tag + " M2 bound formula");
    o.require(m1 > m2, tag + " M1 > M2");
    std::vector<Disk> d = triple_disks(inst);
    o.require(triple_intersect_exact(d[0], d[1], d[2]).verdict == Verdict::Empty, tag + " triple Empty");
    o.detail << tag << ": " << m1 << " > " << m2 << "; ";
    if (n == 4) {
      ColoredOptimum oracle = colored_oracle(inst.point_set);
      // c is red 2, c' is blue offset 2; a and b are reds 0 and 1
      bool c_prime_far = oracle.blue_of_red[0] != 2 && oracle.blue_of_red[1] != 2;
      o.require(c_prime_far, "n=4 optimum keeps c' away from a and b");
      o.require(std::abs(oracle.best - inst.claimed_optimum.cost) <= cost_tolerance(oracle.best),
                "n=4 claimed optimum matches enumeration");
      o.detail << "n=4 enumeration: c' paired with red " << std::find(oracle.blue_of_red.begin(),
                                                                     oracle.blue_of_red.end(), 2) -
                                                               oracle.blue_of_red.begin()
               << "; ";
    }
  }
  double secs = seconds_since(t0);
  o.require(secs < 5, "runtime < 5 s");
  o.detail << secs << " s";
  return o;
}

Outcome criterion4(const Json& campaign, double secs) {
  Outcome o;
  std::size_t common = counter(campaign, "common_intersection");
  std::size_t stretch = counter(campaign, "sqrt2_stretch");
  double ratio = max_over(campaign, "sqrt2_witness");
  o.require(common == 0, "NonEmpty/Tangent on every instance");
  o.require(stretch == 0 && ratio <= std::sqrt(2.0) + 1e-9, "sqrt2 stretch");
  o.require(secs < 120, "runtime < 2 min");
  o.detail << "n=2..6 x 500: common-intersection violations=" << common << ", max witness ratio=" << ratio << ", "
           << secs << " s";
  return o;
}

Outcome criterion5(const Json& campaign) {
  Outcome o;
  std::size_t disjoint = counter(campaign, "pairwise_disjoint");
  std::size_t vec = counter(campaign, "prop1_vector");
  o.require(disjoint == 0, "no Disjoint pair");
  o.require(vec == 0, "vector inequality");
  std::size_t empty = 0;
  for (const Json& row : campaign["per_n"]) empty += row["empty_triple_events"].get<std::size_t>();
  o.detail << "n=2..5 x 500 colored: disjoint=" << disjoint << ", vector-inequality violations=" << vec
           << ", empty-triple events (reported only)=" << empty;
  return o;
}

Outcome criterion6(const Json& uncolored, const Json& colored) {
  Outcome o;
  std::size_t s5 = counter(uncolored, "sqrt5_stretch") + counter(colored, "sqrt5_stretch");
  std::size_t s25 = counter(uncolored, "eppstein_stretch") + counter(colored, "eppstein_stretch");
  double mid = std::max(max_over(uncolored, "midpoint_shortest_edge"), max_over(colored, "midpoint_shortest_edge"));
  o.require(s5 == 0 && mid <= std::sqrt(5.0) + 1e-9, "sqrt5 bound");
  o.require(s25 == 0 && mid <= 2.5 + 1e-9, "2.5 bound");

  PointSet eq = equilateral_tightness(2.0);
  BruteForceResult bf = max_sum_bruteforce(eq);
  std::vector<Segment> segs = segments_of(eq, bf.matching);
  Point centroid{0, 0};
  for (const Point& p : eq.points) centroid = centroid + p * (1.0 / static_cast<double>(eq.size()));
  double worst = 0;
  for (const Segment& s : segs) {
    double r = (std::hypot(s.p.x - centroid.x, s.p.y - centroid.y) + std::hypot(s.q.x - centroid.x, s.q.y - centroid.y)) /
               std::hypot(s.p.x - s.q.x, s.p.y - s.q.y);
    worst = std::max(worst, std::abs(r - 2 / std::sqrt(3.0)));
  }
  o.require(segs.size() == 3 && worst <= 1e-9, "equilateral ratios 2/sqrt3 at the centroid");
  PiercingResult shrunk = pierce_ellipses(ellipses_of(segs, 0.99 / std::sqrt(3.0)));
  o.require(shrunk.verdict == Verdict::Empty, "factor 0.99/sqrt3 Empty");
  o.detail << "midpoint max ratio=" << mid << ", sqrt5 violations=" << s5 << ", 2.5 violations=" << s25
           << ", equilateral |ratio - 2/sqrt3| <= " << worst << ", 0.99/sqrt3 verdict=" << to_string(shrunk.verdict);
  return o;
}

Outcome criterion7(const Json& clean, const Json& controls, double secs) {
  Outcome o;
  std::size_t i = 0;
  for (LemmaId id : kAllLemmas) {
    const Json& c = clean[i];
    const Json& n = controls[i];
    ++i;
    std::string name = to_string(id);
    std::size_t want = default_trials(id);
    o.require(c["accepted"].get<std::size_t>() == want, name + " accepted trials");
    o.require(c["violations"].get<std::size_t>() == 0, name + " clean");
    o.require(n["violations"].get<std::size_t>() >= 1, name + " negative control caught");
    o.detail << name << " " << c["violations"].get<std::size_t>() << "/" << want << " ctrl "
             << n["violations"].get<std::size_t>() << "; ";
  }
  o.require(secs < 300, "runtime < 5 min");
  o.detail << secs << " s";
  return o;
}

Outcome criterion8(const Json& campaign) {
  Outcome o;
  const Json* row3 = nullptr;
  for (const Json& row : campaign["per_n"]) {
    if (row["n"] == 3) row3 = &row;
  }
  if (!row3) {
    o.require(false, "n=3 row present");
    return o;
  }
  const Json& v = (*row3)["violations"];
  o.require(v["label_unknown"] == 0, "every non-fragile instance labelled");
  o.require(v["easy_witness"] == 0, "A-G witness in all disks");
  o.require(v["hard_case_piercing"] == 0, "H-J pierced");
  o.detail << "fragile=" << (*row3)["fragile"].get<std::size_t>() << " labels=" << (*row3)["case_labels"].dump();
  return o;
}

Outcome criterion9(const Json& campaign) {
  Outcome o;
  std::size_t v = counter(campaign, "segment_distance");
  o.require(v == 0, "distance <= half length");
  o.detail << "segment-distance violations=" << v << " over n=2..6 x 500";
  return o;
}

Outcome criterion10(const Json& uncolored, const Json& colored, const Json& lemmas) {
  Outcome o;
  // Rerun on one thread: identical bytes also rule out scheduling effects.
  bool u = without_timing(uncolored).dump() == without_timing(uncolored_campaign(1)).dump();
  bool c = without_timing(colored).dump() == without_timing(colored_campaign(1)).dump();
  bool l = without_timing(lemmas).dump() == without_timing(lemma_suite(false, 1)).dump();
  o.require(u, "uncolored campaign");
  o.require(c, "colored campaign");
  o.require(l, "lemma suite");
  o.detail << "reruns identical: uncolored=" << u << " colored=" << c << " lemmas=" << l;
  return o;
}

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    Outcome o;
    o.require(false, std::string("exception: ") + e.what());
    return o;
  }
}

}  // namespace

int main() {
  bool all = true;
  auto report = [&](int id, const Outcome& o) {
    all = all && o.pass;
    std::printf("%s criterion %d: %s\n", o.pass ? "PASS" : "FAIL", id, o.detail.str().c_str());
    std::fflush(stdout);
  };

  report(1, guarded(criterion1));
  report(2, guarded(criterion2));
  report(3, guarded(criterion3));

  Json uncolored, colored, lemmas, controls;
  double uncolored_secs = 0, lemma_secs = 0;
  try {
    auto t0 = std::chrono::steady_clock::now();
    uncolored = uncolored_campaign();
    uncolored_secs = seconds_since(t0);
    colored = colored_campaign();
    t0 = std::chrono::steady_clock::now();
    lemmas = lemma_suite(false);
    controls = lemma_suite(true);
    lemma_secs = seconds_since(t0);
  } catch (const std::exception& e) {
    std::printf("FAIL criteria 4-10: %s\n", e.what());
    return 1;
  }

  report(4, guarded([&] { return criterion4(uncolored, uncolored_secs); }));
  report(5, guarded([&] { return criterion5(colored); }));
  report(6, guarded([&] { return criterion6(uncolored, colored); }));
  report(7, guarded([&] { return criterion7(lemmas, controls, lemma_secs); }));
  report(8, guarded([&] { return criterion8(uncolored); }));
  report(9, guarded([&] { return criterion9(uncolored); }));
  report(10, guarded([&] { return criterion10(uncolored, colored, lemmas); }));
  return all ? 0 : 1;
}
