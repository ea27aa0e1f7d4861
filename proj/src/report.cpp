#include "mmp/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <exception>
#include <map>
#include <numbers>
#include <thread>

#include "mmp/errors.hpp"
#include "mmp/random.hpp"
#include "mmp/tolerance.hpp"

namespace mmp {

const char* to_string(BoundId b) {
  switch (b) {
    case BoundId::Fingerhut: return "fingerhut";
    case BoundId::Sqrt2: return "sqrt2";
    case BoundId::Sqrt5: return "sqrt5";
    case BoundId::Eppstein: return "eppstein";
  }
  return "?";
}

std::optional<BoundId> bound_from_string(std::string_view s) {
  for (BoundId b : {BoundId::Fingerhut, BoundId::Sqrt2, BoundId::Sqrt5, BoundId::Eppstein}) {
    if (s == to_string(b)) return b;
  }
  return std::nullopt;
}

double bound_value(BoundId b) {
  switch (b) {
    case BoundId::Fingerhut: return kFingerhutBound;
    case BoundId::Sqrt2: return kSqrt2Bound;
    case BoundId::Sqrt5: return kSqrt5Bound;
    case BoundId::Eppstein: return kEppsteinBound;
  }
  return 0;
}

Json point_json(Point p) { return Json::array({p.x, p.y}); }

namespace {

Json optional_point(const std::optional<Point>& p) { return p ? point_json(*p) : Json(nullptr); }

double vector_slack(const Segment& s1, const Segment& s2) {
  return s1.length() + s2.length() - norm((s1.p + s1.q) - (s2.p + s2.q));
}

StretchEntry stretch_at(std::span<const Segment> segs, BoundId b, std::optional<Point> center) {
  StretchEntry e;
  e.bound = b;
  e.center = center;
  if (center) {
    StretchReport s = stretch_report(segs, *center, bound_value(b));
    e.max_ratio = s.max_ratio;
    e.holds = s.holds;
  }
  return e;
}

}  // namespace

RunReport make_run_report(const PointSetDocument& doc, const RunOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  const PointSet& ps = doc.point_set;
  ps.validate();

  RunReport r;
  r.name = doc.name;
  r.digest = document_digest(doc);
  r.colored = ps.colored();
  r.pairs = ps.pair_count();
  r.selected_bound = opts.bound;
  if (opts.heuristic) {
    r.matching = max_sum_local_search(ps).matching;
  } else {
    BruteForceResult bf = max_sum_bruteforce(ps);
    r.matching = bf.matching;
    r.exact = true;
    r.unique = bf.is_unique;
  }

  std::vector<Segment> segs = segments_of(ps, r.matching);
  r.disks = disks_of(segs);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size(); ++j) {
      r.pairwise.push_back({i, j, pairwise_intersect(r.disks[i], r.disks[j]), vector_slack(segs[i], segs[j])});
    }
  }
  r.piercing = pierce_disks(r.disks);

  // Triple enumeration is cubic; large heuristic runs skip it.
  constexpr std::size_t kTripleListMaxPairs = 64;
  if (r.piercing.verdict == Verdict::Empty && r.pairs >= 3 && r.pairs <= kTripleListMaxPairs) {
    for (std::size_t i = 0; i < r.pairs; ++i) {
      for (std::size_t j = i + 1; j < r.pairs; ++j) {
        for (std::size_t k = j + 1; k < r.pairs; ++k) {
          Disk tri[] = {r.disks[i], r.disks[j], r.disks[k]};
          if (small_family_exact(tri).verdict == Verdict::Empty) r.empty_triples.push_back({i, j, k});
        }
      }
    }
  }

  PiercingResult ell = pierce_ellipses(ellipses_of(segs, 1 / std::numbers::sqrt3));
  Point mid = midpoint_shortest_edge(segs);
  r.stretch.push_back(stretch_at(segs, BoundId::Fingerhut, ell.witness));
  r.stretch.push_back(stretch_at(segs, BoundId::Sqrt2, r.piercing.witness));
  r.stretch.push_back(stretch_at(segs, BoundId::Sqrt5, mid));
  r.stretch.push_back(stretch_at(segs, BoundId::Eppstein, mid));
  if (r.piercing.witness) {
    r.segment_distance_holds = stretch_report(segs, *r.piercing.witness, kSqrt2Bound).segment_distance_holds;
  }
  r.two_opt_maximal = verify_2opt_maximality(ps, r.matching).empty();

  if (r.pairs == 3) {
    r.classification = classify_three(ps, r.matching);
    if (is_easy_case(r.classification->label)) {
      try {
        r.case_witness = witness_easy_case(ps, r.matching, *r.classification);
      } catch (const ConstructionFailure&) {
      }
    }
  }

  if (!r.colored && r.piercing.verdict == Verdict::Empty) r.guarantee_failures.push_back("common_intersection");
  if (std::any_of(r.pairwise.begin(), r.pairwise.end(),
                  [](const PairOverlapEntry& e) { return e.overlap == PairOverlap::Disjoint; })) {
    r.guarantee_failures.push_back("pairwise_intersection");
  }
  r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

Json to_json(const RunReport& r, bool with_timing) {
  Json j;
  j["name"] = r.name ? Json(*r.name) : Json(nullptr);
  j["input_digest"] = r.digest;
  j["mode"] = r.colored ? "colored" : "uncolored";
  j["pairs"] = r.pairs;

  Json pairs = Json::array();
  for (auto [a, b] : r.matching.pairs) pairs.push_back(Json::array({a, b}));
  j["matching"] = {{"method", r.exact ? "bruteforce" : "local_search"},
                   {"exact", r.exact},
                   {"unique", r.unique},
                   {"pairs", pairs},
                   {"cost", r.matching.cost}};

  Json disks = Json::array();
  for (const Disk& d : r.disks) disks.push_back({{"center", point_json(d.center)}, {"radius", d.radius}});
  j["disks"] = disks;

  Json pw = Json::array();
  for (const auto& e : r.pairwise) {
    pw.push_back({{"pairs", Json::array({e.first, e.second})}, {"overlap", to_string(e.overlap)}, {"slack", e.slack}});
  }
  j["pairwise"] = pw;

  j["piercing"] = {{"verdict", to_string(r.piercing.verdict)},
                   {"witness", optional_point(r.piercing.witness)},
                   {"deepest", point_json(r.piercing.deepest)},
                   {"depth", r.piercing.depth},
                   {"iterations", r.piercing.iterations}};
  Json triples = Json::array();
  for (const auto& t : r.empty_triples) triples.push_back(Json::array({t[0], t[1], t[2]}));
  j["empty_triples"] = triples;

  Json bounds = Json::array();
  for (const StretchEntry& e : r.stretch) {
    bounds.push_back({{"bound", to_string(e.bound)},
                      {"value", bound_value(e.bound)},
                      {"center", optional_point(e.center)},
                      {"max_ratio", e.max_ratio ? Json(*e.max_ratio) : Json(nullptr)},
                      {"holds", e.holds}});
  }
  j["stretch"] = {{"selected", to_string(r.selected_bound)}, {"bounds", bounds}};
  j["segment_distance_holds"] = r.segment_distance_holds ? Json(*r.segment_distance_holds) : Json(nullptr);
  j["two_opt_maximal"] = r.two_opt_maximal;

  if (r.classification) {
    const Classification& c = *r.classification;
    Json rel = Json::array();
    for (PairRelation p : c.relations) rel.push_back(to_string(p));
    j["case"] = {{"label", to_string(c.label)},
                 {"group", to_string(c.group)},
                 {"fragile", c.fragile},
                 {"crossings", c.crossings},
                 {"relations", rel},
                 {"roles", Json::array({c.roles[0], c.roles[1], c.roles[2]})},
                 {"witness", optional_point(r.case_witness)}};
  } else {
    j["case"] = nullptr;
  }
  j["invariants"] = {{"guaranteed", r.exact}, {"failures", r.guarantee_failures}};
  if (with_timing) j["timing_ms"] = r.timing_ms;
  return j;
}

Json to_json(const LemmaTrialReport& r) {
  Json branches = Json::object();
  for (const auto& [k, v] : r.branches) branches[k] = v;
  return {{"lemma", r.lemma},
          {"seed", r.seed},
          {"negative_control", r.negative_control},
          {"attempted", r.attempted},
          {"accepted", r.accepted},
          {"violations", r.violations},
          {"worst_margin", r.worst_margin},
          {"near_equal", r.near_equal},
          {"branches", branches}};
}

Json without_timing(Json j) {
  if (j.is_object()) {
    j.erase("timing_ms");
    for (auto& [k, v] : j.items()) v = without_timing(v);
  } else if (j.is_array()) {
    for (auto& v : j) v = without_timing(v);
  }
  return j;
}

namespace {

constexpr const char* kViolationKeys[] = {
    "common_intersection", "pairwise_disjoint", "prop1_vector",   "sqrt2_stretch",  "segment_distance",
    "sqrt5_stretch",       "eppstein_stretch",  "label_unknown",  "easy_witness",   "hard_case_piercing",
};
constexpr std::size_t kViolationKinds = std::size(kViolationKeys);

// Indices into kViolationKeys.
enum Violation : std::size_t {
  kCommonIntersection,
  kPairwiseDisjoint,
  kProp1Vector,
  kSqrt2Stretch,
  kSegmentDistance,
  kSqrt5Stretch,
  kEppsteinStretch,
  kLabelUnknown,
  kEasyWitness,
  kHardCasePiercing,
};

constexpr double kHistLow = 1.0;
constexpr double kHistWidth = 0.05;
constexpr std::size_t kHistBins = 9;

struct TrialStats {
  std::array<bool, kViolationKinds> violated{};
  bool empty_triple = false;
  std::optional<double> sqrt2_ratio;
  double midpoint_ratio = 1;
  std::optional<CaseLabel> label;
  bool fragile = false;
};

TrialStats run_trial(std::size_t n, bool colored, Rng& rng) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < 2 * n; ++i) pts.push_back(rng.in_square());
  PointSet ps = colored ? PointSet::bichromatic({pts.begin(), pts.begin() + static_cast<long>(n)},
                                                {pts.begin() + static_cast<long>(n), pts.end()})
                        : PointSet::uncolored(pts);
  Matching m = max_sum_bruteforce(ps).matching;
  std::vector<Segment> segs = segments_of(ps, m);
  std::vector<Disk> disks = disks_of(segs);
  const double abs_tol = 1e-9 * tolerance_factor();

  TrialStats t;
  auto flag = [&](std::size_t k) { t.violated[k] = true; };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pairwise_intersect(disks[i], disks[j]) == PairOverlap::Disjoint) flag(kPairwiseDisjoint);
      if (vector_slack(segs[i], segs[j]) < -abs_tol) flag(kProp1Vector);
    }
  }

  PiercingResult pr = pierce_disks(disks);
  if (pr.verdict == Verdict::Empty) {
    if (colored) t.empty_triple = true;
    else flag(kCommonIntersection);
  }
  if (pr.witness) {
    StretchReport s = stretch_report(segs, *pr.witness, kSqrt2Bound);
    t.sqrt2_ratio = s.max_ratio;
    if (!s.holds) flag(kSqrt2Stretch);
    if (!s.segment_distance_holds) flag(kSegmentDistance);
  }
  Point mid = midpoint_shortest_edge(segs);
  StretchReport s5 = stretch_report(segs, mid, kSqrt5Bound);
  t.midpoint_ratio = s5.max_ratio;
  if (!s5.holds) flag(kSqrt5Stretch);
  if (!stretch_report(segs, mid, kEppsteinBound).holds) flag(kEppsteinStretch);

  if (n == 3 && !colored) {
    Classification c = classify_three(ps, m);
    t.label = c.label;
    t.fragile = c.fragile;
    if (c.label == CaseLabel::NotMaxSumCompatible) {
      if (!c.fragile) flag(kLabelUnknown);
    } else if (is_easy_case(c.label)) {
      try {
        Point w = witness_easy_case(ps, m, c);
        for (const Disk& d : disks) {
          if (in_disk(w, d) == Containment::Exterior) flag(kEasyWitness);
        }
      } catch (const ConstructionFailure&) {
        flag(kEasyWitness);
      }
    } else if (pr.verdict == Verdict::Empty) {
      flag(kHardCasePiercing);
    }
  }
  return t;
}

}  // namespace

Json run_campaign(const CampaignOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  for (std::size_t n : opts.pair_counts) {
    if (n == 0) throw InvalidParameter("pair count must be positive");
    if (2 * n > kBruteForceMaxPoints) {
      throw SizeLimitExceeded("campaign needs at most " + std::to_string(kBruteForceMaxPoints / 2) + " pairs");
    }
  }
  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());

  Json per_n = Json::array();
  std::size_t total = 0;
  for (std::size_t n : opts.pair_counts) {
    std::vector<TrialStats> stats(opts.trials);
    unsigned workers = static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(threads, opts.trials)));
    std::vector<std::exception_ptr> errors(workers);
    auto work = [&](unsigned w) {
      try {
        for (std::size_t t = w; t < opts.trials; t += workers) {
          Rng rng = Rng::substream(opts.seed, (static_cast<std::uint64_t>(n) << 32) | t);
          stats[t] = run_trial(n, opts.colored, rng);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }

    std::array<std::size_t, kViolationKinds> counts{};
    std::size_t empty_events = 0, fragile = 0;
    std::optional<double> max_sqrt2;
    double max_mid = 1;
    std::vector<std::size_t> hist(kHistBins, 0);
    std::map<std::string, std::size_t> labels;
    for (const TrialStats& t : stats) {
      for (std::size_t k = 0; k < kViolationKinds; ++k) counts[k] += t.violated[k];
      empty_events += t.empty_triple;
      if (t.sqrt2_ratio) {
        max_sqrt2 = std::max(max_sqrt2.value_or(1.0), *t.sqrt2_ratio);
        auto bin = static_cast<std::size_t>(std::max(0.0, (*t.sqrt2_ratio - kHistLow) / kHistWidth));
        ++hist[std::min(bin, kHistBins - 1)];
      }
      max_mid = std::max(max_mid, t.midpoint_ratio);
      if (t.label) ++labels[to_string(*t.label)];
      fragile += t.fragile;
    }

    Json viol = Json::object();
    std::size_t sum = 0;
    for (std::size_t k = 0; k < kViolationKinds; ++k) {
      viol[kViolationKeys[k]] = counts[k];
      sum += counts[k];
    }
    total += sum;
    Json entry = {{"n", n},
                  {"trials", opts.trials},
                  {"violations", viol},
                  {"violation_total", sum},
                  {"empty_triple_events", empty_events},
                  {"max_ratio",
                   {{"sqrt2_witness", max_sqrt2 ? Json(*max_sqrt2) : Json(nullptr)},
                    {"midpoint_shortest_edge", max_mid}}},
                  {"sqrt2_histogram", {{"low", kHistLow}, {"width", kHistWidth}, {"counts", hist}}}};
    if (n == 3 && !opts.colored) {
      Json lab = Json::object();
      for (const auto& [k, v] : labels) lab[k] = v;
      entry["case_labels"] = lab;
      entry["fragile"] = fragile;
    }
    per_n.push_back(entry);
  }

  Json counts = Json::array();
  for (std::size_t n : opts.pair_counts) counts.push_back(n);
  return {{"mode", opts.colored ? "colored" : "uncolored"},
          {"seed", opts.seed},
          {"trials", opts.trials},
          {"pair_counts", counts},
          {"per_n", per_n},
          {"total_violations", total},
          {"timing_ms", std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count()}};
}

}  // namespace mmp
