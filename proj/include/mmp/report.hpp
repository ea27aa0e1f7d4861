#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "mmp/classify.hpp"
#include "mmp/io.hpp"
#include "mmp/lemma_lab.hpp"
#include "mmp/matching.hpp"
#include "mmp/piercing.hpp"

namespace mmp {

using Json = nlohmann::ordered_json;

// Stretch bound ids accepted by --bound.
enum class BoundId { Fingerhut, Sqrt2, Sqrt5, Eppstein };
const char* to_string(BoundId b);
std::optional<BoundId> bound_from_string(std::string_view s);
double bound_value(BoundId b);

struct RunOptions {
  // 2-opt local search instead of enumeration; no size cap, no guarantees.
  bool heuristic = false;
  BoundId bound = BoundId::Sqrt2;
};

struct PairOverlapEntry {
  std::size_t first = 0;  // indices into the matching's pairs
  std::size_t second = 0;
  PairOverlap overlap = PairOverlap::Overlap;
  // |a-a'| + |b-b'| - |(a+a') - (b+b')|; negative means disjoint disks.
  double slack = 0;
};

struct StretchEntry {
  BoundId bound = BoundId::Sqrt2;
  // fingerhut: point in every ellipse at factor 1/sqrt3; sqrt2: the disk
  // witness; sqrt5, eppstein: midpoint of a shortest pair.
  std::optional<Point> center;
  std::optional<double> max_ratio;
  bool holds = false;
};

struct RunReport {
  std::optional<std::string> name;
  std::string digest;
  bool colored = false;
  std::size_t pairs = 0;
  Matching matching;
  bool exact = false;
  bool unique = false;
  std::vector<Disk> disks;
  std::vector<PairOverlapEntry> pairwise;
  PiercingResult piercing;
  // Pair-index triples with no common point, listed when the family is
  // not pierced.
  std::vector<std::array<std::size_t, 3>> empty_triples;
  std::vector<StretchEntry> stretch;  // fingerhut, sqrt2, sqrt5, eppstein
  BoundId selected_bound = BoundId::Sqrt2;
  // Witness distance to every segment within half its length.
  std::optional<bool> segment_distance_holds;
  bool two_opt_maximal = false;
  // Three-pair matchings only.
  std::optional<Classification> classification;
  std::optional<Point> case_witness;
  // Guaranteed properties that failed: "common_intersection" (uncolored)
  // and "pairwise_intersection". Only meaningful when exact.
  std::vector<std::string> guarantee_failures;
  double timing_ms = 0;
};

// Throws SizeLimitExceeded above the brute-force cap unless heuristic.
RunReport make_run_report(const PointSetDocument& doc, const RunOptions& opts = {});

Json to_json(const RunReport& r, bool with_timing = true);
Json to_json(const LemmaTrialReport& r);
Json point_json(Point p);

struct CampaignOptions {
  std::vector<std::size_t> pair_counts{3};
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  bool colored = false;
  unsigned threads = 0;  // 0: hardware concurrency
};

// Random instances with coordinates uniform in [-1,1]^2, solved by
// enumeration. Per pair count: violation counters for every guaranteed
// property (all must stay 0), maximum stretch ratios, a histogram of the
// disk-witness ratio, colored empty-triple events, and case labels for
// three uncolored pairs. Trial t of pair count n draws from
// Rng::substream(seed, n << 32 | t). Throws SizeLimitExceeded above the cap.
Json run_campaign(const CampaignOptions& opts);

// Drops every "timing_ms" member, recursively.
Json without_timing(Json j);

}  // namespace mmp
