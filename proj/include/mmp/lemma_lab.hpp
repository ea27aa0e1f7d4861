#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "mmp/random.hpp"

namespace mmp {

enum class LemmaId {
  SqrtFiveDisk,      // disk of radius <= r_pq touching D_pq
  Monotone1,         // pointing configuration with orthogonal z
  Monotone2,         // convex-position variant
  CommonPoint1,      // cyclic pointing (case H shape)
  CommonPoint2,      // chain through a crossing (case I shape)
  CommonPoint3,      // case J shape
  HyperbolaArc,      // partner of a max-sum pair lies on the far side of the arc
  Extension,         // extending a matched segment keeps the matching max-sum
  ExtensionColored,  // same on red-blue sets
  Monotone3,         // point on C_pp' with a ray beyond it
};

inline constexpr LemmaId kAllLemmas[] = {
    LemmaId::SqrtFiveDisk, LemmaId::Monotone1,     LemmaId::Monotone2, LemmaId::CommonPoint1,
    LemmaId::CommonPoint2, LemmaId::CommonPoint3,  LemmaId::HyperbolaArc, LemmaId::Extension,
    LemmaId::ExtensionColored, LemmaId::Monotone3,
};

// Stable identifiers used by the CLI and in reports: "lemma1", "lemma5",
// "lemma6", "lemma7", "lemma8", "lemma9", "prop2", "extension",
// "extension-colored", "monotone3".
const char* to_string(LemmaId id);
std::optional<LemmaId> lemma_from_string(std::string_view name);

// 10^3 for checkers that call the brute-force oracle per trial, 10^4 otherwise.
std::size_t default_trials(LemmaId id);

struct LemmaOptions {
  // Break one hypothesis on purpose; a sound checker then reports violations.
  bool negative_control = false;
  // Worker threads; 0 picks the hardware concurrency. Results do not depend
  // on this value.
  unsigned threads = 0;
};

struct LemmaTrialReport {
  std::string lemma;
  std::uint64_t seed = 0;
  bool negative_control = false;
  std::size_t attempted = 0;  // candidate configurations drawn
  std::size_t accepted = 0;   // configurations satisfying the hypothesis
  std::size_t violations = 0;
  // Smallest slack of the checked inequality over accepted trials; negative
  // means the wrong side.
  double worst_margin = 0;
  // Trials whose slack is within tolerance of zero.
  std::size_t near_equal = 0;
  // Proof branches and certificates exercised.
  std::map<std::string, std::size_t> branches;
};

// The sampled sum |p-o| + |q-o| stays within sqrt5 |p-q|.
LemmaTrialReport check_lemma1(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts = {});
// |p-z| - |q-z| < |p-q'| - |q-q'| under the pointing hypothesis.
LemmaTrialReport check_lemma5(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts = {});
// Same inequality for four points in convex position.
LemmaTrialReport check_lemma6(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts = {});
// which in {7, 8, 9}: seven-point configurations in which
// {(a,a'),(b,b'),(c,c')} must not be max-sum. Throws InvalidParameter for
// other values.
LemmaTrialReport check_common_point_lemmas(int which, std::size_t trials, std::uint64_t seed,
                                           const LemmaOptions& opts = {});
// Partner of a max-sum pair never lies strictly on the focus-a side of the arc.
LemmaTrialReport check_prop2(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts = {});
// Substituting an extended partner keeps the matching optimal. Points per
// trial: 2 * pairs <= 8.
LemmaTrialReport check_extension_lemma(std::size_t trials, std::uint64_t seed, bool colored = false,
                                       std::size_t pairs = 3, const LemmaOptions& opts = {});
// |p-p'| + |q-q'| < |p-q| + |p'-q'| for z on C_pp', q on zp', q' beyond z.
LemmaTrialReport check_monotone3(std::size_t trials, std::uint64_t seed, const LemmaOptions& opts = {});

struct LemmaSample {
  double margin = 0;  // slack of the conclusion; negative is the wrong side
  double tol = 0;
};

// Rejection-sampled check shared by the checkers above. Trial i draws from
// Rng::substream(seed, i); `draw` returns nullopt to reject a configuration.
// Throws SamplerStarvation when a trial exhausts 10^6 draws or the overall
// acceptance rate falls below 10^-4.
LemmaTrialReport run_rejection_check(std::string_view name, std::size_t trials, std::uint64_t seed,
                                     const LemmaOptions& opts,
                                     const std::function<std::optional<LemmaSample>(Rng&)>& draw);

LemmaTrialReport run_lemma(LemmaId id, std::size_t trials, std::uint64_t seed, const LemmaOptions& opts = {});

}  // namespace mmp
