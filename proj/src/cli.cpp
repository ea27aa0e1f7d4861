#include "mmp/cli.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "mmp/classify.hpp"
#include "mmp/constructions.hpp"
#include "mmp/errors.hpp"
#include "mmp/io.hpp"
#include "mmp/lemma_lab.hpp"
#include "mmp/report.hpp"
#include "mmp/svg.hpp"

namespace mmp {

namespace {

// Carries an exit code out of a subcommand handler.
struct CliFailure {
  int code;
  std::string message;
};

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CliFailure{kExitUsage, "cannot read " + path};
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw CliFailure{kExitUsage, "cannot write " + path};
  f << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// "4", "2-6" or "2,3,5".
std::vector<std::size_t> parse_pair_counts(const std::string& text) {
  std::vector<std::size_t> out;
  try {
    if (auto dash = text.find('-'); dash != std::string::npos) {
      std::size_t lo = std::stoul(text.substr(0, dash)), hi = std::stoul(text.substr(dash + 1));
      if (lo > hi) throw CliFailure{kExitUsage, "empty range " + text};
      for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    } else {
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) out.push_back(std::stoul(item));
    }
  } catch (const std::logic_error&) {
    throw CliFailure{kExitUsage, "bad pair counts '" + text + "'"};
  }
  if (out.empty()) throw CliFailure{kExitUsage, "bad pair counts '" + text + "'"};
  return out;
}

const char* oriented(PairRelation r, bool flipped) {
  if (!flipped) return to_string(r);
  if (r == PairRelation::FirstPointsToSecond) return to_string(PairRelation::SecondPointsToFirst);
  if (r == PairRelation::SecondPointsToFirst) return to_string(PairRelation::FirstPointsToSecond);
  return to_string(r);
}

int exit_for(const RunReport& r) { return r.exact && !r.guarantee_failures.empty() ? kExitInvariant : kExitOk; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Max-sum matchings: diametral disks, piercing points and lemma checks", "mmp"};
  app.require_subcommand(1);

  std::string input = "-", out_path, bound_name = "sqrt2";
  bool heuristic = false;

  auto* match = app.add_subcommand("match", "Max-sum matching, disks, piercing and stretch report");
  match->add_option("-i,--input", input, "PointSetDocument JSON file, - for stdin");
  match->add_flag("--heuristic", heuristic, "2-opt local search instead of enumeration");
  match->add_option("--bound", bound_name, "fingerhut | sqrt2 | sqrt5 | eppstein");
  match->add_option("--out", out_path, "output file");

  std::string family;
  double epsilon = 0;
  std::size_t n_pairs = 4;
  auto* counter = app.add_subcommand("counterexample", "Colored instances with an empty disk triple");
  counter->add_option("family", family, "thm2 | thm3")->required();
  auto* eps_opt = counter->add_option("--epsilon", epsilon, "perturbation, below the family threshold");
  counter->add_option("--n", n_pairs, "pairs for thm3 (>= 4)");
  counter->add_option("--out", out_path, "output file");

  auto* classify = app.add_subcommand("classify", "Case label of a three-pair max-sum matching");
  classify->add_option("-i,--input", input, "PointSetDocument JSON file with 6 points");
  classify->add_option("--out", out_path, "output file");

  std::string lemma = "all";
  std::size_t trials = 0;
  std::uint64_t seed = 1;
  bool negative = false;
  unsigned threads = 0;
  auto* lemmas = app.add_subcommand("lemmas", "Randomized checks of the technical lemmas");
  lemmas->add_option("--lemma", lemma, "lemma id or all");
  lemmas->add_option("--trials", trials, "accepted trials (default per lemma)");
  lemmas->add_option("--seed", seed, "seed");
  lemmas->add_flag("--negative-control", negative, "break one hypothesis on purpose");
  lemmas->add_option("--threads", threads, "worker threads, 0 for all cores");
  lemmas->add_option("--out", out_path, "output file");

  std::string n_spec = "3";
  std::size_t campaign_trials = 500;
  bool colored = false;
  auto* experiment = app.add_subcommand("experiment", "Random-instance campaign");
  experiment->add_option("--n", n_spec, "pair counts: 4, 2-6 or 2,3,5");
  experiment->add_option("--trials", campaign_trials, "instances per pair count");
  experiment->add_option("--seed", seed, "seed");
  experiment->add_flag("--colored", colored, "red-blue instances");
  experiment->add_option("--threads", threads, "worker threads, 0 for all cores");
  experiment->add_option("--out", out_path, "output file");

  double ellipse_factor = 0;
  auto* svg = app.add_subcommand("svg", "SVG figure of the matching, its disks and the witness");
  svg->add_option("-i,--input", input, "PointSetDocument JSON file, - for stdin");
  svg->add_flag("--heuristic", heuristic, "2-opt local search instead of enumeration");
  auto* factor_opt = svg->add_option("--ellipse-factor", ellipse_factor, "also draw ellipses at this factor");
  svg->add_option("--out", out_path, "output file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*match) {
      auto bound = bound_from_string(bound_name);
      if (!bound) throw CliFailure{kExitUsage, "unknown bound " + bound_name};
      PointSetDocument doc = parse_document(read_input(input, in));
      RunReport r = make_run_report(doc, {heuristic, *bound});
      write_output(out_path, dump(to_json(r)), out);
      return exit_for(r);
    }

    if (*counter) {
      CounterexampleInstance inst;
      if (family == "thm2") {
        inst = theorem2_instance(eps_opt->count() ? epsilon : theorem2_default_epsilon());
      } else if (family == "thm3") {
        inst = theorem3_instance(n_pairs, eps_opt->count() ? epsilon : theorem3_default_epsilon(n_pairs));
      } else {
        throw CliFailure{kExitUsage, "unknown family " + family};
      }
      PointSetDocument doc{inst.name, inst.point_set};
      RunOptions opts;
      opts.heuristic = inst.point_set.size() > kBruteForceMaxPoints;
      RunReport r = make_run_report(doc, opts);
      double threshold = family == "thm2" ? theorem2_threshold() : theorem3_threshold(inst.n);
      Json j;
      j["fixture"] = Json::parse(serialize_document(doc));
      j["instance"] = {{"family", family},
                       {"n", inst.n},
                       {"epsilon", inst.epsilon},
                       {"threshold", threshold},
                       {"claimed_cost", inst.claimed_optimum.cost},
                       {"m1_lower_bound", m1_lower_bound(inst.n, inst.epsilon)},
                       {"m2_upper_bound", m2_upper_bound(inst.n, inst.epsilon)},
                       {"empty_triple", inst.empty_triple},
                       {"empty_depth", inst.empty_depth},
                       {"oracle_checked", inst.oracle_checked}};
      j["report"] = to_json(r);
      write_output(out_path, dump(j), out);
      return exit_for(r);
    }

    if (*classify) {
      PointSetDocument doc = parse_document(read_input(input, in));
      if (doc.point_set.size() != 6) throw CliFailure{kExitUsage, "classify needs exactly 6 points"};
      RunReport r = make_run_report(doc);
      const Classification& c = *r.classification;
      Json matrix = Json::array();
      for (std::size_t i = 0; i < 3; ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < 3; ++j) {
          if (i == j) {
            row.push_back(nullptr);
            continue;
          }
          std::size_t lo = std::min(i, j), hi = std::max(i, j);
          std::size_t idx = lo == 0 ? hi - 1 : 2;
          row.push_back(oriented(c.relations[idx], i > j));
        }
        matrix.push_back(row);
      }
      Json segments = Json::array();
      for (auto [a, b] : r.matching.pairs) segments.push_back(Json::array({a, b}));
      Json j = {{"label", to_string(c.label)},
                {"group", to_string(c.group)},
                {"fragile", c.fragile},
                {"segments", segments},
                {"relations", matrix},
                {"witness", r.case_witness ? point_json(*r.case_witness) : Json(nullptr)},
                {"piercing", to_string(r.piercing.verdict)}};
      write_output(out_path, dump(j), out);
      return exit_for(r);
    }

    if (*lemmas) {
      std::vector<LemmaId> ids;
      if (lemma == "all") {
        ids.assign(std::begin(kAllLemmas), std::end(kAllLemmas));
      } else if (auto id = lemma_from_string(lemma)) {
        ids.push_back(*id);
      } else {
        throw CliFailure{kExitUsage, "unknown lemma " + lemma};
      }
      LemmaOptions opts{negative, threads};
      Json reports = Json::array();
      bool violated = false;
      for (LemmaId id : ids) {
        LemmaTrialReport r = run_lemma(id, trials ? trials : default_trials(id), seed, opts);
        violated = violated || r.violations > 0;
        reports.push_back(to_json(r));
      }
      write_output(out_path, dump(ids.size() == 1 ? reports[0] : reports), out);
      return violated && !negative ? kExitInvariant : kExitOk;
    }

    if (*experiment) {
      CampaignOptions opts;
      opts.pair_counts = parse_pair_counts(n_spec);
      opts.trials = campaign_trials;
      opts.seed = seed;
      opts.colored = colored;
      opts.threads = threads;
      Json j = run_campaign(opts);
      write_output(out_path, dump(j), out);
      return j["total_violations"].get<std::size_t>() > 0 ? kExitInvariant : kExitOk;
    }

    if (*svg) {
      std::string text = read_input(input, in);
      if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
        write_output(out_path, empty_svg(), out);
        return kExitOk;
      }
      PointSetDocument doc = parse_document(text);
      RunOptions opts;
      opts.heuristic = heuristic;
      RunReport r = make_run_report(doc, opts);
      SvgOptions so;
      if (factor_opt->count()) so.ellipse_factor = ellipse_factor;
      write_output(out_path, render_svg(doc, r, so), out);
      return kExitOk;
    }
  } catch (const CliFailure& f) {
    err << "error: " << f.message << "\n";
    return f.code;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const SizeLimitExceeded& e) {
    err << "error: " << e.what() << " (use --heuristic)\n";
    return kExitSizeCap;
  } catch (const SamplerStarvation& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ConstructionFailure& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvariant;
  }
  return kExitUsage;
}

}  // namespace mmp
