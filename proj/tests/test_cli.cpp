#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <sstream>

#include "doctest.h"
#include "mmp/cli.hpp"
#include "mmp/constructions.hpp"
#include "mmp/errors.hpp"
#include "mmp/io.hpp"
#include "mmp/random.hpp"
#include "mmp/report.hpp"
#include "mmp/svg.hpp"

using namespace mmp;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

std::string golden_path(const std::string& name) { return std::string(MMP_GOLDEN_DIR) + "/" + name; }

// Set MMP_UPDATE_GOLDEN=1 to rewrite the snapshot instead of comparing.
void check_golden(const std::string& name, const std::string& actual) {
  if (std::getenv("MMP_UPDATE_GOLDEN")) {
    std::ofstream(golden_path(name), std::ios::binary) << actual;
    return;
  }
  std::ifstream f(golden_path(name), std::ios::binary);
  REQUIRE_MESSAGE(f.good(), "missing golden file " << name);
  std::string expected{std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
  CHECK(actual == expected);
}

PointSetDocument thm2_doc() {
  CounterexampleInstance inst = theorem2_instance(0.02);
  return {inst.name, inst.point_set};
}

PointSetDocument singleton_doc() { return {"singleton", singleton_disk_instance({0, 0}, {4, 0}, {0, 4}, {1, 1})}; }

}  // namespace

TEST_CASE("document round trip") {
  Rng rng(4);
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + rng.bits() % 6;
    std::vector<Point> pts;
    for (std::size_t i = 0; i < 2 * n; ++i) pts.push_back(rng.in_square(1e3 * rng.uniform()));
    PointSetDocument doc;
    if (trial % 3 == 0) doc.name = "doc" + std::to_string(trial);
    doc.point_set = trial % 2 ? PointSet::bichromatic({pts.begin(), pts.begin() + static_cast<long>(n)},
                                                      {pts.begin() + static_cast<long>(n), pts.end()})
                              : PointSet::uncolored(pts);
    std::string text = serialize_document(doc);
    PointSetDocument back = parse_document(text);
    CHECK(same_document(doc, back));
    CHECK(serialize_document(back) == text);
  }
}

TEST_CASE("document parsing rejects malformed input") {
  CHECK_NOTHROW(parse_document(R"({"points": [[0, 0], [1, 2]]})"));
  CHECK_NOTHROW(parse_document(R"({"name": "x", "red": [[0, 0]], "blue": [[1, 1]]})"));
  const char* bad[] = {
      R"({"points": [[0, 0], [1, 2]])",               // truncated
      R"([[0, 0], [1, 2]])",                           // not an object
      R"({"points": []})",                             // empty
      R"({"points": [[0, 0]]})",                       // odd
      R"({"points": [[0, 0], [1]]})",                  // short pair
      R"({"points": [[0, 0], ["a", 1]]})",             // not a number
      R"({"points": [[0, 0], [1e999, 1]]})",           // overflows to infinity
      R"({"red": [[0, 0]], "blue": [[1, 1], [2, 2]]})",  // unbalanced
      R"({"red": [[0, 0]]})",                          // missing blue
      R"({"points": [[0, 0], [1, 1]], "red": [[0, 0]], "blue": [[1, 1]]})",
      R"({"points": [[0, 0], [1, 1]], "colour": "red"})",
      R"({"name": 3, "points": [[0, 0], [1, 1]]})",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_document(text), ParseError);
  }
}

TEST_CASE("fnv1a reference values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
  CHECK(document_digest(thm2_doc()) == document_digest(thm2_doc()));
  CHECK(document_digest(thm2_doc()).size() == 16);
}

TEST_CASE("run report: equilateral and thm2 fixtures") {
  RunReport eq = make_run_report({"equilateral", equilateral_tightness(2.0)});
  CHECK((eq.piercing.verdict == Verdict::NonEmpty || eq.piercing.verdict == Verdict::Tangent));
  CHECK(eq.stretch[1].bound == BoundId::Sqrt2);
  CHECK(eq.stretch[1].holds);
  CHECK(eq.guarantee_failures.empty());

  RunReport t2 = make_run_report(thm2_doc());
  CHECK(t2.colored);
  CHECK(t2.exact);
  CHECK(t2.unique);
  for (const auto& e : t2.pairwise) CHECK(e.overlap == PairOverlap::Overlap);
  CHECK(t2.piercing.verdict == Verdict::Empty);
  REQUIRE(t2.empty_triples.size() == 1);
  CHECK(t2.empty_triples[0] == std::array<std::size_t, 3>{0, 1, 2});
  CHECK(t2.guarantee_failures.empty());
  CHECK(t2.stretch[1].center == std::nullopt);

  Json a = to_json(make_run_report(thm2_doc()), false);
  Json b = to_json(make_run_report(thm2_doc()), false);
  CHECK(a.dump() == b.dump());
  CHECK(without_timing(to_json(t2)).dump() == a.dump());
}

TEST_CASE("svg golden files") {
  PointSetDocument t2 = thm2_doc();
  std::string s2 = render_svg(t2, make_run_report(t2));
  CHECK(count_of(s2, "class=\"segment\"") == 3);
  CHECK(count_of(s2, "class=\"disk\"") == 3);
  CHECK(count_of(s2, "class=\"point\"") == 6);
  CHECK(count_of(s2, "class=\"witness\"") == 0);
  check_golden("thm2.svg", s2);

  PointSetDocument single = singleton_doc();
  RunReport rs = make_run_report(single);
  std::string ss = render_svg(single, rs);
  CHECK(count_of(ss, "class=\"witness\"") == 1);
  check_golden("singleton.svg", ss);
  CHECK(render_svg(single, rs) == ss);

  // witness cross centred on z = (1, 1); the bounding box is the union of the disks
  double lo_x = 0, hi_x = 0, lo_y = 0, hi_y = 0;
  bool first = true;
  for (const Disk& d : rs.disks) {
    if (first) {
      lo_x = d.center.x - d.radius, hi_x = d.center.x + d.radius;
      lo_y = d.center.y - d.radius, hi_y = d.center.y + d.radius;
      first = false;
    }
    lo_x = std::min(lo_x, d.center.x - d.radius), hi_x = std::max(hi_x, d.center.x + d.radius);
    lo_y = std::min(lo_y, d.center.y - d.radius), hi_y = std::max(hi_y, d.center.y + d.radius);
  }
  double s = 560 / std::max(hi_x - lo_x, hi_y - lo_y);
  double px = 300 + s * (1 - (lo_x + hi_x) / 2), py = 300 - s * (1 - (lo_y + hi_y) / 2);
  char buf[64];
  std::snprintf(buf, sizeof buf, "M %.3f %.3f", px - 6, py - 6);
  CHECK(ss.find(buf) != std::string::npos);

  std::string e = empty_svg();
  CHECK(e.find("<svg") != std::string::npos);
  CHECK(e.find("</svg>") != std::string::npos);
  CHECK(count_of(e, "<circle") == 0);

  SvgOptions with_ellipses;
  with_ellipses.ellipse_factor = 1 / std::sqrt(3.0);
  CHECK(count_of(render_svg(t2, make_run_report(t2), with_ellipses), "class=\"ellipse\"") == 3);
}

TEST_CASE("cli exit codes") {
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({}).code == kExitUsage);
  CHECK(cli({"frobnicate"}).code == kExitUsage);

  CliRun bad = cli({"match"}, "{\"points\": [[0,0],");
  CHECK(bad.code == kExitUsage);
  CHECK(bad.err.find("malformed JSON") != std::string::npos);
  CHECK(cli({"match", "-i", "/nonexistent/input.json"}).code == kExitUsage);
  CHECK(cli({"match", "--bound", "sqrt7"}, R"({"points": [[0,0],[1,1]]})").code == kExitUsage);

  std::string big = "{\"points\": [";
  for (int i = 0; i < 18; ++i) big += (i ? "," : "") + std::string("[") + std::to_string(i) + "," + std::to_string(i * i % 7) + "]";
  big += "]}";
  CHECK(cli({"match"}, big).code == kExitSizeCap);
  CliRun heur = cli({"match", "--heuristic"}, big);
  CHECK(heur.code == kExitOk);
  Json hj = Json::parse(heur.out);
  CHECK(hj["matching"]["exact"] == false);
  CHECK(hj["invariants"]["guaranteed"] == false);

  CHECK(cli({"counterexample", "thm2", "--epsilon", "0.027"}).code == kExitUsage);
  CHECK(cli({"counterexample", "thm4"}).code == kExitUsage);
}

TEST_CASE("cli match, counterexample, classify") {
  CliRun m = cli({"match", "--bound", "sqrt5"}, serialize_document(singleton_doc()));
  REQUIRE(m.code == kExitOk);
  Json mj = Json::parse(m.out);
  CHECK(mj["piercing"]["verdict"] == "Tangent");
  CHECK(mj["stretch"]["selected"] == "sqrt5");
  CHECK(mj["case"]["label"] == "A");
  CHECK(mj.contains("timing_ms"));

  CliRun c = cli({"counterexample", "thm2", "--epsilon", "0.02"});
  REQUIRE(c.code == kExitOk);
  Json cj = Json::parse(c.out);
  CHECK(cj["report"]["piercing"]["verdict"] == "Empty");
  CHECK(cj["report"]["mode"] == "colored");
  CHECK(cj["instance"]["oracle_checked"] == true);
  PointSetDocument fixture = parse_document(cj["fixture"].dump());
  CHECK(same_document(fixture, thm2_doc()));

  CliRun c3 = cli({"counterexample", "thm3", "--n", "5"});
  REQUIRE(c3.code == kExitOk);
  CHECK(Json::parse(c3.out)["fixture"]["name"] == "thm3_n5");

  // case E: x points to both crossing segments through a shared head
  PointSetDocument e{std::nullopt,
                     PointSet::uncolored({{0, -3}, {-1, 0.5}, {-1, 0.3}, {0, 0.2}, {1, 0.5}, {1, 0.7}})};
  CliRun cl = cli({"classify"}, serialize_document(e));
  REQUIRE(cl.code == kExitOk);
  Json clj = Json::parse(cl.out);
  CHECK(clj["relations"][0][0].is_null());
  CHECK(clj["relations"][1][2] == "Cross");
  CHECK(cli({"classify"}, R"({"points": [[0,0],[1,1]]})").code == kExitUsage);
}

TEST_CASE("cli lemmas and experiments") {
  CliRun l = cli({"lemmas", "--lemma", "lemma1", "--trials", "200", "--seed", "3"});
  REQUIRE(l.code == kExitOk);
  Json lj = Json::parse(l.out);
  CHECK(lj["lemma"] == "lemma1");
  CHECK(lj["violations"] == 0);
  CHECK(lj["accepted"] == 200);
  CHECK(cli({"lemmas", "--lemma", "lemma1", "--trials", "200", "--seed", "3"}).out == l.out);

  CliRun neg = cli({"lemmas", "--lemma", "prop2", "--trials", "100", "--negative-control"});
  CHECK(neg.code == kExitOk);
  CHECK(Json::parse(neg.out)["violations"].get<std::size_t>() > 0);
  CHECK(cli({"lemmas", "--lemma", "lemma42"}).code == kExitUsage);

  CliRun x = cli({"experiment", "--n", "3", "--trials", "500", "--seed", "2"});
  REQUIRE(x.code == kExitOk);
  Json xj = Json::parse(x.out);
  CHECK(xj["total_violations"] == 0);
  CHECK(xj["per_n"][0]["max_ratio"]["sqrt2_witness"].get<double>() <= std::sqrt(2.0));
  CHECK(xj["per_n"][0].contains("case_labels"));

  CliRun col = cli({"experiment", "--n", "3", "--trials", "500", "--seed", "2", "--colored"});
  REQUIRE(col.code == kExitOk);
  CHECK(Json::parse(col.out)["per_n"][0]["violations"]["pairwise_disjoint"] == 0);

  CliRun two = cli({"experiment", "--n", "2", "--trials", "500", "--seed", "2"});
  REQUIRE(two.code == kExitOk);
  CHECK(Json::parse(two.out)["per_n"][0]["violations"]["common_intersection"] == 0);

  Json a = without_timing(Json::parse(cli({"experiment", "--n", "2-3", "--trials", "100", "--threads", "1"}).out));
  Json b = without_timing(Json::parse(cli({"experiment", "--n", "2,3", "--trials", "100", "--threads", "3"}).out));
  CHECK(a.dump() == b.dump());
  CHECK(cli({"experiment", "--n", "9"}).code == kExitSizeCap);
  CHECK(cli({"experiment", "--n", "x"}).code == kExitUsage);
}

TEST_CASE("cli svg") {
  CliRun s = cli({"svg"}, serialize_document(thm2_doc()));
  REQUIRE(s.code == kExitOk);
  CHECK(s.out == render_svg(thm2_doc(), make_run_report(thm2_doc())));
  CliRun blank = cli({"svg"}, "  \n");
  CHECK(blank.code == kExitOk);
  CHECK(blank.out == empty_svg());
  CliRun ell = cli({"svg", "--ellipse-factor", "0.6"}, serialize_document(thm2_doc()));
  CHECK(count_of(ell.out, "class=\"ellipse\"") == 3);
}
