#include "mmp/classify.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "mmp/errors.hpp"
#include "mmp/tolerance.hpp"

namespace mmp {

const char* to_string(PairRelation r) {
  switch (r) {
    case PairRelation::Cross: return "Cross";
    case PairRelation::FirstPointsToSecond: return "FirstPointsToSecond";
    case PairRelation::SecondPointsToFirst: return "SecondPointsToFirst";
    case PairRelation::NotPointing: return "NotPointing";
    case PairRelation::ConvexDisjoint: return "ConvexDisjoint";
  }
  return "?";
}

const char* to_string(CaseLabel c) {
  static constexpr const char* names[] = {"A", "B", "C", "D", "E", "F", "G", "H", "I", "J",
                                          "NotMaxSumCompatible"};
  return names[static_cast<int>(c)];
}

const char* to_string(CaseGroup g) {
  static constexpr const char* names[] = {"A", "B", "CD", "EFG", "H", "I", "J", "None"};
  return names[static_cast<int>(g)];
}

CaseGroup group_of(CaseLabel c) {
  switch (c) {
    case CaseLabel::A: return CaseGroup::A;
    case CaseLabel::B: return CaseGroup::B;
    case CaseLabel::C:
    case CaseLabel::D: return CaseGroup::CD;
    case CaseLabel::E:
    case CaseLabel::F:
    case CaseLabel::G: return CaseGroup::EFG;
    case CaseLabel::H: return CaseGroup::H;
    case CaseLabel::I: return CaseGroup::I;
    case CaseLabel::J: return CaseGroup::J;
    case CaseLabel::NotMaxSumCompatible: return CaseGroup::None;
  }
  return CaseGroup::None;
}

bool is_easy_case(CaseLabel c) { return c <= CaseLabel::G; }

namespace {

// Distance from x to the line through a and b (or to a when a == b).
double line_distance(Point x, Point a, Point b) {
  double len = distance(a, b);
  if (len == 0) return distance(x, a);
  return std::abs(cross(b - a, x - a)) / len;
}

// Some point of the four lies within tolerance of a line through two others.
bool near_collinear(const std::array<Point, 4>& pts) {
  double tol = boundary_tolerance(coordinate_scale(pts));
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      for (std::size_t k = j + 1; k < 4; ++k) {
        if (i == j || i == k) continue;
        if (line_distance(pts[i], pts[j], pts[k]) <= tol) return true;
      }
    }
  }
  return false;
}

}  // namespace

RelationDetail relate(const Segment& s1, const Segment& s2) {
  RelationDetail out;
  const std::array<Point, 4> pts{s1.p, s1.q, s2.p, s2.q};
  out.fragile = near_collinear(pts);

  CrossResult x = segments_cross(s1, s2);
  if (x.crosses) {
    out.relation = PairRelation::Cross;
    out.crossing = crossing_point(s1, s2);
    if (x.improper) out.fragile = true;
    return out;
  }

  // Exactly one endpoint lies inside the triangle of the other three unless
  // the four points are in convex position.
  for (int which = 0; which < 2; ++which) {
    const Segment& mover = which == 0 ? s1 : s2;
    const Segment& target = which == 0 ? s2 : s1;
    for (Segment oriented : {mover, mover.reversed()}) {
      if (!strictly_inside_triangle(oriented.q, oriented.p, target.p, target.q)) continue;
      out.head = oriented.q;
      Containment c = in_disk(oriented.q, diametral_disk(target));
      if (c == Containment::Boundary) out.fragile = true;
      if (c == Containment::Interior) {
        out.relation = which == 0 ? PairRelation::FirstPointsToSecond : PairRelation::SecondPointsToFirst;
      } else {
        out.relation = PairRelation::NotPointing;
      }
      return out;
    }
  }
  out.relation = PairRelation::ConvexDisjoint;
  return out;
}

PairRelation pair_relation(const Segment& s1, const Segment& s2) { return relate(s1, s2).relation; }

namespace {

// Pairwise view of three segments used by the decision table.
struct Relations {
  std::array<std::array<bool, 3>, 3> cross{};
  std::array<std::array<bool, 3>, 3> points{};  // points[i][j]: i points to j
  std::array<std::array<std::optional<Point>, 3>, 3> head{};
  std::array<std::array<std::optional<Point>, 3>, 3> crossing{};
  bool fragile = false;
  bool incompatible = false;
  std::array<PairRelation, 3> list{};
};

constexpr std::array<std::pair<std::size_t, std::size_t>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};

Relations relations_of(const std::array<Segment, 3>& s) {
  Relations r;
  for (std::size_t k = 0; k < 3; ++k) {
    auto [i, j] = kPairs[k];
    RelationDetail d = relate(s[i], s[j]);
    r.list[k] = d.relation;
    r.fragile = r.fragile || d.fragile;
    switch (d.relation) {
      case PairRelation::Cross:
        r.cross[i][j] = r.cross[j][i] = true;
        r.crossing[i][j] = r.crossing[j][i] = d.crossing;
        break;
      case PairRelation::FirstPointsToSecond:
        r.points[i][j] = true;
        r.head[i][j] = d.head;
        break;
      case PairRelation::SecondPointsToFirst:
        r.points[j][i] = true;
        r.head[j][i] = d.head;
        break;
      case PairRelation::NotPointing:
      case PairRelation::ConvexDisjoint:
        r.incompatible = true;
        break;
    }
  }
  return r;
}

bool same_point(Point a, Point b, double tol) { return distance(a, b) <= tol; }

}  // namespace

Classification classify_three(const std::array<Segment, 3>& s) {
  Classification out;
  Relations r = relations_of(s);
  out.relations = r.list;
  out.fragile = r.fragile;
  for (auto [i, j] : kPairs) out.crossings += r.cross[i][j] ? 1 : 0;

  std::vector<Point> all;
  for (const Segment& seg : s) {
    all.push_back(seg.p);
    all.push_back(seg.q);
    if (seg.degenerate()) out.fragile = true;
  }
  const double tol = boundary_tolerance(coordinate_scale(all));

  auto finish = [&](CaseLabel label, std::array<std::size_t, 3> roles) {
    out.label = label;
    out.group = group_of(label);
    out.roles = roles;
    return out;
  };
  if (r.incompatible) return finish(CaseLabel::NotMaxSumCompatible, {0, 1, 2});

  // Whether segment x points to y and z with the same endpoint.
  auto same_head = [&](std::size_t x, std::size_t y, std::size_t z) {
    return same_point(*r.head[x][y], *r.head[x][z], tol);
  };

  switch (out.crossings) {
    case 3:
      return finish(CaseLabel::A, {0, 1, 2});
    case 2: {
      std::size_t x = 0;
      while (!(r.cross[x][(x + 1) % 3] && r.cross[x][(x + 2) % 3])) ++x;
      std::size_t y = (x + 1) % 3, z = (x + 2) % 3;
      if (r.points[z][y]) std::swap(y, z);
      return finish(CaseLabel::C, {x, y, z});
    }
    case 1: {
      std::size_t x = 0;
      while (r.cross[x][(x + 1) % 3] || r.cross[x][(x + 2) % 3]) ++x;
      std::size_t y = (x + 1) % 3, z = (x + 2) % 3;
      if (r.points[x][y] && r.points[x][z]) {
        if (same_head(x, y, z)) return finish(CaseLabel::E, {x, y, z});
        return finish(CaseLabel::B, {x, y, z});
      }
      if (r.points[y][x] && r.points[z][x]) return finish(CaseLabel::D, {x, y, z});
      // A chain through x: one of the crossing pair points to x, x to the other.
      if (r.points[x][z]) std::swap(y, z);
      return finish(CaseLabel::I, {x, y, z});
    }
    default: {
      std::array<int, 3> out_degree{};
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) out_degree[i] += r.points[i][j] ? 1 : 0;
      }
      if (std::ranges::all_of(out_degree, [](int d) { return d == 1; })) {
        std::size_t second = r.points[0][1] ? 1 : 2;
        return finish(CaseLabel::H, {0, second, 3 - second});
      }
      std::size_t src = 0, mid = 0, sink = 0;
      for (std::size_t i = 0; i < 3; ++i) {
        if (out_degree[i] == 2) src = i;
        if (out_degree[i] == 1) mid = i;
        if (out_degree[i] == 0) sink = i;
      }
      if (!same_head(src, mid, sink)) return finish(CaseLabel::J, {src, mid, sink});
      // The middle segment's head is either its endpoint nearer the source's
      // head or the farther one.
      Point h = *r.head[src][mid];
      Point mh = *r.head[mid][sink];
      const Segment& m = s[mid];
      Point other = same_point(mh, m.p, tol) ? m.q : m.p;
      double dh = distance(mh, h), dother = distance(other, h);
      if (std::abs(dh - dother) <= tol) out.fragile = true;
      return finish(dh < dother ? CaseLabel::F : CaseLabel::G, {src, mid, sink});
    }
  }
}

namespace {

std::array<Segment, 3> three_segments(const PointSet& ps, const Matching& m) {
  if (m.pairs.size() != 3) {
    throw InvalidParameter("case analysis needs a matching of three pairs, got " + std::to_string(m.pairs.size()));
  }
  auto segs = segments_of(ps, m);
  return {segs[0], segs[1], segs[2]};
}

// The foot of x on segment s, when it falls within the segment.
std::optional<Point> foot_within(Point x, const Segment& s) {
  if (s.degenerate()) return std::nullopt;
  Point f = foot_on_line(x, s);
  double t = dot(f - s.p, s.q - s.p) / dot(s.q - s.p, s.q - s.p);
  if (t < 0 || t > 1) return std::nullopt;
  return f;
}

}  // namespace

Classification classify_three(const PointSet& ps, const Matching& m) { return classify_three(three_segments(ps, m)); }

Point witness_easy_case(const std::array<Segment, 3>& s, const Classification& c) {
  if (!is_easy_case(c.label)) {
    throw InvalidParameter(std::string("no constructive witness for case ") + to_string(c.label));
  }
  const Relations r = relations_of(s);
  const auto [x, y, z] = c.roles;
  const std::array<Disk, 3> disks{diametral_disk(s[0]), diametral_disk(s[1]), diametral_disk(s[2])};
  auto in_all = [&](Point p) {
    return std::ranges::all_of(disks, [&](const Disk& d) { return in_disk(p, d) != Containment::Exterior; });
  };
  auto in_one = [&](Point p, std::size_t k) { return in_disk(p, disks[k]) != Containment::Exterior; };

  std::vector<std::optional<Point>> candidates;
  switch (c.label) {
    case CaseLabel::A: {
      // Triangle bounded by the three segments; the altitude onto its longest
      // side stays inside it.
      if (!r.crossing[0][1] || !r.crossing[0][2] || !r.crossing[1][2]) break;
      Point u01 = *r.crossing[0][1], u02 = *r.crossing[0][2], u12 = *r.crossing[1][2];
      std::array<Segment, 3> sides{Segment{u01, u02}, Segment{u02, u12}, Segment{u12, u01}};
      std::array<Point, 3> opposite{u12, u01, u02};
      std::array<std::size_t, 3> order{0, 1, 2};
      std::ranges::sort(order, [&](std::size_t a, std::size_t b) { return sides[a].length() > sides[b].length(); });
      for (std::size_t k : order) candidates.push_back(foot_within(opposite[k], sides[k]));
      candidates.push_back(u01);
      break;
    }
    case CaseLabel::B: {
      Point hy = *r.head[x][y], hz = *r.head[x][z];
      if (in_one(hz, y)) candidates.push_back(hz);
      if (in_one(hy, z)) candidates.push_back(hy);
      if (auto u = r.crossing[y][z]) candidates.push_back(foot_within(*u, s[x]));
      break;
    }
    case CaseLabel::C: {
      // x crosses y and z; y points to z.
      Point h = *r.head[y][z];
      if (in_one(h, x)) candidates.push_back(h);
      auto uxy = r.crossing[x][y], uxz = r.crossing[x][z];
      if (uxz && in_one(*uxz, y)) candidates.push_back(uxz);
      // The side h-uxz lies in z's disk; drop the perpendicular from uxy.
      if (uxy && uxz) candidates.push_back(foot_within(*uxy, Segment{h, *uxz}));
      break;
    }
    case CaseLabel::D: {
      Point hy = *r.head[y][x], hz = *r.head[z][x];
      if (in_one(hz, y)) candidates.push_back(hz);
      if (in_one(hy, z)) candidates.push_back(hy);
      if (auto u = r.crossing[y][z]) candidates.push_back(foot_within(*u, Segment{hz, hy}));
      break;
    }
    default:
      candidates.push_back(r.head[x][y]);
      break;
  }
  for (const auto& p : candidates) {
    if (p && in_all(*p)) return *p;
  }
  throw ConstructionFailure(std::string("no constructive witness verified for case ") + to_string(c.label));
}

Point witness_easy_case(const PointSet& ps, const Matching& m, const Classification& c) {
  return witness_easy_case(three_segments(ps, m), c);
}

}  // namespace mmp
