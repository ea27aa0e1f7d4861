#pragma once

#include <optional>
#include <string>

#include "mmp/io.hpp"
#include "mmp/report.hpp"

namespace mmp {

struct SvgOptions {
  // Also draw the ellipses |x-a| + |x-b| <= 2 * factor * |a-b|.
  std::optional<double> ellipse_factor;
};

// 600x600 SVG 1.1 document. World coordinates map by
//   px = 300 + s (x - cx),  py = 300 - s (y - cy),
// with (cx, cy) the centre of the bounding box of every drawn shape and
// s = 560 / max(width, height) (s = 1 for a single point). Numbers are
// printed with three decimals, so equal inputs give identical bytes.
std::string render_svg(const PointSetDocument& doc, const RunReport& report, const SvgOptions& opts = {});

// The same canvas with no shapes.
std::string empty_svg();

}  // namespace mmp
