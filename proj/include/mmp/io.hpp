#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "mmp/matching.hpp"

namespace mmp {

// {"points": [[x,y],...]} or {"red": [[x,y],...], "blue": [[x,y],...]},
// with an optional "name".
struct PointSetDocument {
  std::optional<std::string> name;
  PointSet point_set;
};

// Throws ParseError on malformed JSON, unknown keys, non-finite numbers,
// empty arrays, an odd uncolored count or unbalanced colors.
PointSetDocument parse_document(std::string_view text);

// Compact JSON, keys in the order name, points | red, blue. Doubles use the
// shortest representation that reads back to the same value.
std::string serialize_document(const PointSetDocument& doc);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

// FNV-1a of the serialized document as 16 hex digits.
std::string document_digest(const PointSetDocument& doc);

bool same_document(const PointSetDocument& a, const PointSetDocument& b);

}  // namespace mmp
