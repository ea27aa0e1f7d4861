#pragma once

#include <stdexcept>
#include <string>

namespace mmp {

// A matching that does not partition the point set or joins two points of
// the same color.
class InvalidMatching : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Brute-force enumeration refused because the input exceeds the size cap.
class SizeLimitExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

// A generator parameter outside the range where its construction is valid.
class InvalidParameter : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A constructive witness or a fixture failed its own post-verification.
class ConstructionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A rejection sampler accepted too few candidates to be useful.
class SamplerStarvation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mmp
