#pragma once

#include <stdexcept>
#include <string>

#include "octaflex/metric_complex.hpp"

// Strict metric JSON: exactly the twelve keys p q r s a b d e c f h g with
// numeric values; unknown or missing keys rejected.

namespace octaflex {

struct MetricParseError : std::runtime_error {
  explicit MetricParseError(const std::string& what) : std::runtime_error(what) {}
};

EdgeLengths metric_from_json(const std::string& text);
std::string metric_to_json(const EdgeLengths& l);

}  // namespace octaflex
