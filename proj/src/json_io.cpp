#include "octaflex/json_io.hpp"

#include <json.hpp>

namespace octaflex {

static const char* kKeys[12] = {"p", "q", "r", "s", "a", "b", "d", "e", "c", "f", "h", "g"};

EdgeLengths metric_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw MetricParseError(e.what());
  }
  if (!j.is_object()) throw MetricParseError("metric JSON must be an object");
  for (auto& [key, val] : j.items()) {
    bool known = false;
    for (const char* k : kKeys) known = known || key == k;
    if (!known) throw MetricParseError("unknown key: " + key);
    if (!val.is_number()) throw MetricParseError("non-numeric value for key: " + key);
  }
  double v[12];
  for (int i = 0; i < 12; ++i) {
    if (!j.contains(kKeys[i])) throw MetricParseError(std::string("missing key: ") + kKeys[i]);
    v[i] = j[kKeys[i]].get<double>();
  }
  return {v[0], v[1], v[2], v[3], v[4], v[5], v[6], v[7], v[8], v[9], v[10], v[11]};
}

std::string metric_to_json(const EdgeLengths& l) {
  nlohmann::ordered_json j;
  auto vals = l.as_array();
  for (int i = 0; i < 12; ++i) j[kKeys[i]] = vals[i];
  return j.dump(2);
}

}  // namespace octaflex
