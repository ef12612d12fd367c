#include "dixc/bound_result.hpp"

namespace dixc {

nlohmann::ordered_json BoundResult::to_json() const {
  nlohmann::ordered_json doc;
  doc["scheme"] = scheme;
  if (direction) {
    nlohmann::ordered_json w = nlohmann::ordered_json::array();
    for (const auto& x : *direction) w.push_back(dixc::to_string(x));
    doc["direction"] = std::move(w);
  } else {
    doc["direction"] = "REGION";
  }
  if (value) doc["value"] = dixc::to_string(*value);
  if (region) doc["region"] = region->to_json();
  if (!point.empty()) {
    nlohmann::ordered_json pt = nlohmann::ordered_json::object();
    for (const auto& [v, x] : point) pt[v.name()] = dixc::to_string(x);
    doc["point"] = std::move(pt);
  }
  if (grouping) doc["grouping"] = grouping->to_json();
  if (!configs.empty()) {
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : configs) cs.push_back(c.to_json());
    doc["decoding"] = std::move(cs);
  }
  if (!notes.empty()) doc["notes"] = notes;
  return doc;
}

}  // namespace dixc
