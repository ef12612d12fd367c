#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dixc/decoding.hpp"
#include "dixc/polyhedron.hpp"

namespace dixc {

// Answer to one bound query. Direction mode fills `value` (and the
// achieving rate point); region mode fills `region`.
struct BoundResult {
  std::string scheme;
  std::optional<RationalVector> direction;
  std::optional<Rational> value;
  std::optional<Polyhedron> region;
  std::map<VariableId, Rational> point;
  std::optional<ServerGrouping> grouping;
  std::vector<DecodingConfig> configs;  // one per group of `grouping`
  std::vector<std::string> notes;

  nlohmann::ordered_json to_json() const;
};

}  // namespace dixc
