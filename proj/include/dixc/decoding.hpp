#pragma once

#include <vector>

#include "json.hpp"

#include "dixc/problem.hpp"
#include "dixc/subset.hpp"

namespace dixc {

// One group of servers P; its message union J' = union of the members.
using ServerGroup = std::vector<SubsetId>;

SubsetId message_union(const ServerGroup& group);

// A partition of the 2^n - 1 servers into groups. Members are kept in
// display order and groups are ordered by their smallest member.
class ServerGrouping {
 public:
  // Throws InvalidInput unless `groups` partitions the nonempty subsets of [n].
  ServerGrouping(int n, std::vector<ServerGroup> groups);

  static ServerGrouping singletons(int n);
  static ServerGrouping single_group(int n);

  int receivers() const { return n_; }
  const std::vector<ServerGroup>& groups() const { return groups_; }
  std::size_t size() const { return groups_.size(); }

  // [["1"],["1,3","3,4"],...]
  nlohmann::ordered_json to_json() const;
  static ServerGrouping from_json(const nlohmann::json& doc, int n);

  friend bool operator==(const ServerGrouping&, const ServerGrouping&) = default;

 private:
  int n_ = 0;
  std::vector<ServerGroup> groups_;
};

// Per receiver decoding set D_j; receivers outside the group's message
// union carry the empty set.
struct DecodingConfig {
  std::vector<SubsetId> sets;

  // {"1": [1], "2": [1, 2]}; only receivers with a nonempty set appear.
  nlohmann::ordered_json to_json() const;
  static DecodingConfig from_json(const nlohmann::json& doc, int n);

  friend auto operator<=>(const DecodingConfig&, const DecodingConfig&) = default;
  friend bool operator==(const DecodingConfig&, const DecodingConfig&) = default;
};

// Validates D_j for every receiver j in J' (j in D_j, D_j within J') and
// returns the normalized config: D_j \ A_j for j in J', empty elsewhere.
// Throws InvalidInput on a missing or invalid set.
DecodingConfig normalize_config(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config);

// D_j = [n] \ A_j restricted to the group.
DecodingConfig complement_rule(const ProblemInstance& p, const ServerGroup& group);

// D_j = {j} when A_j is empty, otherwise [n] \ A_j; restricted to the group.
DecodingConfig singleton_if_empty_rule(const ProblemInstance& p, const ServerGroup& group);

}  // namespace dixc
