#include "dixc/decoding.hpp"

#include <algorithm>

#include "dixc/errors.hpp"

namespace dixc {

SubsetId message_union(const ServerGroup& group) {
  SubsetId out;
  for (SubsetId server : group) out = out | server;
  return out;
}

ServerGrouping::ServerGrouping(int n, std::vector<ServerGroup> groups) : n_(n), groups_(std::move(groups)) {
  if (n < 1 || n > ProblemInstance::kMaxReceivers) throw InvalidInput("grouping: n outside supported range");
  std::vector<int> hits(std::size_t{1} << n, 0);
  for (auto& group : groups_) {
    if (group.empty()) throw InvalidInput("grouping contains an empty group");
    for (SubsetId server : group) {
      if (server.empty() || !server.subset_of(SubsetId::full(n))) {
        throw InvalidInput("grouping member is not a nonempty subset of [n]");
      }
      ++hits[server.mask()];
    }
    std::sort(group.begin(), group.end(), SubsetId::display_less);
  }
  for (std::size_t m = 1; m < hits.size(); ++m) {
    if (hits[m] != 1) {
      throw InvalidInput("grouping is not a partition: server {" + SubsetId(static_cast<std::uint32_t>(m)).key() +
                         "} appears " + std::to_string(hits[m]) + " times");
    }
  }
  std::sort(groups_.begin(), groups_.end(),
            [](const ServerGroup& a, const ServerGroup& b) { return SubsetId::display_less(a.front(), b.front()); });
}

ServerGrouping ServerGrouping::singletons(int n) {
  std::vector<ServerGroup> groups;
  for (SubsetId s : nonempty_subsets_display_order(n)) groups.push_back({s});
  return ServerGrouping(n, std::move(groups));
}

ServerGrouping ServerGrouping::single_group(int n) {
  return ServerGrouping(n, {nonempty_subsets_display_order(n)});
}

nlohmann::ordered_json ServerGrouping::to_json() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& group : groups_) {
    nlohmann::ordered_json g = nlohmann::ordered_json::array();
    for (SubsetId s : group) g.push_back(s.key());
    out.push_back(std::move(g));
  }
  return out;
}

ServerGrouping ServerGrouping::from_json(const nlohmann::json& doc, int n) {
  if (!doc.is_array()) throw ParseError("grouping must be a JSON list of lists of subset keys");
  std::vector<ServerGroup> groups;
  for (const auto& g : doc) {
    if (!g.is_array()) throw ParseError("grouping must be a JSON list of lists of subset keys");
    ServerGroup group;
    for (const auto& key : g) {
      if (!key.is_string()) throw ParseError("subset keys must be strings like \"1,3\"");
      group.push_back(SubsetId::parse_key(key.get<std::string>(), n));
    }
    groups.push_back(std::move(group));
  }
  return ServerGrouping(n, std::move(groups));
}

nlohmann::ordered_json DecodingConfig::to_json() const {
  nlohmann::ordered_json out = nlohmann::ordered_json::object();
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (sets[j].empty()) continue;
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (int i : sets[j].elements()) list.push_back(i + 1);
    out[std::to_string(j + 1)] = std::move(list);
  }
  return out;
}

DecodingConfig DecodingConfig::from_json(const nlohmann::json& doc, int n) {
  if (!doc.is_object()) throw ParseError("decoding config must map receiver ids to message lists");
  DecodingConfig out{std::vector<SubsetId>(n)};
  for (const auto& [key, list] : doc.items()) {
    const SubsetId who = SubsetId::parse_key(key, n);
    if (who.size() != 1) throw ParseError("decoding config key must be a single receiver id");
    if (!list.is_array()) throw ParseError("decoding sets must be lists of message ids");
    SubsetId d;
    for (const auto& v : list) {
      if (!v.is_number_integer() || v.get<int>() < 1 || v.get<int>() > n) {
        throw ParseError("decoding set members must be message ids in 1..n");
      }
      d = d.with(v.get<int>() - 1);
    }
    out.sets[who.lowest()] = d;
  }
  return out;
}

DecodingConfig normalize_config(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config) {
  const SubsetId scope = message_union(group);
  if (static_cast<int>(config.sets.size()) != p.size()) throw InvalidInput("decoding config has wrong receiver count");
  DecodingConfig out{std::vector<SubsetId>(p.size())};
  for (int j : scope.elements()) {
    const SubsetId d = config.sets[j];
    if (!d.contains(j)) {
      throw InvalidInput("decoding set of receiver " + std::to_string(j + 1) + " must contain " + std::to_string(j + 1));
    }
    if (!d.subset_of(scope)) {
      throw InvalidInput("decoding set of receiver " + std::to_string(j + 1) + " exceeds the group's messages {" +
                         scope.key() + "}");
    }
    out.sets[j] = d - p.side_info(j);
  }
  return out;
}

DecodingConfig complement_rule(const ProblemInstance& p, const ServerGroup& group) {
  const SubsetId scope = message_union(group);
  DecodingConfig out{std::vector<SubsetId>(p.size())};
  for (int j : scope.elements()) out.sets[j] = scope - p.side_info(j);
  return out;
}

DecodingConfig singleton_if_empty_rule(const ProblemInstance& p, const ServerGroup& group) {
  DecodingConfig out = complement_rule(p, group);
  for (int j : message_union(group).elements()) {
    if (p.side_info(j).empty()) out.sets[j] = SubsetId::singleton(j);
  }
  return out;
}

}  // namespace dixc
