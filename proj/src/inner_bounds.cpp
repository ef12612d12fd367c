#include "dixc/inner_bounds.hpp"

#include <stdexcept>

#include "dixc/errors.hpp"
#include "dixc/lp.hpp"
#include "dixc/parallel.hpp"
#include "dixc/projection.hpp"

namespace dixc {
namespace {

void check_weights(const ProblemInstance& p, const RationalVector& weights) {
  if (static_cast<int>(weights.size()) != p.size()) throw InvalidInput("weight vector length must equal n");
  for (const auto& w : weights) {
    if (w < 0) throw InvalidInput("search directions must be nonnegative");
  }
}

LinearExpr group_objective(const RationalVector& weights, SubsetId scope, int group_index) {
  LinearExpr out;
  for (int j : scope.elements()) {
    if (weights[j] != 0) out.emplace(VariableId::group_rate(j, group_index), weights[j]);
  }
  return out;
}

// Builds the lifted rows for an already normalized config.
Polyhedron lifted_rows(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config,
                       int group_index) {
  const SubsetId scope = message_union(group);
  Polyhedron out;
  for (int j : scope.elements()) out.add_nonnegative(VariableId::group_rate(j, group_index));
  for (SubsetId server : group) {
    for (SubsetId k : subsets_of(server)) {
      if (!k.empty()) out.add_nonnegative(VariableId::composite(k, server));
    }
  }

  for (int j : scope.elements()) {
    const SubsetId known = p.side_info(j) & scope;
    const SubsetId decoded = config.sets[j] - known;
    const SubsetId available = config.sets[j] | known;
    for (SubsetId l : subsets_of(decoded)) {
      if (l.empty()) continue;
      LinearExpr lhs;
      for (int i : l.elements()) lhs[VariableId::group_rate(i, group_index)] = 1;
      for (SubsetId server : group) {
        for (SubsetId k : subsets_of(server & available)) {
          if (k.intersects(l)) lhs[VariableId::composite(k, server)] = -1;
        }
      }
      out.add_constraint(LinearInequality::less_equal(lhs, 0, "decode:j=" + std::to_string(j + 1) + ",L=" + l.key()));
    }
  }

  for (int j : scope.elements()) {
    for (SubsetId server : group) {
      LinearExpr lhs;
      for (SubsetId k : subsets_of(server)) {
        if (!k.empty() && !k.subset_of(p.side_info(j))) lhs[VariableId::composite(k, server)] = 1;
      }
      if (lhs.empty()) continue;
      out.add_constraint(LinearInequality::less_equal(
          lhs, p.capacity(server), "link:j=" + std::to_string(j + 1) + ",J=" + server.key()));
    }
  }
  return out;
}

std::vector<VariableId> composite_variables(const Polyhedron& poly) {
  std::vector<VariableId> out;
  for (const auto& v : poly.variables()) {
    if (v.kind == VarKind::kComposite) out.push_back(v);
  }
  return out;
}

struct GroupBest {
  Rational value;
  DecodingConfig config;
};

std::uint64_t group_search_size(const ProblemInstance& p, const ServerGroup& group) {
  std::uint64_t count = 1;
  for (int j : message_union(group).elements()) count *= decoding_candidates(p, group, j).size();
  return count;
}

GroupBest best_config_for_group(const ProblemInstance& p, const ServerGroup& group, const RationalVector& weights) {
  const SubsetId scope = message_union(group);
  const auto receivers = scope.elements();
  std::vector<std::vector<SubsetId>> options;
  for (int j : receivers) options.push_back(decoding_candidates(p, group, j));

  auto config_at = [&](std::uint64_t index) {
    // Mixed radix with the last receiver varying fastest, so increasing
    // index is increasing lexicographic order of (D_j1, D_j2, ...).
    DecodingConfig c{std::vector<SubsetId>(p.size())};
    for (std::size_t r = receivers.size(); r-- > 0;) {
      c.sets[receivers[r]] = options[r][index % options[r].size()];
      index /= options[r].size();
    }
    return c;
  };

  const std::uint64_t total = group_search_size(p, group);
  const LinearExpr objective = group_objective(weights, scope, 0);
  if (objective.empty()) return {Rational(0), config_at(0)};

  GroupBest best{Rational(0), config_at(0)};
  bool have = false;
  constexpr std::uint64_t kChunk = 1024;
  for (std::uint64_t start = 0; start < total; start += kChunk) {
    const std::size_t len = static_cast<std::size_t>(std::min(kChunk, total - start));
    RationalVector values(len);
    parallel_for(len, [&](std::size_t i) {
      const auto r = lp_max(objective, lifted_rows(p, group, config_at(start + i), 0));
      if (r.status != LpStatus::kOptimal) throw std::logic_error("group LP is not bounded");
      values[i] = r.value;
    });
    for (std::size_t i = 0; i < len; ++i) {
      if (!have || values[i] > best.value) {
        best = {values[i], config_at(start + i)};
        have = true;
      }
    }
  }
  return best;
}

}  // namespace

Polyhedron group_lifted_polyhedron(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config,
                                   int group_index) {
  return lifted_rows(p, group, normalize_config(p, group, config), group_index);
}

Polyhedron group_region(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config,
                        int group_index) {
  const Polyhedron lifted = group_lifted_polyhedron(p, group, config, group_index);
  return fm_eliminate(lifted, composite_variables(lifted));
}

Rational group_support(const ProblemInstance& p, const ServerGroup& group, const DecodingConfig& config,
                       const RationalVector& weights) {
  if (static_cast<int>(weights.size()) != p.size()) throw InvalidInput("weight vector length must equal n");
  const LinearExpr objective = group_objective(weights, message_union(group), 0);
  const auto r = lp_max(objective, group_lifted_polyhedron(p, group, config, 0));
  if (r.status != LpStatus::kOptimal) {
    throw std::logic_error(r.status == LpStatus::kUnbounded ? "group LP is unbounded" : "group LP is infeasible");
  }
  return r.value;
}

Polyhedron grouped_lifted_polyhedron(const ProblemInstance& p, const ServerGrouping& grouping,
                                     const std::vector<DecodingConfig>& configs) {
  if (grouping.receivers() != p.size()) throw InvalidInput("grouping and problem disagree on n");
  if (configs.size() != grouping.size()) throw InvalidInput("need one decoding config per group");
  Polyhedron out;
  for (int j = 0; j < p.size(); ++j) out.add_nonnegative(VariableId::rate(j));
  std::vector<LinearExpr> linking(p.size());
  for (int j = 0; j < p.size(); ++j) linking[j][VariableId::rate(j)] = 1;

  for (std::size_t g = 0; g < grouping.size(); ++g) {
    const Polyhedron part = group_lifted_polyhedron(p, grouping.groups()[g], configs[g], static_cast<int>(g));
    for (const auto& v : part.variables()) out.add_variable(v);
    for (const auto& row : part.constraints()) out.add_constraint(row);
    for (int j : message_union(grouping.groups()[g]).elements()) {
      linking[j][VariableId::group_rate(j, static_cast<int>(g))] = -1;
    }
  }
  for (int j = 0; j < p.size(); ++j) {
    out.add_constraint(LinearInequality::equal(linking[j], 0, "sum:j=" + std::to_string(j + 1)));
  }
  return out;
}

std::vector<SubsetId> decoding_candidates(const ProblemInstance& p, const ServerGroup& group, int j) {
  const SubsetId scope = message_union(group);
  if (!scope.contains(j)) return {};
  std::vector<SubsetId> out;
  for (SubsetId extra : subsets_of(scope - p.side_info(j).with(j))) out.push_back(extra.with(j));
  return out;
}

std::uint64_t decoding_search_size(const ProblemInstance& p, const ServerGrouping& grouping) {
  std::uint64_t total = 0;
  for (const auto& group : grouping.groups()) total += group_search_size(p, group);
  return total;
}

DecodingSearchResult search_decoding_sets(const ProblemInstance& p, const ServerGrouping& grouping,
                                          const RationalVector& weights, std::uint64_t budget) {
  check_weights(p, weights);
  if (grouping.receivers() != p.size()) throw InvalidInput("grouping and problem disagree on n");
  const std::uint64_t size = decoding_search_size(p, grouping);
  if (size > budget) {
    throw BudgetExceeded("decoding-set search needs " + std::to_string(size) + " configurations, budget is " +
                         std::to_string(budget));
  }
  DecodingSearchResult out;
  out.value = 0;
  for (const auto& group : grouping.groups()) {
    GroupBest best = best_config_for_group(p, group, weights);
    out.value += best.value;
    out.group_values.push_back(best.value);
    out.configs.push_back(std::move(best.config));
  }
  return out;
}

BoundResult scheme_grouped(const ProblemInstance& p, const ServerGrouping& grouping,
                           const std::optional<std::vector<DecodingConfig>>& configs, const SchemeQuery& query) {
  if (grouping.receivers() != p.size()) throw InvalidInput("grouping and problem disagree on n");
  BoundResult result;
  result.scheme = "cc-grouped";
  result.grouping = grouping;

  if (configs) {
    if (configs->size() != grouping.size()) throw InvalidInput("need one decoding config per group");
    for (std::size_t g = 0; g < grouping.size(); ++g) {
      result.configs.push_back(normalize_config(p, grouping.groups()[g], (*configs)[g]));
    }
  } else {
    const RationalVector search_direction = query.weights ? *query.weights : RationalVector(p.size(), Rational(1));
    auto found = search_decoding_sets(p, grouping, search_direction, query.budget);
    result.configs = std::move(found.configs);
    if (!query.weights) result.notes.push_back("decoding sets chosen by exhaustive search for the all-ones direction");
  }

  if (query.weights) {
    if (static_cast<int>(query.weights->size()) != p.size()) throw InvalidInput("weight vector length must equal n");
    result.direction = *query.weights;
    const auto r = lp_max(rate_objective(*query.weights), grouped_lifted_polyhedron(p, grouping, result.configs));
    if (r.status != LpStatus::kOptimal) throw std::logic_error("grouped scheme LP is not bounded");
    result.value = r.value;
    for (int j = 0; j < p.size(); ++j) result.point[VariableId::rate(j)] = r.point.at(VariableId::rate(j));
    return result;
  }

  // Region: project each group, then take the Minkowski sum through the
  // linking equalities.
  Polyhedron joint;
  for (int j = 0; j < p.size(); ++j) joint.add_nonnegative(VariableId::rate(j));
  std::vector<LinearExpr> linking(p.size());
  std::vector<VariableId> drop;
  for (int j = 0; j < p.size(); ++j) linking[j][VariableId::rate(j)] = 1;
  for (std::size_t g = 0; g < grouping.size(); ++g) {
    const int index = static_cast<int>(g);
    const Polyhedron part = group_region(p, grouping.groups()[g], result.configs[g], index);
    for (const auto& v : part.variables()) {
      joint.add_variable(v);
      drop.push_back(v);
      linking[v.receiver][v] = -1;
    }
    for (const auto& row : part.constraints()) joint.add_constraint(row);
  }
  for (int j = 0; j < p.size(); ++j) {
    joint.add_constraint(LinearInequality::equal(linking[j], 0, "sum:j=" + std::to_string(j + 1)));
  }
  result.region = remove_redundant(fm_eliminate(joint, drop));
  return result;
}

BoundResult scheme_separate(const ProblemInstance& p, const std::optional<std::vector<DecodingConfig>>& configs,
                            const SchemeQuery& query) {
  BoundResult r = scheme_grouped(p, ServerGrouping::singletons(p.size()), configs, query);
  r.scheme = "cc-separate";
  return r;
}

BoundResult scheme_joint(const ProblemInstance& p, const std::optional<DecodingConfig>& config,
                         const SchemeQuery& query) {
  std::optional<std::vector<DecodingConfig>> configs;
  if (config) configs = std::vector<DecodingConfig>{*config};
  BoundResult r = scheme_grouped(p, ServerGrouping::single_group(p.size()), configs, query);
  r.scheme = "cc-joint";
  return r;
}

GroupingSearchResult search_groupings(const ProblemInstance& p, const RationalVector& weights, std::uint64_t budget) {
  check_weights(p, weights);
  if (p.size() > 3) throw InvalidInput("grouping search is only offered for n <= 3");
  const auto servers = nonempty_subsets_display_order(p.size());
  const std::uint32_t all = (std::uint32_t{1} << servers.size()) - 1;

  auto group_of = [&](std::uint32_t members) {
    ServerGroup g;
    for (std::size_t s = 0; s < servers.size(); ++s) {
      if ((members >> s) & 1u) g.push_back(servers[s]);
    }
    return g;
  };

  std::uint64_t size = 0;
  for (std::uint32_t m = 1; m <= all; ++m) size += group_search_size(p, group_of(m));
  if (size > budget) {
    throw BudgetExceeded("grouping search needs " + std::to_string(size) + " configurations, budget is " +
                         std::to_string(budget));
  }

  std::vector<GroupBest> scores(all + 1);
  parallel_for(all, [&](std::size_t i) {
    const auto m = static_cast<std::uint32_t>(i + 1);
    scores[m] = best_config_for_group(p, group_of(m), weights);
  });

  // best[mask]: optimal partition of the servers in mask. The block holding
  // the lowest server is enumerated in increasing submask order and only a
  // strict improvement replaces the incumbent.
  RationalVector best(all + 1);
  std::vector<std::uint32_t> choice(all + 1, 0);
  for (std::uint32_t mask = 1; mask <= all; ++mask) {
    const std::uint32_t low = mask & (~mask + 1);
    bool have = false;
    for (std::uint32_t sub = mask; sub != 0; sub = (sub - 1) & mask) {
      if (!(sub & low)) continue;
      Rational v = scores[sub].value + best[mask ^ sub];
      if (!have || v > best[mask] || (v == best[mask] && sub < choice[mask])) {
        best[mask] = std::move(v);
        choice[mask] = sub;
        have = true;
      }
    }
  }

  std::vector<ServerGroup> groups;
  std::vector<std::pair<ServerGroup, DecodingConfig>> parts;
  for (std::uint32_t mask = all; mask != 0; mask ^= choice[mask]) {
    parts.emplace_back(group_of(choice[mask]), scores[choice[mask]].config);
    groups.push_back(parts.back().first);
  }
  ServerGrouping grouping(p.size(), groups);
  std::vector<DecodingConfig> configs;
  for (const auto& g : grouping.groups()) {
    for (const auto& [group, config] : parts) {
      if (group.front() == g.front()) configs.push_back(config);
    }
  }
  return {best[all], std::move(grouping), std::move(configs)};
}

}  // namespace dixc
