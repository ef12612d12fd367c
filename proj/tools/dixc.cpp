// dixc: bounds and reproduction harness for distributed index coding.
//
//   dixc bound -p "(1|3);(2|1);(3|2)" -s cc-separate --weights 1,1,1
//   dixc repro table1 table2
//   dixc enumerate 3 --up-to-iso --with-regions

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "dixc/errors.hpp"
#include "dixc/inner_bounds.hpp"
#include "dixc/outer_bounds.hpp"
#include "dixc/projection.hpp"
#include "dixc/repro.hpp"

namespace {

using namespace dixc;
using nlohmann::ordered_json;

constexpr int kExitUsage = 1;
constexpr int kExitMismatch = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// A problem file holds either the JSON form or the compact text form.
ProblemInstance load_problem(const std::string& text, const std::string& file, const std::vector<std::string>& caps) {
  CapacityOverrides overrides;
  for (const auto& cap : caps) {
    const auto eq = cap.find('=');
    if (eq == std::string::npos) throw ParseError("--cap expects K=V, got '" + cap + "'");
    overrides.emplace_back(cap.substr(0, eq), parse_rational(cap.substr(eq + 1)));
  }
  if (!file.empty()) {
    const std::string body = read_file(file);
    const auto doc = nlohmann::json::parse(body, nullptr, false);
    if (doc.is_discarded()) return parse_problem(body, overrides);
    const ProblemInstance base = problem_from_json(doc);
    auto merged = non_unit_capacities(base);
    merged.insert(merged.end(), overrides.begin(), overrides.end());
    return parse_problem(to_compact(base), merged);
  }
  return parse_problem(text, overrides);
}

std::vector<DecodingConfig> rule_configs(const std::string& rule, const ProblemInstance& p,
                                         const ServerGrouping& grouping) {
  std::string name = rule;
  if (rule == "table2") name = table2_rule(p);
  std::vector<DecodingConfig> out;
  for (const auto& group : grouping.groups()) {
    if (name == "complement") {
      out.push_back(complement_rule(p, group));
    } else if (name == "singleton-if-empty") {
      out.push_back(singleton_if_empty_rule(p, group));
    } else {
      throw InvalidInput("unknown decoding rule '" + rule + "'");
    }
  }
  return out;
}

std::optional<std::vector<DecodingConfig>> load_decoding(const std::string& spec, const ProblemInstance& p,
                                                         const ServerGrouping& grouping) {
  if (spec.empty()) return std::nullopt;
  if (spec.starts_with("rule:")) return rule_configs(spec.substr(5), p, grouping);
  if (spec.starts_with("preset:")) return preset_decoding(spec.substr(7), grouping);
  return decoding_for_grouping(nlohmann::json::parse(read_file(spec)), p, grouping);
}

ServerGrouping load_grouping(const std::string& spec, int n) {
  if (spec.starts_with("preset:")) {
    ServerGrouping g = preset_grouping(spec.substr(7));
    if (g.receivers() != n) throw InvalidInput("grouping preset '" + spec + "' is for n = " + std::to_string(g.receivers()));
    return g;
  }
  return ServerGrouping::from_json(nlohmann::json::parse(read_file(spec)), n);
}

std::string row_text(const LinearInequality& row) { return row.to_string(); }

void print_bound(const BoundResult& r, const std::string& format) {
  if (format == "json") {
    std::cout << r.to_json().dump(2) << '\n';
    return;
  }
  if (format == "csv") {
    if (r.value) {
      std::cout << "scheme,value\n" << r.scheme << ',' << to_string(*r.value) << '\n';
    } else {
      std::cout << "scheme,origin,row\n";
      for (const auto& row : r.region->constraints()) {
        std::cout << r.scheme << ",\"" << row.origin << "\",\"" << row_text(row) << "\"\n";
      }
    }
    return;
  }
  std::cout << "scheme: " << r.scheme << '\n';
  if (r.grouping) std::cout << "grouping: " << r.grouping->to_json().dump() << '\n';
  for (std::size_t g = 0; g < r.configs.size(); ++g) {
    std::cout << "decoding[" << g + 1 << "]: " << r.configs[g].to_json().dump() << '\n';
  }
  if (r.value) {
    std::cout << "value: " << to_decimal_string(*r.value) << '\n';
  } else {
    for (const auto& row : r.region->constraints()) std::cout << "  " << row_text(row) << '\n';
  }
  for (const auto& note : r.notes) std::cout << "note: " << note << '\n';
}

struct BoundOptions {
  std::string problem, problem_file, scheme, weights, grouping, decoding, format = "json";
  std::vector<std::string> caps;
  bool region = false;
  bool search_groupings = false;
  std::uint64_t budget = kDefaultSearchBudget;
};

BoundResult outer_result(const ProblemInstance& p, OuterBoundKind kind, const SchemeQuery& query) {
  BoundResult r;
  r.scheme = std::string(to_string(kind));
  if (query.weights) {
    r.direction = query.weights;
    r.value = outer_support(p, kind, *query.weights);
  } else {
    r.region = outer_region(p, kind);
  }
  if (kind == OuterBoundKind::kPolymatroidPlusCustom && !p.unit_capacities() && !custom_cuts(p).empty()) {
    r.notes.push_back("custom cut applied with general capacities; it is stated for unit capacities");
  }
  return r;
}

int run_bound(const BoundOptions& o) {
  const ProblemInstance p = load_problem(o.problem, o.problem_file, o.caps);
  SchemeQuery query;
  query.budget = o.budget;
  if (!o.region) {
    query.weights = parse_rational_list(o.weights);
    if (query.weights->size() != static_cast<std::size_t>(p.size())) {
      throw InvalidInput("--weights needs " + std::to_string(p.size()) + " entries");
    }
    for (const auto& w : *query.weights) {
      if (w < 0) throw InvalidInput("--weights must be nonnegative");
    }
  }

  BoundResult r;
  if (o.scheme == "mais") {
    r = outer_result(p, OuterBoundKind::kMais, query);
  } else if (o.scheme == "polymatroid") {
    r = outer_result(p, OuterBoundKind::kPolymatroid, query);
  } else if (o.scheme == "polymatroid+custom") {
    r = outer_result(p, OuterBoundKind::kPolymatroidPlusCustom, query);
  } else if (o.scheme == "cc-separate") {
    r = scheme_separate(p, load_decoding(o.decoding, p, ServerGrouping::singletons(p.size())), query);
  } else if (o.scheme == "cc-joint") {
    const auto configs = load_decoding(o.decoding, p, ServerGrouping::single_group(p.size()));
    r = scheme_joint(p, configs ? std::optional(configs->front()) : std::nullopt, query);
  } else if (o.scheme == "cc-grouped") {
    if (o.search_groupings) {
      if (!o.grouping.empty() || !o.decoding.empty()) {
        throw InvalidInput("--search-groupings excludes --grouping and --decoding");
      }
      const RationalVector direction = query.weights.value_or(RationalVector(p.size(), Rational(1)));
      const GroupingSearchResult best = search_groupings(p, direction, o.budget);
      r = scheme_grouped(p, best.grouping, best.configs, query);
      r.notes.push_back(query.weights ? "grouping chosen by exhaustive search"
                                      : "grouping chosen by exhaustive search for the all-ones direction");
    } else {
      if (o.grouping.empty()) throw InvalidInput("cc-grouped needs --grouping or --search-groupings");
      const ServerGrouping grouping = load_grouping(o.grouping, p.size());
      r = scheme_grouped(p, grouping, load_decoding(o.decoding, p, grouping), query);
    }
  } else {
    throw InvalidInput("unknown scheme '" + o.scheme + "'");
  }
  print_bound(r, o.format);
  return 0;
}

int run_repro(const std::vector<std::string>& tables, const std::string& format) {
  std::vector<ReproReport> reports;
  for (const auto& t : tables) reports.push_back(repro(t));

  bool pass = true;
  for (const auto& r : reports) pass = pass && r.pass();
  if (format == "json") {
    ordered_json doc = ordered_json::array();
    for (const auto& r : reports) doc.push_back(r.to_json());
    std::cout << doc.dump(2) << '\n';
  } else if (format == "csv") {
    for (std::size_t k = 0; k < reports.size(); ++k) {
      const std::string csv = reports[k].to_csv();
      std::cout << (k == 0 ? csv : csv.substr(csv.find('\n') + 1));
    }
  } else {
    for (const auto& r : reports) std::cout << r.to_text() << '\n';
  }
  return pass ? 0 : kExitMismatch;
}

// Inner region for enumeration: the joint scheme with the complement rule,
// or the stored per-class rule at n = 3.
Polyhedron enumerate_inner(const ProblemInstance& p) {
  const DecodingConfig config =
      p.size() == 3 ? table2_decoding(p) : complement_rule(p, ServerGrouping::single_group(p.size()).groups().front());
  return *scheme_joint(p, config, {}).region;
}

int run_enumerate(int n, bool up_to_iso, bool with_regions, const std::string& format) {
  if (n < 1 || n > 4) throw InvalidInput("enumerate supports 1 <= n <= 4");
  if (with_regions && n > 3) throw BudgetExceeded("--with-regions is limited to n <= 3");
  const auto problems = enumerate_problems(n, up_to_iso);

  ordered_json doc = ordered_json::array();
  for (const auto& p : problems) {
    ordered_json entry;
    entry["problem"] = to_compact(p);
    if (with_regions) {
      const Polyhedron inner = enumerate_inner(p);
      const Polyhedron outer = outer_region(p, OuterBoundKind::kPolymatroidPlusCustom);
      entry["inner"] = inner.to_json();
      entry["outer"] = outer.to_json();
      entry["coincide"] = region_equal(inner, outer);
    }
    doc.push_back(std::move(entry));
  }

  if (format == "json") {
    std::cout << doc.dump(2) << '\n';
  } else if (format == "csv") {
    std::cout << (with_regions ? "problem,coincide\n" : "problem\n");
    for (const auto& e : doc) {
      std::cout << '"' << e["problem"].get<std::string>() << '"';
      if (with_regions) std::cout << ',' << (e["coincide"].get<bool>() ? "true" : "false");
      std::cout << '\n';
    }
  } else {
    std::cout << problems.size() << " problem(s) with n = " << n << (up_to_iso ? " up to isomorphism" : "") << '\n';
    for (std::size_t k = 0; k < problems.size(); ++k) {
      std::cout << doc[k]["problem"].get<std::string>();
      if (with_regions) {
        std::cout << (doc[k]["coincide"].get<bool>() ? "  inner = outer" : "  inner != outer") << '\n';
        const Polyhedron inner = Polyhedron::from_json(doc[k]["inner"]);
        for (const auto& row : inner.constraints()) {
          if (row.origin != "nonnegativity") std::cout << "    " << row_text(row) << '\n';
        }
      } else {
        std::cout << '\n';
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounds on the capacity region of distributed index coding problems"};
  app.require_subcommand(1);
  std::string format = "json";

  BoundOptions bound;
  auto* cmd_bound = app.add_subcommand("bound", "Outer bound or composite coding inner bound");
  auto* problem_opt = cmd_bound->add_option("-p,--problem", bound.problem, "Problem, e.g. \"(1|3);(2|1);(3|2)\"");
  auto* file_opt = cmd_bound->add_option("--problem-file", bound.problem_file, "Problem as JSON or compact text")
                       ->check(CLI::ExistingFile);
  problem_opt->excludes(file_opt);
  cmd_bound->add_option("--cap", bound.caps, "Server capacity override K=V, e.g. 2,3=1/2")->take_all();
  cmd_bound->add_option("-s,--scheme", bound.scheme, "Bound to evaluate")
      ->required()
      ->check(CLI::IsMember({"mais", "polymatroid", "polymatroid+custom", "cc-separate", "cc-joint", "cc-grouped"}));
  auto* weights_opt = cmd_bound->add_option("--weights", bound.weights, "Direction w, e.g. 1,1,1 or 1/2,0,1");
  auto* region_opt = cmd_bound->add_flag("--region", bound.region, "Compute the whole region");
  weights_opt->excludes(region_opt);
  cmd_bound->add_option("--grouping", bound.grouping, "Grouping JSON file or preset:table3");
  cmd_bound->add_option("--decoding", bound.decoding,
                        "Decoding sets: JSON file, rule:table2, rule:complement, rule:singleton-if-empty or preset:table3");
  cmd_bound->add_flag("--search-groupings", bound.search_groupings, "Search over all server groupings (n <= 3)");
  cmd_bound->add_option("--search-budget", bound.budget, "Maximum number of decoding configurations to evaluate");

  std::vector<std::string> tables;
  auto* cmd_repro = app.add_subcommand("repro", "Regenerate a stored table and diff it exactly");
  cmd_repro->add_option("tables", tables, "Table ids")->required()->check(CLI::IsMember(repro_tables()));

  int n = 0;
  bool up_to_iso = false;
  bool with_regions = false;
  auto* cmd_enum = app.add_subcommand("enumerate", "List problems of a given size");
  cmd_enum->add_option("n", n, "Number of receivers")->required();
  cmd_enum->add_flag("--up-to-iso", up_to_iso, "One representative per isomorphism class");
  cmd_enum->add_flag("--with-regions", with_regions, "Compare inner and outer regions (n <= 3)");

  std::string repro_format = "text";
  const auto formats = CLI::IsMember({"json", "csv", "text"});
  cmd_bound->add_option("--format", format, "Output format")->check(formats);
  cmd_enum->add_option("--format", format, "Output format")->check(formats);
  cmd_repro->add_option("--format", repro_format, "Output format")->check(formats);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*cmd_bound) {
      if (bound.problem.empty() && bound.problem_file.empty()) throw InvalidInput("bound needs -p or --problem-file");
      if (!bound.region && bound.weights.empty()) throw InvalidInput("bound needs --weights or --region");
      bound.format = format;
      return run_bound(bound);
    }
    if (*cmd_repro) return run_repro(tables, repro_format);
    return run_enumerate(n, up_to_iso, with_regions, format);
  } catch (const BudgetExceeded& e) {
    std::cerr << "dixc: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const ParseError& e) {
    std::cerr << "dixc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "dixc: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "dixc: " << e.what() << '\n';
    return kExitUsage;
  }
}
