#include "dixc/repro.hpp"

#include <algorithm>
#include <iomanip>
#include <set>
#include <sstream>

#include "dixc/errors.hpp"
#include "dixc/inner_bounds.hpp"
#include "dixc/outer_bounds.hpp"
#include "dixc/projection.hpp"

namespace dixc {
namespace {

using nlohmann::json;

json load(const std::string& name) { return json::parse(embedded_file(name)); }

RationalVector direction_of(const json& d) {
  RationalVector out;
  for (const auto& x : d) out.emplace_back(x.get<long>());
  return out;
}

std::vector<RationalVector> directions_of(const json& doc) {
  std::vector<RationalVector> out;
  for (const auto& d : doc.at("directions")) out.push_back(direction_of(d));
  return out;
}

std::vector<std::string> columns_of(const json& doc) { return doc.at("columns").get<std::vector<std::string>>(); }

std::string braced(const std::string& key) { return "{" + key + "}"; }

void add_value_cell(ReproReport& report, const std::string& row, const std::string& column, const std::string& expected,
                    const Rational& computed) {
  const TableCell want = parse_table_cell(expected);
  report.cells.push_back({row, column, expected, format_table_cell(want.relation, computed), want.value == computed});
}

void add_check(ReproReport& report, const std::string& row, const std::string& column, const std::string& expected,
               const std::string& computed, bool pass) {
  report.cells.push_back({row, column, expected, computed, pass});
}

// Polyhedron over R_1..R_n given by "w . R <= value" rows plus R >= 0.
Polyhedron table_region(int n, const std::vector<RationalVector>& directions, const RationalVector& values) {
  Polyhedron out = rate_polyhedron(n);
  for (std::size_t c = 0; c < directions.size(); ++c) {
    out.add_constraint(LinearInequality::less_equal(rate_objective(directions[c]), values[c]));
  }
  return out;
}

ServerGroup group_from_keys(const json& keys, int n) {
  ServerGroup g;
  for (const auto& k : keys) g.push_back(SubsetId::parse_key(k.get<std::string>(), n));
  std::sort(g.begin(), g.end(), SubsetId::display_less);
  return g;
}

std::string group_label(const ServerGroup& g) {
  std::string out = "{";
  for (std::size_t i = 0; i < g.size(); ++i) out += (i ? "," : "") + braced(g[i].key());
  return out + "}";
}

ReproReport repro_example1() {
  const json doc = load("expected/example1.json");
  ReproReport report{"example1", {"rhs"}, {}};
  const ProblemInstance unit = parse_problem(doc.at("problem").get<std::string>());
  const int n = unit.size();

  // Distinct powers of two as capacities make every right-hand side spell
  // out exactly which servers it sums.
  RationalVector tagged(std::size_t{1} << n);
  for (std::uint32_t m = 1; m < tagged.size(); ++m) tagged[m] = Rational(mpz_class(1) << (m - 1));
  const ProblemInstance symbolic = unit.with_capacities(tagged);

  const Polyhedron unit_region = build_mais(unit);
  const Polyhedron symbolic_region = build_mais(symbolic);

  auto find_rhs = [](const Polyhedron& region, SubsetId s) -> std::optional<Rational> {
    for (const auto& row : region.constraints()) {
      if (row.relation != Relation::kLessEqual || row.coeffs.size() != static_cast<std::size_t>(s.size())) continue;
      bool match = true;
      for (const auto& [v, c] : row.coeffs) {
        if (v.kind != VarKind::kRate || !s.contains(v.receiver) || c != 1) match = false;
      }
      if (match) return row.rhs;
    }
    return std::nullopt;
  };

  std::size_t listed = 0;
  for (const auto& row : doc.at("rows")) {
    ++listed;
    const SubsetId s = SubsetId::parse_key(row.at("S").get<std::string>(), n);
    const std::string label = "S=" + braced(s.key());
    const auto unit_rhs = find_rhs(unit_region, s);
    add_check(report, label, "unit capacities", "<=" + row.at("unit_rhs").get<std::string>(),
              unit_rhs ? "<=" + to_string(*unit_rhs) : "absent",
              unit_rhs && *unit_rhs == parse_rational(row.at("unit_rhs").get<std::string>()));

    Rational want = 0;
    std::string servers;
    for (const auto& key : row.at("servers")) {
      want += tagged[SubsetId::parse_key(key.get<std::string>(), n).mask()];
      servers += (servers.empty() ? "" : "+") + std::string("C") + braced(key.get<std::string>());
    }
    const auto got = find_rhs(symbolic_region, s);
    std::string got_text = "absent";
    if (got) {
      got_text.clear();
      for (SubsetId server : nonempty_subsets_display_order(n)) {
        if (mpz_tstbit(got->get_num_mpz_t(), server.mask() - 1) != 0) {
          got_text += (got_text.empty() ? "" : "+") + std::string("C") + braced(server.key());
        }
      }
    }
    add_check(report, label, "symbolic", servers, got_text, got && *got == want);
  }

  std::size_t computed_rows = 0;
  for (const auto& row : unit_region.constraints()) {
    if (row.origin != "nonnegativity") ++computed_rows;
  }
  add_check(report, "all", "row count", std::to_string(listed), std::to_string(computed_rows), computed_rows == listed);
  return report;
}

ReproReport repro_table1() {
  const json doc = load("expected/table1.json");
  ReproReport report{"table1", columns_of(doc), {}};
  const ProblemInstance p = parse_problem(doc.at("problem").get<std::string>());
  const auto directions = directions_of(doc);
  const ServerGrouping singles = ServerGrouping::singletons(p.size());

  for (std::size_t c = 0; c < directions.size(); ++c) {
    const auto found = search_decoding_sets(p, singles, directions[c]);
    for (const auto& row : doc.at("rows")) {
      const SubsetId server = SubsetId::parse_key(row.at("server").get<std::string>(), p.size());
      std::size_t g = 0;
      while (singles.groups()[g].front() != server) ++g;
      add_value_cell(report, braced(server.key()), report.columns[c], row.at("cells")[c].get<std::string>(),
                     found.group_values[g]);
    }
    const BoundResult combined = scheme_separate(p, std::nullopt, {directions[c]});
    add_value_cell(report, "Sum rates", report.columns[c], doc.at("sum")[c].get<std::string>(), *combined.value);
  }
  return report;
}

ReproReport repro_table2() {
  const json doc = load("expected/table2.json");
  ReproReport report{"table2", columns_of(doc), {}};
  const auto directions = directions_of(doc);

  std::set<std::vector<SubsetId>> listed;
  for (const auto& row : doc.at("rows")) {
    RationalVector values;
    for (const auto& cell : row.at("cells")) values.push_back(parse_table_cell(cell.get<std::string>()).value);
    const std::string rule = row.at("rule").get<std::string>();
    for (const auto& text : row.at("problems")) {
      const ProblemInstance p = parse_problem(text.get<std::string>());
      listed.insert(canonical_form(p).instance.side_info());
      const ServerGroup all = ServerGrouping::single_group(p.size()).groups().front();
      const DecodingConfig config = rule == "singleton-if-empty" ? singleton_if_empty_rule(p, all) : complement_rule(p, all);
      const std::string label = to_compact(p);
      for (std::size_t c = 0; c < directions.size(); ++c) {
        const BoundResult inner = scheme_joint(p, config, {directions[c]});
        add_value_cell(report, label, report.columns[c], row.at("cells")[c].get<std::string>(), *inner.value);
        const Rational outer = outer_support(p, OuterBoundKind::kPolymatroidPlusCustom, directions[c]);
        add_value_cell(report, label + " [outer]", report.columns[c], row.at("cells")[c].get<std::string>(), outer);
      }
      const Polyhedron inner_region = *scheme_joint(p, config, {}).region;
      const Polyhedron outer = outer_region(p, OuterBoundKind::kPolymatroidPlusCustom);
      add_check(report, label, "inner region = outer region", "equal",
                region_equal(inner_region, outer) ? "equal" : "different", region_equal(inner_region, outer));
      const bool matches_row = region_equal(inner_region, table_region(p.size(), directions, values));
      add_check(report, label, "inner region = table row", "equal", matches_row ? "equal" : "different", matches_row);
    }
  }

  std::set<std::vector<SubsetId>> classes;
  for (const auto& p : enumerate_problems(3, false)) classes.insert(canonical_form(p).instance.side_info());
  add_check(report, "64 labeled problems", "isomorphism classes", std::to_string(listed.size()) + " listed",
            std::to_string(classes.size()), listed.size() == 16 && classes == listed);
  return report;
}

ReproReport repro_table3() {
  const json doc = load("expected/table3.json");
  ReproReport report{"table3", columns_of(doc), {}};
  const ProblemInstance p = parse_problem(doc.at("problem").get<std::string>());
  const auto directions = directions_of(doc);
  const ServerGrouping grouping = preset_grouping("table3");
  const auto configs = preset_decoding("table3", grouping);

  for (const auto& row : doc.at("rows")) {
    const ServerGroup group = group_from_keys(row.at("group"), p.size());
    std::size_t g = 0;
    while (g < grouping.size() && grouping.groups()[g] != group) ++g;
    if (g == grouping.size()) throw std::logic_error("table3 row group missing from the preset grouping");
    for (std::size_t c = 0; c < directions.size(); ++c) {
      add_value_cell(report, "P=" + group_label(group), report.columns[c], row.at("cells")[c].get<std::string>(),
                     group_support(p, group, configs[g], directions[c]));
    }
  }
  for (std::size_t c = 0; c < directions.size(); ++c) {
    const BoundResult r = scheme_grouped(p, grouping, configs, {directions[c]});
    add_value_cell(report, "Sum rates", report.columns[c], doc.at("sum")[c].get<std::string>(), *r.value);
  }
  const RationalVector ones(p.size(), Rational(1));
  const std::string sum_rate = doc.at("sum_rate").get<std::string>();
  const Rational inner = *scheme_grouped(p, grouping, configs, {ones}).value;
  const Rational outer = outer_support(p, OuterBoundKind::kPolymatroid, ones);
  add_value_cell(report, "sum rate", "grouped inner", "<=" + sum_rate, inner);
  add_value_cell(report, "sum rate", "polymatroid outer", "<=" + sum_rate, outer);
  return report;
}

ReproReport repro_eq9() {
  const json doc = load("expected/eq9.json");
  ReproReport report{"eq9", {"R_1+R_2+R_3"}, {}};
  const ProblemInstance p = parse_problem(doc.at("problem").get<std::string>());
  const RationalVector ones(3, Rational(1));
  const ServerGroup all = ServerGrouping::single_group(3).groups().front();
  const std::string label = to_compact(p);

  add_value_cell(report, label + " joint inner (table rule)", "sum", "<=" + doc.at("inner_joint_sum").get<std::string>(),
                 *scheme_joint(p, singleton_if_empty_rule(p, all), {ones}).value);
  add_value_cell(report, label + " joint inner (searched)", "sum", "<=" + doc.at("inner_joint_sum").get<std::string>(),
                 *scheme_joint(p, std::nullopt, {ones}).value);
  add_value_cell(report, label + " polymatroid+custom", "sum", "<=" + doc.at("outer_custom_sum").get<std::string>(),
                 outer_support(p, OuterBoundKind::kPolymatroidPlusCustom, ones));

  const Rational poly = outer_support(p, OuterBoundKind::kPolymatroid, ones);
  const Rational cut = parse_rational(doc.at("outer_custom_sum").get<std::string>());
  add_check(report, label + " polymatroid", "sum", "> " + to_decimal_string(cut), "<=" + to_decimal_string(poly),
            poly > cut);
  add_value_cell(report, label + " polymatroid (LP value)", "sum", "<=" + doc.at("outer_polymatroid_sum").get<std::string>(),
                 poly);

  const ProblemInstance removed = parse_problem(doc.at("edge_removed_problem").get<std::string>());
  const Rational removed_inner = *scheme_joint(removed, complement_rule(removed, all), {ones}).value;
  add_value_cell(report, to_compact(removed) + " joint inner", "sum", "<=" + doc.at("edge_removed_sum").get<std::string>(),
                 removed_inner);
  add_check(report, "edge removal", "sum differs", "!= " + to_decimal_string(cut), to_decimal_string(cut) + " vs " + to_decimal_string(removed_inner),
            removed_inner != cut);
  return report;
}

ReproReport repro_n4text() {
  const json doc = load("expected/n4text.json");
  ReproReport report{"n4text", {"bound"}, {}};
  const ProblemInstance p = parse_problem(doc.at("problem").get<std::string>());
  const DecodingConfig config = DecodingConfig::from_json(doc.at("decoding"), p.size());

  const Polyhedron region = *scheme_joint(p, config, {}).region;
  std::vector<RationalVector> directions;
  RationalVector values;
  for (const auto& row : doc.at("region")) {
    RationalVector w(p.size());
    std::string label;
    for (const auto& j : row.at("lhs")) {
      w[j.get<int>() - 1] = 1;
      label += (label.empty() ? "R_" : "+R_") + std::to_string(j.get<int>());
    }
    const std::string cell = row.at("cell").get<std::string>();
    directions.push_back(w);
    values.push_back(parse_table_cell(cell).value);
    add_value_cell(report, label, "bound", cell, support(region, rate_objective(w)).value);
  }
  const bool equal = region_equal(region, table_region(p.size(), directions, values));
  add_check(report, "full region", "bound", "equal to listing", equal ? "equal" : "different", equal);

  const RationalVector ones(p.size(), Rational(1));
  add_value_cell(report, "sum rate (LP)", "bound", doc.at("region").back().at("cell").get<std::string>(),
                 *scheme_joint(p, config, {ones}).value);
  return report;
}

}  // namespace

bool ReproReport::pass() const { return failures() == 0 && !cells.empty(); }

std::size_t ReproReport::failures() const {
  return static_cast<std::size_t>(std::count_if(cells.begin(), cells.end(), [](const ReproCell& c) { return !c.pass; }));
}

nlohmann::ordered_json ReproReport::to_json() const {
  nlohmann::ordered_json doc;
  doc["table"] = table;
  doc["pass"] = pass();
  doc["cells"] = nlohmann::ordered_json::array();
  for (const auto& c : cells) {
    nlohmann::ordered_json cell;
    cell["row"] = c.row;
    cell["column"] = c.column;
    cell["expected"] = c.expected;
    cell["computed"] = c.computed;
    cell["pass"] = c.pass;
    doc["cells"].push_back(std::move(cell));
  }
  return doc;
}

std::string ReproReport::to_text() const {
  // Collect rows and columns in first-seen order.
  std::vector<std::string> rows, cols;
  for (const auto& c : cells) {
    if (std::find(rows.begin(), rows.end(), c.row) == rows.end()) rows.push_back(c.row);
    if (std::find(cols.begin(), cols.end(), c.column) == cols.end()) cols.push_back(c.column);
  }
  auto text_of = [](const ReproCell& c) { return c.pass ? c.computed : c.computed + " (want " + c.expected + ")"; };

  std::size_t label_width = 0;
  for (const auto& r : rows) label_width = std::max(label_width, r.size());
  std::vector<std::size_t> widths(cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) widths[k] = cols[k].size();
  for (const auto& c : cells) {
    const auto k = static_cast<std::size_t>(std::find(cols.begin(), cols.end(), c.column) - cols.begin());
    widths[k] = std::max(widths[k], text_of(c).size());
  }

  std::ostringstream out;
  out << table << ": " << (pass() ? "PASS" : "FAIL") << " (" << cells.size() - failures() << "/" << cells.size()
      << " cells match)\n";
  out << std::left << std::setw(static_cast<int>(label_width)) << "";
  for (std::size_t k = 0; k < cols.size(); ++k) out << " | " << std::setw(static_cast<int>(widths[k])) << cols[k];
  out << '\n';
  for (const auto& r : rows) {
    out << std::setw(static_cast<int>(label_width)) << r;
    for (std::size_t k = 0; k < cols.size(); ++k) {
      auto it = std::find_if(cells.begin(), cells.end(),
                             [&](const ReproCell& c) { return c.row == r && c.column == cols[k]; });
      out << " | " << std::setw(static_cast<int>(widths[k])) << (it == cells.end() ? "" : text_of(*it));
    }
    out << '\n';
  }
  return out.str();
}

std::string ReproReport::to_csv() const {
  auto quote = [](const std::string& s) {
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
  };
  std::ostringstream out;
  out << "table,row,column,expected,computed,pass\n";
  for (const auto& c : cells) {
    out << table << ',' << quote(c.row) << ',' << quote(c.column) << ',' << quote(c.expected) << ','
        << quote(c.computed) << ',' << (c.pass ? "true" : "false") << '\n';
  }
  return out.str();
}

const std::vector<std::string>& repro_tables() {
  static const std::vector<std::string> tables{"example1", "table1", "table2", "table3", "eq9", "n4text"};
  return tables;
}

ReproReport repro(std::string_view table) {
  if (table == "example1") return repro_example1();
  if (table == "table1") return repro_table1();
  if (table == "table2") return repro_table2();
  if (table == "table3") return repro_table3();
  if (table == "eq9") return repro_eq9();
  if (table == "n4text") return repro_n4text();
  throw InvalidInput("unknown table '" + std::string(table) + "'");
}

TableCell parse_table_cell(std::string_view text) {
  std::string relation;
  if (text.starts_with("<=")) {
    relation = "<=";
  } else if (text.starts_with("<") || text.starts_with("=")) {
    relation = std::string(1, text.front());
  } else {
    throw ParseError("table cell must start with <, <= or =: '" + std::string(text) + "'");
  }
  return {relation, parse_rational(text.substr(relation.size()))};
}

std::string format_table_cell(const std::string& relation, const Rational& value) {
  return relation + to_decimal_string(value);
}

std::string table2_rule(const ProblemInstance& p) {
  if (p.size() != 3) throw InvalidInput("rule:table2 applies to n = 3 problems only");
  const json doc = load("expected/table2.json");
  const auto target = canonical_form(p).instance.side_info();
  for (const auto& row : doc.at("rows")) {
    for (const auto& text : row.at("problems")) {
      if (canonical_form(parse_problem(text.get<std::string>())).instance.side_info() == target) {
        return row.at("rule").get<std::string>();
      }
    }
  }
  throw std::logic_error("n = 3 problem missing from the stored table");
}

DecodingConfig table2_decoding(const ProblemInstance& p) {
  const ServerGroup all = ServerGrouping::single_group(p.size()).groups().front();
  return table2_rule(p) == "singleton-if-empty" ? singleton_if_empty_rule(p, all) : complement_rule(p, all);
}

ServerGrouping preset_grouping(std::string_view name) {
  if (name != "table3") throw InvalidInput("unknown grouping preset '" + std::string(name) + "'");
  return ServerGrouping::from_json(load("presets/table3.json"), 4);
}

std::vector<DecodingConfig> preset_decoding(std::string_view name, const ServerGrouping& grouping) {
  if (name != "table3") throw InvalidInput("unknown decoding preset '" + std::string(name) + "'");
  const ProblemInstance p = parse_problem(load("expected/table3.json").at("problem").get<std::string>());
  return decoding_for_grouping(load("presets/table3_decoding.json"), p, grouping);
}

std::vector<DecodingConfig> decoding_for_grouping(const nlohmann::json& doc, const ProblemInstance& p,
                                                  const ServerGrouping& grouping) {
  std::vector<DecodingConfig> out;
  if (doc.is_object()) {
    const DecodingConfig uniform = DecodingConfig::from_json(doc, p.size());
    for (const auto& group : grouping.groups()) {
      DecodingConfig c{std::vector<SubsetId>(p.size())};
      for (int j : message_union(group).elements()) c.sets[j] = uniform.sets[j];
      out.push_back(std::move(c));
    }
    return out;
  }
  if (!doc.is_array()) throw ParseError("decoding document must be an object or a list of per-group entries");
  for (const auto& group : grouping.groups()) {
    const json* match = nullptr;
    for (const auto& entry : doc) {
      if (!entry.is_object() || !entry.contains("group") || !entry.contains("decoding")) {
        throw ParseError("per-group decoding entries need 'group' and 'decoding'");
      }
      if (group_from_keys(entry.at("group"), p.size()) == group) match = &entry;
    }
    if (!match) throw InvalidInput("no decoding sets given for group " + group_label(group));
    out.push_back(DecodingConfig::from_json(match->at("decoding"), p.size()));
  }
  return out;
}

}  // namespace dixc
