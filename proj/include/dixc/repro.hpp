#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dixc/decoding.hpp"
#include "dixc/problem.hpp"

namespace dixc {

// Contents of a file compiled into the library, e.g. "expected/table1.json"
// or "presets/table3.json". Throws std::out_of_range for unknown names.
const std::string& embedded_file(const std::string& name);

// One compared quantity. `expected` and `computed` are display strings;
// the comparison itself is exact.
struct ReproCell {
  std::string row;
  std::string column;
  std::string expected;
  std::string computed;
  bool pass = false;
};

struct ReproReport {
  std::string table;
  std::vector<std::string> columns;
  std::vector<ReproCell> cells;

  bool pass() const;
  std::size_t failures() const;
  nlohmann::ordered_json to_json() const;
  // Row/column layout of the stored table; mismatching cells show both values.
  std::string to_text() const;
  std::string to_csv() const;
};

// "example1", "table1", "table2", "table3", "eq9", "n4text".
const std::vector<std::string>& repro_tables();

// Regenerates every cell of the named table and compares it exactly with
// the stored expectation. Throws InvalidInput for an unknown table id.
ReproReport repro(std::string_view table);

// "<=4", "<1.5", "=0", "<3/2" -> relation text and value.
struct TableCell {
  std::string relation;
  Rational value;
};
TableCell parse_table_cell(std::string_view text);
std::string format_table_cell(const std::string& relation, const Rational& value);

// Decoding sets prescribed by the n=3 table for the isomorphism class of p
// (the rule is label independent, so it is applied to p directly).
DecodingConfig table2_decoding(const ProblemInstance& p);
// Name of that rule: "complement" or "singleton-if-empty".
std::string table2_rule(const ProblemInstance& p);

// Preset groupings / decoding sets; only "table3" exists.
ServerGrouping preset_grouping(std::string_view name);
std::vector<DecodingConfig> preset_decoding(std::string_view name, const ServerGrouping& grouping);

// Per-group decoding sets from a JSON document: either one receiver map
// applied to every group (receivers outside a group are ignored), or a list
// of {"group": [...], "decoding": {...}} entries matched by group.
std::vector<DecodingConfig> decoding_for_grouping(const nlohmann::json& doc, const ProblemInstance& p,
                                                  const ServerGrouping& grouping);

}  // namespace dixc
