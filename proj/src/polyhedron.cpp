#include "dixc/polyhedron.hpp"

#include <charconv>
#include <sstream>

#include "dixc/errors.hpp"

namespace dixc {
namespace {

std::string braced_key(SubsetId s) { return "{" + s.key() + "}"; }

int parse_index(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || value < 1) {
    throw ParseError("bad index '" + std::string(s) + "'");
  }
  return value;
}

SubsetId parse_subset(std::string_view s) { return SubsetId::parse_key(s, SubsetId::kMaxElements); }

std::string_view strip(std::string_view s, std::string_view prefix, std::string_view suffix, std::string_view whole) {
  if (!s.starts_with(prefix) || !s.ends_with(suffix) || s.size() < prefix.size() + suffix.size()) {
    throw ParseError("bad variable name '" + std::string(whole) + "'");
  }
  s.remove_prefix(prefix.size());
  s.remove_suffix(suffix.size());
  return s;
}

}  // namespace

std::string VariableId::name() const {
  switch (kind) {
    case VarKind::kRate:
      return "R_" + std::to_string(receiver + 1);
    case VarKind::kGroupRate:
      return "R_{" + std::to_string(receiver + 1) + ",P" + std::to_string(group + 1) + "}";
    case VarKind::kComposite:
      return "C_{" + first.key() + "|" + second.key() + "}";
    case VarKind::kSetFunction:
      return "f_" + braced_key(first) + "(" + second.key() + ")";
  }
  return {};
}

VariableId VariableId::parse(std::string_view name) {
  if (name.starts_with("R_{")) {
    auto body = strip(name, "R_{", "}", name);
    auto comma = body.find(",P");
    if (comma == std::string_view::npos) throw ParseError("bad variable name '" + std::string(name) + "'");
    return group_rate(parse_index(body.substr(0, comma)) - 1, parse_index(body.substr(comma + 2)) - 1);
  }
  if (name.starts_with("R_")) return rate(parse_index(name.substr(2)) - 1);
  if (name.starts_with("C_{")) {
    auto body = strip(name, "C_{", "}", name);
    auto bar = body.find('|');
    if (bar == std::string_view::npos) throw ParseError("bad variable name '" + std::string(name) + "'");
    return composite(parse_subset(body.substr(0, bar)), parse_subset(body.substr(bar + 1)));
  }
  if (name.starts_with("f_{")) {
    auto body = strip(name, "f_{", ")", name);
    auto split = body.find("}(");
    if (split == std::string_view::npos) throw ParseError("bad variable name '" + std::string(name) + "'");
    return set_function(parse_subset(body.substr(0, split)), parse_subset(body.substr(split + 2)));
  }
  throw ParseError("bad variable name '" + std::string(name) + "'");
}

LinearInequality LinearInequality::less_equal(const LinearExpr& lhs, Rational rhs, std::string origin) {
  LinearInequality row;
  for (const auto& [v, c] : lhs) {
    if (c != 0) row.coeffs.emplace(v, c);
  }
  row.rhs = std::move(rhs);
  row.origin = std::move(origin);
  return row;
}

LinearInequality LinearInequality::equal(const LinearExpr& lhs, Rational rhs, std::string origin) {
  LinearInequality row = less_equal(lhs, std::move(rhs), std::move(origin));
  row.relation = Relation::kEqual;
  return row;
}

LinearInequality LinearInequality::nonnegative(const VariableId& v) {
  return less_equal({{v, Rational(-1)}}, 0, "nonnegativity");
}

bool LinearInequality::satisfied_by(const std::map<VariableId, Rational>& point) const {
  Rational lhs = 0;
  for (const auto& [v, c] : coeffs) {
    auto it = point.find(v);
    if (it != point.end()) lhs += c * it->second;
  }
  return relation == Relation::kEqual ? lhs == rhs : lhs <= rhs;
}

std::string LinearInequality::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (const auto& [v, c] : coeffs) {
    if (c < 0) {
      out << (first ? "-" : " - ");
    } else if (!first) {
      out << " + ";
    }
    const Rational magnitude = abs(c);
    if (magnitude != 1) out << dixc::to_string(magnitude) << ' ';
    out << v.name();
    first = false;
  }
  if (first) out << '0';
  out << (relation == Relation::kEqual ? " = " : " <= ") << dixc::to_string(rhs);
  return out.str();
}

Polyhedron::Polyhedron(std::vector<VariableId> variables) {
  for (const auto& v : variables) add_variable(v);
}

int Polyhedron::add_variable(const VariableId& v) {
  auto [it, inserted] = index_.emplace(v, static_cast<int>(variables_.size()));
  if (inserted) variables_.push_back(v);
  return it->second;
}

void Polyhedron::add_nonnegative(const VariableId& v) {
  add_variable(v);
  constraints_.push_back(LinearInequality::nonnegative(v));
}

void Polyhedron::add_constraint(LinearInequality row) {
  for (const auto& [v, c] : row.coeffs) {
    if (!declares(v)) throw InvalidInput("constraint references undeclared variable " + v.name());
  }
  constraints_.push_back(std::move(row));
}

int Polyhedron::index_of(const VariableId& v) const {
  auto it = index_.find(v);
  if (it == index_.end()) throw InvalidInput("undeclared variable " + v.name());
  return it->second;
}

nlohmann::ordered_json Polyhedron::to_json() const {
  nlohmann::ordered_json doc;
  doc["vars"] = nlohmann::ordered_json::array();
  for (const auto& v : variables_) doc["vars"].push_back(v.name());
  doc["cons"] = nlohmann::ordered_json::array();
  for (const auto& row : constraints_) {
    nlohmann::ordered_json c;
    c["lhs"] = nlohmann::ordered_json::object();
    for (const auto& [v, coeff] : row.coeffs) c["lhs"][v.name()] = dixc::to_string(coeff);
    c["rel"] = row.relation == Relation::kEqual ? "=" : "<=";
    c["rhs"] = dixc::to_string(row.rhs);
    if (!row.origin.empty()) c["origin"] = row.origin;
    doc["cons"].push_back(std::move(c));
  }
  return doc;
}

Polyhedron Polyhedron::from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("vars") || !doc.contains("cons")) {
    throw ParseError("polyhedron document needs 'vars' and 'cons'");
  }
  Polyhedron p;
  for (const auto& name : doc["vars"]) p.add_variable(VariableId::parse(name.get<std::string>()));
  for (const auto& c : doc["cons"]) {
    LinearExpr lhs;
    for (const auto& [name, value] : c.at("lhs").items()) {
      lhs[VariableId::parse(name)] = parse_rational(value.get<std::string>());
    }
    const std::string rel = c.at("rel").get<std::string>();
    const Rational rhs = parse_rational(c.at("rhs").get<std::string>());
    const std::string origin = c.contains("origin") ? c["origin"].get<std::string>() : std::string{};
    if (rel == "<=") {
      p.add_constraint(LinearInequality::less_equal(lhs, rhs, origin));
    } else if (rel == "=") {
      p.add_constraint(LinearInequality::equal(lhs, rhs, origin));
    } else {
      throw ParseError("unknown relation '" + rel + "'");
    }
  }
  return p;
}

std::vector<DenseRow> to_dense(const Polyhedron& p) {
  std::vector<DenseRow> rows;
  rows.reserve(p.constraints().size());
  const std::size_t width = p.variables().size();
  for (const auto& c : p.constraints()) {
    DenseRow row{RationalVector(width), c.rhs, c.relation == Relation::kEqual, c.origin};
    for (const auto& [v, coeff] : c.coeffs) row.coeffs[p.index_of(v)] = coeff;
    rows.push_back(std::move(row));
  }
  return rows;
}

LinearInequality from_dense(const DenseRow& row, const std::vector<VariableId>& variables) {
  LinearExpr lhs;
  for (std::size_t i = 0; i < row.coeffs.size(); ++i) {
    if (row.coeffs[i] != 0) lhs.emplace(variables[i], row.coeffs[i]);
  }
  return row.equality ? LinearInequality::equal(lhs, row.rhs, row.origin)
                      : LinearInequality::less_equal(lhs, row.rhs, row.origin);
}

LinearExpr rate_objective(const RationalVector& weights) {
  LinearExpr out;
  for (std::size_t j = 0; j < weights.size(); ++j) {
    if (weights[j] != 0) out.emplace(VariableId::rate(static_cast<int>(j)), weights[j]);
  }
  return out;
}

}  // namespace dixc
