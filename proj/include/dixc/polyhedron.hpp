#pragma once

#include <compare>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dixc/rational.hpp"
#include "dixc/subset.hpp"

namespace dixc {

enum class VarKind {
  kRate,         // R_j
  kGroupRate,    // R_{j,P}: rate of receiver j carried by server group P
  kComposite,    // C_{K,J}: composite rate of subset K at server J
  kSetFunction,  // f_T(S)
};

// Identifies an LP variable by role. Unused fields stay at their defaults
// so that (kind, indices) is unique and comparable.
struct VariableId {
  VarKind kind = VarKind::kRate;
  int receiver = -1;
  int group = -1;
  SubsetId first;   // K for composites, T for set functions
  SubsetId second;  // J for composites, S for set functions

  static VariableId rate(int j) { return {VarKind::kRate, j, -1, {}, {}}; }
  static VariableId group_rate(int j, int group) { return {VarKind::kGroupRate, j, group, {}, {}}; }
  static VariableId composite(SubsetId k, SubsetId server) { return {VarKind::kComposite, -1, -1, k, server}; }
  static VariableId set_function(SubsetId t, SubsetId s) { return {VarKind::kSetFunction, -1, -1, t, s}; }

  // "R_1", "R_{1,P2}", "C_{1,3|1,2,3}", "f_{1,2}(1)", "f_{1,2}()".
  std::string name() const;
  static VariableId parse(std::string_view name);

  auto operator<=>(const VariableId&) const = default;
};

using LinearExpr = std::map<VariableId, Rational>;

enum class Relation { kLessEqual, kEqual };

struct LinearInequality {
  LinearExpr coeffs;  // zero coefficients are never stored
  Relation relation = Relation::kLessEqual;
  Rational rhs;
  std::string origin;

  static LinearInequality less_equal(const LinearExpr& lhs, Rational rhs, std::string origin = {});
  static LinearInequality equal(const LinearExpr& lhs, Rational rhs, std::string origin = {});
  // -x <= 0
  static LinearInequality nonnegative(const VariableId& v);

  bool satisfied_by(const std::map<VariableId, Rational>& point) const;
  std::string to_string() const;
};

// Finite system of linear (in)equalities over declared variables.
// Variables without an explicit nonnegativity row are free.
class Polyhedron {
 public:
  Polyhedron() = default;
  explicit Polyhedron(std::vector<VariableId> variables);

  // No-op when already declared. Returns the variable's column.
  int add_variable(const VariableId& v);
  // Declares v and adds -v <= 0.
  void add_nonnegative(const VariableId& v);
  // Throws InvalidInput when the row references an undeclared variable.
  void add_constraint(LinearInequality row);

  const std::vector<VariableId>& variables() const { return variables_; }
  const std::vector<LinearInequality>& constraints() const { return constraints_; }
  bool declares(const VariableId& v) const { return index_.contains(v); }
  int index_of(const VariableId& v) const;

  nlohmann::ordered_json to_json() const;
  static Polyhedron from_json(const nlohmann::json& doc);

 private:
  std::vector<VariableId> variables_;
  std::map<VariableId, int> index_;
  std::vector<LinearInequality> constraints_;
};

// Column-aligned form used by the LP and projection code.
struct DenseRow {
  RationalVector coeffs;
  Rational rhs;
  bool equality = false;
  std::string origin;
};

std::vector<DenseRow> to_dense(const Polyhedron& p);
LinearInequality from_dense(const DenseRow& row, const std::vector<VariableId>& variables);

// Sum of w_j R_j over the given receivers' rate variables.
LinearExpr rate_objective(const RationalVector& weights);

}  // namespace dixc
