#include "dixc/lp.hpp"

#include <optional>
#include <stdexcept>

#include "dixc/errors.hpp"

namespace dixc {
namespace {

// Tableau over the standard form  T x = rhs, x >= 0, rhs >= 0.
// `reduced` holds z_j - c_j for the current objective; a column may enter
// the basis when its entry is negative.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : t_(rows, RationalVector(cols)), rhs_(rows), basis_(rows, 0), cols_(cols) {}

  RationalVector& row(std::size_t i) { return t_[i]; }
  Rational& rhs(std::size_t i) { return rhs_[i]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::size_t rows() const { return t_.size(); }
  std::size_t cols() const { return cols_; }
  const RationalVector& reduced() const { return reduced_; }
  const Rational& objective_value() const { return value_; }

  void set_objective(const RationalVector& cost) {
    reduced_.assign(cols(), Rational(0));
    value_ = 0;
    for (std::size_t j = 0; j < cols(); ++j) reduced_[j] = -cost[j];
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (t_[i][j] != 0) reduced_[j] += cb * t_[i][j];
      }
      value_ += cb * rhs_[i];
    }
  }

  // Runs Bland's rule until optimal. Columns with allowed[j] == false never
  // enter. Returns false on unboundedness.
  bool optimize(const std::vector<bool>& allowed) {
    while (true) {
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < cols(); ++j) {
        if (allowed[j] && reduced_[j] < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return true;
      const std::size_t e = *entering;

      std::optional<std::size_t> leaving;
      Rational best_ratio;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (t_[i][e] <= 0) continue;
        Rational ratio = rhs_[i] / t_[i][e];
        if (!leaving || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = std::move(ratio);
        }
      }
      if (!leaving) return false;
      pivot(*leaving, e);
    }
  }

  void pivot(std::size_t r, std::size_t e) {
    RationalVector& pr = t_[r];
    const Rational inv = 1 / pr[e];
    std::vector<std::size_t> nonzero;
    for (std::size_t j = 0; j < cols(); ++j) {
      if (pr[j] != 0) {
        pr[j] *= inv;
        nonzero.push_back(j);
      }
    }
    rhs_[r] *= inv;

    Rational factor;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (i == r || t_[i][e] == 0) continue;
      factor = t_[i][e];
      for (std::size_t j : nonzero) t_[i][j] -= factor * pr[j];
      rhs_[i] -= factor * rhs_[r];
    }
    if (reduced_[e] != 0) {
      factor = reduced_[e];
      for (std::size_t j : nonzero) reduced_[j] -= factor * pr[j];
      value_ -= factor * rhs_[r];
    }
    basis_[r] = e;
  }

 private:
  std::vector<RationalVector> t_;
  RationalVector rhs_;
  std::vector<std::size_t> basis_;
  std::size_t cols_;
  RationalVector reduced_;
  Rational value_;
};

bool is_sign_row(const DenseRow& row, std::size_t& var) {
  if (row.equality || row.rhs != 0) return false;
  std::optional<std::size_t> found;
  for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
    if (row.coeffs[j] == 0) continue;
    if (found || row.coeffs[j] > 0) return false;
    found = j;
  }
  if (!found) return false;
  var = *found;
  return true;
}

void verify(const LpResult& result, const RationalVector& objective, const std::vector<DenseRow>& rows,
            std::size_t width) {
  for (const auto& row : rows) {
    Rational lhs = 0;
    for (std::size_t j = 0; j < width; ++j) {
      if (row.coeffs[j] != 0) lhs += row.coeffs[j] * result.point[j];
    }
    if (row.equality ? lhs != row.rhs : lhs > row.rhs) throw std::logic_error("simplex point violates a constraint");
  }
  Rational primal = 0;
  for (std::size_t j = 0; j < width; ++j) primal += objective[j] * result.point[j];
  if (primal != result.value) throw std::logic_error("simplex value does not match its point");

  RationalVector combo(width);
  Rational dual_value = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Rational& y = result.dual[i];
    if (y == 0) continue;
    if (!rows[i].equality && y < 0) throw std::logic_error("negative dual multiplier on an inequality");
    for (std::size_t j = 0; j < width; ++j) {
      if (rows[i].coeffs[j] != 0) combo[j] += y * rows[i].coeffs[j];
    }
    dual_value += y * rows[i].rhs;
  }
  if (combo != objective || dual_value != result.value) throw std::logic_error("dual certificate does not close");
}

}  // namespace

LpResult lp_max_dense(const RationalVector& objective, const std::vector<DenseRow>& rows, std::size_t width) {
  if (objective.size() != width) throw InvalidInput("objective width mismatch");

  // Sign rows become variable bounds; remember which row to charge the
  // reduced cost to when building the dual.
  std::vector<std::optional<std::size_t>> sign_row(width);
  std::vector<std::size_t> table_rows;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].coeffs.size() != width) throw InvalidInput("row width mismatch");
    std::size_t var = 0;
    if (is_sign_row(rows[i], var)) {
      if (!sign_row[var]) {
        sign_row[var] = i;
        continue;
      }
      // duplicate sign row: redundant, dual 0
      continue;
    }
    table_rows.push_back(i);
  }

  // Column layout: structural (x_j, or x_j+ and x_j- when free), slacks,
  // artificials.
  std::vector<std::size_t> pos_col(width);
  std::vector<std::optional<std::size_t>> neg_col(width);
  std::size_t cols = 0;
  for (std::size_t j = 0; j < width; ++j) {
    pos_col[j] = cols++;
    if (!sign_row[j]) neg_col[j] = cols++;
  }
  const std::size_t structural = cols;
  const std::size_t m = table_rows.size();
  std::vector<std::optional<std::size_t>> slack(m);
  std::vector<std::optional<std::size_t>> artificial(m);
  std::vector<int> sign(m, 1);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = rows[table_rows[r]];
    if (!row.equality) slack[r] = cols++;
    if (row.rhs < 0) sign[r] = -1;
  }
  const std::size_t first_artificial = cols;
  for (std::size_t r = 0; r < m; ++r) {
    if (rows[table_rows[r]].equality || sign[r] < 0) artificial[r] = cols++;
  }

  Tableau tab(m, cols);
  for (std::size_t r = 0; r < m; ++r) {
    const auto& row = rows[table_rows[r]];
    RationalVector& t = tab.row(r);
    for (std::size_t j = 0; j < width; ++j) {
      if (row.coeffs[j] == 0) continue;
      t[pos_col[j]] = sign[r] * row.coeffs[j];
      if (neg_col[j]) t[*neg_col[j]] = -sign[r] * row.coeffs[j];
    }
    if (slack[r]) t[*slack[r]] = sign[r];
    tab.rhs(r) = sign[r] * row.rhs;
    if (artificial[r]) {
      t[*artificial[r]] = 1;
      tab.basic(r) = *artificial[r];
    } else {
      tab.basic(r) = *slack[r];
    }
  }

  std::vector<bool> allowed(cols, true);
  if (first_artificial < cols) {
    RationalVector phase_one(cols);
    for (std::size_t j = first_artificial; j < cols; ++j) phase_one[j] = -1;
    tab.set_objective(phase_one);
    tab.optimize(allowed);
    if (tab.objective_value() < 0) return LpResult{LpStatus::kInfeasible, 0, {}, {}};
    // Drive zero-level artificials out of the basis where possible; rows
    // where that fails are all-zero outside artificial columns and stay
    // inert for the rest of the solve.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basic(r) < first_artificial) continue;
      for (std::size_t j = 0; j < first_artificial; ++j) {
        if (tab.row(r)[j] != 0) {
          tab.pivot(r, j);
          break;
        }
      }
    }
    for (std::size_t j = first_artificial; j < cols; ++j) allowed[j] = false;
  }

  RationalVector cost(cols);
  for (std::size_t j = 0; j < width; ++j) {
    cost[pos_col[j]] = objective[j];
    if (neg_col[j]) cost[*neg_col[j]] = -objective[j];
  }
  tab.set_objective(cost);
  if (!tab.optimize(allowed)) return LpResult{LpStatus::kUnbounded, 0, {}, {}};

  LpResult result;
  result.status = LpStatus::kOptimal;
  result.value = tab.objective_value();
  RationalVector column_value(cols);
  for (std::size_t r = 0; r < m; ++r) column_value[tab.basic(r)] = tab.rhs(r);
  result.point.assign(width, Rational(0));
  for (std::size_t j = 0; j < width; ++j) {
    result.point[j] = column_value[pos_col[j]];
    if (neg_col[j]) result.point[j] -= column_value[*neg_col[j]];
  }

  // Dual multipliers read off the reduced costs of slack / artificial
  // columns, then sign rows absorb the remaining reduced cost of their
  // variable.
  result.dual.assign(rows.size(), Rational(0));
  const RationalVector& reduced = tab.reduced();
  for (std::size_t r = 0; r < m; ++r) {
    result.dual[table_rows[r]] = slack[r] ? reduced[*slack[r]] : sign[r] * reduced[*artificial[r]];
  }
  for (std::size_t j = 0; j < width; ++j) {
    if (!sign_row[j]) continue;
    const std::size_t i = *sign_row[j];
    result.dual[i] = reduced[pos_col[j]] / -rows[i].coeffs[j];
  }
  (void)structural;
  verify(result, objective, rows, width);
  return result;
}

PolyhedronLpResult lp_max(const LinearExpr& objective, const Polyhedron& p) {
  RationalVector c(p.variables().size());
  for (const auto& [v, coeff] : objective) c[p.index_of(v)] = coeff;
  const LpResult dense = lp_max_dense(c, to_dense(p), c.size());
  PolyhedronLpResult out{dense.status, dense.value, {}, dense.dual};
  for (std::size_t j = 0; j < dense.point.size(); ++j) out.point.emplace(p.variables()[j], dense.point[j]);
  return out;
}

}  // namespace dixc
