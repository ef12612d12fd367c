#include "dixc/projection.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "dixc/errors.hpp"
#include "dixc/lp.hpp"

namespace dixc {
namespace {

struct System {
  std::vector<VariableId> vars;
  std::vector<DenseRow> rows;

  void erase_column(std::size_t col) {
    vars.erase(vars.begin() + static_cast<std::ptrdiff_t>(col));
    for (auto& row : rows) row.coeffs.erase(row.coeffs.begin() + static_cast<std::ptrdiff_t>(col));
  }
};

int dixc_sgn(const Rational& x) { return sgn(x); }

bool is_zero(const RationalVector& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

// Scales the row so that its first nonzero coefficient has magnitude 1.
void normalize(DenseRow& row) {
  for (const auto& c : row.coeffs) {
    if (c == 0) continue;
    const Rational scale = 1 / abs(c);
    if (scale != 1) {
      for (auto& x : row.coeffs) x *= scale;
      row.rhs *= scale;
    }
    return;
  }
}

// Normalizes rows, drops trivially true rows, keeps the tightest copy of
// parallel inequalities. Throws InfeasibleError on 0 <= negative.
void tidy(std::vector<DenseRow>& rows) {
  std::vector<DenseRow> out;
  std::map<std::pair<RationalVector, bool>, std::size_t> seen;
  for (auto& row : rows) {
    if (is_zero(row.coeffs)) {
      if (row.equality ? row.rhs != 0 : row.rhs < 0) throw InfeasibleError("polyhedron is empty");
      continue;
    }
    normalize(row);
    auto key = std::make_pair(row.coeffs, row.equality);
    auto it = seen.find(key);
    if (it == seen.end()) {
      seen.emplace(std::move(key), out.size());
      out.push_back(std::move(row));
    } else if (!row.equality && row.rhs < out[it->second].rhs) {
      out[it->second].rhs = row.rhs;
      out[it->second].origin = row.origin;
    } else if (row.equality && row.rhs != out[it->second].rhs) {
      throw InfeasibleError("polyhedron is empty");
    }
  }
  rows = std::move(out);
}

void prune_redundant(std::vector<DenseRow>& rows, std::size_t width) {
  {
    const LpResult feasible = lp_max_dense(RationalVector(width), rows, width);
    if (feasible.status == LpStatus::kInfeasible) throw InfeasibleError("polyhedron is empty");
  }
  std::vector<bool> keep(rows.size(), true);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].equality) continue;
    std::vector<DenseRow> others;
    others.reserve(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k != i && keep[k]) others.push_back(rows[k]);
    }
    const LpResult r = lp_max_dense(rows[i].coeffs, others, width);
    if (r.status == LpStatus::kOptimal && r.value <= rows[i].rhs) keep[i] = false;
  }
  std::vector<DenseRow> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (keep[i]) out.push_back(std::move(rows[i]));
  }
  rows = std::move(out);
}

Polyhedron to_polyhedron(const System& s) {
  Polyhedron p(s.vars);
  for (const auto& row : s.rows) p.add_constraint(from_dense(row, s.vars));
  return p;
}

// Eliminates column `col` of an inequality-only (in that column) system.
void fm_step(System& s, std::size_t col) {
  std::vector<DenseRow> pos, neg, out;
  for (auto& row : s.rows) {
    const int sgn = dixc_sgn(row.coeffs[col]);
    if (sgn > 0) {
      pos.push_back(std::move(row));
    } else if (sgn < 0) {
      neg.push_back(std::move(row));
    } else {
      out.push_back(std::move(row));
    }
  }
  for (const auto& p : pos) {
    const Rational& a = p.coeffs[col];
    for (const auto& q : neg) {
      const Rational b = -q.coeffs[col];
      // b * p + a * q cancels the column; both multipliers are positive.
      DenseRow combined{RationalVector(p.coeffs.size()), b * p.rhs + a * q.rhs, false, "fm"};
      for (std::size_t j = 0; j < p.coeffs.size(); ++j) {
        if (p.coeffs[j] != 0 || q.coeffs[j] != 0) combined.coeffs[j] = b * p.coeffs[j] + a * q.coeffs[j];
      }
      combined.coeffs[col] = 0;
      out.push_back(std::move(combined));
    }
  }
  s.rows = std::move(out);
}

}  // namespace

Polyhedron fm_eliminate(const Polyhedron& p, const std::vector<VariableId>& drop) {
  System s{p.variables(), to_dense(p)};
  for (const auto& v : drop) p.index_of(v);

  auto column_of = [&](const VariableId& v) -> std::ptrdiff_t {
    auto it = std::find(s.vars.begin(), s.vars.end(), v);
    return it == s.vars.end() ? -1 : it - s.vars.begin();
  };

  // Substitute equalities that touch a dropped variable.
  for (const auto& v : drop) {
    const auto col = column_of(v);
    if (col < 0) continue;
    auto eq = std::find_if(s.rows.begin(), s.rows.end(),
                           [&](const DenseRow& r) { return r.equality && r.coeffs[col] != 0; });
    if (eq == s.rows.end()) continue;
    const DenseRow pivot = *eq;
    s.rows.erase(eq);
    for (auto& row : s.rows) {
      if (row.coeffs[col] == 0) continue;
      const Rational factor = row.coeffs[col] / pivot.coeffs[col];
      for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
        if (pivot.coeffs[j] != 0) row.coeffs[j] -= factor * pivot.coeffs[j];
      }
      row.rhs -= factor * pivot.rhs;
    }
    s.erase_column(static_cast<std::size_t>(col));
  }
  tidy(s.rows);

  std::set<VariableId> pending;
  for (const auto& v : drop) {
    if (column_of(v) >= 0) pending.insert(v);
  }
  while (!pending.empty()) {
    // Pick the variable with the smallest pos x neg product; ties go to
    // the leftmost column.
    std::size_t best_col = 0;
    long long best_cost = -1;
    for (std::size_t col = 0; col < s.vars.size(); ++col) {
      if (!pending.contains(s.vars[col])) continue;
      long long pos = 0, neg = 0;
      for (const auto& row : s.rows) {
        if (row.coeffs[col] > 0) ++pos;
        if (row.coeffs[col] < 0) ++neg;
      }
      if (best_cost < 0 || pos * neg < best_cost) {
        best_cost = pos * neg;
        best_col = col;
      }
    }
    pending.erase(s.vars[best_col]);
    fm_step(s, best_col);
    s.erase_column(best_col);
    tidy(s.rows);
    prune_redundant(s.rows, s.vars.size());
  }
  return to_polyhedron(s);
}

Polyhedron remove_redundant(const Polyhedron& p) {
  System s{p.variables(), to_dense(p)};
  tidy(s.rows);
  prune_redundant(s.rows, s.vars.size());
  // Sign rows first, then by support size and support indices.
  auto key = [](const DenseRow& r) {
    std::vector<std::size_t> support;
    bool sign_only = true;
    for (std::size_t k = 0; k < r.coeffs.size(); ++k) {
      if (r.coeffs[k] == 0) continue;
      support.push_back(k);
      if (r.coeffs[k] > 0) sign_only = false;
    }
    return std::tuple(!sign_only, support.size(), support);
  };
  std::stable_sort(s.rows.begin(), s.rows.end(),
                   [&](const DenseRow& a, const DenseRow& b) { return key(a) < key(b); });
  return to_polyhedron(s);
}

Support support(const Polyhedron& p, const LinearExpr& direction) {
  const auto r = lp_max(direction, p);
  Support out;
  out.feasible = r.status != LpStatus::kInfeasible;
  out.bounded = r.status == LpStatus::kOptimal;
  if (out.bounded) out.value = r.value;
  return out;
}

bool support_equal(const Polyhedron& a, const Polyhedron& b, const std::vector<LinearExpr>& directions) {
  for (const auto& w : directions) {
    const Support sa = support(a, w);
    const Support sb = support(b, w);
    if (sa.feasible != sb.feasible || sa.bounded != sb.bounded) return false;
    if (sa.bounded && sa.value != sb.value) return false;
  }
  return true;
}

bool region_contains(const Polyhedron& outer, const Polyhedron& inner) {
  for (const auto& row : outer.constraints()) {
    const auto hi = lp_max(row.coeffs, inner);
    if (hi.status == LpStatus::kInfeasible) return true;
    if (hi.status == LpStatus::kUnbounded || hi.value > row.rhs) return false;
    if (row.relation == Relation::kEqual) {
      LinearExpr negated;
      for (const auto& [v, c] : row.coeffs) negated.emplace(v, -c);
      const auto lo = lp_max(negated, inner);
      if (lo.status == LpStatus::kUnbounded || -lo.value < row.rhs) return false;
    }
  }
  return true;
}

}  // namespace dixc
