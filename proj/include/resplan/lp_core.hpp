#pragma once

// Dense two-phase primal simplex with Bland's anti-cycling rule.
//
// Problems are small (a few dozen rows, under a hundred columns), so the full
// tableau is kept in one Eigen matrix. Variables carry finite lower bounds and
// no upper bounds; lower bounds are shifted out before the tableau is built.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace resplan {

enum class Relation { kLessEqual, kEqual, kGreaterEqual };

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

template <typename Scalar>
struct LpConstraint {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coeffs;
  Relation relation = Relation::kLessEqual;
  Scalar rhs = Scalar(0);
};

/// minimize c.x subject to rows (a_i . x  rel_i  rhs_i) and x >= lower.
///
/// Every mutator checks dimensions and finiteness, so a malformed problem
/// never reaches the solver.
template <typename Scalar>
class LpProblem {
 public:
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit LpProblem(Eigen::Index num_vars)
      : objective_(Vector::Zero(num_vars)), lower_(Vector::Zero(num_vars)), names_(num_vars) {
    if (num_vars < 0) throw std::invalid_argument("LpProblem: negative variable count");
  }

  Eigen::Index num_vars() const { return objective_.size(); }
  Eigen::Index num_constraints() const { return static_cast<Eigen::Index>(constraints_.size()); }

  void set_objective(const Vector& c) {
    check_dim(c, "objective");
    objective_ = c;
  }
  void set_objective_coeff(Eigen::Index j, Scalar v) {
    check_index(j);
    check_finite(v, "objective coefficient");
    objective_(j) = v;
  }

  void add_constraint(const Vector& coeffs, Relation rel, Scalar rhs) {
    check_dim(coeffs, "constraint");
    check_finite(rhs, "constraint bound");
    constraints_.push_back({coeffs, rel, rhs});
  }

  void set_lower_bound(Eigen::Index j, Scalar v) {
    check_index(j);
    check_finite(v, "lower bound");
    lower_(j) = v;
  }

  void set_name(Eigen::Index j, std::string name) {
    check_index(j);
    names_[j] = std::move(name);
  }

  const Vector& objective() const { return objective_; }
  const std::vector<LpConstraint<Scalar>>& constraints() const { return constraints_; }
  const Vector& lower_bounds() const { return lower_; }
  const std::string& name(Eigen::Index j) const { return names_[j]; }

 private:
  void check_dim(const Vector& v, const char* what) const {
    if (v.size() != num_vars())
      throw std::invalid_argument(std::string("LpProblem: ") + what + " has " + std::to_string(v.size()) +
                                  " entries, expected " + std::to_string(num_vars()));
    if (!v.allFinite()) throw std::invalid_argument(std::string("LpProblem: non-finite ") + what);
  }
  void check_index(Eigen::Index j) const {
    if (j < 0 || j >= num_vars()) throw std::out_of_range("LpProblem: variable index out of range");
  }
  static void check_finite(Scalar v, const char* what) {
    if (!std::isfinite(static_cast<double>(v))) throw std::invalid_argument(std::string("LpProblem: non-finite ") + what);
  }

  Vector objective_;
  std::vector<LpConstraint<Scalar>> constraints_;
  Vector lower_;
  std::vector<std::string> names_;
};

template <typename Scalar>
struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x;
  Scalar objective_value = Scalar(0);
  int pivots = 0;
};

template <typename Scalar>
struct SimplexOptions {
  Scalar pivot_tol = Scalar(1e-9);
  Scalar cost_tol = Scalar(1e-9);
  Scalar feasibility_tol = Scalar(1e-7);
  int max_pivots = 100000;
};

namespace detail {

template <typename Scalar>
class Tableau {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  // Rows 0..m-1 hold constraints, row m the reduced costs; last column is the rhs.
  Matrix t;
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return t.rows() - 1; }
  Eigen::Index cols() const { return t.cols() - 1; }
  Scalar& rhs(Eigen::Index i) { return t(i, cols()); }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i == r) continue;
      const Scalar f = t(i, c);
      if (f != Scalar(0)) t.row(i) -= f * t.row(r);
    }
    basis[r] = c;
  }

  void price(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& cost) {
    t.row(rows()).setZero();
    t.row(rows()).head(cost.size()) = cost.transpose();
    for (Eigen::Index i = 0; i < rows(); ++i) {
      const Scalar cb = basis[i] < cost.size() ? cost(basis[i]) : Scalar(0);
      if (cb != Scalar(0)) t.row(rows()) -= cb * t.row(i);
    }
  }

  // Bland's rule over columns [0, allowed). Returns false when unbounded.
  bool optimize(Eigen::Index allowed, const SimplexOptions<Scalar>& opt, int& pivots) {
    const Eigen::Index obj = rows();
    while (true) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (t(obj, j) < -opt.cost_tol) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;

      Scalar best = std::numeric_limits<Scalar>::infinity();
      for (Eigen::Index i = 0; i < obj; ++i) {
        if (t(i, enter) > opt.pivot_tol) best = std::min(best, t(i, cols()) / t(i, enter));
      }
      if (!std::isfinite(static_cast<double>(best))) return false;
      // Ties on the minimum ratio go to the smallest basic variable index.
      Eigen::Index leave = -1;
      for (Eigen::Index i = 0; i < obj; ++i) {
        if (t(i, enter) <= opt.pivot_tol) continue;
        if (t(i, cols()) / t(i, enter) > best + opt.pivot_tol) continue;
        if (leave < 0 || basis[i] < basis[leave]) leave = i;
      }
      if (++pivots > opt.max_pivots) throw std::runtime_error("simplex: pivot limit exceeded");
      pivot(leave, enter);
    }
  }
};

}  // namespace detail

/// Solves `problem` to optimality or returns an infeasible/unbounded verdict.
/// Deterministic: identical input gives identical output.
template <typename Scalar>
LpSolution<Scalar> solve_lp(const LpProblem<Scalar>& problem, const SimplexOptions<Scalar>& opt = {}) {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  const Eigen::Index n = problem.num_vars();
  const Eigen::Index m = problem.num_constraints();
  const Vector& lower = problem.lower_bounds();

  // Shift x = y + lower and orient every row to a non-negative rhs.
  Matrix a(m, n);
  Vector b(m);
  std::vector<Relation> rel(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const auto& row = problem.constraints()[i];
    a.row(i) = row.coeffs.transpose();
    b(i) = row.rhs - row.coeffs.dot(lower);
    rel[i] = row.relation;
    if (b(i) < Scalar(0)) {
      a.row(i) *= Scalar(-1);
      b(i) = -b(i);
      if (rel[i] == Relation::kLessEqual)
        rel[i] = Relation::kGreaterEqual;
      else if (rel[i] == Relation::kGreaterEqual)
        rel[i] = Relation::kLessEqual;
    }
  }

  Eigen::Index num_slack = 0;
  Eigen::Index num_art = 0;
  for (Relation r : rel) {
    if (r != Relation::kEqual) ++num_slack;
    if (r != Relation::kLessEqual) ++num_art;
  }
  const Eigen::Index art_begin = n + num_slack;
  const Eigen::Index total = art_begin + num_art;

  detail::Tableau<Scalar> tab;
  tab.t = Matrix::Zero(m + 1, total + 1);
  tab.basis.assign(m, -1);
  Eigen::Index next_slack = n;
  Eigen::Index next_art = art_begin;
  for (Eigen::Index i = 0; i < m; ++i) {
    tab.t.row(i).head(n) = a.row(i);
    tab.rhs(i) = b(i);
    if (rel[i] == Relation::kLessEqual) {
      tab.t(i, next_slack) = Scalar(1);
      tab.basis[i] = next_slack++;
    } else {
      if (rel[i] == Relation::kGreaterEqual) tab.t(i, next_slack++) = Scalar(-1);
      tab.t(i, next_art) = Scalar(1);
      tab.basis[i] = next_art++;
    }
  }

  LpSolution<Scalar> sol;

  // Phase I: minimise the sum of artificials.
  if (num_art > 0) {
    Vector phase1_cost = Vector::Zero(total);
    phase1_cost.tail(num_art).setOnes();
    tab.price(phase1_cost);
    tab.optimize(total, opt, sol.pivots);
    const Scalar infeasibility = -tab.t(m, total);
    const Scalar scale = Scalar(1) + (b.size() > 0 ? b.cwiseAbs().maxCoeff() : Scalar(0));
    if (infeasibility > opt.feasibility_tol * scale) {
      sol.status = LpStatus::kInfeasible;
      return sol;
    }

    // Drive zero-valued artificials out of the basis; drop redundant rows.
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (tab.basis[i] >= art_begin) {
        Eigen::Index col = -1;
        for (Eigen::Index j = 0; j < art_begin; ++j) {
          if (std::abs(tab.t(i, j)) > opt.pivot_tol) {
            col = j;
            break;
          }
        }
        if (col < 0) continue;
        tab.pivot(i, col);
      }
      keep.push_back(i);
    }
    Matrix reduced(static_cast<Eigen::Index>(keep.size()) + 1, art_begin + 1);
    std::vector<Eigen::Index> basis;
    for (std::size_t k = 0; k < keep.size(); ++k) {
      const Eigen::Index i = keep[k];
      reduced.row(k).head(art_begin) = tab.t.row(i).head(art_begin);
      reduced(k, art_begin) = tab.t(i, total);
      basis.push_back(tab.basis[i]);
    }
    tab.t = std::move(reduced);
    tab.basis = std::move(basis);
  }

  // Phase II on the original objective.
  Vector cost = Vector::Zero(art_begin);
  cost.head(n) = problem.objective();
  tab.price(cost);
  if (!tab.optimize(art_begin, opt, sol.pivots)) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  Vector y = Vector::Zero(art_begin);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) y(tab.basis[i]) = tab.rhs(i);
  sol.status = LpStatus::kOptimal;
  sol.x = y.head(n) + lower;
  sol.objective_value = problem.objective().dot(sol.x);
  return sol;
}

/// Largest violation of any row or lower bound at x (0 when feasible).
template <typename Scalar>
Scalar max_violation(const LpProblem<Scalar>& problem, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x) {
  Scalar worst = Scalar(0);
  for (const auto& row : problem.constraints()) {
    const Scalar lhs = row.coeffs.dot(x);
    Scalar v = Scalar(0);
    switch (row.relation) {
      case Relation::kLessEqual:
        v = lhs - row.rhs;
        break;
      case Relation::kGreaterEqual:
        v = row.rhs - lhs;
        break;
      case Relation::kEqual:
        v = std::abs(lhs - row.rhs);
        break;
    }
    worst = std::max(worst, v);
  }
  if (x.size() > 0) worst = std::max(worst, (problem.lower_bounds() - x).maxCoeff());
  return worst;
}

using LpProblemd = LpProblem<double>;
using LpSolutiond = LpSolution<double>;

}  // namespace resplan
