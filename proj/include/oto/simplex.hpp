#pragma once

// Dense tableau simplex for   max c^T x  s.t.  A x <= b,  x >= 0,  b >= 0.
// The origin is feasible, so a single phase suffices. Pricing is Dantzig's
// rule with lowest-index tie-breaking; after a run of degenerate pivots it
// falls back to Bland's rule until progress resumes, which rules out cycling.

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Dense>

#include "oto/errors.hpp"

namespace oto {

struct LpSolution {
  std::vector<double> x;
  std::vector<double> duals;  // one per constraint row, >= 0
  double objective = 0.0;
  double dual_objective = 0.0;     // b^T y
  double dual_infeasibility = 0.0;  // max_j (c_j - (A^T y)_j)^+
  int iterations = 0;
};

struct SimplexOptions {
  int max_iterations = 200000;
  int degenerate_run_before_bland = 50;
  double cost_tolerance = 1e-11;
  double pivot_tolerance = 1e-9;
};

inline LpSolution simplex_maximize(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                                   const SimplexOptions& opt = {}) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  if (b.size() != m || c.size() != n) throw InvalidInput("simplex: dimension mismatch");
  if ((b.array() < 0.0).any()) throw InvalidInput("simplex: right-hand side must be non-negative");

  const Eigen::Index width = n + m + 1;
  const Eigen::Index rhs = n + m;
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> t =
      Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>::Zero(m + 1, width);
  t.block(0, 0, m, n) = a;
  for (Eigen::Index i = 0; i < m; ++i) {
    t(i, n + i) = 1.0;
    t(i, rhs) = b(i);
  }
  for (Eigen::Index j = 0; j < n; ++j) t(m, j) = -c(j);

  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  int iter = 0;
  int degenerate_run = 0;
  bool bland = false;
  while (true) {
    Eigen::Index enter = -1;
    double best = -opt.cost_tolerance;
    for (Eigen::Index j = 0; j < rhs; ++j) {
      const double r = t(m, j);
      if (bland) {
        if (r < -opt.cost_tolerance) {
          enter = j;
          break;
        }
      } else if (r < best) {
        best = r;
        enter = j;
      }
    }
    if (enter < 0) break;

    // Minimum ratio; among near-ties prefer the largest pivot (lowest basis
    // index under Bland's rule).
    Eigen::Index leave = -1;
    double ratio = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double piv = t(i, enter);
      if (piv <= opt.pivot_tolerance) continue;
      const double r = std::max(0.0, t(i, rhs)) / piv;
      const double tie = 1e-12 * std::max(1.0, ratio);
      bool take = leave < 0 || r < ratio - tie;
      if (!take && std::abs(r - ratio) <= tie)
        take = bland ? basis[i] < basis[leave] : piv > t(leave, enter);
      if (take) {
        leave = i;
        ratio = r;
      }
    }
    if (leave < 0) throw NumericalFailure("simplex: problem is unbounded");

    if (++iter > opt.max_iterations) {
      std::ostringstream os;
      os << "simplex: no convergence after " << opt.max_iterations << " iterations (objective " << t(m, rhs)
         << ", rows " << m << ", cols " << n << ")";
      throw NumericalFailure(os.str());
    }
    if (ratio <= 1e-14) {
      if (++degenerate_run >= opt.degenerate_run_before_bland) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    const double pivot = t(leave, enter);
    t.row(leave) /= pivot;
    t(leave, enter) = 1.0;
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i == leave) continue;
      const double f = t(i, enter);
      if (f == 0.0) continue;
      t.row(i) -= f * t.row(leave);
      t(i, enter) = 0.0;
    }
    basis[leave] = enter;
  }

  LpSolution sol;
  sol.iterations = iter;
  sol.x.assign(n, 0.0);
  for (Eigen::Index i = 0; i < m; ++i)
    if (basis[i] < n) sol.x[basis[i]] = std::max(0.0, t(i, rhs));
  sol.duals.assign(m, 0.0);
  for (Eigen::Index i = 0; i < m; ++i) sol.duals[i] = std::max(0.0, t(m, n + i));
  sol.objective = 0.0;
  for (Eigen::Index j = 0; j < n; ++j) sol.objective += c(j) * sol.x[j];

  Eigen::Map<const Eigen::VectorXd> y(sol.duals.data(), m);
  sol.dual_objective = b.dot(y);
  if (n > 0) {
    const Eigen::VectorXd reduced = a.transpose() * y - c;
    sol.dual_infeasibility = std::max(0.0, -reduced.minCoeff());
  }
  return sol;
}

}  // namespace oto
