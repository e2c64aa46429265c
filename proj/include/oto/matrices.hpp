#pragma once

// Per-(pattern, cut) effective submatrices, their log-det cut values and the
// diagonal-dominance machinery used by the gap bounds.

#include <cmath>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include "oto/errors.hpp"
#include "oto/model.hpp"

namespace oto {

inline constexpr double kZeroTolerance = 1e-12;

// H restricted to rows Omega^c and columns Omega, both in ascending node order.
inline ChannelMatrix cut_submatrix(const NetworkInstance& inst, const Cut& cut) {
  const auto rows = cut.complement();
  const auto cols = cut.omega();
  ChannelMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) m(r, c) = inst.h(rows[r], cols[c]);
  return m;
}

struct CutStateMatrix {
  ChannelMatrix m;
  // Node index of each row / column of m. Before transposition rows are
  // receivers and columns transmitters; after it the roles swap.
  std::vector<int> row_labels;
  std::vector<int> col_labels;
  int aligned_count = 0;
  bool conjugate_transposed = false;

  bool oriented_wide() const noexcept { return m.rows() <= m.cols(); }
};

// B_s ⊙ H_Omega with aligned cross-cut pairs on the leading diagonal (ordered by
// transmitter), the remaining rows and columns in ascending node order, and
// conjugate-transposed when needed so that the result is wide.
inline CutStateMatrix cut_state_matrix(const NetworkInstance& inst, const AlignmentPattern& pattern, const Cut& cut) {
  check_pattern(inst, pattern);
  CutStateMatrix out;
  std::vector<int> rows, cols;
  for (const auto& p : pattern.pairs())  // pairs are sorted by transmitter
    if (cut.crosses(p)) {
      cols.push_back(p.from);
      rows.push_back(p.to);
    }
  out.aligned_count = static_cast<int>(rows.size());
  for (int v : cut.complement())
    if (std::find(rows.begin(), rows.end(), v) == rows.end()) rows.push_back(v);
  for (int v : cut.omega())
    if (std::find(cols.begin(), cols.end(), v) == cols.end()) cols.push_back(v);

  out.m.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const double gain = pattern.contains({cols[c], rows[r]}) ? inst.alpha() : inst.beta();
      out.m(r, c) = gain * inst.h(rows[r], cols[c]);
    }
  out.row_labels = std::move(rows);
  out.col_labels = std::move(cols);
  if (out.m.rows() > out.m.cols()) {
    out.m = out.m.adjoint().eval();
    std::swap(out.row_labels, out.col_labels);
    out.conjugate_transposed = true;
  }
  return out;
}

// A = I + P M M^dagger.
inline Eigen::MatrixXcd gram_matrix(const ChannelMatrix& m, double power) {
  Eigen::MatrixXcd a = power * (m * m.adjoint());
  a.diagonal().array() += 1.0;
  return a;
}

inline Eigen::MatrixXcd gram_matrix(const CutStateMatrix& csm, double power) { return gram_matrix(csm.m, power); }

// log2 det of a Hermitian positive definite matrix via Cholesky.
inline double log2_det_hpd(const Eigen::MatrixXcd& a) {
  if (a.rows() == 0) return 0.0;
  Eigen::LLT<Eigen::MatrixXcd> llt(a);
  if (llt.info() != Eigen::Success) throw NumericalFailure("Cholesky factorization failed: matrix not positive definite");
  double acc = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const double d = l(k, k).real();
    if (!(d > 0.0)) throw NumericalFailure("Cholesky factorization produced a non-positive pivot");
    acc += 2.0 * std::log2(d);
  }
  return acc;
}

// C(s, Omega) = log2 det(I + P M M^dagger) in bits.
inline double log_det_capacity(const ChannelMatrix& m, double power) {
  if (!(power > 0.0)) throw InvalidInput("power must be positive");
  if (m.size() == 0 || m.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  const double v = log2_det_hpd(gram_matrix(m, power));
  return v < kZeroTolerance ? 0.0 : v;
}

inline double log_det_capacity(const CutStateMatrix& csm, double power) { return log_det_capacity(csm.m, power); }

// Largest row ratio of off-diagonal absolute mass to the diagonal entry.
inline double rho_of(const Eigen::MatrixXcd& a) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (j != i) off += std::abs(a(i, j));
    worst = std::max(worst, off / std::abs(a(i, i)));
  }
  return worst;
}

inline double rho(const CutStateMatrix& csm, double power) { return rho_of(gram_matrix(csm, power)); }

struct DeterminantBound {
  double value = 0.0;
  double rho = 0.0;
  bool dominance_violated = false;
};

// det(A) >= (1 - rho_A)^n prod A_ii for diagonally dominant A.
inline DeterminantBound ostrowski_lower_bound(const Eigen::MatrixXcd& a) {
  DeterminantBound b;
  b.rho = rho_of(a);
  b.dominance_violated = b.rho >= 1.0;
  double prod = 1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) prod *= a(i, i).real();
  b.value = std::pow(1.0 - b.rho, static_cast<double>(a.rows())) * prod;
  return b;
}

// det(A) <= prod A_ii for positive semidefinite A.
inline double hadamard_upper_bound(const Eigen::MatrixXcd& a) {
  double prod = 1.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) prod *= a(i, i).real();
  return prod;
}

}  // namespace oto
