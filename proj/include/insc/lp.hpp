#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "insc/linalg.hpp"

namespace insc {

// Exact phase-1 simplex with Bland's rule. Decides feasibility of
// M y >= b over free y and returns a feasible point.
inline std::optional<VecQ> feasible_point(const MatQ& m_in, const VecQ& b_in) {
  int m = static_cast<int>(m_in.rows());
  int k = static_cast<int>(m_in.cols());
  if (m == 0) return VecQ::Zero(k);

  // Columns: u(k) | w(k) | slack(m) | artificial(m) | rhs. y = u - w.
  int n = 2 * k + 2 * m;
  MatQ t = MatQ::Zero(m, n + 1);
  for (int i = 0; i < m; ++i) {
    int flip = b_in(i) < 0 ? -1 : 1;
    for (int j = 0; j < k; ++j) {
      t(i, j) = Rat(flip) * m_in(i, j);
      t(i, k + j) = Rat(-flip) * m_in(i, j);
    }
    t(i, 2 * k + i) = Rat(-flip);
    t(i, 2 * k + m + i) = 1;
    t(i, n) = Rat(flip) * b_in(i);
  }
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = 2 * k + m + i;

  auto is_artificial = [&](int col) { return col >= 2 * k + m; };

  for (;;) {
    // Reduced costs for the phase-1 objective (sum of artificials).
    int enter = -1;
    for (int j = 0; j < n && enter < 0; ++j) {
      Rat red = is_artificial(j) ? Rat(1) : Rat(0);
      for (int i = 0; i < m; ++i)
        if (is_artificial(basis[i])) red -= t(i, j);
      if (red < 0) enter = j;  // Bland: first improving column
    }
    if (enter < 0) break;
    int leave = -1;
    Rat best;
    for (int i = 0; i < m; ++i) {
      if (t(i, enter) <= 0) continue;
      Rat ratio = t(i, n) / t(i, enter);
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw error("LPInternal", "phase-1 objective unbounded");
    Rat piv = t(leave, enter);
    for (int j = 0; j <= n; ++j) t(leave, j) /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t(i, enter) == 0) continue;
      Rat f = t(i, enter);
      for (int j = 0; j <= n; ++j) t(i, j) -= f * t(leave, j);
    }
    basis[leave] = enter;
  }

  for (int i = 0; i < m; ++i)
    if (is_artificial(basis[i]) && t(i, n) != 0) return std::nullopt;

  VecQ y = VecQ::Zero(k);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < k)
      y(basis[i]) += t(i, n);
    else if (basis[i] < 2 * k)
      y(basis[i] - k) -= t(i, n);
  }
  return y;
}

// A point of U with every coordinate >= 1, if the open positive cone meets
// U; by homogeneity this decides lambda > 0 feasibility exactly.
inline std::optional<VecQ> strict_positive_point(const Subspace<Rat>& u) {
  if (u.ambient == 0) return std::nullopt;
  if (u.dim() == 0) return std::nullopt;
  MatQ m = u.basis.transpose();  // ambient x dim
  auto y = feasible_point(m, VecQ::Ones(u.ambient));
  if (!y) return std::nullopt;
  return VecQ(m * *y);
}

// Relative-interior point of the face of the nonnegative orthant met by U:
// per-coordinate feasibility certificates, summed.
inline std::pair<VecQ, std::vector<int>> max_support_point(const Subspace<Rat>& u) {
  VecQ acc = VecQ::Zero(u.ambient);
  std::vector<int> support;
  if (u.dim() == 0) return {acc, support};
  MatQ bt = u.basis.transpose();
  for (int i = 0; i < u.ambient; ++i) {
    MatQ m(u.ambient + 1, u.dim());
    m.topRows(u.ambient) = bt;
    m.row(u.ambient) = bt.row(i);
    VecQ b = VecQ::Zero(u.ambient + 1);
    b(u.ambient) = 1;
    auto y = feasible_point(m, b);
    if (y) {
      acc += bt * *y;
      support.push_back(i);
    }
  }
  return {std::move(acc), std::move(support)};
}

// Strict interior point of the cone {x : A x <= 0} (rows of A are outer
// normals), scaled so every inequality has slack >= 1.
inline std::optional<VecQ> cone_interior_point(const MatQ& a) {
  return feasible_point(MatQ(-a), VecQ::Ones(a.rows()));
}

}  // namespace insc
