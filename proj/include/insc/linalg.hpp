#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "insc/scalar.hpp"

namespace insc {

template <class S>
using Vec = Eigen::Matrix<S, Eigen::Dynamic, 1>;
template <class S>
using Mat = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;

using VecQ = Vec<Rat>;
using MatQ = Mat<Rat>;

template <class S>
Mat<S> mat_from_rows(const std::vector<Vec<S>>& rows, int cols) {
  Mat<S> m(static_cast<int>(rows.size()), cols);
  for (int i = 0; i < m.rows(); ++i) m.row(i) = rows[i].transpose();
  return m;
}

template <class S>
S max_abs(const Mat<S>& m) {
  S best(0);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) {
      S a = abs_val(m(i, j));
      if (a > best) best = a;
    }
  return best;
}

// In-place reduced row echelon form, scanning columns left to right and
// picking the largest remaining entry in each column as pivot. Returns the
// pivot columns; rank decisions are relative to the input magnitude.
template <class S>
std::vector<int> rref(Mat<S>& m, const S& tol) {
  std::vector<int> pivots;
  if (m.rows() == 0 || m.cols() == 0) return pivots;
  S scale = max_abs(m);
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int ip = -1;
    if constexpr (scalar_traits<S>::exact) {
      for (int i = r; i < m.rows(); ++i)
        if (m(i, c) != 0) { ip = i; break; }
    } else {
      S best(0);
      for (int i = r; i < m.rows(); ++i) {
        S a = abs_val(m(i, c));
        if (a > best) { best = a; ip = i; }
      }
      if (ip >= 0 && near_zero(best, tol, scale)) ip = -1;
    }
    if (ip < 0) continue;
    m.row(r).swap(m.row(ip));
    S piv = m(r, c);
    for (int j = c; j < m.cols(); ++j) m(r, j) = m(r, j) / piv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r) continue;
      S f = m(i, c);
      if (near_zero(f, tol, scale)) { m(i, c) = S(0); continue; }
      for (int j = c; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(r, j);
      m(i, c) = S(0);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class S>
int rank_of(Mat<S> m, const S& tol = scalar_traits<S>::default_tol()) {
  return static_cast<int>(rref(m, tol).size());
}

// A linear subspace kept as a row-reduced basis (rows of `basis`).
template <class S>
struct Subspace {
  int ambient = 0;
  Mat<S> basis;  // dim() x ambient, RREF rows
  int dim() const { return static_cast<int>(basis.rows()); }
};

template <class S>
Subspace<S> make_subspace(int ambient, Mat<S> rows,
                          const S& tol = scalar_traits<S>::default_tol()) {
  Subspace<S> u;
  u.ambient = ambient;
  if (rows.rows() == 0) {
    u.basis.resize(0, ambient);
    return u;
  }
  std::vector<int> piv = rref(rows, tol);
  u.basis = rows.topRows(static_cast<int>(piv.size()));
  return u;
}

template <class S>
Subspace<S> kernel(const Mat<S>& m_in,
                   const S& tol = scalar_traits<S>::default_tol()) {
  Mat<S> m = m_in;
  int n = static_cast<int>(m.cols());
  std::vector<int> piv = rref(m, tol);
  std::vector<char> is_piv(n, 0);
  for (int c : piv) is_piv[c] = 1;
  Mat<S> basis(n - static_cast<int>(piv.size()), n);
  basis.setZero();
  int k = 0;
  for (int f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    basis(k, f) = S(1);
    for (int i = 0; i < static_cast<int>(piv.size()); ++i)
      basis(k, piv[i]) = -m(i, f);
    ++k;
  }
  return make_subspace(n, std::move(basis), tol);
}

template <class S>
std::optional<Vec<S>> solve(const Mat<S>& a, const Vec<S>& b,
                            const S& tol = scalar_traits<S>::default_tol()) {
  Mat<S> aug(a.rows(), a.cols() + 1);
  aug.leftCols(a.cols()) = a;
  aug.col(a.cols()) = b;
  std::vector<int> piv = rref(aug, tol);
  if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
  Vec<S> x = Vec<S>::Zero(a.cols());
  for (int i = 0; i < static_cast<int>(piv.size()); ++i)
    x(piv[i]) = aug(i, a.cols());
  return x;
}

template <class S>
bool subspace_contains(const Subspace<S>& u, const Vec<S>& v,
                       const S& tol = scalar_traits<S>::default_tol()) {
  if (v.size() != u.ambient) return false;
  Mat<S> m(u.dim() + 1, u.ambient);
  m.topRows(u.dim()) = u.basis;
  m.row(u.dim()) = v.transpose();
  return rank_of(std::move(m), tol) == u.dim();
}

template <class S>
Subspace<S> subspace_intersect(const Subspace<S>& u, const Subspace<S>& v,
                               const S& tol = scalar_traits<S>::default_tol()) {
  // x = Bu^t a = Bv^t b; solve for (a,b) and map the a-part back.
  if (u.dim() == 0 || v.dim() == 0) return make_subspace(u.ambient, Mat<S>(0, u.ambient), tol);
  Mat<S> m(u.ambient, u.dim() + v.dim());
  m.leftCols(u.dim()) = u.basis.transpose();
  m.rightCols(v.dim()) = -v.basis.transpose();
  Subspace<S> k = kernel(m, tol);
  Mat<S> rows(k.dim(), u.ambient);
  for (int i = 0; i < k.dim(); ++i)
    rows.row(i) = k.basis.row(i).head(u.dim()) * u.basis;
  return make_subspace(u.ambient, std::move(rows), tol);
}

template <class S>
Subspace<S> orthogonal_complement(const Subspace<S>& u,
                                  const S& tol = scalar_traits<S>::default_tol()) {
  if (u.dim() == 0)
    return make_subspace(u.ambient, Mat<S>(Mat<S>::Identity(u.ambient, u.ambient)), tol);
  return kernel(u.basis, tol);
}

// Gale transform: rows span ker(A), so that ker(G) = im(A^t).
template <class S>
Mat<S> gale_transform(const Mat<S>& a,
                      const S& tol = scalar_traits<S>::default_tol()) {
  return kernel(a, tol).basis;
}

// Symmetric psd complement: G psd with A*G = 0 and A + G of full rank.
// The factorization check walks diagonal pivots; a negative pivot or a zero
// pivot with nonzero residual row disproves psd-ness.
template <class S>
Mat<S> psd_gale(const Mat<S>& a_gram,
                const S& tol = scalar_traits<S>::default_tol()) {
  int n = static_cast<int>(a_gram.rows());
  if (a_gram.cols() != n) throw error("NotPsd", "matrix not square");
  S scale = max_abs(a_gram);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!near_zero(S(a_gram(i, j) - a_gram(j, i)), tol, scale))
        throw error("NotPsd", "matrix not symmetric");
  Mat<S> m = a_gram;
  for (int k = 0; k < n; ++k) {
    if (sign_of(m(k, k), tol, scale) < 0) throw error("NotPsd", "negative pivot");
    if (near_zero(m(k, k), tol, scale)) {
      for (int j = 0; j < n; ++j)
        if (!near_zero(m(k, j), tol, scale))
          throw error("NotPsd", "zero pivot with nonzero row");
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      S f = m(i, k) / m(k, k);
      for (int j = k; j < n; ++j) m(i, j) = m(i, j) - f * m(k, j);
    }
  }
  Mat<S> k = kernel(Mat<S>(a_gram), tol).basis;
  return k.transpose() * k;
}

template <class S>
Vec<S> reflect(const Vec<S>& x, const Vec<S>& alpha,
               const S& tol = scalar_traits<S>::default_tol()) {
  S aa = alpha.dot(alpha);
  if (near_zero(aa, tol, max_abs(Mat<S>(alpha)))) throw error("ZeroNormal", "reflection normal is zero");
  S f = S(2) * alpha.dot(x) / aa;
  return x - f * alpha;
}

template <class S>
Mat<S> reflection_matrix(const Vec<S>& alpha,
                         const S& tol = scalar_traits<S>::default_tol()) {
  S aa = alpha.dot(alpha);
  if (near_zero(aa, tol, max_abs(Mat<S>(alpha)))) throw error("ZeroNormal", "reflection normal is zero");
  int d = static_cast<int>(alpha.size());
  return Mat<S>::Identity(d, d) - Mat<S>(S(2) / aa * (alpha * alpha.transpose()));
}

template <class S>
bool is_orthogonal_matrix(const Mat<S>& m,
                          const S& tol = scalar_traits<S>::default_tol()) {
  if (m.rows() != m.cols()) return false;
  Mat<S> d = m.transpose() * m - Mat<S>::Identity(m.rows(), m.cols());
  S scale = max_abs(m);
  for (int i = 0; i < d.rows(); ++i)
    for (int j = 0; j < d.cols(); ++j)
      if (!near_zero(d(i, j), tol, scale)) return false;
  return true;
}

// The affine set of points equidistant from all input points, with the
// squared distance at the canonical point (the one inside the points'
// affine hull).
template <class S>
struct SphereFit {
  Vec<S> center;
  Subspace<S> directions;  // center + directions = all valid centers
  S radius2;
};

template <class S>
std::optional<SphereFit<S>> circumcenter_space(
    const std::vector<Vec<S>>& pts, const S& tol = scalar_traits<S>::default_tol()) {
  if (pts.empty()) return std::nullopt;
  int d = static_cast<int>(pts[0].size());
  int n = static_cast<int>(pts.size());
  Mat<S> a(n - 1, d);
  Vec<S> b(n - 1);
  for (int i = 1; i < n; ++i) {
    a.row(i - 1) = S(2) * (pts[i] - pts[0]).transpose();
    b(i - 1) = pts[i].dot(pts[i]) - pts[0].dot(pts[0]);
  }
  auto x = solve(a, b, tol);
  if (!x) return std::nullopt;
  SphereFit<S> fit;
  fit.directions = kernel(a, tol);
  // Project onto the affine hull of the points: nearest point to pts[0].
  if (fit.directions.dim() > 0) {
    const Mat<S>& dd = fit.directions.basis;
    Mat<S> gram = dd * dd.transpose();
    Vec<S> rhs = dd * (pts[0] - *x);
    auto u = solve(gram, rhs, tol);
    fit.center = *x + dd.transpose() * *u;
  } else {
    fit.center = *x;
  }
  Vec<S> diff = fit.center - pts[0];
  fit.radius2 = diff.dot(diff);
  return fit;
}

}  // namespace insc
