#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "insc/fan.hpp"

namespace insc {

// Region angles of a 2D fan, counterclockwise, in units of pi. Exact lane
// keeps rational multiples of pi; every classification predicate is linear in
// these, so classification stays exact.
template <class S>
struct Profile {
  std::vector<S> pi_units;
  int size() const { return static_cast<int>(pi_units.size()); }
  const S& at(int i) const {
    int n = size();
    return pi_units[((i % n) + n) % n];
  }
};

template <class S>
void validate_profile(const Profile<S>& b, const S& tol = scalar_traits<S>::default_tol()) {
  if (b.size() < 3) throw error("InvalidProfile", "need at least 3 regions");
  S sum(0);
  for (const S& x : b.pi_units) {
    if (sign_of(x, tol) <= 0 || sign_of(S(S(1) - x), tol) <= 0)
      throw error("InvalidProfile", "angles must lie strictly between 0 and pi");
    sum += x;
  }
  if (!near_zero(S(sum - S(2)), tol, S(2)))
    throw error("InvalidProfile", "angles must sum to 2*pi");
}

// Odd profiles are always virtually inscribable (dim 1); even ones exactly
// when the even-index angles sum to pi (dim 2).
template <class S>
std::pair<bool, int> virtually_inscribable_profile(
    const Profile<S>& b, const S& tol = scalar_traits<S>::default_tol()) {
  validate_profile(b, tol);
  if (b.size() % 2 == 1) return {true, 1};
  S even_sum(0);
  for (int i = 0; i < b.size(); i += 2) even_sum += b.pi_units[i];
  if (near_zero(S(even_sum - S(1)), tol)) return {true, 2};
  return {false, 0};
}

template <class S>
bool inscribable_profile(const Profile<S>& b, const S& tol = scalar_traits<S>::default_tol()) {
  auto [virt, dim] = virtually_inscribable_profile(b, tol);
  if (!virt) return false;
  int n = b.size();
  if (n % 2 == 1) {
    for (int j = 0; j < n; ++j) {
      S alt(0);
      for (int i = 0; i < n; ++i) alt += (i % 2 == 0 ? b.at(j + i) : S(-b.at(j + i)));
      if (sign_of(alt, tol) <= 0) return false;
    }
    return true;
  }
  int m = n / 2;
  for (int j = 0; j < n; ++j)
    for (int h = 0; h < m; ++h) {
      S sum(0);
      for (int i = 1; i <= h; ++i) sum += b.at(2 * i + j);
      for (int i = h + 1; i <= m - 1; ++i) sum += b.at(2 * i + 1 + j);
      if (sign_of(S(S(1) - sum), tol) <= 0) return false;
    }
  return true;
}

// Central angles from the bisection relation 2*beta_i = alpha_{i-1} + alpha_i;
// unique for odd n. Cyclic back-substitution gives
//     alpha_i = beta_i - beta_{i-1} + beta_{i-2} - ... + beta_{i-(n-1)},
// which reproduces the relation exactly (checked by the tests; the sum of
// the alphas telescopes to 2*pi).
template <class S>
std::vector<S> alphas_from_profile(const Profile<S>& b,
                                   const S& tol = scalar_traits<S>::default_tol()) {
  validate_profile(b, tol);
  int n = b.size();
  if (n % 2 == 0) throw error("EvenN", "the bisection map is not injective for even n");
  std::vector<S> alpha(n, S(0));
  for (int i = 0; i < n; ++i) {
    S s(0);
    for (int j = 0; j < n; ++j) s += (j % 2 == 0 ? b.at(i - j) : S(-b.at(i - j)));
    alpha[i] = s;
  }
  return alpha;
}

// Even-n solution family: alpha(t) = particular + t * (+1,-1,+1,...).
// Exists iff the profile is virtually inscribable.
template <class S>
std::pair<std::vector<S>, std::vector<S>> alphas_from_profile_even(
    const Profile<S>& b, const S& tol = scalar_traits<S>::default_tol()) {
  auto [virt, dim] = virtually_inscribable_profile(b, tol);
  int n = b.size();
  if (n % 2 == 1) throw error("BadParams", "even-n solver called with odd profile");
  if (!virt) throw error("NotInscribable", "no central angles: profile not virtually inscribable");
  std::vector<S> part(n), dir(n);
  part[0] = S(0);
  dir[0] = S(1);
  for (int i = 1; i < n; ++i) {
    part[i] = S(2) * b.pi_units[i] - part[i - 1];
    dir[i] = S(-dir[i - 1]);
  }
  return {part, dir};
}

// Inscribed polygon with the given profile. For odd profiles `rotation`
// rigidly places the first vertex; for even profiles it selects the member
// of the one-parameter family (|rotation| < 1 spans the open feasible
// interval, 0 the midpoint).
template <class S>
Polytope<double> polygon_from_profile(const Profile<S>& b, double radius, double rotation,
                                      const S& tol = scalar_traits<S>::default_tol()) {
  if (radius <= 0) throw error("BadParams", "radius must be positive");
  if (!inscribable_profile(b, tol)) throw error("NotInscribable", "profile fails the window sums");
  int n = b.size();
  std::vector<double> alpha(n);
  double place0 = 0;
  if (n % 2 == 1) {
    auto a = alphas_from_profile(b, tol);
    for (int i = 0; i < n; ++i) alpha[i] = M_PI * scalar_traits<S>::to_double(a[i]);
    place0 = rotation;
  } else {
    auto [part, dir] = alphas_from_profile_even(b, tol);
    double lo = -1e300, hi = 1e300;
    for (int i = 0; i < n; ++i) {
      double p = M_PI * scalar_traits<S>::to_double(part[i]);
      double d = scalar_traits<S>::to_double(dir[i]);
      // p + t*d*pi > 0
      if (d > 0)
        lo = std::max(lo, -p / M_PI);
      else
        hi = std::min(hi, p / M_PI);
    }
    if (!(lo < hi)) throw error("NotInscribable", "empty feasible interval for even profile");
    if (!(std::abs(rotation) < 1)) throw error("BadParams", "even-profile rotation must be in (-1,1)");
    double t = 0.5 * (lo + hi) + rotation * 0.5 * (hi - lo);
    for (int i = 0; i < n; ++i)
      alpha[i] = M_PI * (scalar_traits<S>::to_double(part[i]) +
                         t * scalar_traits<S>::to_double(dir[i]));
  }
  std::vector<Vec<double>> vs;
  double psi = place0;
  for (int i = 0; i < n; ++i) {
    Vec<double> v(2);
    v << radius * std::cos(psi), radius * std::sin(psi);
    vs.push_back(v);
    psi += alpha[i];
  }
  return convex_hull(vs, 1e-9);
}

// Inscribed polygon with prescribed edge lengths (normalized to sum 2).
// The circumradius solves sum(2*asin(l_i/2r)) = 2*pi when the center is
// enclosed, and the reflex variant with the longest edge otherwise.
inline Polytope<double> polygon_from_lengths(std::vector<double> lengths) {
  int n = static_cast<int>(lengths.size());
  if (n < 3) throw error("BadParams", "need at least 3 lengths");
  double total = 0;
  for (double l : lengths) {
    if (!(l > 0)) throw error("BadParams", "lengths must be positive");
    total += l;
  }
  for (auto& l : lengths) l *= 2.0 / total;
  int jmax = 0;
  for (int i = 1; i < n; ++i)
    if (lengths[i] > lengths[jmax]) jmax = i;
  if (lengths[jmax] >= 2 - lengths[jmax] - 1e-15)
    throw error("TriangleInequality", "one length dominates the rest");

  double lmax = lengths[jmax];
  auto enclosed = [&](double r) {
    double s = 0;
    for (double l : lengths) s += 2 * std::asin(std::min(1.0, l / (2 * r)));
    return s - 2 * M_PI;
  };
  auto reflex = [&](double r) {
    double s = 0;
    for (int i = 0; i < n; ++i)
      if (i != jmax) s += 2 * std::asin(std::min(1.0, lengths[i] / (2 * r)));
    return s - 2 * std::asin(std::min(1.0, lmax / (2 * r)));
  };
  double lo = lmax / 2, hi = 4.0;  // sum of lengths is 2, so r < 4 generously
  double r;
  if (enclosed(lo) >= 0) {
    // enclosed center: monotone decreasing in r
    while (enclosed(hi) > 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
      r = 0.5 * (lo + hi);
      (enclosed(r) > 0 ? lo : hi) = r;
      if (hi - lo < 1e-14) break;
    }
    r = 0.5 * (lo + hi);
  } else {
    // center outside: find the sign change of the reflex equation
    while (reflex(hi) < 0) hi *= 2;
    for (int it = 0; it < 200; ++it) {
      r = 0.5 * (lo + hi);
      (reflex(r) < 0 ? lo : hi) = r;
      if (hi - lo < 1e-14) break;
    }
    r = 0.5 * (lo + hi);
  }
  std::vector<double> arc(n);
  double rest = 0;
  for (int i = 0; i < n; ++i)
    if (i != jmax) {
      arc[i] = 2 * std::asin(std::min(1.0, lengths[i] / (2 * r)));
      rest += arc[i];
    }
  arc[jmax] = 2 * M_PI - rest;
  std::vector<Vec<double>> vs;
  double psi = 0;
  for (int i = 0; i < n; ++i) {
    Vec<double> v(2);
    v << r * std::cos(psi), r * std::sin(psi);
    vs.push_back(v);
    psi += arc[i];
  }
  return convex_hull(vs, 1e-9);
}

// ---- fans from / to profiles ----

// Complete pointed 2D fan with the given profile; rays at cumulative angles.
template <class S>
Fan<double> fan_from_profile(const Profile<S>& b,
                             const S& tol = scalar_traits<S>::default_tol()) {
  validate_profile(b, tol);
  int n = b.size();
  std::vector<double> theta(n + 1);
  theta[0] = 0;
  for (int i = 0; i < n; ++i)
    theta[i + 1] = theta[i] + M_PI * scalar_traits<S>::to_double(b.pi_units[i]);
  Fan<double> f;
  f.ambient_dim = 2;
  f.num_regions = n;
  f.lineality.resize(0, 2);
  for (int k = 0; k < n; ++k) {
    // wall between regions k-1 and k on the ray at theta[k]
    int a = (k + n - 1) % n, bb = k;
    Wall<double> w;
    w.from = std::min(a, bb);
    w.to = std::max(a, bb);
    Vec<double> outer(2);
    outer << -std::sin(theta[k]), std::cos(theta[k]);  // outer for region k-1
    w.normal = (w.from == a) ? outer : Vec<double>(-outer);
    f.walls.push_back(std::move(w));
  }
  std::sort(f.walls.begin(), f.walls.end(), [](const Wall<double>& x, const Wall<double>& y) {
    return std::make_pair(x.from, x.to) < std::make_pair(y.from, y.to);
  });
  f.region_reps.resize(n);
  for (int k = 0; k < n; ++k) {
    double mid = 0.5 * (theta[k] + theta[k + 1]);
    Vec<double> rep(2);
    rep << std::cos(mid), std::sin(mid);
    f.region_reps[k] = rep;
  }
  std::vector<int> cyc(n);
  for (int i = 0; i < n; ++i) cyc[i] = i;
  f.link_cycles = {cyc};
  return f;
}

// Counterclockwise region angles of a 2D fan (modulo lineality); angles are
// read off in double precision.
template <class S>
std::pair<Profile<double>, std::vector<int>> profile_of_fan(
    const Fan<S>& f, const S& tol = scalar_traits<S>::default_tol()) {
  check_valid(f, tol);
  std::vector<Vec<S>> nrows;
  for (const auto& w : f.walls) nrows.push_back(w.normal);
  Mat<S> nm = mat_from_rows(nrows, f.ambient_dim);
  if (rank_of(Mat<S>(nm), tol) != 2) throw error("NotPlanar", "wall normals do not span a plane");
  auto idx = region_wall_index(f);
  for (const auto& at : idx)
    if (at.size() != 2) throw error("NotPlanar", "region without exactly two walls");
  int n = f.num_regions;
  if (static_cast<int>(f.walls.size()) != n) throw error("NotPlanar", "not a single cycle");

  // orthonormal plane basis in double precision
  Eigen::MatrixXd nd(nm.rows(), nm.cols());
  for (int i = 0; i < nm.rows(); ++i)
    for (int j = 0; j < nm.cols(); ++j) nd(i, j) = scalar_traits<S>::to_double(nm(i, j));
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(nd, Eigen::ComputeFullV);
  Eigen::MatrixXd plane = svd.matrixV().leftCols(2);  // ambient x 2

  auto to2d = [&](const Vec<S>& v) {
    Eigen::VectorXd vd(v.size());
    for (int i = 0; i < v.size(); ++i) vd(i) = scalar_traits<S>::to_double(v(i));
    Eigen::Vector2d out = plane.transpose() * vd;
    return out;
  };

  // walk the cycle of regions
  std::vector<int> order = {0};
  std::vector<char> used(n, 0);
  used[0] = 1;
  while (static_cast<int>(order.size()) < n) {
    int r = order.back();
    int nxt = -1;
    for (auto [w, sg] : idx[r]) {
      int other = f.walls[w].from == r ? f.walls[w].to : f.walls[w].from;
      if (!used[other]) { nxt = other; break; }
    }
    if (nxt < 0) throw error("NotPlanar", "region cycle walk failed");
    used[nxt] = 1;
    order.push_back(nxt);
  }

  auto rot90 = [](const Eigen::Vector2d& v) { return Eigen::Vector2d(-v(1), v(0)); };
  // Region angle from its two outer normals: beta = pi - angle(n1, n2);
  // orientation-free.
  Profile<double> prof;
  prof.pi_units.resize(n);
  for (int i = 0; i < n; ++i) {
    int r = order[i];
    Eigen::Vector2d n1 = to2d(Vec<S>(S(idx[r][0].second) * f.walls[idx[r][0].first].normal));
    Eigen::Vector2d n2 = to2d(Vec<S>(S(idx[r][1].second) * f.walls[idx[r][1].first].normal));
    double phi = std::atan2(std::abs(n1(0) * n2(1) - n1(1) * n2(0)), n1.dot(n2));
    prof.pi_units[i] = 1.0 - phi / M_PI;
  }
  // orientation: ray between order[0] and order[1], then between order[1]
  // and order[2]; counterclockwise iff the rays rotate positively.
  auto boundary_ray = [&](int i) {
    int r = order[i], s = order[(i + 1) % n];
    Eigen::Vector2d a = to2d(normal_from(f, r, s));
    Eigen::Vector2d u = rot90(a);
    int otherw = -1, othersg = 0;
    for (auto [w, sg] : idx[r])
      if (w != wall_between(f, r, s)) { otherw = w; othersg = sg; }
    Eigen::Vector2d b = to2d(Vec<S>(S(othersg) * f.walls[otherw].normal));
    if (b.dot(u) > 0) u = -u;
    return u;
  };
  Eigen::Vector2d u0 = boundary_ray(0), u1 = boundary_ray(1);
  std::vector<int> region_order = order;
  if (u0(0) * u1(1) - u0(1) * u1(0) < 0) {
    std::reverse(region_order.begin() + 1, region_order.end());
    std::vector<double> flipped(n);
    for (int i = 0; i < n; ++i) flipped[i] = prof.pi_units[(n - i) % n];
    prof.pi_units = flipped;
  }
  double sum = 0;
  for (double x : prof.pi_units) sum += x;
  if (std::abs(sum - 2.0) > 1e-6) throw error("NotPlanar", "region angles do not close up");
  return {prof, region_order};
}

}  // namespace insc
